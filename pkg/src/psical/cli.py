"""Config-driven experiment runner.

Usage::

    psical <experiment> --config FILE --out DIR [--seed INT]

The config is flat ``key=value`` text with section prefixes (``grid.N=256``,
``symbol.name=perturbed``, ``spectral.lambda=0+1i``); ``#`` starts a
comment. Each run writes ``<experiment>.csv`` and ``<experiment>.json`` into
``DIR``. Exit status is 0 when every check passes, 2 when a check fails and
1 for configuration or numerical errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._numerics import loglog_slope
from .calculus import compose_asymptotic, compose_exact, neumann_correct, parametrix_symbol
from .exceptions import ConfigError, PsicalError
from .geometry import defining_functions, ratio
from .quantize import GridSpec, assemble, assemble_semiclassical, scale_symbol, symmetrize
from .sobolev import (
    SobolevTriple,
    classical_triple,
    mapping_constant,
    norm,
    standard_norm,
)
from .spectral import (
    ContourSpec,
    SpectralParameter,
    complex_power,
    eigen_oracle_power,
    normal_inverse_family,
    normal_operator_defect,
    spectral_family,
    verify_interpolation,
    verify_main_theorem,
)
from .symbols import (
    BUILTINS,
    Orders,
    SampleGrid,
    classical_membership,
    cosine,
    fit_orders,
    frequency,
    is_fully_elliptic,
    japanese_bracket,
    laplacian,
    make_symbol,
    monomial,
    perturbed,
    plane_wave,
    polynomial,
    resolve_orders,
    sine,
)
from .symbols.base import ClassicalOrders

__all__ = ["ExperimentConfig", "ExperimentReport", "parse_config", "run", "main", "EXPERIMENTS"]

# keys accepted in config files, with their value kinds
KNOWN_KEYS = {
    "experiment": "str",
    "grid.d": "int",
    "grid.N": "int",
    "grid.h_exp_min": "int",
    "grid.h_exp_max": "int",
    "symbol.name": "str",
    "symbol.m": "float",
    "symbol.k": "float",
    "symbol.eps": "float",
    "symbol.c": "complex",
    "symbol.n": "int",
    "spectral.lambda": "complex",
    "spectral.m": "float",
    "sobolev.s": "float",
    "sobolev.r": "float",
    "sobolev.p": "float",
    "sobolev.aggregate": "str",
    "parametrix.J": "intlist",
    "interp.t": "floatlist",
    "contour.nodes": "int",
    "contour.s": "complex",
    "contour.shape": "str",
    "tolerance.slope": "float",
    "tolerance.variation": "float",
    "tolerance.order": "float",
}


def _parse_value(key, raw):
    kind = KNOWN_KEYS[key]
    try:
        if kind == "str":
            return raw
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "complex":
            return complex(raw.replace(" ", "").replace("i", "j"))
        if kind == "intlist":
            return [int(v) for v in raw.split(",")]
        if kind == "floatlist":
            return [float(v) for v in raw.split(",")]
    except ValueError:
        raise ConfigError(f"cannot parse {key}={raw!r} as {kind}")
    raise ConfigError(f"unsupported kind {kind}")


def parse_config(text):
    """Parse flat ``key=value`` text into a dict; raises :class:`ConfigError`."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw)
    if not values:
        raise ConfigError("config file is empty")
    return values


@dataclass
class ExperimentConfig:
    """Validated experiment settings (``raw`` keeps the parsed key/value pairs)."""

    experiment: str
    raw: dict = field(default_factory=dict)
    seed: int = 0

    def get(self, key, default=None):
        return self.raw.get(key, default)

    def grid(self, default_N=256):
        N = self.get("grid.N", default_N)
        d = self.get("grid.d", 1)
        lo = self.get("grid.h_exp_min", 1)
        hi = self.get("grid.h_exp_max", 8)
        if lo > hi:
            raise ConfigError("grid.h_exp_min must not exceed grid.h_exp_max")
        try:
            return GridSpec(d=d, N=N, h_grid=tuple(2.0 ** -np.arange(lo, hi + 1)))
        except PsicalError as exc:
            raise ConfigError(str(exc))

    def symbol(self, default="perturbed", **defaults):
        name = self.get("symbol.name", default)
        if name not in BUILTINS:
            raise ConfigError(f"unknown built-in symbol {name!r}")
        params = dict(defaults)
        for key in ("m", "k", "eps", "c", "n"):
            if f"symbol.{key}" in self.raw:
                params[key] = self.raw[f"symbol.{key}"]
        import inspect

        allowed = inspect.signature(BUILTINS[name]).parameters
        params = {k: v for k, v in params.items() if k in allowed}
        return name, params, make_symbol(name, **params)

    def tolerance(self, key, default):
        value = self.get(f"tolerance.{key}", default)
        if not value > 0:
            raise ConfigError(f"tolerance.{key} must be positive")
        return value


@dataclass
class ExperimentReport:
    experiment: str
    metrics: dict
    verdict: str
    csv_path: str
    config: dict
    seed: int
    version: str = __version__

    def to_json(self):
        return {
            "experiment": self.experiment,
            "version": self.version,
            "verdict": self.verdict,
            "metrics": _jsonable(self.metrics),
            "csv": os.path.basename(self.csv_path),
            "config": _jsonable(self.config),
            "seed": self.seed,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(float(obj.real)), "im": _jsonable(float(obj.imag))}
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if np.isnan(f):
            return "nan"
        if np.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    return obj


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _write_csv(path, header, rows):
    """Write rows; complex cells expand into ``_re``/``_im`` column pairs."""
    complex_cols = set()
    for row in rows:
        for name, v in zip(header, row):
            if isinstance(v, (complex, np.complexfloating)):
                complex_cols.add(name)
    out_header = []
    for name in header:
        out_header += [f"{name}_re", f"{name}_im"] if name in complex_cols else [name]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(out_header)
        for row in rows:
            cells = []
            for name, v in zip(header, row):
                if name in complex_cols:
                    v = complex(v)
                    cells += [_fmt(v.real), _fmt(v.imag)]
                else:
                    cells.append(_fmt(v))
            w.writerow(cells)


# experiments --------------------------------------------------------------------

def _exp_weights(cfg: ExperimentConfig):
    grid = SampleGrid.default()
    r, h = grid.radius_h()
    r, h = r.ravel(), h.ravel()
    rho = defining_functions(r, h)
    r_h = rho[3] * rho[2] / h
    r_inf = rho[1] * rho[2] / rho[0]
    rows = [[r[i], h[i], rho[0][i], rho[1][i], rho[2][i], rho[3][i], r_h[i], r_inf[i]]
            for i in range(len(r))]
    header = ["zeta_norm", "h", "rho_inf", "rho_h_inf", "rho_h_ff", "rho_h_0", "r_h", "r_inf"]
    bound = np.sqrt(2.0)
    in_range = bool(np.all((r_h >= 1 - 1e-12) & (r_h <= bound + 1e-12))
                    and np.all((r_inf >= 1 - 1e-12) & (r_inf <= bound + 1e-12)))
    agree = float(np.max(np.abs(r_h - r_inf)))
    closed = float(np.max(np.abs(r_h - ratio(r, h))))
    metrics = dict(ratio_min=float(min(r_h.min(), r_inf.min())),
                   ratio_max=float(max(r_h.max(), r_inf.max())),
                   max_ratio_difference=agree, max_closed_form_difference=closed,
                   ratios_in_range=in_range)
    return header, rows, metrics, in_range and agree <= 1e-12


def _exp_orders(cfg: ExperimentConfig):
    tol = cfg.tolerance("order", 0.1)
    rows = []
    ok = True
    if "symbol.name" in cfg.raw:
        name, params, a = cfg.symbol()
        fit = fit_orders(a)
        target = a.orders
        err = max(abs(x - y) for x, y in zip(fit.orders, target))
        ok = err <= tol
        rows.append([a.name, *fit.orders, *target, fit.residual, fit.condition, err <= tol])
    else:
        for m in (0, 1, 2):
            for k in (0, 1, 2):
                a = monomial(m, k)
                fit = fit_orders(a)
                target = resolve_orders(ClassicalOrders(m, k))
                err = max(abs(x - y) for x, y in zip(fit.orders, target))
                ok &= err <= tol
                rows.append([a.name, *fit.orders, *target, fit.residual, fit.condition,
                             err <= tol])
    header = ["symbol", "m_fit", "l_fit", "k_fit", "m_expected", "l_expected", "k_expected",
              "residual", "condition", "passed"]
    membership = {}
    for mm in (1, 2):
        o = Orders(-mm, -mm, -mm)
        membership[f"m={mm}"] = [classical_membership(o, 0.0), classical_membership(o, -mm)]
        ok &= membership[f"m={mm}"] == [-mm, 0.0]
    metrics = dict(fits_within_tolerance=bool(ok), double_membership=membership, tolerance=tol)
    return header, rows, metrics, bool(ok)


def _builtin_instances():
    return [
        japanese_bracket(2.0), japanese_bracket(-2.0), japanese_bracket(1.0), laplacian(),
        perturbed(1.0, 0.3), perturbed(2.0, 0.3), monomial(1.0, 1.0), monomial(2.0, 2.0),
        plane_wave(1), cosine(2), sine(1), polynomial([0.0, 1.0]),
        spectral_family(laplacian(), SpectralParameter(1j, 2.0)),
    ]


def _exp_quantize(cfg: ExperimentConfig):
    g = cfg.grid()
    rows = []
    worst = 0.0
    symbols = [cfg.symbol()[2]] if "symbol.name" in cfg.raw else _builtin_instances()
    for a in symbols:
        for h in g.h_grid:
            X = assemble_semiclassical(a, h, g).entries
            Y = assemble(scale_symbol(a), h, g).entries
            err = float(np.linalg.norm(X - Y) / np.linalg.norm(Y))
            worst = max(worst, err)
            rows.append([a.name, h, err])
    metrics = dict(max_relative_error=worst, tolerance=1e-12, N=g.N)
    return ["symbol", "h", "relative_frobenius_error"], rows, metrics, worst <= 1e-12


def _exp_compose(cfg: ExperimentConfig):
    g = cfg.grid(default_N=128)
    partners = [plane_wave(1), perturbed(1.0, 0.3), cosine(2) * 3.0 + sine(1)]
    polys = [[2.0], [1.0, -1.0], [0.5, 0.0, 1.0], [1.0, 2.0, -1.0, 0.5]]
    rows = []
    worst = 0.0
    for coeffs in polys:
        a = polynomial(coeffs)
        deg = len(coeffs) - 1
        for b in partners:
            for h in g.h_grid:
                C = compose_exact(assemble(a, h, g), assemble(b, h, g)).entries
                T = assemble(compose_asymptotic(a, b, deg + 1), h, g).entries
                err = float(np.linalg.norm(C - T) / np.linalg.norm(C))
                worst = max(worst, err)
                rows.append([deg, b.name, h, err])
    metrics = dict(max_relative_error=worst, tolerance=1e-10)
    return ["degree", "partner", "h", "relative_error"], rows, metrics, worst <= 1e-10


def _spectral_setup(cfg, default_symbol="perturbed", default_m=1.0):
    m = cfg.get("spectral.m", cfg.get("symbol.m", default_m))
    lam = cfg.get("spectral.lambda", 1j)
    try:
        sp = SpectralParameter(lam, m)
    except PsicalError as exc:
        raise ConfigError(str(exc))
    name, params, base = cfg.symbol(default_symbol, m=m, eps=0.3)
    return sp, base


def _exp_parametrix(cfg: ExperimentConfig):
    g = cfg.grid()
    sp, base = _spectral_setup(cfg)
    fam = spectral_family(base, sp)
    o = fam.orders
    A = [assemble(fam, h, g) for h in g.h_grid]
    B0 = normal_inverse_family(sp, g.h_grid, g)
    tol = cfg.tolerance("slope", 0.2)
    rows = []
    slopes = {}
    h0 = {}
    ok = True
    for J in cfg.get("parametrix.J", [1, 2, 3]):
        b = parametrix_symbol(fam, o, J)
        Bt = [assemble(b, h, g) for h in g.h_grid]
        res = neumann_correct(A, Bt, B0, "iterate", J)
        slope = loglog_slope(g.h_grid, res.residual)
        slopes[f"J={J}"] = slope
        h0[f"J={J}"] = res.h0
        ok &= bool(slope == -np.inf or slope >= J - tol)
        for h, v, c in zip(g.h_grid, res.residual, res.contraction):
            rows.append([h, f"L2->L2 E_{J}", v])
            rows.append([h, f"L2->L2 Etilde_{J}", c])
    exact = neumann_correct(A, mode="exact")
    floor = exact.h0
    residuals = [r for r, s in zip(exact.residual, exact.sigma_min) if np.isfinite(r)]
    for h, v in zip(g.h_grid, exact.residual):
        rows.append([h, "L2->L2 exact BA-I", v])
    exact_ok = bool(residuals) and max(residuals) <= 1e-10
    metrics = dict(iterate_slopes=slopes, slope_tolerance=tol, h0=h0,
                   exact_max_residual=max(residuals) if residuals else np.nan,
                   conditioning_floor_h=floor, exact_passed=exact_ok)
    return ["h", "norm_pair", "value"], rows, metrics, bool(ok and exact_ok)


def _exp_resolvent(cfg: ExperimentConfig):
    g = cfg.grid(default_N=512)
    s = cfg.get("sobolev.s", 0.0)
    orders_m = [cfg.get("spectral.m")] if "spectral.m" in cfg.raw else [1.0, 2.0]
    rows = []
    metrics = {}
    ok = True
    for m in orders_m:
        sub = ExperimentConfig(cfg.experiment, {**cfg.raw, "spectral.m": m}, cfg.seed)
        sp, base = _spectral_setup(sub)
        rep = verify_main_theorem(base, sp, g.h_grid, s, g,
                                  slope_tol=cfg.tolerance("slope", 0.1),
                                  variation_bound=cfg.tolerance("variation", 2.0))
        for h, a, b in zip(rep.h, rep.norm_same, rep.norm_gain):
            rows.append([m, h, f"H^{s:g}->H^{s:g}", a])
            rows.append([m, h, f"H^{s:g}->H^{s + m:g}", b])
        defect, defect_slope = normal_operator_defect(base, sp, g.h_grid, g)
        for h, v in zip(g.h_grid, defect):
            rows.append([m, h, "L2->L2 h^m A_h + lambda", v])
        fam = spectral_family(base, sp)
        full, margin, normal_margin = is_fully_elliptic(fam, fam.orders)
        defect_ok = abs(defect_slope - m) <= cfg.tolerance("slope", 0.1)
        metrics[f"m={m:g}"] = dict(
            slope=rep.slope, expected_slope=m, slope_passed=rep.slope_passed,
            gain_sup=rep.sup_gain, gain_variation=rep.variation,
            variation_passed=rep.variation_passed, h0=rep.h0,
            normal_defect_slope=defect_slope, normal_defect_passed=defect_ok,
            fully_elliptic=full, elliptic_margin=margin, normal_margin=normal_margin)
        ok &= rep.passed and defect_ok and full
    counter = frequency().with_orders(Orders(1.0, 1.0, 1.0))
    c_full, c_margin, c_normal = is_fully_elliptic(counter, counter.orders)
    metrics["counterexample"] = dict(symbol="h^-1(h zeta)", fully_elliptic=c_full,
                                     elliptic_margin=c_margin, normal_margin=c_normal)
    metrics["N"] = g.N
    ok &= not c_full
    return ["m", "h", "norm_name", "value"], rows, metrics, bool(ok)


def _exp_interp(cfg: ExperimentConfig):
    g = cfg.grid(default_N=512)
    lam = cfg.get("spectral.lambda", 1j)
    if complex(lam).imag == 0:
        raise ConfigError("spectral.lambda must have nonzero imaginary part")
    z_list = [lam / h ** 2 for h in g.h_grid]
    t_list = cfg.get("interp.t", [0.0, 1.0, 2.0])
    if any(t < 0 or t > 2 for t in t_list):
        raise ConfigError("interp.t values must lie in [0, 2]")
    tol = cfg.tolerance("slope", 0.05)
    rows_out = verify_interpolation(z_list, t_list, cfg.get("sobolev.s", 0.0),
                                    cfg.get("sobolev.p", 0.0), g, tol)
    rows = []
    metrics = {}
    ok = True
    for r in rows_out:
        for az, v, o in zip(r.abs_z, r.norms, r.oracle):
            rows.append([az, f"t={r.t:g} dense", v])
            rows.append([az, f"t={r.t:g} oracle", o])
        metrics[f"t={r.t:g}"] = dict(slope=r.slope, expected=r.expected,
                                     oracle_error=r.oracle_error, passed=r.passed)
        ok &= r.passed
    return ["abs_z", "norm_name", "value"], rows, metrics, bool(ok)


def _exp_power(cfg: ExperimentConfig):
    g = cfg.grid()
    s = cfg.get("contour.s", 0.5)
    c = ContourSpec(cfg.get("contour.shape", "log_ellipse"), cfg.get("contour.nodes", 64), s)
    cases = {
        "laplacian+1": assemble(laplacian() + 1.0, 1.0, g),
        "sym(<zeta>+0.2cos z)": symmetrize(assemble(japanese_bracket(1.0) + 0.2 * cosine(1),
                                                    1.0, g)),
    }
    rows = []
    metrics = {}
    ok = True
    for label, A in cases.items():
        P = complex_power(A, c)
        O = eigen_oracle_power(A, s)
        rel = float(np.abs(P.matrix - O).max() / np.abs(O).max())
        P2 = complex_power(A, ContourSpec(c.shape, c.nodes, 2 * complex(s)))
        semi = float(np.linalg.norm(P.matrix @ P.matrix - P2.matrix) / np.linalg.norm(P2.matrix))
        metrics[label] = dict(max_relative_error=rel, semigroup_error=semi,
                              error_estimate=P.error_estimate, delta=P.delta,
                              contour_distance=P.distance)
        ok &= rel <= 1e-8 and semi <= 1e-6
        for i, zeta in enumerate(g.frequencies[:, 0]):
            rows.append([label, int(zeta), complex(P.matrix[i, i]), complex(O[i, i])])
    return ["operator", "zeta", "power", "oracle"], rows, metrics, bool(ok)


def _exp_norms(cfg: ExperimentConfig):
    g = cfg.grid()
    t = SobolevTriple(cfg.get("sobolev.s", 0.0), cfg.get("sobolev.r", 0.0),
                      cfg.get("sobolev.p", 0.0))
    sp, base = _spectral_setup(cfg, "laplacian", 2.0)
    fam = spectral_family(base, sp)
    A = [assemble(fam, h, g) for h in g.h_grid]
    res = mapping_constant(A, fam.orders, t, cfg.get("sobolev.aggregate", "sup"),
                           cfg.tolerance("variation", 2.0))
    t_out = t - tuple(fam.orders)
    rows = [[h, *t, *t_out, v] for h, v in zip(g.h_grid, res.norms)]
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    ident_ok = True
    for s_ in (0, 1, 2):
        for p_ in (0, 1, 2):
            bound = 2.0 ** ((abs(s_) + abs(p_)) / 2.0)
            for h in g.h_grid:
                u = rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size)
                q = norm(u, classical_triple(s_, p_), h, g) / standard_norm(u, s_, p_, h, g)
                ident_ok &= (1.0 / bound - 1e-12) <= q <= bound + 1e-12
                worst = max(worst, abs(float(np.log2(q))))
    metrics = dict(mapping_value=res.value, mapping_variation=res.variation,
                   mapping_passed=res.passed, identification_passed=bool(ident_ok),
                   identification_max_abs_log2_ratio=worst)
    header = ["h", "s", "r", "p", "s_out", "r_out", "p_out", "norm"]
    return header, rows, metrics, bool(res.passed and ident_ok)


EXPERIMENTS = {
    "weights": _exp_weights,
    "orders": _exp_orders,
    "quantize-check": _exp_quantize,
    "compose": _exp_compose,
    "parametrix": _exp_parametrix,
    "resolvent": _exp_resolvent,
    "interp": _exp_interp,
    "power": _exp_power,
    "norms": _exp_norms,
}


def _run_one(name, cfg: ExperimentConfig, out_dir):
    header, rows, metrics, passed = EXPERIMENTS[name](cfg)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    _write_csv(csv_path, header, rows)
    report = ExperimentReport(name, metrics, "pass" if passed else "fail", csv_path, cfg.raw,
                              cfg.seed)
    with open(os.path.join(out_dir, f"{name}.json"), "w") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report


def run(cfg: ExperimentConfig, out_dir) -> ExperimentReport:
    """Execute ``cfg.experiment`` and write its CSV and JSON files into ``out_dir``."""
    os.makedirs(out_dir, exist_ok=True)
    if cfg.experiment == "all":
        reports = [_run_one(name, cfg, out_dir) for name in EXPERIMENTS]
        verdicts = {r.experiment: r.verdict for r in reports}
        passed = all(v == "pass" for v in verdicts.values())
        summary = ExperimentReport("all", dict(verdicts=verdicts), "pass" if passed else "fail",
                                   os.path.join(out_dir, "all.csv"), cfg.raw, cfg.seed)
        _write_csv(summary.csv_path, ["experiment", "verdict"], sorted(verdicts.items()))
        with open(os.path.join(out_dir, "all.json"), "w") as fh:
            json.dump(summary.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return summary
    if cfg.experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {cfg.experiment!r}")
    return _run_one(cfg.experiment, cfg, out_dir)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"psical: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    p = _Parser(prog="psical", description="Run a verification experiment.")
    p.add_argument("experiment", choices=sorted(EXPERIMENTS) + ["all"])
    p.add_argument("--config", required=True, help="flat key=value config file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0, help="seed for random test vectors")
    p.add_argument("--version", action="version", version=f"psical {__version__}")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            raw = parse_config(fh.read())
        if raw.get("experiment", args.experiment) != args.experiment:
            raise ConfigError(f"config is for experiment {raw['experiment']!r}, "
                              f"not {args.experiment!r}")
        report = run(ExperimentConfig(args.experiment, raw, args.seed), args.out)
    except (PsicalError, OSError) as exc:
        print(f"psical: error: {exc}", file=sys.stderr)
        return 1
    print(f"{report.experiment}: {report.verdict}")
    return 0 if report.verdict == "pass" else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
