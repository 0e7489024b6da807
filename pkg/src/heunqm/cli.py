"""Command-line surface: JSON config in, CSV/JSON artifacts out.

Subcommands: classify, potential, spectrum, wavefunction, verify, polys.
Outputs are deterministic (shortest-roundtrip float formatting) and nothing
is written when the computation fails, so goldens stay machine-checkable.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import jsonschema
import numpy as np

from .errors import BreakdownError, ConstraintError, DomainError, InadmissibleError, NumericError
from .heun import HeunParams, SolutionClass, basis_param_branches, classify
from .orthopoly import (
    RacahHeunFamily,
    VPolyFamily,
    WilsonFamily,
    numeric_discrete_spectrum,
    racah_heun_eval,
    v_poly_eval,
    wilson_eval,
)
from .potentials import build_system, potential_value, system_from_heun
from .transforms import CASES, y_of_x
from .verifier import Grid, default_grid, numeric_eigenvalues, schrodinger_residual
from .wavefunction import build_series, psi_series_grid, restricted_spectrum

SCHEMA_VERSION = 1

_HEUN_FIELDS = ["a", "b", "c", "d", "A", "B", "C", "D", "E"]

_CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "lambda": {"type": "number", "exclusiveMinimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "nterms": {"type": "integer", "minimum": 1, "maximum": 512},
        "out": {"type": "string"},
        "system": {
            "type": "object",
            "additionalProperties": False,
            "required": ["class", "case"],
            "properties": {
                "class": {
                    "enum": ["general", "special", "restricted-first", "restricted-second"]
                },
                "case": {"enum": sorted(CASES)},
                "u": {"type": "array", "items": {"type": "number"}, "maxItems": 3},
                "inputs": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: {"type": "number"} for k in ("d", "c", "A", "B", "D")},
                },
                "branch": {
                    "type": "array",
                    "items": {"enum": [-1, 1]},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "heun_params": {
            "type": "object",
            "additionalProperties": False,
            "required": _HEUN_FIELDS,
            "properties": {k: {"type": "number"} for k in _HEUN_FIELDS},
        },
        "case": {"enum": sorted(CASES)},
        "family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["wilson", "racah-heun", "v"]},
                "params": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 4,
                    "maxItems": 4,
                },
                "kappa": {"type": "number"},
                "mu": {"type": "number"},
                "nu": {"type": "number"},
                "tau_squared": {"type": "number"},
                "theta": {"type": "number", "minimum": 0},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "npoints": {"type": "integer", "minimum": 64},
                "xi_span": {"type": "number", "exclusiveMinimum": 0},
                "x_min": {"type": "number"},
                "x_max": {"type": "number"},
            },
        },
        "z_grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["start", "stop", "count"],
            "properties": {
                "start": {"type": "number"},
                "stop": {"type": "number"},
                "count": {"type": "integer", "minimum": 2},
            },
        },
        "nmax": {"type": "integer", "minimum": 0, "maximum": 64},
        "matrix_order": {"type": "integer", "minimum": 8, "maximum": 4000},
        "count": {"type": "integer", "minimum": 1, "maximum": 64},
    },
}


class UsageError(Exception):
    pass


def _load_config(path, overrides):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}")
    try:
        jsonschema.validate(cfg, _CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"config rejected: {exc.message}")
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    return cfg


def _system_from_config(cfg):
    lam = cfg.get("lambda", 1.0)
    tol = cfg.get("tol", 1e-9)
    if "system" in cfg:
        sc = cfg["system"]
        cls = SolutionClass(sc["class"])
        branch = tuple(sc.get("branch", (1, 1)))
        return build_system(
            cls,
            sc["case"],
            u=tuple(sc.get("u", ())),
            lam=lam,
            branch=branch,
            tol=tol,
            **sc.get("inputs", {}),
        )
    if "heun_params" in cfg and "case" in cfg:
        p = HeunParams(**cfg["heun_params"])
        return system_from_heun(p, cfg["case"], lam=lam, tol=tol)
    raise UsageError("this command needs either a 'system' section or 'heun_params' plus 'case'")


def _params_from_config(cfg):
    if "heun_params" in cfg:
        return HeunParams(**cfg["heun_params"])
    if "system" in cfg:
        return _system_from_config(cfg).heun
    raise UsageError("this command needs 'heun_params' or a 'system' section")


def _grid_from_config(cfg, sys):
    gc = cfg.get("grid", {})
    npoints = gc.get("npoints", 8192)
    if "x_min" in gc and "x_max" in gc:
        return Grid(gc["x_min"], gc["x_max"], npoints)
    return default_grid(sys, npoints=npoints, xi_span=gc.get("xi_span", 40.0))


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path, payload):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _out_dir(cfg):
    out = Path(cfg.get("out", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _system_payload(sys):
    return {
        "class": sys.cls.value,
        "case": sys.case.name,
        "lambda": sys.lam,
        "u": list(sys.u),
        "heun": {k: getattr(sys.heun, k) for k in _HEUN_FIELDS},
        "basis": {
            "alpha": sys.basis.alpha,
            "beta": sys.basis.beta,
            "gamma": sys.basis.gamma,
            "mu": sys.basis.mu,
            "nu": sys.basis.nu,
        },
        "energy_param": sys.energy_param,
    }


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_classify(cfg):
    p = _params_from_config(cfg)
    cl = classify(p, tol=cfg.get("tol", 1e-9))
    lines = [f"classes: {', '.join(sorted(k.value for k in cl.classes)) or '(none)'}"]
    lines.append(f"original-heun specialization: {'yes' if cl.original_heun else 'no'}")
    branches = {}
    for cls in sorted(cl.classes, key=lambda k: k.value):
        rows = []
        try:
            admissible = basis_param_branches(p, cls)
        except ConstraintError as exc:
            lines.append(f"  {cls.value}: no admissible basis branch ({exc})")
            branches[cls.value] = rows
            continue
        for bp in admissible:
            rows.append(
                {"alpha": bp.alpha, "beta": bp.beta, "gamma": bp.gamma, "mu": bp.mu, "nu": bp.nu}
            )
            lines.append(
                f"  {cls.value}: alpha={bp.alpha:.12g} beta={bp.beta:.12g} "
                f"gamma={bp.gamma:.12g} mu={bp.mu:.12g} nu={bp.nu:.12g}"
            )
        branches[cls.value] = rows
    print("\n".join(lines))
    if "out" in cfg:
        _write_json(
            _out_dir(cfg) / "classify.json",
            {
                "heun": {k: getattr(p, k) for k in _HEUN_FIELDS},
                "classes": sorted(k.value for k in cl.classes),
                "original_heun": cl.original_heun,
                "branches": branches,
            },
        )
    return 0


def cmd_potential(cfg):
    sys_ = _system_from_config(cfg)
    grid = _grid_from_config(cfg, sys_)
    xs = grid.points()
    v = potential_value(sys_, xs)
    y = y_of_x(sys_.case, sys_.lam, xs)
    rows = list(zip(xs.tolist(), y.tolist(), np.asarray(v).tolist()))
    out = _out_dir(cfg)
    _write_csv(out / "potential.csv", ["x", "y", "two_V_over_lambda_sq"], rows)
    print(f"wrote {out / 'potential.csv'} ({len(rows)} points)")
    return 0


def cmd_spectrum(cfg):
    sys_ = _system_from_config(cfg)
    spec = restricted_spectrum(sys_)
    bound = [e for e in spec.levels if e < -1e-3]
    grid = _grid_from_config(cfg, sys_)
    count = max(len(bound), 1)
    oracle = numeric_eigenvalues(sys_, grid, count)
    rows = []
    max_dev = 0.0
    for k, e in enumerate(spec.levels):
        if k < len(bound):
            got = oracle.levels[k]
            dev = abs(got - e) / max(abs(e), 1.0)
            max_dev = max(max_dev, dev)
            rows.append((k, e, got, dev))
        else:
            rows.append((k, e, float("nan"), float("nan")))
    out = _out_dir(cfg)
    _write_csv(
        out / "spectrum.csv",
        ["k", "formula_two_E_over_lambda_sq", "oracle_two_E_over_lambda_sq", "rel_dev"],
        rows,
    )
    _write_json(
        out / "spectrum.json",
        {
            "system": _system_payload(sys_),
            "levels": list(spec.levels),
            "n_top": spec.n_top,
            "oracle_levels": list(oracle.levels),
            "oracle_convergence": list(oracle.convergence),
            "max_rel_dev_bound_levels": max_dev,
            "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "npoints": grid.npoints},
        },
    )
    for row in rows:
        print(
            f"k={row[0]}  formula={_fmt(row[1])}  oracle={_fmt(row[2])}  rel_dev={_fmt(row[3])}"
        )
    print(f"max relative deviation over bound levels: {_fmt(max_dev)}")
    return 0


def cmd_wavefunction(cfg):
    sys_ = _system_from_config(cfg)
    grid = _grid_from_config(cfg, sys_)
    xs = grid.points()
    nterms = cfg.get("nterms", 64)
    psi, series = psi_series_grid(sys_, xs, nterms=nterms)
    v = potential_value(sys_, xs)
    y = y_of_x(sys_.case, sys_.lam, xs)
    rows = list(zip(xs.tolist(), y.tolist(), np.asarray(v).tolist(), psi.tolist()))
    out = _out_dir(cfg)
    _write_csv(out / "wavefunction.csv", ["x", "y", "two_V_over_lambda_sq", "psi"], rows)
    print(
        f"wrote {out / 'wavefunction.csv'} (kept {series.nterms + 1} terms, "
        f"tail {series.tail_estimate:.3e})"
    )
    for w in series.warnings:
        print(f"warning: {w}")
    return 0


def cmd_verify(cfg):
    sys_ = _system_from_config(cfg)
    grid = _grid_from_config(cfg, sys_)
    nterms = cfg.get("nterms", 64)
    series = build_series(sys_, nterms=nterms)
    rep = schrodinger_residual(
        sys_,
        lambda x: psi_series_grid(sys_, x, series=series)[0],
        sys_.energy_param,
        grid,
    )
    payload = {
        "system": _system_payload(sys_),
        "nterms_kept": series.nterms + 1,
        "tail_estimate": series.tail_estimate,
        "series_warnings": list(series.warnings),
        "residual": {
            "rms": rep.residual,
            "rms_half_step": rep.residual_fine,
            "rms_extrapolated": rep.residual_extrapolated,
            "discretization": rep.discretization,
        },
        "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "npoints": grid.npoints},
    }
    if sys_.cls is SolutionClass.RESTRICTED_FIRST and sys_.case.name != "half-half":
        spec = restricted_spectrum(sys_)
        bound = [e for e in spec.levels if e < -1e-3]
        if bound:
            oracle = numeric_eigenvalues(sys_, grid, len(bound))
            payload["spectrum"] = {
                "formula_levels": list(spec.levels),
                "oracle_levels": list(oracle.levels),
                "oracle_convergence": list(oracle.convergence),
            }
    out = _out_dir(cfg)
    _write_json(out / "verify.json", payload)
    print(f"residual (extrapolated): {_fmt(rep.residual_extrapolated)}")
    print(f"wrote {out / 'verify.json'}")
    return 0


def _family_from_config(cfg):
    if "family" not in cfg:
        raise UsageError("the polys command needs a 'family' section")
    fc = cfg["family"]
    kind = fc["kind"]
    if kind == "wilson":
        if "params" not in fc:
            raise UsageError("wilson family needs 'params': [a, b, c, d]")
        return WilsonFamily(*fc["params"])
    if kind == "racah-heun":
        if "params" not in fc or "kappa" not in fc:
            raise UsageError("racah-heun family needs 'params' and 'kappa'")
        return RacahHeunFamily(fc["kappa"], *fc["params"])
    for key in ("mu", "nu", "tau_squared", "theta"):
        if key not in fc:
            raise UsageError(f"v family needs '{key}'")
    return VPolyFamily(mu=fc["mu"], nu=fc["nu"], tau_squared=fc["tau_squared"], theta=fc["theta"])


def cmd_polys(cfg):
    fam = _family_from_config(cfg)
    nmax = cfg.get("nmax", 8)
    zg = cfg.get("z_grid", {"start": 0.0, "stop": 5.0, "count": 51})
    zs = np.linspace(zg["start"], zg["stop"], zg["count"])
    rows = []
    for z in zs:
        vals = []
        for n in range(nmax + 1):
            if isinstance(fam, WilsonFamily):
                vals.append(wilson_eval(n, z * z, *fam.params()))
            elif isinstance(fam, RacahHeunFamily):
                vals.append(racah_heun_eval(n, z * z, fam.kappa, *fam.params()))
            else:
                vals.append(v_poly_eval(n, z, fam.mu, fam.nu, fam.tau_squared, fam.theta))
        rows.append((float(z), *vals))
    order = cfg.get("matrix_order", 300)
    stable = numeric_discrete_spectrum(fam, order)
    out = _out_dir(cfg)
    _write_csv(out / "polys.csv", ["z"] + [f"p{n}" for n in range(nmax + 1)], rows)
    _write_json(
        out / "polys.json",
        {
            "family": cfg["family"],
            "matrix_order": order,
            "stable_spectrum_points": stable,
        },
    )
    print(f"wrote {out / 'polys.csv'} and polys.json; stable points: {stable}")
    return 0


_COMMANDS = {
    "classify": cmd_classify,
    "potential": cmd_potential,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "polys": cmd_polys,
}

_HELP = {
    "classify": "report satisfied solution classes, basis branches and flags",
    "potential": "sample 2V/lambda^2 over a grid to CSV",
    "spectrum": "closed-form levels next to finite-difference levels",
    "wavefunction": "sample the series wavefunction to CSV",
    "verify": "equation-residual report as JSON",
    "polys": "tabulate a polynomial family and its stable spectrum points",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heunqm",
        description="Exactly solvable quantum systems from a nine-parameter "
        "Heun-type equation: classification, potentials, spectra, series "
        "wavefunctions and independent verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name, help=_HELP[name])
        sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--out", help="output directory (overrides config)")
        sp.add_argument("--nterms", type=int, help="series truncation override")
        sp.add_argument("--grid", type=int, dest="grid_points", help="grid points override")
        sp.add_argument("--tol", type=float, help="classification tolerance override")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(
            args.config, {"out": args.out, "nterms": args.nterms, "tol": args.tol}
        )
        if args.grid_points is not None:
            cfg.setdefault("grid", {})["npoints"] = args.grid_points
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConstraintError, DomainError, InadmissibleError) as exc:
        print(f"constraint error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, BreakdownError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
