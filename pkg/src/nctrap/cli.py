"""``nctrap`` command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 undefined reduction
(G = 0), 3 insufficient Fock truncation, 4 Dirac-chain regression,
5 oracle residual above tolerance.
"""

import argparse
import copy
import sys
from fractions import Fraction

from . import config as cfgmod
from . import _numeric, fock, planner, report, spectra
from .dirac import (
    SYMBOLS,
    constraint_drift,
    dirac_bracket,
    kinetic_ground_hamiltonian,
    lagrange_multipliers,
    phase_variables,
    primary_constraints,
    reduce_to_one_dof,
)
from .dirac.polynomial import PhasePolynomial, _to_sympy, coerce
from .errors import (
    DimensionCapError,
    DomainError,
    InsufficientTruncationError,
    ModelValidityError,
    NCTrapError,
    UndefinedReductionError,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNDEFINED = 2
EXIT_TRUNCATION = 3
EXIT_DIRAC = 4
EXIT_VERIFY = 5


def _emit(text, cfg, args):
    path = args.output or (cfg.get("output") or {}).get("path")
    if path:
        report.write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _format(cfg, args, default="json"):
    fmt = args.format or (cfg.get("output") or {}).get("format") or default
    if fmt not in ("json", "csv", "text"):
        raise cfgmod.ConfigError(f"unknown output format {fmt!r}")
    return fmt


# spectra


def cmd_spectra(cfg, args):
    trap, nc = cfgmod.build_trap(cfg), cfgmod.build_nc(cfg)
    rep = report.spectrum_report(trap, nc, cfgmod.n_max(cfg), inputs=cfgmod.inputs_echo(cfg))
    if _format(cfg, args) == "csv":
        _emit(report.spectrum_csv(rep), cfg, args)
    else:
        _emit(report.dumps_json(rep), cfg, args)
    return EXIT_OK


# verify


def cmd_verify(cfg, args):
    trap, nc = cfgmod.build_trap(cfg), cfgmod.build_nc(cfg)
    oc = cfg.get("oracle") or {}
    n = oc.get("n_per_mode", 30)
    n_levels = oc.get("n_levels", 10)
    if isinstance(n, bool) or not isinstance(n, int):
        raise cfgmod.ConfigError("oracle.n_per_mode must be an integer")
    tols = dict(fock.DEFAULT_TOLERANCES)
    tols["reduced"] = 1e-6
    tols.update(oc.get("tolerances") or {})

    ep = spectra.effective_params(trap, nc)
    spectra.reduced_system(ep)  # G = 0 → exit 2
    try:
        band = fock.FockBasisSpec.band_adapted(ep, n)
        reduced = fock.verify_reduced_limit(trap, nc, basis=band, tol=tols["reduced"])
        oracle = fock.run_oracle(trap, nc, n_per_mode=n, n_levels=n_levels, tolerances=tols)
    except (DomainError, DimensionCapError) as exc:
        if n < 4 or isinstance(exc, DimensionCapError):
            raise cfgmod.ConfigError(str(exc)) from exc
        raise
    oracle["reduced_limit"] = {
        "n_band": reduced.n_band,
        "jz_spacing_expected": reduced.jz_spacing_expected,
        "h2_spacing_expected": reduced.h2_spacing_expected,
        "jz_spacing_error": reduced.jz_spacing_error,
        "h2_spacing_error": reduced.h2_spacing_error,
    }
    oracle["checks"]["reduced_limit"] = reduced.passed
    oracle["passed"] = all(oracle["checks"].values())
    _emit(report.dumps_json(oracle), cfg, args)
    failed = [k for k, ok in oracle["checks"].items() if not ok]
    if failed:
        print("verify: checks above tolerance: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# dirac


def dirac_chain(G=None, K=None):
    """Replay the constraint analysis; returns (lines, mismatches).

    Symbolic throughout; when numeric ``G`` and ``K`` are given the
    symbolic results are specialized and compared with a direct numeric
    replay.
    """
    Gs, Ks, Es = SYMBOLS["G"], SYMBOLS["K"], SYMBOLS["E"]
    lines, bad = [], []

    def check(label, got, want):
        ok = coerce(_to_sympy(coerce(got)) - _to_sympy(coerce(want))) == 0
        if not ok:
            bad.append(f"{label}: got {got}, expected {want}")
        return ok

    cs = primary_constraints(Gs)
    x1, x2, p1, p2 = phase_variables()
    lines.append(f"phi1 = {cs.constraints[0]}")
    lines.append(f"phi2 = {cs.constraints[1]}")
    lines.append(f"C = [[{cs.matrix[0][0]}, {cs.matrix[0][1]}], [{cs.matrix[1][0]}, {cs.matrix[1][1]}]]")
    lines.append(f"C^-1 = [[{cs.inverse[0][0]}, {cs.inverse[0][1]}], [{cs.inverse[1][0]}, {cs.inverse[1][1]}]]")
    check("C12", cs.matrix[0][1], Gs)
    check("C21", cs.matrix[1][0], -Gs)
    check("C11", cs.matrix[0][0], 0)

    names = {"x1": x1, "x2": x2, "p1": p1, "p2": p2}
    targets = {
        ("x1", "x2"): -1 / Gs, ("p1", "p2"): -Gs / 4,
        ("x1", "p1"): Fraction(1, 2), ("x2", "p2"): Fraction(1, 2),
        ("x1", "p2"): 0, ("x2", "p1"): 0,
    }
    for (a, b), want in targets.items():
        got = dirac_bracket(names[a], names[b], cs)
        lines.append(f"{{{a},{b}}}_D = {_short(got)}")
        if not got.is_constant():
            bad.append(f"{{{a},{b}}}_D is not constant")
        else:
            check(f"{{{a},{b}}}_D", got.constant_term(), want)

    strong = [dirac_bracket(phi, v, cs) for phi in cs.constraints for v in names.values()]
    strong_ok = all(s.is_zero() for s in strong)
    lines.append(f"{{phi_i, z}}_D = 0 for all z: {'yes' if strong_ok else 'no'}")
    if not strong_ok:
        bad.append("constraints are not strongly zero")

    H = kinetic_ground_hamiltonian(Ks, Es)
    lam = lagrange_multipliers(H, cs)
    lines.append(f"H0 = {H}")
    lines.append(f"lambda1 = {lam[0]}")
    lines.append(f"lambda2 = {lam[1]}")
    check_poly = lambda label, got, want: (got == want) or bad.append(f"{label}: {got} != {want}")  # noqa: E731
    check_poly("lambda1", lam[0], x2 * coerce(-Ks / Gs))
    check_poly("lambda2", lam[1], x1 * coerce(Ks / Gs))
    drift = constraint_drift(H, cs, lam)
    drift_ok = all(d.is_zero() for d in drift)
    lines.append(f"constraint drift vanishes: {'yes' if drift_ok else 'no'}")
    if not drift_ok:
        bad.append("constraint drift does not vanish")

    red = reduce_to_one_dof(H, cs)
    lines.append(f"H* = {red.hamiltonian}")
    lines.append(f"{{x,p}}_D = {red.bracket}")
    lines.append("mu_star = G^2/(2K)")
    lines.append(f"  computed: {red.mu_star}")
    lines.append("omega_star = K/G")
    lines.append(f"  computed: {red.omega_star}")
    check("mu_star", red.mu_star, Gs ** 2 / (2 * Ks))
    check("omega_star", coerce(red.omega_star), Ks / Gs)
    check("{x,p}_D", red.bracket, 1)
    check("offset", red.offset, Es)

    if G is not None and K is not None:
        Gn, Kn = coerce(G), coerce(K)
        lines.append(f"specialization G={Gn}, K={Kn}:")
        num = reduce_to_one_dof(kinetic_ground_hamiltonian(Kn), primary_constraints(Gn))
        sub = {Gs: _to_sympy(Gn), Ks: _to_sympy(Kn)}
        sym_mu = coerce(_to_sympy(red.mu_star).subs(sub))
        sym_w = coerce(_to_sympy(coerce(red.omega_star)).subs(sub))
        lines.append(f"  mu_star = {sym_mu}")
        lines.append(f"  omega_star = {sym_w}")
        lines.append(f"  {{x1,x2}}_D = {coerce(-1 / _to_sympy(Gn))}")
        check("specialized mu_star", num.mu_star, sym_mu)
        check("specialized omega_star", coerce(num.omega_star), sym_w)
        lines.append(f"  H* = {num.hamiltonian}")
        check_poly("specialized H*", num.hamiltonian,
                   red.hamiltonian.subs_scalars(G=Gn, K=Kn, E=0))

    lines.append("status: " + ("ok" if not bad else "REGRESSION"))
    return lines, bad


def _short(poly):
    return str(poly.constant_term()) if isinstance(poly, PhasePolynomial) and poly.is_constant() \
        and not poly.is_zero() else str(poly)


def cmd_dirac(cfg, args):
    d = cfg.get("dirac") or {}
    lines, bad = dirac_chain(d.get("G"), d.get("K"))
    fmt = _format(cfg, args, default="text")
    if fmt == "json":
        _emit(report.dumps_json({"lines": lines, "mismatches": bad, "passed": not bad}), cfg, args)
    else:
        _emit("\n".join(lines) + "\n", cfg, args)
    for b in bad:
        print("dirac regression: " + b, file=sys.stderr)
    return EXIT_DIRAC if bad else EXIT_OK


# sensitivity


def cmd_sensitivity(cfg, args):
    if cfg.get("unit_system") not in (None, "SI"):
        raise cfgmod.ConfigError("sensitivity runs in the SI unit system")
    s = cfg.get("sensitivity") or {}
    fields = s.get("B_values", list(planner.DEFAULT_FIELDS))
    if not isinstance(fields, list) or not fields:
        raise cfgmod.ConfigError("sensitivity.B_values must be a nonempty list")
    for b in fields:
        if isinstance(b, bool) or not isinstance(b, (int, float)) or not b > 0:
            raise cfgmod.ConfigError(f"sensitivity field {b!r} must be a positive number")
    trap = planner.default_ion(fields[0], mass_number=s.get("mass_number", planner.DEFAULT_MASS_NUMBER),
                               omega_rho=s.get("omega_rho", planner.DEFAULT_OMEGA_RHO),
                               charge_e=s.get("charge_e", 1))
    bounds = planner.default_bounds()
    if "theta_max" in s or "eta_max" in s:
        bounds = planner.BoundsConfig(
            theta_max=_numeric.convert(s.get("theta_max", bounds.theta_max), "extended"),
            eta_max=_numeric.convert(s.get("eta_max", bounds.eta_max), "extended"))
    rep = report.sensitivity_report(fields, trap=trap, bounds=bounds,
                                    p_bar=s.get("p_bar", planner.DEFAULT_P_BAR),
                                    rate_inputs=s.get("rate") or {})
    if _format(cfg, args) == "csv":
        _emit(report.sensitivity_csv(rep), cfg, args)
    else:
        _emit(report.dumps_json(rep), cfg, args)
    return EXIT_OK


# sweep


def sweep_rows(cfg):
    """One ordered row per sweep value; invalid points carry an error marker."""
    path, values = cfgmod.sweep_values(cfg)
    parts = path.split(".")
    rows = []
    for v in values:
        point = copy.deepcopy(cfg)
        cfgmod.set_path(point, parts, v)
        row = {"parameter": path, "value": v, "status": "ok"}
        try:
            trap, nc = cfgmod.build_trap(point), cfgmod.build_nc(point)
            rep = report.spectrum_report(trap, nc, 0)
            row.update(report.spectrum_scalars(rep))
        except UndefinedReductionError:
            row["status"] = "undefined_reduction"
        except (cfgmod.ConfigError, DomainError, NCTrapError) as exc:
            row["status"] = "invalid:" + type(exc).__name__
        rows.append(row)
    return rows


SWEEP_HEADER = ("parameter", "value", "status") + report.SWEEP_FIELDS


def cmd_sweep(cfg, args):
    rows = sweep_rows(cfg)
    if _format(cfg, args, default="csv") == "json":
        _emit(report.dumps_json({"rows": rows}), cfg, args)
    else:
        _emit(report.dumps_csv(SWEEP_HEADER, rows), cfg, args)
    return EXIT_OK


COMMANDS = {
    "spectra": cmd_spectra,
    "verify": cmd_verify,
    "dirac": cmd_dirac,
    "sensitivity": cmd_sensitivity,
    "sweep": cmd_sweep,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nctrap",
        description="Spectra, oracle checks and sensitivity estimates for a "
                    "trapped ion in deformed phase space.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config field by dotted path (repeatable)")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv", "text"))
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = cfgmod.load(args.config)
        for assignment in args.set:
            cfgmod.apply_override(cfg, assignment)
        return COMMANDS[args.command](cfg, args)
    except UndefinedReductionError as exc:
        print(f"nctrap: undefined reduction: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except InsufficientTruncationError as exc:
        hint = f" (try n_per_mode >= {exc.suggested_n})" if exc.suggested_n else ""
        print(f"nctrap: insufficient truncation: {exc}{hint}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (cfgmod.ConfigError, DomainError, ModelValidityError, TypeError, ValueError) as exc:
        print(f"nctrap: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
