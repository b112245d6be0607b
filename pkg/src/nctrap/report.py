"""Deterministic JSON/CSV serialization and report assembly.

JSON floats carry 17 significant digits (enough to round-trip a double),
CSV floats 12. Field order is fixed by construction, so identical inputs
give byte-identical files. Files are written to a temporary sibling and
renamed into place, so a failed run never leaves a partial file.
"""

import csv
import io
import json
import math
import os
import tempfile
from fractions import Fraction

from . import _numeric, planner, spectra

JSON_DIGITS = 17
CSV_DIGITS = 12


def _scalar(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction) or _numeric.is_extended(x):
        return float(x)
    if isinstance(x, float):
        return x
    # numpy scalars and the like
    return float(x)


def _format_float(x, digits):
    if math.isnan(x) or math.isinf(x):
        return None
    return format(x, f".{digits}g")


def _encode(obj, digits, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, digits, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, digits, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    obj = _scalar(obj)
    if isinstance(obj, float):
        text = _format_float(obj, digits)
        return "null" if text is None else text
    return json.dumps(obj)


def dumps_json(obj, digits=JSON_DIGITS, indent=2):
    """JSON text with floats at ``digits`` significant digits, keys in insertion order."""
    return _encode(obj, digits, indent, 0) + "\n"


def _csv_cell(v, digits):
    if v is None:
        return ""
    v = _scalar(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        text = _format_float(v, digits)
        return "" if text is None else text
    return str(v)


def dumps_csv(header, rows, digits=CSV_DIGITS):
    """CSV text; each row is a dict keyed by ``header`` or a sequence."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        values = [row.get(h) for h in header] if isinstance(row, dict) else row
        writer.writerow([_csv_cell(v, digits) for v in values])
    return buf.getvalue()


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file and os.replace."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".nctrap-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# spectrum reports

SPECTRUM_CSV_HEADER = ("n", "E_h0", "J_z_hbar")


def effective_params_dict(ep):
    return {
        "M": ep.M, "G": ep.G, "Omega_P": ep.Omega_P, "K": ep.K,
        "c1": ep.c1, "c2": ep.c2, "dM": ep.dM, "dG": ep.dG, "dK": ep.dK,
        "omega_0": ep.omega_0, "xi_sq": ep.xi_sq,
    }


def spectrum_report(trap, nc, n_max, inputs=None):
    """SpectrumReport as an ordered dict.

    ``levels`` lists the reduced (kinetic-ground) energies E_h0 and the
    Ĵ_z levels in units of ħ. A ``tilde`` block is added when B = 0.
    Raises UndefinedReductionError when G = 0.
    """
    ep = spectra.effective_params(trap, nc)
    rs = spectra.reduced_system(ep)
    sig, jz = spectra.jz_star_signal(ep, nc, n_max)
    energies = spectra.reduced_spectrum(ep, n_max)
    levels = [{"n": n, "E_h0": e, "J_z_hbar": j}
              for n, (e, j) in enumerate(zip(energies, jz))]
    signal = {
        "dev_star": sig.dev,
        "dev_tilde": None,
        "J0_hbar": sig.J0_hbar,
        "interval_hbar": sig.interval_hbar,
        "delta_J0_hbar": sig.delta_J0_hbar,
        "breakdown": {"theta_term": sig.theta_term, "eta_term": sig.eta_term},
    }
    out = {
        "inputs": inputs or {},
        "effective_params": effective_params_dict(ep),
        "reduced": {"mu_star": rs.mu_star, "omega_star": rs.omega_star,
                    "E_k0": rs.E_k0, "omega_0": rs.omega_0},
        "levels": levels,
        "signal": signal,
    }
    if trap.B == 0:
        tp = spectra.tilde_limit(trap, nc)
        ts = spectra.jz_tilde_signal(trap, nc)
        signal["dev_tilde"] = ts.dev
        out["tilde"] = {
            "G_tilde": tp.G_tilde, "M_tilde": tp.M_tilde,
            "Omega_tilde": tp.Omega_tilde, "K_tilde": tp.K_tilde,
            "dev_tilde": ts.dev, "dev_tilde_c_form": ts.dev_alt,
            "J0_hbar": ts.J0_hbar, "interval_hbar": ts.interval_hbar,
            "first_order": tp.first_order,
        }
    return out


def spectrum_csv(report):
    return dumps_csv(SPECTRUM_CSV_HEADER, report["levels"])


SWEEP_FIELDS = ("M", "G", "Omega_P", "K", "omega_0", "mu_star", "omega_star",
                "E_k0", "dev_star", "theta_term", "eta_term", "J0_hbar",
                "interval_hbar", "dev_tilde")


def spectrum_scalars(report):
    """Flat scalar view of a SpectrumReport (one sweep row)."""
    ep, rd, sg = report["effective_params"], report["reduced"], report["signal"]
    return {
        "M": ep["M"], "G": ep["G"], "Omega_P": ep["Omega_P"], "K": ep["K"],
        "omega_0": ep["omega_0"], "mu_star": rd["mu_star"],
        "omega_star": rd["omega_star"], "E_k0": rd["E_k0"],
        "dev_star": sg["dev_star"], "theta_term": sg["breakdown"]["theta_term"],
        "eta_term": sg["breakdown"]["eta_term"], "J0_hbar": sg["J0_hbar"],
        "interval_hbar": sg["interval_hbar"], "dev_tilde": sg["dev_tilde"],
    }


# sensitivity reports

SCENARIO_CSV_HEADER = ("B", "B_eta", "eta_term", "theta_term", "delta_J0_hbar",
                       "theta_negligible", "B_much_greater_than_B_eta", "B_below_B_eta")


def scenario_dict(s):
    return {
        "B": s.B, "B_eta": s.B_eta,
        "dev_terms": {"eta_term": s.eta_term, "theta_term": s.theta_term},
        "delta_J0_hbar": s.delta_J0_hbar,
        "flags": dict(s.flags),
    }


def sensitivity_report(fields=planner.DEFAULT_FIELDS, trap=None, bounds=None,
                       p_bar=planner.DEFAULT_P_BAR, rate_inputs=None):
    """SensitivityReport: bounds, per-field scenarios, non-limit terms, rate plan."""
    if bounds is None:
        bounds = planner.default_bounds()
    fields = list(fields)
    if not fields or any(not float(b) > 0 for b in fields):
        raise ValueError("sensitivity field values must be positive")
    scenarios = [planner.scenario(b, trap=trap, bounds=bounds) for b in fields]
    nl = planner.nonlimit_estimates(p_bar, bounds)
    plan = planner.rate_plan(**(rate_inputs or {}))
    return {
        "bounds": {"theta_max": bounds.theta_max, "eta_max": bounds.eta_max},
        "scenarios": [scenario_dict(s) for s in scenarios],
        "nonlimit": {"p_bar": nl.p_bar, "x_bar": nl.x_bar,
                     "theta_term": nl.theta_term, "eta_term": nl.eta_term},
        "rate_plan": {
            "sigma_total": plan.sigma_total,
            "solid_angle_fraction": plan.solid_angle_fraction,
            "coincidence_efficiency": plan.coincidence_efficiency,
            "n_trapped": plan.n_trapped, "beam_current": plan.beam_current,
            "beam_area": plan.beam_area, "rate": plan.rate,
            "events_needed": plan.events_needed,
            "runtime_for_spectrum": plan.runtime_for_spectrum,
        },
    }


def sensitivity_csv(report):
    rows = []
    for s in report["scenarios"]:
        rows.append({"B": s["B"], "B_eta": s["B_eta"],
                     "eta_term": s["dev_terms"]["eta_term"],
                     "theta_term": s["dev_terms"]["theta_term"],
                     "delta_J0_hbar": s["delta_J0_hbar"], **s["flags"]})
    return dumps_csv(SCENARIO_CSV_HEADER, rows)
