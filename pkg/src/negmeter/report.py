"""Report assembly and JSON/CSV emission.

The exact report runs every analysis route on one state (observable table,
both invariant routes, moments, both coefficient routes, quartic negativity
against the eigenvalue oracle, witness).  The sampled report wraps a
pipeline run.  CSV rows use a fixed, documented column order with floats at
12 significant digits.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from . import negativity as ng
from .interferometer import PipelineReport
from .invariants import (InvariantSet, invariants_from_decomposition,
                         invariants_from_g)
from .multicopy import G_FIELDS, g_table
from .states import (negativity_oracle, pauli_decompose, pt_moments)

INVARIANT_FIELDS = ("i1", "i2", "i3", "i4", "i5", "i7", "i8", "i12", "i14")


def fmt(x) -> str:
    """12-significant-digit float formatting for reproducible CSV diffs."""
    return f"{float(x):.12g}"


def exact_report(rho: np.ndarray) -> dict:
    """Full exact analysis of a validated state."""
    g = g_table(rho)
    d = pauli_decompose(rho)
    inv_g = invariants_from_g(g)
    inv_d = invariants_from_decomposition(d)
    m = pt_moments(rho)
    det_pt = ng.det_pt_from_moments(m)
    coeffs_m = ng.coeffs_from_moments(m, det_pt)
    coeffs_g = ng.coeffs_from_g(g)
    n_quartic = ng.solve_negativity(coeffs_g)
    w = ng.witness_from_g(g)
    return {
        "result": {
            "negativity": n_quartic,
            "det_pt": w.det_pt,
            "entangled": w.entangled,
            "path": "g",
        },
        "negativity": {
            "quartic": n_quartic,
            "oracle": negativity_oracle(rho),
        },
        "witness": {
            "det_pt": w.det_pt,
            "entangled": w.entangled,
            "margin": w.margin,
        },
        "g": g.as_dict(),
        "invariants": {
            "from_g": inv_g.as_dict(),
            "from_decomposition": inv_d.as_dict(),
            "max_discrepancy": float(np.max(np.abs(inv_g.as_array() - inv_d.as_array()))),
        },
        "moments": {"pi2": m.pi2, "pi3": m.pi3, "pi4": m.pi4},
        "coefficients": {
            "from_moments": coeffs_m.as_dict(),
            "from_g": coeffs_g.as_dict(),
        },
    }


def pipeline_report_dict(rep: PipelineReport) -> dict:
    return {
        "result": {
            "negativity": rep.negativity,
            "det_pt": rep.det_pt,
            "entangled": rep.entangled,
            "path": rep.path,
        },
        "negativity": {"value": rep.negativity, "std_error": rep.negativity_err},
        "witness": {
            "det_pt": rep.det_pt,
            "std_error": rep.det_pt_err,
            "entangled": rep.entangled,
            "margin": rep.margin,
        },
        "g": {
            name: {"value": rep.g.table[name],
                   "std_error": rep.g.std_errors[name]}
            for name in G_FIELDS
        },
        "n_clamped": rep.g.n_clamped,
        "invariants": rep.invariants.as_dict(),
        "coefficients": rep.coefficients.as_dict(),
        "z_per_config": rep.z_per_config,
        "seed": rep.seed,
        "bootstrap": rep.bootstrap,
        "records": [rec.to_json_dict() for rec in rep.records],
        "estimates": [
            {"name": e.name, "value": e.value, "std_error": e.std_error,
             "config": e.config_id, "pattern": e.pattern, "primary": e.primary}
            for e in rep.estimates
        ],
    }


# Fixed flat column orders for the CSV report forms.
EXACT_CSV_COLUMNS = (
    ("negativity", "det_pt", "entangled", "path")
    + G_FIELDS
    + INVARIANT_FIELDS
    + ("pi2", "pi3", "pi4", "a0", "a1", "a2")
)

SIM_CSV_COLUMNS = (
    ("negativity", "negativity_err", "det_pt", "det_pt_err", "entangled", "path")
    + G_FIELDS
    + tuple(f"{name}_err" for name in G_FIELDS)
    + ("n_clamped", "z_per_config", "seed", "bootstrap")
)


def exact_report_row(rep: dict) -> dict:
    row = {
        "negativity": fmt(rep["result"]["negativity"]),
        "det_pt": fmt(rep["result"]["det_pt"]),
        "entangled": rep["result"]["entangled"],
        "path": rep["result"]["path"],
    }
    row.update({name: fmt(v) for name, v in rep["g"].items()})
    row.update({name: fmt(v) for name, v in rep["invariants"]["from_g"].items()})
    row.update({name: fmt(v) for name, v in rep["moments"].items()})
    row.update({k: fmt(rep["coefficients"]["from_g"][k]) for k in ("a0", "a1", "a2")})
    return row


def sim_report_row(rep: dict) -> dict:
    row = {
        "negativity": fmt(rep["negativity"]["value"]),
        "negativity_err": fmt(rep["negativity"]["std_error"]),
        "det_pt": fmt(rep["witness"]["det_pt"]),
        "det_pt_err": fmt(rep["witness"]["std_error"]),
        "entangled": rep["result"]["entangled"],
        "path": rep["result"]["path"],
        "n_clamped": rep["n_clamped"],
        "z_per_config": rep["z_per_config"],
        "seed": rep["seed"],
        "bootstrap": rep["bootstrap"],
    }
    for name, entry in rep["g"].items():
        row[name] = fmt(entry["value"])
        row[f"{name}_err"] = fmt(entry["std_error"])
    return row


def write_json(data: dict, stream) -> None:
    json.dump(data, stream, indent=1, default=_json_default)
    stream.write("\n")


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_csv_row(columns, row: dict, stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(columns))
    writer.writeheader()
    writer.writerow(row)


SWEEP_CSV_COLUMNS = (
    "p", "negativity_exact", "det_pt_exact", "entangled_exact",
    "negativity_sampled", "negativity_err", "det_pt_sampled", "det_pt_err",
    "entangled_sampled",
)


def write_sweep_csv(rows, stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(SWEEP_CSV_COLUMNS))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
