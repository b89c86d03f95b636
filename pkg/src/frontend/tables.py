"""Tabular text output for the command-line interface."""
from typing import Any, Dict, List, Optional, Sequence
import pandas as pd
from src.dgcat.homotopy import H0Category
from src.graded.complexes import Complex, cohomology_basis


def render_records(records: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """Render records as a fixed-width table; ``(none)`` when empty."""
    if not records:
        return "(none)"
    df = pd.DataFrame(list(records), columns=columns)
    return df.fillna("").to_string(index=False)


def cohomology_records(c: Complex) -> List[Dict[str, Any]]:
    """Per degree: dimension of the space, of cocycles, of coboundaries and of cohomology."""
    rows = []
    for degree in c.space.degrees():
        basis = cohomology_basis(c, degree)
        exact = len(basis.boundary_rows)
        rows.append({
            "degree": degree,
            "dim": c.space.dim(degree),
            "cocycles": exact + basis.dimension,
            "coboundaries": exact,
            "cohomology": basis.dimension,
        })
    return rows


def h0_records(h0: H0Category) -> List[Dict[str, Any]]:
    """Per pair of objects: dimension of H0 and the canonical representatives."""
    p = h0.presentation
    rows = []
    for x in h0.objects:
        for y in h0.objects:
            basis = h0.bases[(x, y)]
            reps = [p.from_coords(x, y, 0, list(rep)).format() for rep in basis.representatives]
            rows.append({"source": x, "target": y, "dim": basis.dimension, "basis": "; ".join(reps)})
    return rows


def transcript_records(transcript: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Flatten transcript entries into display rows."""
    rows = []
    for entry in transcript:
        where = entry.get("object") or ", ".join(entry.get("tuple", []))
        detail = entry.get("representative") or entry.get("obstruction") or entry.get("rhs", "")
        rows.append({"stage": entry["stage"], "input": where, "data": detail,
                     "value": entry.get("solution", entry.get("representative", ""))})
    return rows
