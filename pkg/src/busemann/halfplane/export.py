"""Polyline and geodesic serialisation (CSV ``x,y`` with ``#`` comments, JSON)."""

from __future__ import annotations

import io
import math

import numpy as np

from .geometry import GenericLevelSet, StadiumParabola, Vertical


def polyline_csv(points, label: str | None = None, comments=()) -> str:
    buf = io.StringIO()
    if label is not None:
        buf.write(f"# arc: {label}\n")
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write("x,y\n")
    for x, y in np.asarray(points, dtype=float).reshape(-1, 2):
        buf.write(f"{float(x)!r},{float(y)!r}\n")
    return buf.getvalue()


def trace_csv(trace) -> str:
    """Every arc of a :class:`SphereTrace` as labelled CSV blocks, poles last."""
    parts = [polyline_csv(a.points, label) for label, a in trace.arcs.items()]
    parts.append(polyline_csv(np.array(trace.poles), "poles"))
    return "".join(parts)


def read_polyline_csv(text: str) -> dict[str, np.ndarray]:
    """Parse CSV written by :func:`polyline_csv`; blocks keyed by arc label."""
    blocks: dict[str, list] = {}
    label = "polyline"
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("arc:"):
                label = body[4:].strip()
                blocks.setdefault(label, [])
            continue
        if line == "x,y":
            blocks.setdefault(label, [])
            continue
        x, y = line.split(",")
        blocks.setdefault(label, []).append((float(x), float(y)))
    return {k: np.array(v, dtype=float).reshape(-1, 2) for k, v in blocks.items()}


def _num(v):
    return None if v is None or (isinstance(v, float) and not math.isfinite(v)) else float(v)


def geodesic_report(g, K=None, residuals=()) -> dict:
    """``{variant, lambda, a, K, residuals}`` (``k`` added for level sets)."""
    rep = {"variant": type(g).__name__, "lambda": None, "a": float(g.a), "K": _num(K), "residuals": [float(r) for r in residuals]}
    if isinstance(g, StadiumParabola):
        rep["lambda"] = float(g.lam)
    elif isinstance(g, GenericLevelSet):
        rep["k"] = float(g.k)
        if g.polyline is not None:
            rep["polyline"] = np.asarray(g.polyline).tolist()
    elif not isinstance(g, Vertical):
        raise TypeError(f"not a geodesic: {g!r}")
    return rep
