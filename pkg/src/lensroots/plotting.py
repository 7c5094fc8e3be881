"""Zero curves of ``Re f`` and ``Im f`` by marching squares, written as SVG."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .mixedpoly import MixedPolynomial, evaluate
from .solver.newton import Root

GREEN = "#1a9850"
RED = "#d73027"

# cell edges: 0 bottom (c00-c10), 1 right (c10-c11), 2 top (c01-c11), 3 left (c00-c01);
# case index bits: 1 c00, 2 c10, 4 c11, 8 c01 (bit set = positive)
_CASES: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),), 6: ((0, 2),), 7: ((3, 2),),
    8: ((2, 3),), 9: ((0, 2),), 11: ((1, 2),), 12: ((1, 3),), 13: ((0, 1),), 14: ((0, 3),),
}
# saddles, keyed by (case, center positive)
_SADDLES: dict[tuple[int, bool], tuple[tuple[int, int], ...]] = {
    (5, True): ((0, 1), (2, 3)), (5, False): ((3, 0), (1, 2)),
    (10, True): ((3, 0), (1, 2)), (10, False): ((0, 1), (2, 3)),
}


@dataclass(frozen=True)
class PlotSpec:
    """Sampling window ``(x0, x1, y0, y1)`` with ``samples`` lattice points per axis."""

    window: tuple[float, float, float, float]
    samples: int = 600
    show_roots: bool = False

    def __post_init__(self):
        x0, x1, y0, y1 = (float(v) for v in self.window)
        if not (x0 < x1 and y0 < y1):
            raise ValueError(f"degenerate window {self.window}")
        if int(self.samples) < 16:
            raise ValueError("samples must be at least 16")
        object.__setattr__(self, "window", (x0, x1, y0, y1))
        object.__setattr__(self, "samples", int(self.samples))

    @property
    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        x0, x1, y0, y1 = self.window
        return np.linspace(x0, x1, self.samples), np.linspace(y0, y1, self.samples)

    @property
    def cell_diagonal(self) -> float:
        x0, x1, y0, y1 = self.window
        return float(np.hypot((x1 - x0) / (self.samples - 1), (y1 - y0) / (self.samples - 1)))


@dataclass(frozen=True)
class Segments:
    """Line pieces ``(K, 2)`` complex endpoints, with the lattice cell each came from."""

    start: np.ndarray
    end: np.ndarray
    cell: np.ndarray

    def __len__(self):
        return len(self.start)


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray, center=None) -> Segments:
    """Zero-level segments of ``values[iy, ix]`` sampled at ``xs[ix] + i ys[iy]``.

    Crossings are placed by linear interpolation along cell edges.  Saddle
    cells are resolved by the sign of ``center(points)``, a callable giving the
    field at the cell centers; without it the centre is the corner average.
    """
    v = np.asarray(values, dtype=float)
    c00, c10, c11, c01 = v[:-1, :-1], v[:-1, 1:], v[1:, 1:], v[1:, :-1]
    case = (c00 > 0) * 1 + (c10 > 0) * 2 + (c11 > 0) * 4 + (c01 > 0) * 8
    X0, Y0 = np.meshgrid(xs[:-1], ys[:-1])
    X1, Y1 = np.meshgrid(xs[1:], ys[1:])

    def cross(va, vb, pa, pb):
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.clip(va / (va - vb), 0.0, 1.0)
        t = np.where(np.isfinite(t), t, 0.5)
        return pa + t * (pb - pa)

    p00, p10, p11, p01 = X0 + 1j * Y0, X1 + 1j * Y0, X1 + 1j * Y1, X0 + 1j * Y1
    edge = np.stack([
        cross(c00, c10, p00, p10),
        cross(c10, c11, p10, p11),
        cross(c01, c11, p01, p11),
        cross(c00, c01, p00, p01),
    ])
    flat_edge = edge.reshape(4, -1)
    flat_case = case.ravel()
    starts, ends, cells = [], [], []

    def emit(idx, pairs):
        for a, b in pairs:
            starts.append(flat_edge[a, idx])
            ends.append(flat_edge[b, idx])
            cells.append(idx)

    for k, pairs in _CASES.items():
        emit(np.flatnonzero(flat_case == k), pairs)
    saddle = np.flatnonzero((flat_case == 5) | (flat_case == 10))
    if saddle.size:
        mid = 0.5 * (p00.ravel()[saddle] + p11.ravel()[saddle])
        if center is not None:
            cv = np.asarray(center(mid), dtype=float)
        else:
            cv = 0.25 * (c00 + c10 + c11 + c01).ravel()[saddle]
        for k in (5, 10):
            for pos in (True, False):
                sel = saddle[(flat_case[saddle] == k) & ((cv > 0) == pos)]
                emit(sel, _SADDLES[(k, pos)])
    if not starts:
        empty = np.zeros(0, dtype=complex)
        return Segments(empty, empty, np.zeros(0, dtype=int))
    start = np.concatenate(starts)
    end = np.concatenate(ends)
    cell = np.concatenate(cells)
    order = np.lexsort((start.imag, start.real, cell))
    return Segments(start[order], end[order], cell[order])


def zero_curves(f: MixedPolynomial, spec: PlotSpec) -> tuple[Segments, Segments]:
    """``(green, red)``: segments of ``Re f = 0`` and ``Im f = 0``."""
    xs, ys = spec.axes
    vals = evaluate(f, xs[None, :] + 1j * ys[:, None])
    green = marching_squares(vals.real, xs, ys, lambda z: evaluate(f, z).real)
    red = marching_squares(vals.imag, xs, ys, lambda z: evaluate(f, z).imag)
    return green, red


def _segment_hits(a0, a1, b0, b1, tol) -> np.ndarray:
    """Intersection points of segment pairs ``a0-a1`` and ``b0-b1`` (arrays);
    ``tol`` widens the parameter range ``[0, 1]`` on both ends."""
    da, db, w = a1 - a0, b1 - b0, b0 - a0
    den = (da.conjugate() * db).imag
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (w.conjugate() * db).imag / den
        u = (w.conjugate() * da).imag / den
    ok = (np.abs(den) > 0) & (s >= -tol) & (s <= 1 + tol) & (u >= -tol) & (u <= 1 + tol)
    return (a0 + s * da)[ok]


def curve_intersections(green: Segments, red: Segments, merge: float, tol: float = 1e-9) -> np.ndarray:
    """Points where a green and a red segment cross, merged within ``merge``.

    Segments never leave their lattice cell, so only same-cell pairs are tested.
    """
    if len(green) == 0 or len(red) == 0:
        return np.zeros(0, dtype=complex)
    gi, ri = _pairs_by_cell(green.cell, red.cell)
    pts = _segment_hits(green.start[gi], green.end[gi], red.start[ri], red.end[ri], tol)
    out: list[complex] = []
    for p in pts[np.lexsort((pts.imag, pts.real))]:
        if all(abs(p - q) > merge for q in out):
            out.append(complex(p))
    return np.array(out, dtype=complex)


def _pairs_by_cell(gc: np.ndarray, rc: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    gi, ri = [], []
    r_sorted = np.argsort(rc, kind="stable")
    rcs = rc[r_sorted]
    lo = np.searchsorted(rcs, gc, side="left")
    hi = np.searchsorted(rcs, gc, side="right")
    for i, (a, b) in enumerate(zip(lo, hi)):
        for j in r_sorted[a:b]:
            gi.append(i)
            ri.append(j)
    return np.array(gi, dtype=int), np.array(ri, dtype=int)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _path(seg: Segments) -> str:
    return " ".join(
        f"M{_fmt(a.real)} {_fmt(a.imag)}L{_fmt(b.real)} {_fmt(b.imag)}" for a, b in zip(seg.start, seg.end)
    )


def render_svg(f: MixedPolynomial, spec: PlotSpec, roots: Sequence[Root] = (), size: int = 600) -> str:
    """SVG of the zero curves of ``Re f`` (green) and ``Im f`` (red).

    Roots are drawn as filled (positive) or hollow (negative / degenerate)
    circles.  Output depends only on the inputs.
    """
    green, red = zero_curves(f, spec)
    x0, x1, y0, y1 = spec.window
    sx, sy = size / (x1 - x0), size / (y1 - y0)
    marker = 0.008 * min(x1 - x0, y1 - y0)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        # world coordinates inside the group, y pointing up
        f'<g transform="matrix({_fmt(sx)} 0 0 {_fmt(-sy)} {_fmt(-x0 * sx)} {_fmt(y1 * sy)})">',
        f'<path d="M{_fmt(x0)} 0H{_fmt(x1)}M0 {_fmt(y0)}V{_fmt(y1)}" stroke="#bbbbbb" '
        'stroke-width="0.5" fill="none" vector-effect="non-scaling-stroke"/>',
        f'<path class="re-zero" d="{_path(green)}" stroke="{GREEN}" stroke-width="1.2" fill="none" '
        'vector-effect="non-scaling-stroke"/>',
        f'<path class="im-zero" d="{_path(red)}" stroke="{RED}" stroke-width="1.2" fill="none" '
        'vector-effect="non-scaling-stroke"/>',
    ]
    for r in roots:
        z = r.location
        if not (x0 <= z.real <= x1 and y0 <= z.imag <= y1):
            continue
        fill = "black" if r.sign == "+" else "white"
        lines.append(
            f'<circle class="root" data-sign="{r.sign}" cx="{_fmt(z.real)}" cy="{_fmt(z.imag)}" '
            f'r="{_fmt(marker)}" fill="{fill}" stroke="black" stroke-width="1" '
            'vector-effect="non-scaling-stroke"/>'
        )
    lines += ["</g>", "</svg>"]
    return "\n".join(lines) + "\n"


def write_svg(f: MixedPolynomial, spec: PlotSpec, path: str | Path, roots: Sequence[Root] = ()) -> None:
    Path(path).write_text(render_svg(f, spec, roots))


def parse_svg_segments(text: str, spec: PlotSpec) -> tuple[Segments, Segments]:
    """Recover the green and red segments from :func:`render_svg` output.

    Cell indices are recomputed from segment midpoints on the lattice of
    ``spec``.
    """
    x0, x1, y0, y1 = spec.window
    n = spec.samples - 1
    dx, dy = (x1 - x0) / n, (y1 - y0) / n

    def grab(cls):
        m = re.search(rf'class="{cls}" d="([^"]*)"', text)
        nums = re.findall(r"M([-\d.e+]+) ([-\d.e+]+)L([-\d.e+]+) ([-\d.e+]+)", m.group(1) if m else "")
        arr = np.array(nums, dtype=float).reshape(-1, 4)
        start, end = arr[:, 0] + 1j * arr[:, 1], arr[:, 2] + 1j * arr[:, 3]
        mid = 0.5 * (start + end)
        ix = np.clip(np.floor((mid.real - x0) / dx), 0, n - 1).astype(int)
        iy = np.clip(np.floor((mid.imag - y0) / dy), 0, n - 1).astype(int)
        return Segments(start, end, iy * n + ix)

    return grab("re-zero"), grab("im-zero")
