"""``lensroots`` command line: solve, sweep, verify and plot.

Exit codes: 0 success, 1 degenerate roots (or failed checks for ``verify``),
2 non-isolated zero set, 3 malformed input, 4 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import families as fam
from .classify import classify_polynomial
from .errors import LensRootsError, MalformedInput, NonIsolatedZeroSet
from .fileio import (
    load_json,
    load_polynomial,
    polynomial_from_dict,
    report_from_dict,
    write_report_csv,
    write_report_json,
)
from .plotting import PlotSpec, write_svg
from .solver.core import RootReport, solve_all
from .suites import SUITES, junit_xml, report_checks, run_suite

EXIT_OK, EXIT_DEGENERATE, EXIT_NONISOLATED, EXIT_MALFORMED, EXIT_SOLVER = 0, 1, 2, 3, 4
TRACK_GATE = 0.75


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are malformed input; keep exit 2 for non-isolated sets
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def g15(x: float) -> str:
    return f"{x:.15g}"


def summary_line(report: RootReport) -> str:
    return f"rho={report.rho} beta={report.beta} class={classify_polynomial(report.polynomial)}"


# -- solve -------------------------------------------------------------------


def cmd_solve(args) -> int:
    f = load_polynomial(args.input)
    report = solve_all(f)
    out = Path(args.json) if args.json else Path(args.input).with_suffix(".report.json")
    write_report_json(report, out)
    if args.csv:
        write_report_csv(report, args.csv)
    print(summary_line(report))
    if report.degenerate_found:
        print("warning: degenerate roots present; rho and beta are unreliable", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


# -- sweep -------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """A ``phi``/``psi`` family spec swept over ``t = start * ratio^k``.

    With ``relative`` (the default) the t values are multiples of ``gamma``;
    the table always records the actual t.
    ``window`` (x0, x1, y0, y1) limits which roots are tracked.
    """

    family: dict
    start: complex
    ratio: float
    count: int
    relative: bool = True
    include_zero: bool = False
    window: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        if self.family.get("family") not in ("phi", "psi"):
            raise MalformedInput("sweep needs a 'phi' or 'psi' family spec")
        if self.count < 1:
            raise MalformedInput("count must be at least 1")
        if self.start == 0 or self.ratio == 0:
            raise MalformedInput("t values must be nonzero (use include_zero for t = 0)")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        try:
            t = d["t"]
            window = d.get("window")
            return cls(
                family=dict(d["family"]),
                start=complex(fam.as_complex(t["start"])),
                ratio=float(t.get("ratio", 0.5)),
                count=int(t.get("count", 1)),
                relative=bool(d.get("relative", True)),
                include_zero=bool(d.get("include_zero", False)),
                window=None if window is None else tuple(float(v) for v in window),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad sweep spec: {exc}") from None

    def t_values(self) -> list[complex]:
        ts = [self.start * self.ratio**k for k in range(self.count)]
        return ([0j] if self.include_zero else []) + ts


def track(prev: dict[int, tuple[complex, str]], current, next_id: int, gate: float = TRACK_GATE):
    """Assign ids to ``current`` roots by nearest-neighbour matching to ``prev``.

    Distance is ``|z - w| / (1 + max(|z|, |w|))``; pairs are matched greedily
    in order of distance, never across opposite signs, and only below ``gate``.
    Returns ``(ids, next_id)``.
    """
    pairs = []
    for i, r in enumerate(current):
        for k, (w, sign) in prev.items():
            if sign != r.sign:
                continue
            z = r.location
            pairs.append((abs(z - w) / (1 + max(abs(z), abs(w))), i, k))
    pairs.sort()
    ids: list[int | None] = [None] * len(current)
    taken = set()
    for dist, i, k in pairs:
        if dist >= gate or ids[i] is not None or k in taken:
            continue
        ids[i] = k
        taken.add(k)
    for i in range(len(ids)):
        if ids[i] is None:
            ids[i] = next_id
            next_id += 1
    return ids, next_id


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Rows of the trajectory table: one per (t, root) plus a summary per t."""
    params = dict(spec.family.get("params", {}))
    params.pop("t", None)
    params.pop("t_rel", None)
    try:
        base = polynomial_from_dict(params.get("base", {"family": "rhie3"}))
        gamma = complex(fam.split_lens(base)[0][-1])
    except (LensRootsError, ValueError) as exc:
        raise MalformedInput(f"sweep base: {exc}") from None
    rows: list[dict] = []
    prev: dict[int, tuple[complex, str]] = {}
    next_id = 0
    for t in spec.t_values():
        if spec.relative:
            t = t * gamma
        step_spec = {**spec.family, "params": {**params, "t": [t.real, t.imag]}}
        try:
            report = solve_all(polynomial_from_dict(step_spec))
        except LensRootsError as exc:
            rows.append({"kind": "error", "t": t, "note": str(exc)})
            continue
        roots = [r for r in report.roots if _in_window(r.location, spec.window)]
        ids, next_id = track(prev, roots, next_id)
        prev = {i: (r.location, r.sign) for i, r in zip(ids, roots)}
        for i, r in sorted(zip(ids, roots), key=lambda p: p[0]):
            rows.append({"kind": "root", "t": t, "root_id": i, "re": r.location.real,
                         "im": r.location.imag, "sign": r.sign})
        rows.append({"kind": "summary", "t": t, "rho": report.rho, "beta": report.beta,
                     "note": "degenerate" if report.degenerate_found else ""})
    return rows


def _in_window(z: complex, window) -> bool:
    if window is None:
        return True
    x0, x1, y0, y1 = window
    return x0 <= z.real <= x1 and y0 <= z.imag <= y1


SWEEP_COLUMNS = ["kind", "t_re", "t_im", "root_id", "re", "im", "sign", "rho", "beta", "note"]


def write_sweep_csv(rows: Sequence[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            t = complex(row["t"])
            w.writerow([
                row["kind"], g15(t.real), g15(t.imag), row.get("root_id", ""),
                g15(row["re"]) if "re" in row else "", g15(row["im"]) if "im" in row else "",
                row.get("sign", ""), row.get("rho", ""), row.get("beta", ""), row.get("note", ""),
            ])


def cmd_sweep(args) -> int:
    spec = SweepSpec.from_dict(load_json(args.spec))
    rows = run_sweep(spec)
    write_sweep_csv(rows, args.out)
    for row in rows:
        if row["kind"] == "summary":
            print(f"t={g15(abs(row['t']))} rho={row['rho']} beta={row['beta']}")
        elif row["kind"] == "error":
            print(f"t={g15(abs(row['t']))} error: {row['note']}")
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite == "report":
        if not args.report:
            raise MalformedInput("suite 'report' needs --report FILE")
        report = report_from_dict(load_json(args.report))
        results = [("report", c, 0.0) for c in report_checks(report, args.bifurcation)]
    else:
        if args.suite not in SUITES and args.suite != "all":
            raise MalformedInput(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, report, all")
        results = run_suite(args.suite)
    for suite, c, _ in results:
        print(f"{'PASS' if c.passed else 'FAIL'} {suite}: {c.name} ({c.detail})")
    fails = sum(not c.passed for _, c, _ in results)
    print(f"{len(results) - fails}/{len(results)} checks passed")
    if args.junit:
        Path(args.junit).write_text(junit_xml(results, args.suite))
    return EXIT_OK if fails == 0 else 1


# -- plot --------------------------------------------------------------------


def _window(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise MalformedInput(f"window must be x0,x1,y0,y1: {text!r}") from None
    if len(vals) != 4:
        raise MalformedInput(f"window must have four numbers: {text!r}")
    return vals


def cmd_plot(args) -> int:
    try:
        spec = PlotSpec(_window(args.window), args.samples, args.roots)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    f = load_polynomial(args.input)
    roots = solve_all(f).roots if args.roots else ()
    write_svg(f, spec, args.out, roots)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lensroots", description="Roots of mixed polynomials f(z, zbar).")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a polynomial or family spec")
    s.add_argument("input")
    s.add_argument("--json", help="report JSON path (default: <input>.report.json)")
    s.add_argument("--csv", help="also write the root table as CSV")
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("sweep", help="track roots of a phi/psi family over t")
    w.add_argument("spec")
    w.add_argument("--out", required=True)
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of {', '.join(SUITES)}, report, all")
    v.add_argument("--junit", help="write JUnit XML here")
    v.add_argument("--report", help="report JSON for the 'report' suite")
    v.add_argument("--bifurcation", action="store_true",
                   help="apply the phi_t rho range to the 'report' suite")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("plot", help="SVG of the zero curves of Re f and Im f")
    g.add_argument("input")
    g.add_argument("--window", required=True, help="x0,x1,y0,y1")
    g.add_argument("--samples", type=int, default=600)
    g.add_argument("--out", required=True)
    g.add_argument("--roots", action="store_true", help="mark solved roots")
    g.set_defaults(func=cmd_plot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # "--window -1,1,-1,1" would otherwise read the value as an option
    for i in range(len(argv) - 1):
        if argv[i] == "--window":
            argv[i:i + 2] = [f"--window={argv[i + 1]}", ""]
    args = build_parser().parse_args([a for a in argv if a != ""])
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NonIsolatedZeroSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONISOLATED
    except (MalformedInput, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except LensRootsError as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
