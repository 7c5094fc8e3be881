"""JSON and CSV formats: polynomial files, family specs and root reports.

A polynomial input is either ``{"terms": [{"zn", "zb", "re", "im"}, ...]}``
or a family spec ``{"family": name, "params": {...}}``.  Complex parameters
may be given as numbers or ``[re, im]`` pairs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Mapping

from . import families
from .classify import ClassTag, classify_polynomial
from .errors import MalformedInput
from .mixedpoly import MixedPolynomial
from .solver.core import RootReport, build_report
from .solver.newton import Root

SIG_DIGITS = 15
FAMILIES = ("lens", "rhie3", "rhie3_printed", "power", "phi", "psi", "rhie_family", "example")


def r15(x: float) -> float:
    """Round to 15 significant digits (the precision of every written number)."""
    return float(f"{float(x):.{SIG_DIGITS}g}")


def _param(params: Mapping, key: str, default: Any = None, required: bool = False):
    if key in params:
        return params[key]
    if required:
        raise MalformedInput(f"missing parameter {key!r}")
    return default


def _bifurcation(params: Mapping, variant: str) -> families.BifurcationSpec:
    base_spec = params.get("base", {"family": "rhie3"})
    base = polynomial_from_dict(base_spec)
    m = _param(params, "m", required=True)
    if not isinstance(m, int):
        raise MalformedInput(f"m must be an integer, got {m!r}")
    gamma = families.split_lens(base)[0][-1]
    if "t_rel" in params:
        t = families.as_complex(params["t_rel"]) * complex(gamma)
    else:
        t = families.as_complex(_param(params, "t", required=True))
    return families.BifurcationSpec(base, m, t, variant)


def family_from_spec(spec: Mapping) -> MixedPolynomial:
    """Build the polynomial described by a family spec.

    ``phi`` and ``psi`` take ``base`` (a polynomial or family spec, default
    ``rhie3``), ``m`` and either ``t`` or ``t_rel`` (``t = t_rel * gamma``).

    Raises
    ------
    MalformedInput
        Unknown family, missing parameters or values outside a constructor's
        domain.
    """
    name = spec.get("family")
    params = spec.get("params", {}) or {}
    if not isinstance(params, Mapping):
        raise MalformedInput("family 'params' must be an object")
    try:
        if name == "lens":
            sys = families.lens_system(_param(params, "masses", required=True),
                                       _param(params, "positions", required=True))
            return families.lens_numerator(sys)
        if name == "rhie3":
            return families.rhie3()
        if name == "rhie3_printed":
            return families.rhie3_printed()
        if name == "example":
            return families.example_f()
        if name == "power":
            return families.power_lens(_param(params, "n", required=True), _param(params, "m", required=True))
        if name == "phi":
            return families.phi_t(_bifurcation(params, "phi"))
        if name == "psi":
            return families.psi_t(_bifurcation(params, "psi"))
        if name == "rhie_family":
            return families.rhie_family(_param(params, "n", required=True),
                                        float(_param(params, "epsilon", required=True)),
                                        float(_param(params, "a", required=True)))
    except MalformedInput:
        raise
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"family {name!r}: {exc}") from None
    raise MalformedInput(f"unknown family {name!r} (expected one of {', '.join(FAMILIES)})")


def polynomial_from_dict(data: Any) -> MixedPolynomial:
    if not isinstance(data, Mapping):
        raise MalformedInput("polynomial input must be a JSON object")
    if "family" in data:
        return family_from_spec(data)
    return MixedPolynomial.from_dict(data)


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON: {exc}") from None


def load_polynomial(path: str | Path) -> MixedPolynomial:
    """Read a polynomial or family-spec JSON file."""
    return polynomial_from_dict(load_json(path))


# -- reports -----------------------------------------------------------------


def _poly_dict(f: MixedPolynomial) -> dict:
    return {"terms": [{"zn": nu, "zb": mu, "re": r15(c.real), "im": r15(c.imag)}
                      for (nu, mu), c in f.items()]}


def report_to_dict(report: RootReport, tag: ClassTag | None = None) -> dict:
    """JSON-ready form of ``report``; floats carry 15 significant digits."""
    tag = tag or classify_polynomial(report.polynomial)
    return {
        "rho": report.rho,
        "beta": report.beta,
        "class": tag.to_dict(),
        "class_label": str(tag),
        "winding": report.winding,
        "winding_certified": report.winding_certified,
        "degenerate_found": report.degenerate_found,
        "certification_radius": None if report.certification_radius is None else r15(report.certification_radius),
        # sorted after rounding so that re-reading keeps the order
        "roots": sorted(
            (
                {
                    "re": r15(r.location.real),
                    "im": r15(r.location.imag),
                    "sign": r.sign,
                    "jacobian": r15(r.jacobian),
                    "residual": r15(r.residual),
                }
                for r in report.roots
            ),
            key=lambda d: (d["re"], d["im"]),
        ),
        "polynomial": _poly_dict(report.polynomial),
    }


def report_from_dict(data: Mapping) -> RootReport:
    try:
        f = MixedPolynomial.from_dict(data["polynomial"])
        roots = [
            Root(complex(r["re"], r["im"]), float(r["jacobian"]), r["sign"], float(r["residual"]))
            for r in data["roots"]
        ]
        report = build_report(f, roots, data.get("winding"), data.get("certification_radius"))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad report JSON: {exc}") from None
    return report


def dumps_report(report: RootReport, tag: ClassTag | None = None) -> str:
    return json.dumps(report_to_dict(report, tag), indent=2) + "\n"


def write_report_json(report: RootReport, path: str | Path, tag: ClassTag | None = None) -> None:
    Path(path).write_text(dumps_report(report, tag))


def write_report_csv(report: RootReport, path: str | Path) -> None:
    """One row per root: ``re, im, sign, jacobian, residual``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im", "sign", "jacobian", "residual"])
        for r in report.roots:
            w.writerow([f"{r.location.real:.15g}", f"{r.location.imag:.15g}", r.sign,
                        f"{r.jacobian:.15g}", f"{r.residual:.15g}"])
