"""
Sparse mixed polynomials of one complex variable.

A mixed polynomial is a finite sum ``sum a[nu, mu] * z**nu * conj(z)**mu``
with complex coefficients.  It is not holomorphic in general, so besides the
usual ring operations we need the two Wirtinger derivatives (``d/dz`` and
``d/dzbar`` treating ``z`` and ``zbar`` as independent) to build the real
Jacobian of ``(Re f, Im f)``.

Instances are immutable.  Coefficients are stored as Python complex numbers in
a dict keyed by the exponent pair ``(nu, mu)``; entries whose magnitude falls
below ``TRIM_RTOL * max|a|`` are dropped on construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

import numpy as np

from .errors import MalformedInput

__all__ = [
    "TRIM_RTOL",
    "MixedPolynomial",
    "DegreeProfile",
    "Z",
    "ZBAR",
    "ONE",
    "constant",
    "monomial",
    "holomorphic",
    "evaluate",
    "evaluate_naive",
    "wirtinger",
    "conjugate_swap",
    "degrees",
    "recenter",
    "add",
    "multiply",
    "scale",
    "power",
    "degree_part",
]

TRIM_RTOL = 1e-13


class MixedPolynomial:
    """Immutable sparse map ``(nu, mu) -> a`` for ``sum a z^nu zbar^mu``.

    Parameters
    ----------
    terms : mapping or iterable of ((nu, mu), coefficient)
        Exponent pairs must be non-negative integers.  Pairs given twice in an
        iterable are summed.
    trim : bool
        Drop coefficients below ``TRIM_RTOL`` times the largest magnitude.
    """

    __slots__ = ("_terms", "_dense", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), trim: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], complex] = {}
        for key, coef in items:
            nu, mu = key
            if int(nu) != nu or int(mu) != mu or nu < 0 or mu < 0:
                raise ValueError(f"exponents must be non-negative integers, got {key!r}")
            k = (int(nu), int(mu))
            acc[k] = acc.get(k, 0j) + complex(coef)
        if acc:
            big = max(abs(c) for c in acc.values())
            cut = TRIM_RTOL * big if trim else 0.0
            acc = {k: c for k, c in acc.items() if abs(c) > cut and c != 0}
        self._terms = dict(sorted(acc.items()))
        self._dense = None
        self._hash = None

    # -- basic protocol -------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], complex]:
        """A copy of the term map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, nu: int, mu: int) -> complex:
        return self._terms.get((nu, mu), 0j)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, MixedPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, float, complex)):
            return self == constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "MixedPolynomial(0)"
        parts = []
        for (nu, mu), c in self._terms.items():
            mono = "".join(
                s for s in (
                    "" if nu == 0 else ("z" if nu == 1 else f"z^{nu}"),
                    "" if mu == 0 else ("zb" if mu == 1 else f"zb^{mu}"),
                ) if s
            )
            parts.append(f"({c:.6g}){'*' + mono if mono else ''}")
        return "MixedPolynomial(" + " + ".join(parts) + ")"

    def __call__(self, z):
        return evaluate(self, z)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, scale(_coerce(other), -1))

    def __rsub__(self, other):
        return add(_coerce(other), scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, MixedPolynomial):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return scale(self, 1 / complex(other))

    def __pow__(self, k: int):
        return power(self, k)

    # -- views ------------------------------------------------------------

    def dense(self) -> np.ndarray:
        """Coefficient array ``A[nu, mu]`` of shape ``(deg_z+1, deg_zbar+1)``."""
        if self._dense is None:
            if not self._terms:
                arr = np.zeros((1, 1), dtype=complex)
            else:
                n = max(k[0] for k in self._terms)
                m = max(k[1] for k in self._terms)
                arr = np.zeros((n + 1, m + 1), dtype=complex)
                for (nu, mu), c in self._terms.items():
                    arr[nu, mu] = c
            arr.setflags(write=False)
            self._dense = arr
        return self._dense

    def slice_zbar(self, mu: int) -> np.ndarray:
        """Ascending coefficients in ``z`` of the ``zbar**mu`` slice."""
        a = self.dense()
        if mu >= a.shape[1]:
            return np.zeros(1, dtype=complex)
        return np.trim_zeros(a[:, mu].copy(), "b") if np.any(a[:, mu]) else np.zeros(1, dtype=complex)

    def magnitude_scale(self, z) -> np.ndarray | float:
        """``sum |a| |z|^(nu+mu)``: the size of f's terms at ``z``."""
        r = np.abs(z)
        s = 0.0
        for (nu, mu), c in self._terms.items():
            s = s + abs(c) * r ** (nu + mu)
        return s

    def derivative_scale(self, z) -> np.ndarray | float:
        """``sum |a| (nu+mu) |z|^(nu+mu-1)``: bounds ``|f_z| + |f_zbar|``."""
        r = np.abs(z)
        s = 0.0
        for (nu, mu), c in self._terms.items():
            d = nu + mu
            if d:
                s = s + abs(c) * d * r ** (d - 1)
        return s

    def max_coefficient(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self._terms.values())

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"zn": nu, "zb": mu, "re": c.real, "im": c.imag}
                for (nu, mu), c in self._terms.items()
            ]
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MixedPolynomial":
        try:
            raw = data["terms"]
        except (KeyError, TypeError):
            raise MalformedInput("polynomial JSON needs a 'terms' list") from None
        seen = set()
        out = []
        for t in raw:
            try:
                nu, mu = t["zn"], t["zb"]
                c = complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedInput(f"bad term {t!r}: {exc}") from None
            if not (isinstance(nu, int) and isinstance(mu, int)) or nu < 0 or mu < 0:
                raise MalformedInput(f"exponents must be non-negative integers: {t!r}")
            if (nu, mu) in seen:
                raise MalformedInput(f"duplicate exponent pair ({nu}, {mu})")
            seen.add((nu, mu))
            out.append(((nu, mu), c))
        return cls(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "MixedPolynomial":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DegreeProfile:
    """Holomorphic, anti-holomorphic and mixed degree of a polynomial.

    ``top_is_monomial`` is true when the degree-``mixed`` part is a single
    term ``c z^n zbar^m``; ``top_exponents`` and ``top_coefficient`` then
    describe it (otherwise they hold the first top-degree term).
    """

    holo: int
    antiholo: int
    mixed: int
    top_is_monomial: bool
    top_coefficient: complex
    top_exponents: tuple[int, int]


def _coerce(x) -> MixedPolynomial:
    if isinstance(x, MixedPolynomial):
        return x
    return constant(x)


def constant(c) -> MixedPolynomial:
    return MixedPolynomial({(0, 0): c})


def monomial(nu: int, mu: int, c=1.0) -> MixedPolynomial:
    return MixedPolynomial({(nu, mu): c})


def holomorphic(coeffs, conj: bool = False) -> MixedPolynomial:
    """Polynomial in ``z`` (or in ``zbar`` if ``conj``) from ascending coefficients."""
    if conj:
        return MixedPolynomial({(0, k): c for k, c in enumerate(coeffs)})
    return MixedPolynomial({(k, 0): c for k, c in enumerate(coeffs)})


Z = monomial(1, 0)
ZBAR = monomial(0, 1)
ONE = constant(1.0)


def evaluate(f: MixedPolynomial, z):
    """Value of ``f`` at ``z`` (scalar or array).

    Horner in ``z`` for each ``zbar**mu`` slice, then Horner in ``zbar``
    over the slices.
    """
    a = f.dense()
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    out = np.zeros_like(z)
    for mu in range(a.shape[1] - 1, -1, -1):
        col = a[:, mu]
        inner = np.zeros_like(z)
        for nu in range(a.shape[0] - 1, -1, -1):
            inner = inner * z + col[nu]
        out = out * zb + inner
    return out[()] if out.ndim == 0 else out


def evaluate_naive(f: MixedPolynomial, z):
    """Term-by-term sum; used only to cross-check :func:`evaluate`."""
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    out = np.zeros_like(z)
    for (nu, mu), c in f.items():
        out = out + c * z**nu * zb**mu
    return out[()] if out.ndim == 0 else out


def wirtinger(f: MixedPolynomial) -> tuple[MixedPolynomial, MixedPolynomial]:
    """Return ``(df/dz, df/dzbar)`` with ``z`` and ``zbar`` independent."""
    fz = MixedPolynomial({(nu - 1, mu): nu * c for (nu, mu), c in f.items() if nu >= 1}, trim=False)
    fzb = MixedPolynomial({(nu, mu - 1): mu * c for (nu, mu), c in f.items() if mu >= 1}, trim=False)
    return fz, fzb


def conjugate_swap(f: MixedPolynomial) -> MixedPolynomial:
    """``sum conj(a[nu, mu]) z^mu zbar^nu``, whose value at ``z`` is ``conj(f(z))``."""
    return MixedPolynomial({(mu, nu): c.conjugate() for (nu, mu), c in f.items()}, trim=False)


def degree_part(f: MixedPolynomial, ell: int) -> MixedPolynomial:
    """The homogeneous piece ``f_ell``: terms with ``nu + mu == ell``."""
    return MixedPolynomial({k: c for k, c in f.items() if k[0] + k[1] == ell}, trim=False)


def degrees(f: MixedPolynomial) -> DegreeProfile:
    if f.is_zero():
        raise ValueError("zero polynomial has no degree")
    keys = list(f.terms)
    holo = max(k[0] for k in keys)
    antiholo = max(k[1] for k in keys)
    mixed = max(k[0] + k[1] for k in keys)
    top = [(k, f.coefficient(*k)) for k in keys if k[0] + k[1] == mixed]
    (exps, coef) = top[0]
    return DegreeProfile(holo, antiholo, mixed, len(top) == 1, coef, exps)


def add(f: MixedPolynomial, g: MixedPolynomial) -> MixedPolynomial:
    acc = dict(f.terms)
    for k, c in g.items():
        acc[k] = acc.get(k, 0j) + c
    return _trimmed_sum(acc, f, g)


def _trimmed_sum(acc, f, g):
    # cancellation noise is judged against the inputs, not the (possibly tiny) result
    big = max(f.max_coefficient(), g.max_coefficient())
    return MixedPolynomial({k: c for k, c in acc.items() if abs(c) > TRIM_RTOL * big}, trim=False)


def scale(f: MixedPolynomial, c) -> MixedPolynomial:
    c = complex(c)
    if c == 0:
        return MixedPolynomial()
    return MixedPolynomial({k: c * a for k, a in f.items()}, trim=False)


def multiply(f: MixedPolynomial, g: MixedPolynomial) -> MixedPolynomial:
    acc: dict[tuple[int, int], complex] = {}
    big = 0.0
    for (n1, m1), a in f.items():
        for (n2, m2), b in g.items():
            k = (n1 + n2, m1 + m2)
            p = a * b
            big = max(big, abs(p))
            acc[k] = acc.get(k, 0j) + p
    return MixedPolynomial({k: c for k, c in acc.items() if abs(c) > TRIM_RTOL * big}, trim=False)


def power(f: MixedPolynomial, k: int) -> MixedPolynomial:
    if k < 0:
        raise ValueError("negative powers are not polynomials")
    out = ONE
    for _ in range(k):
        out = multiply(out, f)
    return out


def recenter(f: MixedPolynomial, c) -> MixedPolynomial:
    """Expand ``g(u, ubar) = f(u - c, conj(u - c))``.

    Each term is expanded with the binomial theorem directly so no
    intermediate polynomial products are needed.
    """
    c = complex(c)
    cb = c.conjugate()
    acc: dict[tuple[int, int], complex] = {}
    big = 0.0
    for (nu, mu), a in f.items():
        for i in range(nu + 1):
            ci = comb(nu, i) * (-c) ** (nu - i)
            for j in range(mu + 1):
                p = a * ci * comb(mu, j) * (-cb) ** (mu - j)
                big = max(big, abs(p))
                acc[(i, j)] = acc.get((i, j), 0j) + p
    return MixedPolynomial({k: v for k, v in acc.items() if abs(v) > TRIM_RTOL * big}, trim=False)
