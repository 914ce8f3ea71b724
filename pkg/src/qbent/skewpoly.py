"""Skew polynomials over GF(2^n) twisted by the Frobenius: x * b = b^2 * x.

Coefficients are stored lowest degree first with trailing zeros trimmed.
The zero polynomial has ``degree is None``.
"""

from __future__ import annotations

import json
from typing import List, Optional, Sequence, Tuple

from .field import Field, FieldElement, FieldError, frobenius, make_field


class SkewPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: Tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def monomial(cls, field: Field, c, k: int) -> "SkewPoly":
        return cls(field, [field.zero] * k + [field(c)])

    @classmethod
    def x_n_plus_1(cls, field: Field) -> "SkewPoly":
        """x^n + 1, whose right divisors correspond to subspaces of GF(2^n)."""
        return cls(field, [1] + [0] * (field.n - 1) + [1])

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other: "SkewPoly"):
        if not isinstance(other, SkewPoly):
            raise TypeError(f"expected SkewPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"skew polynomials over {self.field} and {other.field}")

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(m)])

    __sub__ = __add__

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return smul(self, other)

    def scale_left(self, c: FieldElement) -> "SkewPoly":
        """c * self, c a constant (no twist is applied to self's coefficients)."""
        return SkewPoly(self.field, [c * a for a in self.coeffs])

    def monic(self) -> "SkewPoly":
        return self.scale_left(self.lead.inverse())

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                parts.append(c.hex())
            elif c.value == 1:
                parts.append(mono)
            else:
                parts.append(f"{c.hex()}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"n": self.field.n, "coeffs": [c.hex() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, field: Optional[Field] = None) -> "SkewPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        field = field or make_field(int(obj["n"]))
        if field.n != int(obj["n"]):
            raise FieldError(f"JSON is for n={obj['n']}, field has n={field.n}")
        return cls(field, [field(h) for h in obj["coeffs"]])

    @classmethod
    def parse_hex_list(cls, field: Field, text: str) -> "SkewPoly":
        """Parse comma-separated hex coefficients, constant term first."""
        items = [t.strip() for t in text.split(",") if t.strip()]
        try:
            return cls(field, [field(int(t, 16)) for t in items])
        except ValueError as exc:
            raise FieldError(f"bad coefficient list {text!r}: {exc}")


def smul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Skew product: (a x^i)(b x^j) = a b^(2^i) x^(i+j)."""
    f._check(g)
    F = f.field
    if not f or not g:
        return SkewPoly(F)
    out = [F.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                out[i + j] = out[i + j] + a * frobenius(b, i)
    return SkewPoly(F, out)


def right_divide(f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    """Return (Q, R) with f = Q*g + R and R = 0 or deg R < deg g."""
    f._check(g)
    F = f.field
    if not g:
        raise ZeroDivisionError("right division by the zero skew polynomial")
    s = g.degree
    if not f or f.degree < s:
        return SkewPoly(F), f
    r = f.degree
    rem: List[FieldElement] = list(f.coeffs)
    q: List[FieldElement] = [F.zero] * (r - s + 1)
    gs = g.lead
    for i in range(r, s - 1, -1):
        fi = rem[i]
        if not fi:
            continue
        k = i - s
        h = fi / frobenius(gs, k)
        q[k] = h
        # rem -= (h x^k) * g
        for j, gj in enumerate(g.coeffs):
            if gj:
                rem[k + j] = rem[k + j] + h * frobenius(gj, k)
        assert not rem[i]
    return SkewPoly(F, q), SkewPoly(F, rem[:s])


def rrem(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return right_divide(f, g)[1]


def gcrd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor by the right Euclidean scheme."""
    f._check(g)
    if not f and not g:
        raise ValueError("gcrd(0, 0) is undefined")
    a, b = f, g
    if a and b and a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, rrem(a, b)
    return a.monic()
