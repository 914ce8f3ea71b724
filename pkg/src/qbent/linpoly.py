"""Linearized polynomials L(x) = sum a_i x^(2^i) over GF(2^n).

Coefficient index i means x^(2^i); indices are taken modulo n since
x^(2^n) = x on GF(2^n).
"""

from __future__ import annotations

import json
from typing import List, Optional, Sequence

from . import gf2
from .field import (Field, FieldElement, FieldError, frobenius, is_cube,
                    make_field, power)
from .skewpoly import SkewPoly, gcrd

METHODS = ("gcrd", "dickson", "bruteforce", "exhaustive")
BRUTEFORCE_MAX_N = 24
EXHAUSTIVE_MAX_N = 16


class LinearizedPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        a = [field.zero] * field.n
        for i, c in enumerate(coeffs):
            a[i % field.n] = a[i % field.n] + field(c)
        self.field = field
        self.coeffs = tuple(a)

    @classmethod
    def identity(cls, field: Field) -> "LinearizedPoly":
        return cls(field, [1])

    def __call__(self, x: FieldElement) -> FieldElement:
        return lp_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"LinearizedPoly({self})"

    def __str__(self):
        parts = []
        for i in range(self.field.n - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "x" if i == 0 else f"x^{1 << i}"
                parts.append(mono if c.value == 1 else f"{c.hex()}*{mono}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"n": self.field.n, "coeffs": [c.hex() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, field: Optional[Field] = None) -> "LinearizedPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        field = field or make_field(int(obj["n"]))
        return cls(field, [field(h) for h in obj["coeffs"]])


def lp_eval(L: LinearizedPoly, x: FieldElement) -> FieldElement:
    L.field.check(x)
    acc = L.field.zero
    y = x
    for a in L.coeffs:
        if a:
            acc = acc + a * y
        y = y * y
    return acc


def associate_skew(L: LinearizedPoly) -> SkewPoly:
    """The associate skew polynomial sum a_i x^i."""
    return SkewPoly(L.field, L.coeffs)


def from_skew(l: SkewPoly) -> LinearizedPoly:
    if l.degree is not None and l.degree >= l.field.n:
        raise ValueError(f"skew polynomial of degree {l.degree} >= n = {l.field.n}")
    return LinearizedPoly(l.field, l.coeffs)


def dickson_matrix(L: LinearizedPoly) -> List[List[FieldElement]]:
    """D[i][j] = a_{(j - i) mod n} ^ (2^i)."""
    n = L.field.n
    rows = [list(L.coeffs)]
    for _ in range(1, n):
        prev = rows[-1]
        rows.append([frobenius(prev[(j - 1) % n], 1) for j in range(n)])
    return rows


def det(M: Sequence[Sequence[FieldElement]]) -> FieldElement:
    """Determinant by Gaussian elimination; char 2 needs no sign tracking."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    F = M[0][0].field
    A = [list(r) for r in M]
    d = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return F.zero
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        d = d * p
        pinv = p.inverse()
        for i in range(col + 1, n):
            if A[i][col]:
                factor = A[i][col] * pinv
                row = A[col]
                A[i] = [A[i][j] + factor * row[j] for j in range(n)]
    return d


def kernel_rank(L: LinearizedPoly) -> int:
    """GF(2) rank of L as a linear map, from its images of the basis."""
    return gf2.rank([lp_eval(L, b).value for b in L.field.basis()])


def is_permutation(L: LinearizedPoly, method: str = "gcrd") -> bool:
    F = L.field
    if method == "gcrd":
        g = gcrd(associate_skew(L), SkewPoly.x_n_plus_1(F))
        return g.degree == 0
    if method == "dickson":
        return bool(det(dickson_matrix(L)))
    if method == "bruteforce":
        if F.n > BRUTEFORCE_MAX_N:
            raise ValueError(f"bruteforce test limited to n <= {BRUTEFORCE_MAX_N}")
        return kernel_rank(L) == F.n
    if method == "exhaustive":
        if F.n > EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive test limited to n <= {EXHAUSTIVE_MAX_N}")
        return len({lp_eval(L, x).value for x in F}) == F.size
    raise ValueError(f"unknown permutation test {method!r}; expected one of {METHODS}")


def permutation_report(L: LinearizedPoly) -> dict:
    """All three standard tests plus an agreement flag."""
    out = {m: is_permutation(L, m) for m in ("gcrd", "dickson", "bruteforce")}
    out["agree"] = len(set(out.values())) == 1
    return out


def _check_noncube(F: Field, a: FieldElement):
    if F.n % 2:
        raise FieldError(f"n must be even, got {F.n}")
    F.check(a)
    if not a or is_cube(a):
        raise FieldError(f"{a.hex()} is a cube; a non-cube is required")


def p_exponent(n: int, j: int) -> int:
    """(2^n - 2^j - 2) / 3, the exponent of a on the x^(2^j) term; j odd."""
    num = (1 << n) - (1 << j) - 2
    if num % 3:
        raise ArithmeticError(f"3 does not divide 2^{n} - 2^{j} - 2")
    return num // 3


def build_P(F: Field, a: FieldElement) -> LinearizedPoly:
    """P(x) = sum_{i < n/2} a^((2^n - 2^(2i+1) - 2)/3) x^(2^(2i+1))."""
    _check_noncube(F, a)
    coeffs = [F.zero] * F.n
    for i in range(F.n // 2):
        j = 2 * i + 1
        coeffs[j] = power(a, p_exponent(F.n, j))
    return LinearizedPoly(F, coeffs)


def build_p1(F: Field, a: FieldElement) -> SkewPoly:
    """p1(x) = sum_{i < n/2} a^(-(2^(2i+1) + 1)/3) x^(2i+1)."""
    _check_noncube(F, a)
    coeffs = [F.zero] * F.n
    for i in range(F.n // 2):
        j = 2 * i + 1
        num = (1 << j) + 1
        if num % 3:
            raise ArithmeticError(f"3 does not divide 2^{j} + 1")
        coeffs[j] = power(a, -(num // 3))
    return SkewPoly(F, coeffs)
