"""Boolean functions on GF(2^n) given in trace form.

Truth tables are indexed by the element encoding of x (bit i = coefficient of
x^i in the polynomial basis). Walsh values are indexed the same way by the
field element a in sum_x (-1)^(f(x) + Tr(a x)).
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

import numpy as np

from . import gf2
from .field import (Field, FieldElement, FieldError, dual_basis, frobenius,
                    make_field, mul_const_vec, pow_vec, power, trace_vec)

TRUTH_TABLE_MAX_N = 24


@dataclass(frozen=True)
class TraceTerm:
    """Tr_1^d(beta * x^exponent) with beta in GF(2^d)."""

    degree: int
    beta: FieldElement
    exponent: int

    def __post_init__(self):
        F = self.beta.field
        if self.degree <= 0 or F.n % self.degree:
            raise FieldError(f"subfield degree {self.degree} does not divide {F.n}")
        if not 0 <= self.exponent <= F.order:
            raise FieldError(f"exponent {self.exponent} outside [0, 2^n - 1]")
        if frobenius(self.beta, self.degree) != self.beta:
            raise FieldError(f"coefficient {self.beta.hex()} is not in GF(2^{self.degree})")

    def __str__(self):
        coef = "" if self.beta.value == 1 else f"{self.beta.hex()}*"
        return f"Tr_1^{self.degree}({coef}x^{self.exponent})"


@dataclass(frozen=True)
class TraceRepr:
    field: Field
    terms: Tuple[TraceTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            self.field.check(t.beta)

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"

    def __add__(self, other: "TraceRepr") -> "TraceRepr":
        if other.field != self.field:
            raise FieldError("trace forms over different fields")
        return TraceRepr(self.field, self.terms + other.terms)

    def to_json(self) -> dict:
        return {
            "n": self.field.n,
            "terms": [{"degree": t.degree, "beta": t.beta.hex(), "exponent": t.exponent}
                      for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj, field: Optional[Field] = None) -> "TraceRepr":
        F = field or make_field(int(obj["n"]))
        return cls(F, [TraceTerm(int(t["degree"]), F(t["beta"]), int(t["exponent"]))
                       for t in obj["terms"]])

    def validate(self) -> List[str]:
        """Problems that keep this from being a canonical trace representation.

        Canonical means: each exponent is the leader of its cyclotomic coset,
        its subfield degree is the coset size, and no coset appears twice.
        """
        problems = []
        seen = set()
        n = self.field.n
        for t in self.terms:
            leader, size = coset_of(t.exponent, n)
            if t.exponent != leader:
                problems.append(f"{t}: exponent is not a coset leader (leader {leader})")
            if t.degree != size:
                problems.append(f"{t}: subfield degree {t.degree} != coset size {size}")
            if leader in seen:
                problems.append(f"{t}: coset of {leader} repeated")
            seen.add(leader)
        return problems


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    tt: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        tt = np.asarray(self.tt, dtype=np.uint8)
        if tt.shape != (1 << self.n,):
            raise ValueError(f"truth table length {tt.size} != 2^{self.n}")
        if tt.size and tt.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "tt", tt)

    def __eq__(self, other):
        return (isinstance(other, BooleanFunction) and self.n == other.n
                and np.array_equal(self.tt, other.tt))

    def __hash__(self):
        return hash((self.n, self.tt.tobytes()))

    def __call__(self, x) -> int:
        return int(self.tt[int(x)])

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        return BooleanFunction(self.n, self.tt ^ other.tt)

    def packed(self) -> bytes:
        return np.packbits(self.tt, bitorder="little").tobytes()

    def digest(self) -> str:
        """64-bit BLAKE2b digest of the little-endian packed table, as hex."""
        return hashlib.blake2b(self.packed(), digest_size=8).hexdigest()

    def is_zero(self) -> bool:
        return not self.tt.any()


# --- evaluation -----------------------------------------------------------

def eval_trace(r: TraceRepr, x: FieldElement) -> int:
    r.field.check(x)
    bit = 0
    for t in r.terms:
        # x^0 is the constant 1 here, matching the vectorised evaluator
        y = t.beta if t.exponent == 0 else t.beta * power(x, t.exponent)
        if frobenius(y, t.degree) != y:
            raise FieldError(f"{t} leaves GF(2^{t.degree}) at x = {x.hex()}")
        # Tr_1^d on the subfield: the full sum of conjugates over d steps
        acc = y.field.zero
        z = y
        for _ in range(t.degree):
            acc = acc + z
            z = z * z
        assert acc.value in (0, 1)
        bit ^= acc.value
    return bit


def truth_table(r: TraceRepr) -> BooleanFunction:
    F = r.field
    if F.n > TRUTH_TABLE_MAX_N:
        raise ValueError(f"truth tables limited to n <= {TRUTH_TABLE_MAX_N}")
    xs = np.arange(F.size, dtype=np.int64)
    tt = np.zeros(F.size, dtype=np.uint8)
    for t in r.terms:
        y = mul_const_vec(t.beta, pow_vec(F, xs, t.exponent))
        tt ^= trace_vec(F, y, t.degree)
    return BooleanFunction(F.n, tt)


def constant(n: int, bit: int = 0) -> BooleanFunction:
    return BooleanFunction(n, np.full(1 << n, bit & 1, dtype=np.uint8))


def linear_tt(F: Field, b: FieldElement) -> np.ndarray:
    """Truth table of x -> Tr(b x)."""
    xs = np.arange(F.size, dtype=np.int64)
    return trace_vec(F, mul_const_vec(b, xs))


def add_affine(f: BooleanFunction, F: Field, b: FieldElement, eps: int = 0) -> BooleanFunction:
    """f(x) + Tr(b x) + eps."""
    return BooleanFunction(f.n, f.tt ^ linear_tt(F, b) ^ (eps & 1))


# --- spectra --------------------------------------------------------------

def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard butterfly over coordinate vectors."""
    v = np.array(values, dtype=np.int64)
    size = v.size
    h = 1
    while h < size:
        v = v.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :]
        v[:, 0, :] += hi
        v[:, 1, :] = lo - hi
        v = v.reshape(size)
        h *= 2
    return v


def _dual_index(F: Field) -> np.ndarray:
    """a_of_u[u] = sum u_i d_i where d is dual to the polynomial basis."""
    dual = dual_basis(F, F.basis())
    us = np.arange(F.size, dtype=np.int64)
    out = np.zeros(F.size, dtype=np.int64)
    for i, d in enumerate(dual):
        out ^= ((us >> i) & 1) * d.value
    return out


def walsh_spectrum(f: BooleanFunction, F: Field) -> np.ndarray:
    """values[a] = sum_x (-1)^(f(x) + Tr(a x)), a indexed by its encoding."""
    if f.n != F.n:
        raise ValueError(f"function has n={f.n}, field has n={F.n}")
    if F.n > TRUTH_TABLE_MAX_N:
        raise ValueError(f"spectra limited to n <= {TRUTH_TABLE_MAX_N}")
    coord = fwht(1 - 2 * f.tt.astype(np.int64))
    values = np.empty_like(coord)
    values[_dual_index(F)] = coord
    return values


def is_bent(f: BooleanFunction, F: Field, spectrum: Optional[np.ndarray] = None) -> bool:
    if F.n % 2:
        raise ValueError("bentness is only defined for even n")
    w = walsh_spectrum(f, F) if spectrum is None else spectrum
    return bool(np.all(np.abs(w) == 1 << (F.n // 2)))


# --- quadratic forms ------------------------------------------------------

def gram_matrix(f: BooleanFunction, F: Field) -> np.ndarray:
    """G[i][j] = f(b_i + b_j) + f(b_i) + f(b_j) on the polynomial basis."""
    n = F.n
    tt = f.tt
    G = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(n):
            bi, bj = 1 << i, 1 << j
            G[i, j] = tt[bi ^ bj] ^ tt[bi] ^ tt[bj] ^ tt[0]
    return G


def rank(f: BooleanFunction, F: Field) -> int:
    """n minus the dimension of the radical of B_f (f at most quadratic)."""
    return matrix_rank_f2(gram_matrix(f, F))


def matrix_rank_f2(M: np.ndarray) -> int:
    return gf2.rank([sum(int(b) << j for j, b in enumerate(row)) for row in M])


def anf(f: BooleanFunction) -> np.ndarray:
    """Algebraic normal form coefficients via the Moebius transform."""
    v = f.tt.copy()
    size = v.size
    h = 1
    while h < size:
        v = v.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        v = v.reshape(size)
        h *= 2
    return v


def algebraic_degree(f: BooleanFunction) -> Optional[int]:
    """Degree of the ANF; None for the zero function."""
    coeffs = anf(f)
    idx = np.nonzero(coeffs)[0]
    if idx.size == 0:
        return None
    weights = np.array([bin(int(i)).count("1") for i in idx])
    return int(weights.max())


# --- cyclotomic cosets ----------------------------------------------------

def coset_of(r: int, n: int) -> Tuple[int, int]:
    """(leader, size) of the cyclotomic coset of r modulo 2^n - 1.

    The exponent 2^n - 1 is treated as its own singleton coset.
    """
    N = (1 << n) - 1
    if r == N or r == 0:
        return r, 1
    orbit = {r % N}
    y = (2 * r) % N
    while y not in orbit:
        orbit.add(y)
        y = (2 * y) % N
    return min(orbit), len(orbit)


def coset_leaders(n: int) -> List[Tuple[int, int]]:
    """All cyclotomic cosets of 2 modulo 2^n - 1 as (leader, size), leader order."""
    if n > TRUTH_TABLE_MAX_N:
        raise ValueError(f"coset enumeration limited to n <= {TRUTH_TABLE_MAX_N}")
    N = (1 << n) - 1
    if N == 1:
        return [(0, 1)]
    seen = bytearray(N)
    out = []
    for r in range(N):
        if seen[r]:
            continue
        size = 0
        y = r
        while not seen[y]:
            seen[y] = 1
            size += 1
            y = (2 * y) % N
        out.append((r, size))
    return out


# --- file formats ---------------------------------------------------------

def write_tt(f: BooleanFunction, fh):
    fh.write(f"n={f.n}\n")
    fh.write(f.packed().hex() + "\n")


def read_tt(fh) -> BooleanFunction:
    header = fh.readline().strip()
    if not header.startswith("n="):
        raise ValueError(f"expected 'n=<int>' header, got {header!r}")
    n = int(header[2:])
    body = "".join(line.strip() for line in fh)
    raw = bytes.fromhex(body)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    size = 1 << n
    if bits.size < size or bits[size:].any():
        raise ValueError(f"truth-table body does not hold exactly 2^{n} bits")
    return BooleanFunction(n, bits[:size])


def spectrum_csv(values: np.ndarray, fh=None) -> str:
    out = fh or io.StringIO()
    out.write("a_hex,value\n")
    for a, v in enumerate(values.tolist()):
        out.write(f"{a:x},{v}\n")
    return out.getvalue() if fh is None else ""
