"""Exact arithmetic in GF(2^n), polynomial basis, n <= 32.

Elements are stored as the little-endian coefficient bit pattern of their
polynomial-basis representative: bit i is the coefficient of x^i. Text I/O
uses lowercase hex of that pattern.

    >>> F = make_field(4)
    >>> g = F(0b10)
    >>> (g ** 4) * g ** -4 == F.one
    True
"""

from __future__ import annotations

import functools
import os
from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np

from . import gf2

MAX_DEGREE = 32
# Vectorised tables (log/antilog) are only built up to this degree.
TABLE_MAX_DEGREE = 24

# Smallest irreducible polynomial with constant term 1 for each degree,
# ordered by integer value of the bit pattern. Regenerate with
# ``scripts/gen_moduli.py``; verified exhaustively in the test suite.
DEFAULT_MODULI: Dict[int, int] = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x400001B, 27: 0x8000027, 28: 0x10000003,
    29: 0x20000005, 30: 0x40000003, 31: 0x80000009, 32: 0x10000008D,
}

MODULI_ENV = "QBENT_MODULI"


class FieldError(ValueError):
    pass


def smallest_irreducible(n: int) -> int:
    f = (1 << n) | 1
    while not gf2.is_irreducible(f):
        f += 2
    return f


def load_moduli(path: str) -> Dict[int, int]:
    """Read an override file of ``n,hex-modulus`` lines (``#`` starts a comment)."""
    table = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                n_txt, m_txt = line.split(",")
                table[int(n_txt)] = int(m_txt.strip(), 16)
            except ValueError:
                raise FieldError(f"{path}:{lineno}: expected 'n,hex-modulus', got {line!r}")
    return table


def make_field(n: int, modulus: Optional[int] = None) -> "Field":
    """Return GF(2^n).

    Without an explicit modulus, the file named by ``QBENT_MODULI`` is
    consulted first and the default table is the fallback.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in [1, {MAX_DEGREE}], got {n!r}")
    if modulus is None:
        path = os.environ.get(MODULI_ENV)
        if path:
            modulus = load_moduli(path).get(n)
    if modulus is None:
        modulus = DEFAULT_MODULI[n]
    return _make_field(n, modulus)


@functools.lru_cache(maxsize=None)
def _make_field(n: int, modulus: int) -> "Field":
    return Field(n, modulus)


class Field:
    """GF(2^n) defined by an irreducible modulus over GF(2)."""

    def __init__(self, n: int, modulus: int):
        if gf2.deg(modulus) != n:
            raise FieldError(f"modulus {modulus:#x} does not have degree {n}")
        if not modulus & 1:
            raise FieldError(f"modulus {modulus:#x} has zero constant term")
        if not gf2.is_irreducible(modulus):
            raise FieldError(f"modulus {modulus:#x} is reducible")
        self.n = n
        self.modulus = modulus
        self.order = (1 << n) - 1
        self.size = 1 << n
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)
        self._tables = None
        self._generator = None
        self._trace_mask = None

    def __repr__(self):
        return f"GF(2^{self.n}) mod {self.modulus:#x}"

    def __eq__(self, other):
        return (isinstance(other, Field) and self.n == other.n
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __reduce__(self):
        return _make_field, (self.n, self.modulus)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, str):
            value = int(value, 16)
        if not 0 <= value < self.size:
            raise FieldError(f"{value:#x} is not an element encoding for {self}")
        return FieldElement(self, value)

    def __iter__(self) -> Iterator["FieldElement"]:
        for v in range(self.size):
            yield FieldElement(self, v)

    def check(self, x: "FieldElement"):
        if x.field is not self and x.field != self:
            raise FieldError(f"element of {x.field} used in {self}")

    # raw int arithmetic, no wrapping

    def _mul(self, a: int, b: int) -> int:
        r = gf2.clmul(a, b)
        m = self.modulus
        n = self.n
        while r >> n:
            r ^= m << (r.bit_length() - 1 - n)
        return r

    def _pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul(r, a)
            a = self._mul(a, a)
            k >>= 1
        return r

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            q, r = gf2.poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ gf2.clmul(q, s1)
        assert r0 == 1
        return gf2.poly_mod(s0, self.modulus)

    def random(self, rng, nonzero=False) -> "FieldElement":
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.size))

    def basis(self) -> List["FieldElement"]:
        """The polynomial basis 1, x, ..., x^(n-1)."""
        return [FieldElement(self, 1 << i) for i in range(self.n)]

    @property
    def generator(self) -> "FieldElement":
        """Primitive element with the smallest encoding."""
        if self._generator is None:
            factors = gf2._prime_factors(self.order) if self.order > 1 else []
            for v in range(1, self.size):
                if self.order == 1 or all(self._pow(v, self.order // p) != 1 for p in factors):
                    self._generator = FieldElement(self, v)
                    break
        return self._generator

    @property
    def trace_mask(self) -> int:
        """Bitset t with Tr(x) = parity(x & t)."""
        if self._trace_mask is None:
            t = 0
            for i in range(self.n):
                if trace(FieldElement(self, 1 << i)).value:
                    t |= 1 << i
            self._trace_mask = t
        return self._trace_mask

    def tables(self):
        """(exp, log) arrays: exp[k] = g^k for k < 2^n - 1, log[exp[k]] = k.

        log[0] is set to -1.
        """
        if self._tables is None:
            if self.n > TABLE_MAX_DEGREE:
                raise FieldError(f"lookup tables not supported for n > {TABLE_MAX_DEGREE}")
            N = self.order
            exp = np.zeros(max(N, 1), dtype=np.int64)
            exp[0] = 1
            filled = 1
            g = self.generator
            while filled < N:
                take = min(filled, N - filled)
                exp[filled:filled + take] = mul_const_vec(g ** filled, exp[:take])
                filled += take
            log = np.full(self.size, -1, dtype=np.int64)
            log[exp[:N]] = np.arange(N, dtype=np.int64)
            self._tables = (exp, log)
        return self._tables


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return FieldElement, (self.field, self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.value ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(o, self.field._inv(self.value)))

    def __pow__(self, k: int):
        return power(self, k)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash((self.field.n, self.field.modulus, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.field.__class__.__name__}{self.field.n}({self.hex()})"

    def __str__(self):
        return self.hex()

    def hex(self) -> str:
        return format(self.value, "x")

    def in_subfield(self, d: int) -> bool:
        return frobenius(self, d) == self


# --- module-level operations --------------------------------------------

def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def power(x: FieldElement, k: int) -> FieldElement:
    """x^k for any integer k; 0^k with k <= 0 raises ZeroDivisionError."""
    F = x.field
    if x.value == 0:
        if k <= 0:
            raise ZeroDivisionError(f"0^{k} is undefined")
        return F.zero
    k %= F.order
    return FieldElement(F, F._pow(x.value, k))


def frobenius(x: FieldElement, k: int = 1) -> FieldElement:
    """x^(2^k), with k taken modulo n."""
    F = x.field
    v = x.value
    for _ in range(k % F.n):
        v = F._mul(v, v)
    return FieldElement(F, v)


def trace(x: FieldElement, d: int = 1) -> FieldElement:
    """Relative trace Tr_d^n(x) = sum of x^(2^(d j)) for j < n/d."""
    F = x.field
    if d <= 0 or F.n % d:
        raise FieldError(f"{d} does not divide {F.n}")
    acc = 0
    v = x.value
    for _ in range(F.n // d):
        acc ^= v
        for _ in range(d):
            v = F._mul(v, v)
    return FieldElement(F, acc)


def absolute_trace(x: FieldElement) -> int:
    """Tr_1^n(x) as a bit."""
    return bin(x.value & x.field.trace_mask).count("1") & 1


def is_cube(x: FieldElement) -> bool:
    F = x.field
    if F.n % 2:
        raise FieldError("cube test needs even n (3 must divide 2^n - 1)")
    if x.value == 0:
        raise FieldError("cube test is undefined for zero")
    return power(x, F.order // 3).value == 1


def noncubes(F: Field) -> List[FieldElement]:
    """All non-cubes of GF(2^n), n even, ordered by encoding."""
    if F.n % 2:
        raise FieldError("non-cubes need even n")
    if F.n > TABLE_MAX_DEGREE:
        raise FieldError(f"full non-cube enumeration not supported for n > {TABLE_MAX_DEGREE}")
    exp, _ = F.tables()
    k = np.arange(F.order)
    vals = np.sort(exp[k % 3 != 0])
    return [FieldElement(F, int(v)) for v in vals]


def first_noncube(F: Field) -> FieldElement:
    """Non-cube with the smallest encoding (works for any even n)."""
    for v in range(1, F.size):
        x = FieldElement(F, v)
        if not is_cube(x):
            return x
    raise AssertionError("unreachable: GF(2^n)* has non-cubes for even n >= 2")


def solve_relative_trace(F: Field, t: FieldElement) -> FieldElement:
    """Smallest-encoding c with c + c^(2^(n/2)) = t."""
    if F.n % 2:
        raise FieldError("relative trace to the half field needs even n")
    F.check(t)
    h = F.n // 2
    if frobenius(t, h) != t:
        raise FieldError(f"{t.hex()} is not in the subfield GF(2^{h})")
    cols = []
    for e in F.basis():
        cols.append((e + frobenius(e, h)).value)
    sol = gf2.solve(cols, t.value)
    assert sol is not None
    return FieldElement(F, sol)


def dual_basis(F: Field, basis: Sequence[FieldElement]) -> List[FieldElement]:
    """Trace-dual basis: Tr(b_i d_j) = 1 iff i == j."""
    n = F.n
    if len(basis) != n:
        raise FieldError(f"need {n} basis elements, got {len(basis)}")
    gram = []
    for bi in basis:
        row = 0
        for j, bj in enumerate(basis):
            if absolute_trace(bi * bj):
                row |= 1 << j
        gram.append(row)
    try:
        ginv = gf2.inverse(gram, n)
    except ValueError:
        raise FieldError("basis is linearly dependent over GF(2)")
    out = []
    for j in range(n):
        acc = F.zero
        for k in range(n):
            if (ginv[j] >> k) & 1:
                acc = acc + basis[k]
        out.append(acc)
    return out


# --- vectorised helpers (arrays of encodings) -----------------------------

def mul_const_vec(c: FieldElement, arr: np.ndarray) -> np.ndarray:
    """c * x for every encoding x in arr, via the GF(2)-linear map of c."""
    F = c.field
    out = np.zeros_like(arr)
    v = c.value
    for j in range(F.n):
        out ^= ((arr >> j) & 1) * v
        v = F._mul(v, 2)
    return out


def pow_vec(F: Field, arr: np.ndarray, k: int) -> np.ndarray:
    """x^k elementwise. k = 0 gives all ones, so a constant trace term
    evaluates to its value at every x, including 0."""
    exp, log = F.tables()
    if k == 0:
        return np.ones_like(arr)
    if k < 0:
        raise ValueError("negative exponents not supported in pow_vec")
    k %= F.order
    if k == 0:
        return np.where(arr == 0, 0, 1).astype(arr.dtype)
    lg = log[arr]
    out = exp[(lg * k) % F.order]
    return np.where(arr == 0, 0, out)


def mul_vec(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    exp, log = F.tables()
    out = exp[(log[a] + log[b]) % F.order]
    return np.where((a == 0) | (b == 0), 0, out)


def parity_vec(arr: np.ndarray) -> np.ndarray:
    x = arr.astype(np.uint64)
    for s in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(s)
    return (x & np.uint64(1)).astype(np.uint8)


def frobenius_vec(F: Field, arr: np.ndarray, k: int) -> np.ndarray:
    return pow_vec(F, arr, 1 << (k % F.n)) if k % F.n else arr.copy()


def trace_vec(F: Field, arr: np.ndarray, d: Optional[int] = None) -> np.ndarray:
    """Tr_1^d of every entry (d defaults to n); entries must lie in GF(2^d). Returns bits."""
    if d is None or d == F.n:
        return parity_vec(arr & F.trace_mask)
    if F.n % d:
        raise FieldError(f"{d} does not divide {F.n}")
    if not np.array_equal(frobenius_vec(F, arr, d), arr):
        raise FieldError(f"values outside the subfield GF(2^{d})")
    acc = np.zeros_like(arr)
    for j in range(d):
        acc ^= frobenius_vec(F, arr, j)
    assert np.all(acc <= 1)
    return acc.astype(np.uint8)
