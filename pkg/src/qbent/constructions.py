"""Quadratic bent families in trace form and their bentness criteria.

Four families are covered:

* ``ma``  -- sum c_i Tr(x^(1+2^i)) + Tr_1^(n/2)(x^(1+2^(n/2)))
* ``hu``  -- the same with a step e and a coefficient beta in GF(2^e)
* ``li``  -- the all-ones ``ma`` function plus t Gold terms with step k
* ``new`` -- terms Tr(a^((2^n - 2^i - 2)/3) x^(1+2^i)) over an index set S
  built from a non-cube a
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from .boolfun import TraceRepr, TraceTerm, gram_matrix, truth_table
from .field import (Field, FieldElement, FieldError, absolute_trace, frobenius,
                    is_cube, make_field, power, solve_relative_trace, trace)
from .gf2 import gcd_f2
from .linpoly import build_P, lp_eval, p_exponent

FAMILIES = ("ma", "hu", "li", "new")


def _bits(c: Iterable[int]) -> Tuple[int, ...]:
    out = tuple(int(b) for b in c)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"coefficient vector must be 0/1, got {out}")
    return out


def _even_n(n: int, least: int = 2):
    if n % 2 or n < least:
        raise ValueError(f"n must be even and >= {least}, got {n}")


def gold_sum(F: Field, full: Dict[int, FieldElement], half: Optional[FieldElement] = None) -> TraceRepr:
    """Normalise sum_j Tr(beta_j x^(1+2^j)) + Tr_1^(n/2)(half x^(1+2^(n/2))).

    Steps j are reduced mod n and mapped to min(j, n - j) by conjugating the
    coefficient; a full-trace term at j = n/2 is folded into the half-trace
    term through Tr_1^n = Tr_1^(n/2) o Tr_(n/2)^n. Coefficients that sum to
    zero drop out.
    """
    n = F.n
    acc: Dict[int, FieldElement] = {}
    h = n // 2 if n % 2 == 0 else None
    half_acc = F.zero if half is None else F(half)
    for j, beta in full.items():
        j %= n
        if j > n - j:
            beta = frobenius(beta, n - j)
            j = n - j
        if j == h:
            half_acc = half_acc + trace(beta, h)
        else:
            acc[j] = acc.get(j, F.zero) + beta
    terms = []
    for j in sorted(acc):
        if acc[j]:
            terms.append(TraceTerm(n, acc[j], 1 + (1 << j)))
    if half_acc:
        terms.append(TraceTerm(h, half_acc, 1 + (1 << h)))
    return TraceRepr(F, terms)


# --- ma family ------------------------------------------------------------

@dataclass(frozen=True)
class MaParams:
    n: int
    c: Tuple[int, ...]

    def __post_init__(self):
        _even_n(self.n, 4)
        object.__setattr__(self, "c", _bits(self.c))
        if len(self.c) != self.n // 2 - 1:
            raise ValueError(f"need {self.n // 2 - 1} coefficients c_1..c_(n/2-1), got {len(self.c)}")

    def label(self) -> dict:
        return {"c": "".join(map(str, self.c))}


def construct_ma(p: MaParams, field: Optional[Field] = None) -> TraceRepr:
    F = field or make_field(p.n)
    n, h = p.n, p.n // 2
    terms = [TraceTerm(n, F.one, 1 + (1 << i)) for i, ci in enumerate(p.c, 1) if ci]
    terms.append(TraceTerm(h, F.one, 1 + (1 << h)))
    return TraceRepr(F, terms)


def ma_poly(p: MaParams) -> int:
    """c(x) = sum c_i (x^i + x^(n-i)) + x^(n/2) over GF(2)."""
    c = 1 << (p.n // 2)
    for i, ci in enumerate(p.c, 1):
        if ci:
            c ^= (1 << i) ^ (1 << (p.n - i))
    return c


def ma_criterion(p: MaParams) -> bool:
    return gcd_f2(ma_poly(p), (1 << p.n) | 1) == 1


def ma_grid(n: int) -> Iterator[MaParams]:
    k = n // 2 - 1
    for mask in range(1 << k):
        yield MaParams(n, tuple((mask >> i) & 1 for i in range(k)))


# --- hu family ------------------------------------------------------------

@dataclass(frozen=True)
class HuParams:
    n: int
    e: int
    beta: FieldElement
    c: Tuple[int, ...]

    def __post_init__(self):
        _even_n(self.n)
        if self.e <= 0 or self.n % self.e:
            raise ValueError(f"e={self.e} does not divide n={self.n}")
        if self.m % 2:
            raise ValueError(f"m = n/e = {self.m} must be even")
        if self.beta.field.n != self.n:
            raise FieldError("beta must be an element of GF(2^n)")
        if not self.beta or frobenius(self.beta, self.e) != self.beta:
            raise ValueError(f"beta={self.beta.hex()} must be a nonzero element of GF(2^{self.e})")
        object.__setattr__(self, "c", _bits(self.c))
        if len(self.c) != self.m // 2:
            raise ValueError(f"need {self.m // 2} coefficients c_1..c_(m/2), got {len(self.c)}")

    @property
    def m(self) -> int:
        return self.n // self.e

    def label(self) -> dict:
        return {"e": self.e, "beta": self.beta.hex(), "c": "".join(map(str, self.c))}


def construct_hu(p: HuParams) -> TraceRepr:
    F = p.beta.field
    n, h = p.n, p.n // 2
    terms = [TraceTerm(n, p.beta, 1 + (1 << (p.e * i)))
             for i, ci in enumerate(p.c[:-1], 1) if ci]
    if p.c[-1]:
        terms.append(TraceTerm(h, p.beta, 1 + (1 << h)))
    return TraceRepr(F, terms)


def hu_poly(p: HuParams) -> int:
    """c(x) = sum_{i < m/2} c_i (x^i + x^(m-i)) + x^(m/2) over GF(2)."""
    m = p.m
    c = 1 << (m // 2)
    for i, ci in enumerate(p.c[:-1], 1):
        if ci:
            c ^= (1 << i) ^ (1 << (m - i))
    return c


def hu_criterion(p: HuParams, strict: bool = False) -> bool:
    """c_(m/2) = 1 and gcd(c(x), x^m + 1) = 1.

    ``strict`` swaps in x^n + 1 as the second gcd argument.
    """
    if not p.c[-1]:
        return False
    modulus = (1 << (p.n if strict else p.m)) | 1
    return gcd_f2(hu_poly(p), modulus) == 1


def subfield_elements(F: Field, e: int) -> List[FieldElement]:
    """Nonzero elements of GF(2^e) inside GF(2^n), by encoding."""
    if F.n % e:
        raise FieldError(f"{e} does not divide {F.n}")
    if e == F.n:
        return [F(v) for v in range(1, F.size)]
    g = F.generator
    step = F.order // ((1 << e) - 1)
    gen = power(g, step)
    out = []
    y = F.one
    for _ in range((1 << e) - 1):
        out.append(y)
        y = y * gen
    return sorted(out, key=lambda z: z.value)


def hu_grid(n: int, field: Optional[Field] = None) -> Iterator[HuParams]:
    F = field or make_field(n)
    for e in range(1, n + 1):
        if n % e or (n // e) % 2:
            continue
        m = n // e
        k = m // 2
        for beta in subfield_elements(F, e):
            for mask in range(1 << k):
                yield HuParams(n, e, beta, tuple((mask >> i) & 1 for i in range(k)))


# --- li family ------------------------------------------------------------

@dataclass(frozen=True)
class LiParams:
    n: int
    k: int
    t: int

    def __post_init__(self):
        _even_n(self.n, 4)
        if self.k <= 0 or self.t < 0:
            raise ValueError(f"k must be positive and t non-negative, got k={self.k}, t={self.t}")

    def label(self) -> dict:
        return {"k": self.k, "t": self.t}


def construct_li(p: LiParams, field: Optional[Field] = None) -> TraceRepr:
    F = field or make_field(p.n)
    full: Dict[int, FieldElement] = {}

    def bump(j):
        full[j] = full.get(j, F.zero) + F.one

    for j in range(1, p.n // 2):
        bump(j)
    for i in range(1, p.t + 1):
        j = (p.k * i) % p.n
        # collect by canonical step so equal terms cancel in pairs
        bump(min(j, p.n - j))
    return gold_sum(F, full, half=F.one)


def li_criterion(p: LiParams) -> bool:
    return math.gcd(p.n, (2 * p.t + 1) * p.k) == math.gcd(p.n, p.k)


def li_grid(n: int, tmax: int = 5) -> Iterator[LiParams]:
    for k in range(1, n):
        for t in range(1, tmax + 1):
            yield LiParams(n, k, t)


# --- non-cube construction ------------------------------------------------

def index_set_T(n: int) -> Tuple[int, ...]:
    _even_n(n, 4)
    if n % 4 == 0:
        return tuple(2 * i + 1 for i in range(n // 4))
    return tuple(2 * i + 1 for i in range((n - 6) // 4 + 1))


@dataclass(frozen=True)
class NewParams:
    field: Field
    a: FieldElement
    I: FrozenSet[int]

    def __post_init__(self):
        F = self.field
        _even_n(F.n, 4)
        F.check(self.a)
        if not self.a or is_cube(self.a):
            raise FieldError(f"a={self.a.hex()} is a cube; the construction needs a non-cube")
        I = frozenset(int(i) for i in self.I)
        if not I <= set(self.T):
            raise ValueError(f"I={sorted(I)} is not a subset of T={list(self.T)}")
        object.__setattr__(self, "I", I)

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def T(self) -> Tuple[int, ...]:
        return index_set_T(self.n)

    @property
    def J(self) -> FrozenSet[int]:
        return frozenset(self.n - i for i in self.T if i not in self.I)

    @property
    def S(self) -> FrozenSet[int]:
        return self.I | self.J

    def label(self) -> dict:
        return {"a": self.a.hex(), "I": sorted(self.I)}


def construct_new(p: NewParams, full_trace_half: bool = False) -> TraceRepr:
    """Trace form of the non-cube construction.

    For n = 2 mod 4 the extra x^(1+2^(n/2)) term is a half trace with a
    coefficient in GF(2^(n/2)); ``full_trace_half`` instead writes it as
    Tr_1^n(c x^(1+2^(n/2))) with c + c^(2^(n/2)) equal to that coefficient.
    """
    F, a, n = p.field, p.a, p.n
    terms = [TraceTerm(n, power(a, p_exponent(n, i)), 1 + (1 << i)) for i in sorted(p.S)]
    if n % 4 == 2:
        h = n // 2
        coef = power(a, p_exponent(n, h))
        if frobenius(coef, h) != coef:
            raise AssertionError(f"half-trace coefficient {coef.hex()} not in GF(2^{h})")
        if full_trace_half:
            terms.append(TraceTerm(n, solve_relative_trace(F, coef), 1 + (1 << h)))
        else:
            terms.append(TraceTerm(h, coef, 1 + (1 << h)))
    return TraceRepr(F, terms)


def enumerate_new(F: Field, a: FieldElement) -> List[Tuple[FrozenSet[int], TraceRepr]]:
    """Every subset I of T, in bitmask order over sorted T."""
    T = index_set_T(F.n)
    out = []
    for mask in range(1 << len(T)):
        I = frozenset(T[i] for i in range(len(T)) if (mask >> i) & 1)
        out.append((I, construct_new(NewParams(F, a, I))))
    return out


def expected_count(n: int) -> int:
    return 2 ** (n // 4) if n % 4 == 0 else 2 ** ((n - 2) // 4)


def associated_P_check(p: NewParams) -> bool:
    """Gram matrix of f equals that of (x, y) -> Tr(P(x) y) on the basis."""
    F = p.field
    G = gram_matrix(truth_table(construct_new(p)), F)
    P = build_P(F, p.a)
    basis = F.basis()
    H = np.array([[absolute_trace(lp_eval(P, bi) * bj) for bj in basis] for bi in basis],
                 dtype=np.uint8)
    return bool(np.array_equal(G, H))
