"""Slow reference computations used to cross-check the fast paths.

Nothing here shares code with the routes it checks: traces are summed
conjugate by conjugate, spectra are double sums, ranks come from
enumerating the radical, and polynomial gcds are commutative.
"""

from __future__ import annotations

import numpy as np

from .field import Field, FieldElement


def trace_bit(x: FieldElement) -> int:
    """Tr_1^n(x) as the sum of its n conjugates."""
    acc = x.field.zero
    y = x
    for _ in range(x.field.n):
        acc = acc + y
        y = y * y
    assert acc.value in (0, 1)
    return acc.value


def trace_table(F: Field) -> np.ndarray:
    """T[a, x] = Tr(a x) for all a, x."""
    T = np.zeros((F.size, F.size), dtype=np.int8)
    elems = list(F)
    for a in elems:
        for x in elems:
            T[a.value, x.value] = trace_bit(a * x)
    return T


def naive_walsh(tt: np.ndarray, F: Field, table: np.ndarray = None) -> np.ndarray:
    """sum_x (-1)^(f(x) + Tr(a x)) for every a, as a plain double sum."""
    T = trace_table(F) if table is None else table
    signs = (-1) ** ((T + tt[None, :].astype(np.int8)) % 2)
    return signs.sum(axis=1).astype(np.int64)


def radical_rank(tt: np.ndarray, n: int) -> int:
    """n - log2 |{x : f(x+y) + f(x) + f(y) + f(0) = 0 for all y}|."""
    size = 1 << n
    ys = np.arange(size)
    rad = 0
    for x in range(size):
        if not np.any(tt[x ^ ys] ^ tt[x] ^ tt[ys] ^ tt[0]):
            rad += 1
    return n - (rad.bit_length() - 1)


def is_bijective(values) -> bool:
    vals = list(values)
    return len(set(vals)) == len(vals)


def commutative_gcd(u: list, v: list) -> list:
    """gcd over GF(2) with coefficient lists (constant first), long division."""
    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    u, v = trim(u), trim(v)
    while v:
        r = list(u)
        while len(r) >= len(v):
            shift = len(r) - len(v)
            for i, c in enumerate(v):
                r[shift + i] ^= c
            r = trim(r)
            if not r:
                break
        u, v = v, r
    return u
