"""GF(2) helpers on int bitsets.

Polynomials over GF(2) are ints with bit i holding the coefficient of x^i.
Matrices over GF(2) are lists of row ints with bit j holding column j.
"""

from __future__ import annotations

from typing import List, Optional, Sequence


# --- polynomials ---------------------------------------------------------

def deg(p: int) -> int:
    """Degree of p; -1 for the zero polynomial."""
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_divmod(a: int, b: int):
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    db = deg(b)
    while a and deg(a) >= db:
        shift = deg(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_mod(a: int, b: int) -> int:
    return poly_divmod(a, b)[1]


def gcd_f2(u: int, v: int) -> int:
    """Greatest common divisor in GF(2)[x] (always monic over GF(2))."""
    if u == 0 and v == 0:
        raise ValueError("gcd of two zero polynomials is undefined")
    while v:
        u, v = v, poly_mod(u, v)
    return u


def poly_from_coeffs(coeffs: Sequence[int]) -> int:
    """Pack a coefficient list (lowest degree first) into an int."""
    p = 0
    for i, c in enumerate(coeffs):
        if c & 1:
            p |= 1 << i
    return p


def poly_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(deg(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(terms)


def _mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def _prime_factors(k: int) -> List[int]:
    out = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's irreducibility test for a GF(2) polynomial."""
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    # x^(2^k) mod f for k = 0..n
    powers = [2]
    for _ in range(n):
        powers.append(_mulmod(powers[-1], powers[-1], f))
    if powers[n] != powers[0]:
        return False
    for p in _prime_factors(n):
        h = powers[n // p] ^ 2
        if h == 0 or gcd_f2(f, h) != 1:
            return False
    return True


# --- linear algebra ------------------------------------------------------

def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a list of row bitsets."""
    basis: List[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    out = []
    for j in range(ncols):
        c = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                c |= 1 << i
        out.append(c)
    return out


def solve(columns: Sequence[int], target: int) -> Optional[int]:
    """Find a bitset c with XOR of columns[j] over set bits j of c equal to target.

    Returns None if the system is inconsistent. Among all solutions the one
    with the smallest integer value is returned.
    """
    # Each pivot entry tracks (reduced column value, combination of inputs).
    pivots: List[tuple] = []
    kernel: List[int] = []
    for j, col in enumerate(columns):
        combo = 1 << j
        for v, cmb in pivots:
            if col ^ v < col:
                col ^= v
                combo ^= cmb
        if col:
            pivots.append((col, combo))
            pivots.sort(reverse=True)
        else:
            kernel.append(combo)
    sol = 0
    for v, cmb in pivots:
        if target ^ v < target:
            target ^= v
            sol ^= cmb
    if target:
        return None
    return _reduce_min(sol, kernel)


def _reduce_min(x: int, vectors: Sequence[int]) -> int:
    """Smallest element of the coset x + span(vectors)."""
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    # basis has distinct leading bits, so greedy clearing from the top is optimal
    for b in basis:
        x = min(x, x ^ b)
    return x


def inverse(rows: Sequence[int], n: int) -> List[int]:
    """Inverse of an n x n GF(2) matrix; raises ValueError if singular."""
    work = [(r, 1 << i) for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if (work[i][0] >> col) & 1), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        work[col], work[piv] = work[piv], work[col]
        pr, pa = work[col]
        for i in range(n):
            if i != col and (work[i][0] >> col) & 1:
                work[i] = (work[i][0] ^ pr, work[i][1] ^ pa)
    return [a for _, a in work]
