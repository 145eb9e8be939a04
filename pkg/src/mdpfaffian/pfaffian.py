"""Pfaffians of skew-symmetric matrices over the exact rings.

Matrices are plain lists of lists of ring elements. Numeric matrices go
through skew Gaussian elimination; matrices containing non-constant
polynomials use a memoized Laplace expansion that never divides.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .rings import Poly, RingElement, _norm, is_polynomial

Matrix = List[List[RingElement]]


class SkewSymmetryError(ValueError):
    pass


def check_skew(a: Sequence[Sequence[RingElement]]) -> None:
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise SkewSymmetryError("matrix is not square")
        if a[i][i]:
            raise SkewSymmetryError(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if a[i][j] + a[j][i]:
                raise SkewSymmetryError(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def _copy(a) -> Matrix:
    return [list(row) for row in a]


def pfaffian_definition(a: Sequence[Sequence[RingElement]]) -> RingElement:
    """Signed sum over all perfect matchings of the index set.

    Division-free form of the permutation definition; exponential cost, for
    cross-checking only.
    """
    n = len(a)
    if n % 2:
        return 0

    def rec(idx: Tuple[int, ...]) -> RingElement:
        if not idx:
            return 1
        i = idx[0]
        total: RingElement = 0
        for pos in range(1, len(idx)):
            j = idx[pos]
            if not a[i][j]:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a[i][j] * rec(rest)
            # pairing the first element with the element at position pos
            # requires pos - 1 transpositions
            total = total + (term if pos % 2 == 1 else -term)
        return total

    return rec(tuple(range(n)))


def laplace_expand(a: Sequence[Sequence[RingElement]], i: int):
    """Expansion of Pf(A) along row ``i`` (0-based).

    Returns ``[(sign, a_ij, minor), ...]`` for the nonzero entries, where the
    minor drops rows and columns i and j.
    """
    n = len(a)
    if n % 2 or n < 2:
        raise ValueError("Laplace expansion needs an even size >= 2")
    terms = []
    for j in range(n):
        if j == i or not a[i][j]:
            continue
        # 1-based exponent i+j+1+theta(i-j) with theta(0)=1; shifting both
        # indices by one leaves the parity unchanged
        theta = 1 if i - j >= 0 else 0
        sign = -1 if (i + j + 1 + theta) % 2 else 1
        keep = [k for k in range(n) if k not in (i, j)]
        minor = [[a[r][c] for c in keep] for r in keep]
        terms.append((sign, a[i][j], minor))
    return terms


def add_scaled_row_col(a: Sequence[Sequence[RingElement]], src: int, dst: int, lam) -> Matrix:
    """Add ``lam`` times row/column ``src`` to row/column ``dst``."""
    if src == dst:
        raise ValueError("source and destination must differ")
    out = _copy(a)
    n = len(out)
    for k in range(n):
        out[dst][k] = out[dst][k] + lam * out[src][k]
    for k in range(n):
        out[k][dst] = out[k][dst] + lam * out[k][src]
    return out


def swap_indices(a: Sequence[Sequence[RingElement]], i: int, j: int) -> Matrix:
    out = _copy(a)
    out[i], out[j] = out[j], out[i]
    for row in out:
        row[i], row[j] = row[j], row[i]
    return out


def _pfaffian_elimination(a) -> RingElement:
    n = len(a)
    m = [[Fraction(x.constant()) if isinstance(x, Poly) else Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for k in range(0, n, 2):
        piv = None
        for j in range(k + 1, n):
            if m[k][j]:
                piv = j
                break
        if piv is None:
            return 0
        if piv != k + 1:
            m[k + 1], m[piv] = m[piv], m[k + 1]
            for row in m:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            result = -result
        p = m[k][k + 1]
        result *= p
        rk, rk1 = m[k], m[k + 1]
        for i in range(k + 2, n):
            if not rk[i] and not rk1[i]:
                continue
            ui, vi = rk[i], rk1[i]
            row_i = m[i]
            for j in range(i + 1, n):
                delta = (ui * rk1[j] - rk[j] * vi) / p
                if delta:
                    row_i[j] -= delta
                    m[j][i] += delta
    return _norm(result)


def _pfaffian_laplace(a) -> RingElement:
    n = len(a)
    nz = [[j for j in range(n) if j != i and a[i][j]] for i in range(n)]
    memo: Dict[int, RingElement] = {0: Poly.const(1)}

    def rec(mask: int) -> RingElement:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        members = [k for k in range(n) if mask >> k & 1]
        pos = {k: p for p, k in enumerate(members)}
        # expand along the sparsest remaining row
        best, best_cnt = members[0], n + 1
        for k in members:
            cnt = sum(1 for j in nz[k] if mask >> j & 1)
            if cnt < best_cnt:
                best, best_cnt = k, cnt
                if cnt <= 1:
                    break
        i = best
        total: RingElement = Poly()
        for j in nz[i]:
            if not mask >> j & 1:
                continue
            pi, pj = pos[i], pos[j]
            theta = 1 if pi - pj >= 0 else 0
            sub = rec(mask & ~(1 << i) & ~(1 << j))
            if not sub:
                continue
            term = a[i][j] * sub
            total = total - term if (pi + pj + 1 + theta) % 2 else total + term
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def pfaffian(a: Sequence[Sequence[RingElement]]) -> RingElement:
    """Exact Pfaffian; odd sizes give zero."""
    check_skew(a)
    n = len(a)
    if n % 2:
        return 0
    if n == 0:
        return 1
    if any(is_polynomial(x) for row in a for x in row):
        return _pfaffian_laplace(a)
    value = _pfaffian_elimination(a)
    if any(isinstance(x, Poly) for row in a for x in row):
        return Poly.const(value)
    return value


def determinant(a: Sequence[Sequence[RingElement]]) -> RingElement:
    """Determinant by cofactor expansion memoized on column subsets."""
    n = len(a)
    memo: Dict[Tuple[int, int], RingElement] = {}

    def rec(row: int, cols: int) -> RingElement:
        if row == n:
            return 1
        key = (row, cols)
        if key in memo:
            return memo[key]
        total: RingElement = 0
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                continue
            if a[row][c]:
                term = a[row][c] * rec(row + 1, cols | (1 << c))
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return rec(0, 0)
