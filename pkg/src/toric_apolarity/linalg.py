"""Exact linear algebra kernels: fraction-free rank/determinant over the
integers, rational echelon forms for kernels, a sparse incremental
echelonizer for graded ideal pieces, and prime-field elimination."""

from __future__ import annotations

from fractions import Fraction

from .errors import BadPrime, NonSquare


def _clear_denominators(rows):
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                from math import gcd
                lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in row])
    return out


def rank_bareiss(rows) -> int:
    """Exact rank via fraction-free (Bareiss) elimination.

    Accepts integer or Fraction entries; rectangular matrices allowed.
    """
    if not rows or not rows[0]:
        return 0
    a = _clear_denominators(rows)
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                num = a[rank][col] * a[i][j] - a[i][col] * a[rank][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == m:
            break
    return rank


def det_bareiss(rows):
    """Exact determinant (Fraction) of a square matrix via Bareiss."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare(f"matrix is {len(rows)}x{len(rows[0]) if rows else 0}")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for row in rows:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                from math import gcd
                lcm = lcm // gcd(lcm, x.denominator) * x.denominator
        scale *= lcm
        a.append([int(x * lcm) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], 1) / scale


def rref(rows, ncols: int):
    """Reduced row echelon form over the rationals.

    Returns (echelon_rows, pivot_columns).  Deterministic: pivots are the
    leftmost nonzero columns in order, rows normalized to leading 1.
    """
    a = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        lead = a[rank][col]
        a[rank] = [x / lead for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(a):
            break
    return a[:rank], pivots


def nullspace(rows, ncols: int):
    """Canonical kernel basis of the map v -> A v for A given row-wise.

    One basis vector per free column: entry 1 there, minus the pivot-row
    coefficients elsewhere.  Ordered by free column index.
    """
    echelon, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pcol in zip(echelon, pivots):
            vec[pcol] = -row[free]
        basis.append(vec)
    return basis


class SparseEchelon:
    """Incremental row echelonizer over the rationals with sparse rows.

    Rows are dicts mapping column index to a nonzero Fraction.  Suited to
    the graded pieces of binomial/monomial ideals, where rows stay short.
    """

    def __init__(self):
        self._pivots = {}  # leading column -> normalized sparse row

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: Fraction(v) for c, v in row.items() if v != 0}
        while row:
            lead = min(row)
            piv = self._pivots.get(lead)
            if piv is None:
                return row
            c = row[lead]
            for col, val in piv.items():
                new = row.get(col, Fraction(0)) - c * val
                if new == 0:
                    row.pop(col, None)
                else:
                    row[col] = new
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        self._pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def mat_mod(rows, p: int):
    """Reduce a rational matrix mod p; BadPrime if a denominator vanishes."""
    out = []
    for row in rows:
        new = []
        for x in row:
            x = Fraction(x)
            if x.denominator % p == 0:
                raise BadPrime(f"prime {p} divides a denominator")
            new.append(x.numerator * pow(x.denominator, -1, p) % p)
        out.append(new)
    return out


def rank_mod(rows, p: int) -> int:
    if not rows or not rows[0]:
        return 0
    a = [list(r) for r in rows]
    m, n = len(a), len(a[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col] % p != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(rank + 1, m):
            c = a[i][col] % p
            if c:
                a[i] = [(x - c * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def det_mod(rows, p: int) -> int:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare(f"matrix is {len(rows)}x{len(rows[0]) if rows else 0}")
    a = [[x % p for x in row] for row in rows]
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det % p
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for i in range(col + 1, n):
            c = a[i][col]
            if c:
                factor = c * inv % p
                a[i] = [(x - factor * y) % p for x, y in zip(a[i], a[col])]
    return det % p


def invert_unimodular(rows):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    echelon, pivots = rref(aug, 2 * n)
    if pivots != list(range(n)):
        raise NonSquare("matrix is not invertible")
    inv = []
    for row in echelon:
        assert all(x.denominator == 1 for x in row[n:]), "matrix not unimodular"
        inv.append([int(x) for x in row[n:]])
    return inv
