"""Finitely generated abelian groups presented as cokernels of integer
matrices: Smith normal form with transform tracking, graded-group and
degree-class arithmetic, and integer linear solving.

The cokernel basis is canonicalized so that variable degree tables are
reproducible: the free part is adapted to the cone spanned by the degree
columns when that cone is unimodular simplicial (exact for free rank <= 2,
Hermite fallback otherwise), and small torsion tables are reduced to their
lexicographic minimum over group automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd, prod

from .errors import GroupMismatch, NotFullRank
from .linalg import invert_unimodular


def _identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SmithDecomposition:
    """left @ original @ right == diag(diag), with unimodular transforms."""

    left: tuple
    diag: tuple
    right: tuple


def smith_normal_form(matrix) -> SmithDecomposition:
    """Smith normal form of an arbitrary integer matrix.

    Returns unimodular left (m x m) and right (n x n) with
    left @ matrix @ right diagonal, diagonal entries nonnegative and each
    dividing the next.  Total function; arbitrary-precision throughout.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    left = _identity(m)
    right = _identity(n)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + c * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in right:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None
                                     or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = next(((i, j) for i in range(t + 1, m)
                             for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    return SmithDecomposition(
        left=tuple(tuple(r) for r in left),
        diag=tuple(a[i][i] for i in range(min(m, n))),
        right=tuple(tuple(r) for r in right),
    )


def solve_integer(matrix, rhs):
    """One integer solution x of matrix @ x == rhs, or None."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    dec = smith_normal_form(matrix)
    lb = [sum(dec.left[i][k] * rhs[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = dec.diag[i] if i < len(dec.diag) else 0
        if d == 0:
            if lb[i] != 0:
                return None
        else:
            q, r = divmod(lb[i], d)
            if r:
                return None
            if i < n:
                y[i] = q
    return [sum(dec.right[i][k] * y[k] for k in range(n)) for i in range(n)]


def hermite_row_form(matrix):
    """Row-style Hermite normal form H = U @ matrix with U unimodular."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    u = _identity(m)
    rank = 0
    ncols = len(a[0]) if m else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, m):
            if a[i][col] != 0 and (piv is None or abs(a[i][col]) < abs(a[piv][col])):
                piv = i
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        u[rank], u[piv] = u[piv], u[rank]
        while True:
            done = True
            for i in range(rank + 1, m):
                if a[i][col]:
                    q = a[i][col] // a[rank][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[rank])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[rank])]
                    if a[i][col]:
                        a[rank], a[i] = a[i], a[rank]
                        u[rank], u[i] = u[i], u[rank]
                        done = False
            if done:
                break
        if a[rank][col] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        for i in range(rank):
            q = a[i][col] // a[rank][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[rank])]
                u[i] = [x - q * y for x, y in zip(u[i], u[rank])]
        rank += 1
        if rank == m:
            break
    return a, u


@dataclass(frozen=True)
class GradedGroup:
    """Z^free_rank plus cyclic factors Z/d, orders sorted and >= 2."""

    free_rank: int
    torsion_orders: tuple = ()

    def __post_init__(self):
        assert all(d >= 2 for d in self.torsion_orders)
        assert list(self.torsion_orders) == sorted(self.torsion_orders)

    def zero(self) -> "DegreeClass":
        return DegreeClass(self, (0,) * self.free_rank,
                           (0,) * len(self.torsion_orders))

    def degree(self, free, torsion=()) -> "DegreeClass":
        torsion = tuple(torsion)
        if not torsion:
            torsion = (0,) * len(self.torsion_orders)
        return DegreeClass(self, tuple(free), torsion)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion_orders]
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class DegreeClass:
    """Element of a GradedGroup in canonical form (residues reduced)."""

    group: GradedGroup
    free: tuple
    torsion: tuple

    def __post_init__(self):
        if len(self.free) != self.group.free_rank or \
           len(self.torsion) != len(self.group.torsion_orders):
            raise GroupMismatch("component counts do not match the group")
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(
            self, "torsion",
            tuple(int(t) % d for t, d in zip(self.torsion,
                                             self.group.torsion_orders)))

    def _check(self, other: "DegreeClass"):
        if self.group != other.group:
            raise GroupMismatch("degree classes live in different groups")

    def __add__(self, other: "DegreeClass") -> "DegreeClass":
        self._check(other)
        return DegreeClass(self.group,
                           tuple(a + b for a, b in zip(self.free, other.free)),
                           tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __sub__(self, other: "DegreeClass") -> "DegreeClass":
        self._check(other)
        return DegreeClass(self.group,
                           tuple(a - b for a, b in zip(self.free, other.free)),
                           tuple(a - b for a, b in zip(self.torsion, other.torsion)))

    def scale(self, k: int) -> "DegreeClass":
        return DegreeClass(self.group,
                           tuple(k * a for a in self.free),
                           tuple(k * a for a in self.torsion))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.free) and all(t == 0 for t in self.torsion)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.free + self.torsion) + ")"


def deg_add(a: DegreeClass, b: DegreeClass) -> DegreeClass:
    return a + b


def deg_sub(a: DegreeClass, b: DegreeClass) -> DegreeClass:
    return a - b


def deg_scale(a: DegreeClass, k: int) -> DegreeClass:
    return a.scale(k)


class Projection:
    """Surjection Z^r -> GradedGroup given by explicit integer matrices.

    free_matrix has one row per free generator, tors_matrix one row per
    torsion factor (entries taken mod the factor's order).
    """

    def __init__(self, group: GradedGroup, free_matrix, tors_matrix, rank: int):
        self.group = group
        self.free_matrix = tuple(tuple(r) for r in free_matrix)
        self.tors_matrix = tuple(tuple(r) for r in tors_matrix)
        self.rank = rank

    def __call__(self, vector) -> DegreeClass:
        free = tuple(sum(row[i] * vector[i] for i in range(self.rank))
                     for row in self.free_matrix)
        tors = tuple(sum(row[i] * vector[i] for i in range(self.rank))
                     for row in self.tors_matrix)
        return DegreeClass(self.group, free, tors)

    def section(self, degree: DegreeClass):
        """An integer preimage of a degree class (deterministic)."""
        if degree.group != self.group:
            raise GroupMismatch("degree does not belong to this projection")
        orders = self.group.torsion_orders
        k = len(orders)
        rows = [list(r) + [0] * k for r in self.free_matrix]
        for j, r in enumerate(self.tors_matrix):
            rows.append(list(r) + [-orders[j] if j == i else 0 for i in range(k)])
        rhs = list(degree.free) + list(degree.torsion)
        if not rows:  # trivial group: every vector is a preimage of 0
            return [0] * self.rank
        sol = solve_integer(rows, rhs)
        assert sol is not None, "projection must be surjective"
        return sol[:self.rank]


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    return tuple(x // g for x in vec) if g else tuple(vec)


def _canonical_free_transform(columns, rank: int):
    """Unimodular U adapting the free basis to the cone of the columns.

    Exact for rank 1 and 2 when the cone over the nonzero columns is
    pointed simplicial with unimodular primitive generators; otherwise
    falls back to the Hermite form of the column matrix.
    """
    nonzero = [c for c in columns if any(c)]
    if rank == 0 or not nonzero:
        return _identity(rank)
    if rank == 1:
        signs = {1 if c[0] > 0 else -1 for c in nonzero}
        if len(signs) == 1:
            return [[signs.pop()]]
    if rank == 2:
        dirs = []
        for c in columns:
            if any(c):
                d = _primitive(c)
                if d not in dirs:
                    dirs.append(d)
        for u, v in permutations(dirs, 2):
            det = u[0] * v[1] - u[1] * v[0]
            if det in (1, -1):
                inside = True
                for c in nonzero:
                    s = c[0] * v[1] - c[1] * v[0]
                    t = u[0] * c[1] - u[1] * c[0]
                    if s * det < 0 or t * det < 0:
                        inside = False
                        break
                if inside:
                    first_u = next(i for i, c in enumerate(columns)
                                   if any(c) and _primitive(c) == u)
                    first_v = next(i for i, c in enumerate(columns)
                                   if any(c) and _primitive(c) == v)
                    if first_u > first_v:
                        u, v = v, u
                    return invert_unimodular([[u[0], v[0]], [u[1], v[1]]])
    matrix = [[c[i] for c in columns] for i in range(rank)]
    _, u = hermite_row_form(matrix)
    return u


def _torsion_automorphisms(orders):
    """Unit scalings per factor composed with permutations of equal orders."""
    units = [[u for u in range(1, d) if gcd(u, d) == 1] for d in orders]
    k = len(orders)
    perms = [p for p in permutations(range(k))
             if all(orders[p[i]] == orders[i] for i in range(k))]
    for p in perms:
        for scales in product(*units):
            yield p, scales


_TORSION_SEARCH_LIMIT = 20000


def _canonicalize_torsion(free_rows, tors_rows, orders):
    """Lexicographically minimal torsion table over mixing and automorphisms."""
    k = len(orders)
    if k == 0:
        return tors_rows
    ncols = len(tors_rows[0])
    rank = len(free_rows)
    size = prod(orders)
    if size ** rank > _TORSION_SEARCH_LIMIT:
        return tors_rows
    residues = list(product(*[range(d) for d in orders]))
    table = [tuple(tors_rows[j][i] % orders[j] for j in range(k))
             for i in range(ncols)]
    best = None
    for taus in product(residues, repeat=rank):
        mixed = []
        for i in range(ncols):
            col = list(table[i])
            for g in range(rank):
                for j in range(k):
                    col[j] = (col[j] + free_rows[g][i] * taus[g][j]) % orders[j]
            mixed.append(col)
        for perm, scales in _torsion_automorphisms(orders):
            cand = tuple(tuple(col[perm[j]] * scales[j] % orders[j]
                               for j in range(k)) for col in mixed)
            if best is None or cand < best:
                best = cand
    return [tuple(best[i][j] for i in range(ncols)) for j in range(k)]


def cokernel(matrix):
    """Cokernel of an integer matrix with full column rank.

    Returns (GradedGroup, Projection); the projection is surjective with
    kernel exactly the column span, derived from the Smith decomposition
    and canonicalized as described in the module docstring.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    dec = smith_normal_form(matrix)
    nonzero = [d for d in dec.diag if d != 0]
    if len(nonzero) < n:
        raise NotFullRank(f"column rank {len(nonzero)} < {n}")
    orders = tuple(d for d in nonzero if d >= 2)
    free_rank = m - n
    group = GradedGroup(free_rank, orders)

    tors_rows = [dec.left[i] for i in range(n) if dec.diag[i] >= 2]
    free_rows = [dec.left[i] for i in range(n, m)]

    u = _canonical_free_transform(
        [tuple(row[i] for row in free_rows) for i in range(m)], free_rank)
    free_rows = [[sum(u[a][b] * free_rows[b][i] for b in range(free_rank))
                  for i in range(m)] for a in range(free_rank)]
    tors_rows = [[row[i] % d for i in range(m)]
                 for row, d in zip(tors_rows, orders)]
    if orders:
        tors_rows = _canonicalize_torsion(free_rows, tors_rows, orders)

    return group, Projection(group, free_rows, tors_rows, m)
