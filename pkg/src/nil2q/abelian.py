"""Exact arithmetic for finitely generated abelian groups.

A group is a direct sum of cyclic factors Z/d_i, encoded by its list of
generator orders (d = 0 means an infinite cyclic factor, d >= 2 a finite
one; order-1 factors are normalized away).  Elements are coordinate
vectors in canonical form, homomorphisms are integer matrices validated
for torsion compatibility, and the multilinear constructions (tensor,
exterior square, symmetric square) come with a fixed generator indexing.

All arithmetic uses Python integers, so it is exact at every scale and
cannot wrap; the "overflow must raise" requirement is met vacuously.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm, prod

from .errors import InvalidArgument, InvalidHomomorphism, UnsupportedEnumeration

# ---------------------------------------------------------------------------
# Integer matrices.  Tiny dense lists of lists; everything desk scale.

def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, x):
    return [sum(row[j] * x[j] for j in range(len(x))) for row in a]


class SmithForm:
    """Smith normal form D = U * M * V with tracked unimodular transforms.

    `diag` holds the diagonal entries d_1 | d_2 | ... (nonnegative, with
    zeros last); `u`, `uinv`, `v`, `vinv` are the transforms and their
    exact inverses.
    """

    def __init__(self, mat, nrows=None, ncols=None):
        if nrows is None:
            nrows = len(mat)
        if ncols is None:
            ncols = len(mat[0]) if mat else 0
        d = [list(row) for row in mat]
        assert all(len(row) == ncols for row in d)
        u, uinv = _identity(nrows), _identity(nrows)
        v, vinv = _identity(ncols), _identity(ncols)

        def row_swap(i, k):
            d[i], d[k] = d[k], d[i]
            u[i], u[k] = u[k], u[i]
            for r in uinv:
                r[i], r[k] = r[k], r[i]

        def row_add(i, k, q):
            # row i += q * row k
            d[i] = [a + q * b for a, b in zip(d[i], d[k])]
            u[i] = [a + q * b for a, b in zip(u[i], u[k])]
            for r in uinv:
                r[k] -= q * r[i]

        def row_neg(i):
            d[i] = [-a for a in d[i]]
            u[i] = [-a for a in u[i]]
            for r in uinv:
                r[i] = -r[i]

        def col_swap(j, k):
            for r in d:
                r[j], r[k] = r[k], r[j]
            for r in v:
                r[j], r[k] = r[k], r[j]
            vinv[j], vinv[k] = vinv[k], vinv[j]

        def col_add(j, k, q):
            # col j += q * col k
            for r in d:
                r[j] += q * r[k]
            for r in v:
                r[j] += q * r[k]
            vinv[k] = [a - q * b for a, b in zip(vinv[k], vinv[j])]

        def col_neg(j):
            for r in d:
                r[j] = -r[j]
            for r in v:
                r[j] = -r[j]
            vinv[j] = [-a for a in vinv[j]]

        t = 0
        limit = min(nrows, ncols)
        while t < limit:
            # locate a pivot of minimal absolute value in the trailing block
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    a = d[i][j]
                    if a != 0 and (best is None or abs(a) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
            while True:
                # clear column t below the pivot
                restart = False
                for i in range(t + 1, nrows):
                    if d[i][t]:
                        q = d[i][t] // d[t][t]
                        row_add(i, t, -q)
                        if d[i][t]:
                            row_swap(t, i)
                            restart = True
                            break
                if restart:
                    continue
                for j in range(t + 1, ncols):
                    if d[t][j]:
                        q = d[t][j] // d[t][t]
                        col_add(j, t, -q)
                        if d[t][j]:
                            col_swap(t, j)
                            restart = True
                            break
                if restart:
                    continue
                break
            # enforce the divisibility chain d_t | d_ij for the trailing block
            p = d[t][t]
            fix = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if d[i][j] % p:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is not None:
                row_add(t, fix, 1)
                continue
            if d[t][t] < 0:
                row_neg(t)
            t += 1

        self.nrows, self.ncols = nrows, ncols
        self.d = d
        self.diag = [d[i][i] for i in range(limit)]
        self.u, self.uinv = u, uinv
        self.v, self.vinv = v, vinv

    def solve(self, b):
        """One integer solution x of M x = b, or None."""
        c = mat_vec(self.u, list(b))
        y = [0] * self.ncols
        for i in range(self.nrows):
            di = self.diag[i] if i < len(self.diag) else 0
            if di == 0:
                if c[i] != 0:
                    return None
            else:
                if c[i] % di:
                    return None
                y[i] = c[i] // di
        return mat_vec(self.v, y)

    def kernel_basis(self):
        """Columns spanning the integer kernel lattice of M."""
        cols = []
        for j in range(self.ncols):
            dj = self.diag[j] if j < len(self.diag) else 0
            if dj == 0:
                cols.append([self.v[i][j] for i in range(self.ncols)])
        return cols


def presented(ngens: int, relations) -> "FGAbelian":
    """Cokernel of a relation matrix: the group <ngens generators | rows>.

    Each row of `relations` is one relation vector over the generators.
    Returns the invariant-factor decomposition (canonical order: finite
    factors in ascending divisibility, then free factors).
    """
    rels = [list(r) for r in relations]
    for r in rels:
        if len(r) != ngens:
            raise InvalidArgument(f"relation length {len(r)} != {ngens} generators")
    if not rels:
        return FGAbelian([0] * ngens)
    # relations as columns of an ngens x k matrix
    cols = [[rels[k][i] for k in range(len(rels))] for i in range(ngens)]
    snf = SmithForm(cols, ngens, len(rels))
    orders = [d for d in snf.diag if d != 1]
    orders += [0] * (ngens - len(snf.diag))
    return FGAbelian(orders)


# ---------------------------------------------------------------------------
# Groups, elements, homomorphisms.

class FGAbelian:
    """Finitely generated abelian group, a fixed direct sum of cyclics."""

    __slots__ = ("orders",)

    def __init__(self, orders):
        for d in orders:
            if d < 0:
                raise InvalidArgument(f"negative generator order {d}")
        self.orders = tuple(int(d) for d in orders if d != 1)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def is_finite(self) -> bool:
        return all(d > 0 for d in self.orders)

    def order(self) -> int:
        """Cardinality; 0 encodes an infinite group."""
        return prod(self.orders) if self.is_finite() else 0

    def exponent(self) -> int:
        if not self.is_finite():
            raise InvalidArgument("exponent of an infinite group")
        return lcm(*self.orders) if self.orders else 1

    def is_trivial(self) -> bool:
        return not self.orders

    def _canonical(self, coords):
        out = []
        for x, d in zip(coords, self.orders):
            out.append(x % d if d > 0 else x)
        return tuple(out)

    def element(self, coords) -> "AbElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise InvalidArgument(
                f"coordinate length {len(coords)} != rank {self.rank}")
        return AbElement(self, self._canonical(coords))

    def zero(self) -> "AbElement":
        return AbElement(self, (0,) * self.rank)

    def gen(self, i: int) -> "AbElement":
        return self.element(tuple(1 if j == i else 0 for j in range(self.rank)))

    def gens(self):
        return [self.gen(i) for i in range(self.rank)]

    def elements(self):
        """All elements in lexicographic coordinate order."""
        if not self.is_finite():
            raise UnsupportedEnumeration(f"cannot enumerate infinite group {self}")
        for coords in itertools.product(*(range(d) for d in self.orders)):
            yield AbElement(self, coords)

    def invariant_factors(self) -> tuple:
        """Canonical invariant factors (ascending divisibility, 0s last)."""
        r = self.rank
        if r == 0:
            return ()
        diag = [[self.orders[i] if i == j else 0 for j in range(r)] for i in range(r)]
        snf = SmithForm(diag, r, r)
        fin = [d for d in snf.diag if d not in (0, 1)]
        free = sum(1 for d in snf.diag if d == 0)
        return tuple(fin) + (0,) * free

    def __eq__(self, other):
        return isinstance(other, FGAbelian) and self.orders == other.orders

    def __hash__(self):
        return hash(("FGAbelian", self.orders))

    def __repr__(self):
        return f"FGAbelian({list(self.orders)})"

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.orders)


class AbElement:
    """Element of an FGAbelian group, coordinates in canonical form."""

    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        self.group = group
        self.coords = coords

    def _check(self, other):
        if self.group != other.group:
            raise InvalidArgument(
                f"elements of different groups: {self.group} vs {other.group}")

    def __add__(self, other):
        self._check(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return self.group.element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return self.group.element(tuple(-a for a in self.coords))

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return self.group.element(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def order(self) -> int:
        """Element order; 0 means infinite."""
        n = 1
        for x, d in zip(self.coords, self.group.orders):
            if d == 0:
                if x != 0:
                    return 0
            elif x != 0:
                n = lcm(n, d // gcd(d, x))
        return n

    def __eq__(self, other):
        return (isinstance(other, AbElement)
                and self.group == other.group and self.coords == other.coords)

    def __hash__(self):
        return hash((self.group.orders, self.coords))

    def __repr__(self):
        return f"({', '.join(map(str, self.coords))})"


class AbHom:
    """Homomorphism between FGAbelian groups as an integer matrix.

    Column j is the image of source generator j.  Entries are stored
    canonically (reduced mod the target orders), and torsion
    compatibility d_j * column_j = 0 is enforced at construction.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FGAbelian, target: FGAbelian, matrix):
        rows = [list(map(int, row)) for row in matrix]
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise InvalidArgument(
                f"matrix shape {len(rows)}x{len(rows[0]) if rows else 0} != "
                f"{target.rank}x{source.rank}")
        canon = []
        for i, row in enumerate(rows):
            d = target.orders[i]
            canon.append(tuple(x % d if d > 0 else x for x in row))
        self.source, self.target, self.matrix = source, target, tuple(canon)
        for j, dj in enumerate(source.orders):
            col = self.column(j)
            if not (dj * col).is_zero():
                raise InvalidHomomorphism(
                    f"column {j} times source order {dj} is {dj * col}, not zero")

    @classmethod
    def identity(cls, group: FGAbelian) -> "AbHom":
        return cls(group, group, _identity(group.rank))

    @classmethod
    def zero(cls, source: FGAbelian, target: FGAbelian) -> "AbHom":
        return cls(source, target, [[0] * source.rank for _ in range(target.rank)])

    @classmethod
    def from_columns(cls, source: FGAbelian, target: FGAbelian, cols) -> "AbHom":
        for c in cols:
            if c.group != target:
                raise InvalidArgument("column not in the target group")
        matrix = [[c.coords[i] for c in cols] for i in range(target.rank)]
        return cls(source, target, matrix)

    def column(self, j: int) -> AbElement:
        return self.target.element(tuple(row[j] for row in self.matrix))

    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def apply(self, x: AbElement) -> AbElement:
        if x.group != self.source:
            raise InvalidArgument("element not in the source group")
        return self.target.element(mat_vec(self.matrix, x.coords))

    def compose(self, other: "AbHom") -> "AbHom":
        """self o other (apply `other` first)."""
        if other.target != self.source:
            raise InvalidArgument("composition shapes do not match")
        n, k, m = self.target.rank, self.source.rank, other.source.rank
        mat = [[sum(self.matrix[i][t] * other.matrix[t][j] for t in range(k))
                for j in range(m)] for i in range(n)]
        return AbHom(other.source, self.target, mat)

    def __add__(self, other):
        if not isinstance(other, AbHom):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            raise InvalidArgument("hom sum needs equal endpoints")
        return AbHom(self.source, self.target,
                     [[a + b for a, b in zip(r1, r2)]
                      for r1, r2 in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return AbHom(self.source, self.target,
                     [[-a for a in row] for row in self.matrix])

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.matrix)

    def is_identity(self) -> bool:
        return (self.source == self.target
                and self == AbHom.identity(self.source))

    def __eq__(self, other):
        return (isinstance(other, AbHom) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source.orders, self.target.orders, self.matrix))

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target}, {[list(r) for r in self.matrix]})"


# ---------------------------------------------------------------------------
# Kernels, cokernels, subgroups.

def _relation_columns(group: FGAbelian):
    """Columns d_i * e_i spanning the relation lattice (finite factors only)."""
    cols = []
    for i, d in enumerate(group.orders):
        if d > 0:
            cols.append([d if j == i else 0 for j in range(group.rank)])
    return cols


def _preimage_lattice(matrix_rows, target: FGAbelian, nsrc: int):
    """Basis of {c in Z^nsrc : M c lies in the relation lattice of target}."""
    rel = _relation_columns(target)
    ncols = nsrc + len(rel)
    stacked = [[matrix_rows[i][j] for j in range(nsrc)] + [-rel[k][i] for k in range(len(rel))]
               for i in range(target.rank)]
    if target.rank == 0:
        # everything maps to zero
        return _identity(nsrc)
    snf = SmithForm(stacked, target.rank, ncols)
    basis = []
    for col in snf.kernel_basis():
        basis.append(col[:nsrc])
    return [list(c) for c in basis]


class Subgroup:
    """Subgroup of an FGAbelian group generated by a list of elements."""

    def __init__(self, ambient: FGAbelian, elements):
        elements = list(elements)
        for e in elements:
            if e.group != ambient:
                raise InvalidArgument("generator not in the ambient group")
        self.ambient = ambient
        self.generators = elements
        k = len(elements)
        # columns of the generator matrix
        self._gen_cols = [[e.coords[i] for e in elements] for i in range(ambient.rank)]
        # membership: solve [V | -rel] z = x over Z
        rel = _relation_columns(ambient)
        stacked = [[self._gen_cols[i][j] for j in range(k)] + [rel[t][i] for t in range(len(rel))]
                   for i in range(ambient.rank)]
        self._solver = SmithForm(stacked, ambient.rank, k + len(rel)) if ambient.rank else None
        # abstract structure: Z^k modulo the preimage of the relation lattice
        ker = _preimage_lattice(self._gen_cols, ambient, k) if k else []
        self.group = presented(k, [[col[i] for i in range(k)] for col in ker])

    def invariants(self) -> tuple:
        return self.group.invariant_factors()

    def order(self) -> int:
        return self.group.order()

    def contains(self, x: AbElement) -> bool:
        if x.group != self.ambient:
            raise InvalidArgument("element not in the ambient group")
        if self.ambient.rank == 0:
            return True
        return self._solver.solve(list(x.coords)) is not None

    def is_whole(self) -> bool:
        return all(self.contains(g) for g in self.ambient.gens())

    def index(self) -> int:
        """Index in the ambient group; 0 when infinite."""
        a, s = self.ambient.order(), self.order()
        if a and s:
            return a // s
        if self.ambient.rank == 0:
            return 1
        # quotient ambient / (subgroup + torsion); its order is the index
        rel = _relation_columns(self.ambient)
        rows = ([[self._gen_cols[i][j] for i in range(self.ambient.rank)]
                 for j in range(len(self.generators))] +
                [[rel[t][i] for i in range(self.ambient.rank)] for t in range(len(rel))])
        q = presented(self.ambient.rank, rows)
        return q.order()


def subgroup_generated(elements, ambient: FGAbelian = None) -> Subgroup:
    elements = list(elements)
    if ambient is None:
        if not elements:
            raise InvalidArgument("need an ambient group for the empty subgroup")
        ambient = elements[0].group
    return Subgroup(ambient, elements)


def kernel(h: AbHom):
    """Kernel of h as (group K, inclusion K -> source)."""
    src = h.source
    r = src.rank
    if r == 0:
        k = FGAbelian([])
        return k, AbHom(k, src, [])
    cols = [[h.matrix[i][j] for j in range(r)] for i in range(h.target.rank)]
    lat = _preimage_lattice(cols, h.target, r)  # columns, each length r
    s = len(lat)
    # express the source relation lattice in terms of the kernel lattice basis
    w = [[lat[j][i] for j in range(s)] for i in range(r)]  # r x s
    wsnf = SmithForm(w, r, s)
    rel_in_w = []
    for colvec in _relation_columns(src):
        sol = wsnf.solve(colvec)
        assert sol is not None, "source relations must lie in the kernel lattice"
        rel_in_w.append(sol)
    # K = Z^s / <rel_in_w>, with generators expressed back in the source
    if s == 0:
        k = FGAbelian([])
        return k, AbHom(k, src, [[] for _ in range(r)])
    csnf = SmithForm([[rel[i] for rel in rel_in_w] for i in range(s)], s, len(rel_in_w))
    diag = csnf.diag + [0] * (s - len(csnf.diag))
    keep = [i for i, d in enumerate(diag) if d != 1]
    k = FGAbelian([diag[i] for i in keep])
    incl_cols = []
    for i in keep:
        y = [csnf.uinv[t][i] for t in range(s)]
        incl_cols.append(src.element(mat_vec(w, y)))
    return k, AbHom.from_columns(k, src, incl_cols)


def cokernel(h: AbHom):
    """Cokernel of h as (group C, projection target -> C)."""
    tgt = h.target
    r = tgt.rank
    if r == 0:
        c = FGAbelian([])
        return c, AbHom(tgt, c, [])
    # columns: target relations plus image columns
    cols = _relation_columns(tgt)
    cols += [[h.matrix[i][j] for i in range(r)] for j in range(h.source.rank)]
    if not cols:
        c = FGAbelian([0] * r)
        return c, AbHom(tgt, c, _identity(r))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(r)]
    snf = SmithForm(mat, r, len(cols))
    diag = snf.diag + [0] * (r - len(snf.diag))
    keep = [i for i, d in enumerate(diag) if d != 1]
    c = FGAbelian([diag[i] for i in keep])
    proj_rows = [snf.u[i] for i in keep]
    return c, AbHom(tgt, c, proj_rows)


def image(h: AbHom) -> Subgroup:
    return Subgroup(h.target, h.columns())


# ---------------------------------------------------------------------------
# Canonical decomposition and isomorphism witnesses.

def canonical_decomposition(group: FGAbelian):
    """(C, to_c, from_c) with C the invariant-factor form of `group`."""
    r = group.rank
    if r == 0:
        c = FGAbelian([])
        return c, AbHom(group, c, []), AbHom(c, group, [])
    diag = [[group.orders[i] if i == j else 0 for j in range(r)] for i in range(r)]
    snf = SmithForm(diag, r, r)
    full = snf.diag
    keep = [i for i, d in enumerate(full) if d != 1]
    c = FGAbelian([full[i] for i in keep])
    to_c = AbHom(group, c, [snf.u[i] for i in keep])
    from_c = AbHom(c, group, [[snf.uinv[i][j] for j in keep] for i in range(r)])
    return c, to_c, from_c


def isomorphic(a: FGAbelian, b: FGAbelian) -> bool:
    return a.invariant_factors() == b.invariant_factors()


def isomorphism(a: FGAbelian, b: FGAbelian):
    """(forward, backward) AbHom witnesses, or None when not isomorphic."""
    if not isomorphic(a, b):
        return None
    _, to_ca, from_ca = canonical_decomposition(a)
    _, to_cb, from_cb = canonical_decomposition(b)
    return from_cb.compose(to_ca), from_ca.compose(to_cb)


# ---------------------------------------------------------------------------
# Multilinear constructions with fixed generator indexing.

class IndexedGroup:
    """An FGAbelian together with a pairing of index pairs to coordinates.

    Generators of order 1 are dropped from the group but keep an index
    entry mapping to None, so that `pure` stays well-defined.
    """

    def __init__(self, group: FGAbelian, positions: dict):
        self.group = group
        self.positions = positions

    def position(self, i, j):
        return self.positions.get((i, j))


class TensorProduct(IndexedGroup):
    """A (x) B with generators e_i (x) f_j ordered lexicographically."""

    def __init__(self, a: FGAbelian, b: FGAbelian):
        self.left, self.right = a, b
        orders, positions = [], {}
        pos = 0
        for i, di in enumerate(a.orders):
            for j, dj in enumerate(b.orders):
                g = gcd(di, dj)
                if g == 1:
                    positions[(i, j)] = None
                else:
                    positions[(i, j)] = pos
                    orders.append(g)
                    pos += 1
        super().__init__(FGAbelian(orders), positions)

    def pure(self, x: AbElement, y: AbElement) -> AbElement:
        """The elementary tensor x (x) y."""
        if x.group != self.left or y.group != self.right:
            raise InvalidArgument("pure tensor arguments in the wrong groups")
        coords = [0] * self.group.rank
        for i, xi in enumerate(x.coords):
            if xi == 0:
                continue
            for j, yj in enumerate(y.coords):
                p = self.positions[(i, j)]
                if p is not None and yj != 0:
                    coords[p] += xi * yj
        return self.group.element(coords)


class ExteriorSquare(IndexedGroup):
    """Lambda^2 A with generators e_i ^ e_j for i < j."""

    def __init__(self, a: FGAbelian):
        self.base = a
        orders, positions = [], {}
        pos = 0
        for i in range(a.rank):
            for j in range(i + 1, a.rank):
                g = gcd(a.orders[i], a.orders[j])
                if g == 1:
                    positions[(i, j)] = None
                else:
                    positions[(i, j)] = pos
                    orders.append(g)
                    pos += 1
        super().__init__(FGAbelian(orders), positions)

    def wedge(self, x: AbElement, y: AbElement) -> AbElement:
        coords = [0] * self.group.rank
        for i in range(self.base.rank):
            for j in range(i + 1, self.base.rank):
                p = self.positions[(i, j)]
                if p is not None:
                    coords[p] += x.coords[i] * y.coords[j] - x.coords[j] * y.coords[i]
        return self.group.element(coords)


class SymmetricSquare(IndexedGroup):
    """Sym^2 A with generators e_i e_j for i <= j."""

    def __init__(self, a: FGAbelian):
        self.base = a
        orders, positions = [], {}
        pos = 0
        for i in range(a.rank):
            for j in range(i, a.rank):
                g = a.orders[i] if i == j else gcd(a.orders[i], a.orders[j])
                if g == 1:
                    positions[(i, j)] = None
                else:
                    positions[(i, j)] = pos
                    orders.append(g)
                    pos += 1
        super().__init__(FGAbelian(orders), positions)


def tensor(a: FGAbelian, b: FGAbelian) -> TensorProduct:
    return TensorProduct(a, b)


def exterior_square(a: FGAbelian) -> ExteriorSquare:
    return ExteriorSquare(a)


def sym_square(a: FGAbelian) -> SymmetricSquare:
    return SymmetricSquare(a)


def direct_sum(a: FGAbelian, b: FGAbelian) -> FGAbelian:
    return FGAbelian(a.orders + b.orders)


# ---------------------------------------------------------------------------
# Enumeration of homomorphisms.

def _torsion_annihilator_elements(target: FGAbelian, d: int):
    """Elements y with d * y = 0, in lexicographic order (d = 0: all)."""
    ranges = []
    for dt in target.orders:
        if d == 0:
            if dt == 0:
                raise UnsupportedEnumeration(
                    "infinitely many homomorphisms: free source generator "
                    "against a free target factor")
            ranges.append(range(dt))
        elif dt == 0:
            ranges.append(range(1))
        else:
            g = gcd(dt, d)
            step = dt // g
            ranges.append(range(0, dt, step))
    for coords in itertools.product(*ranges):
        yield target.element(coords)


def enumerate_homs(source: FGAbelian, target: FGAbelian):
    """All homomorphisms source -> target in a fixed deterministic order."""
    col_choices = [list(_torsion_annihilator_elements(target, d))
                   for d in source.orders]
    for cols in itertools.product(*col_choices):
        yield AbHom.from_columns(source, target, list(cols))


def hom_count(source: FGAbelian, target: FGAbelian) -> int:
    n = 1
    for d in source.orders:
        for dt in target.orders:
            if d == 0:
                if dt == 0:
                    raise UnsupportedEnumeration("infinite hom set")
                n *= dt
            elif dt == 0:
                pass
            else:
                n *= gcd(dt, d)
    return n
