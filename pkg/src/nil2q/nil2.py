"""Class-two nilpotent groups presented by explicit central-extension data.

A group is stored as (A, B, bil, carry): A is the abelianization with
generators e_1..e_r, B is the commutator subgroup, and the 2-cocycle on
canonical representatives splits as

    beta(x, y) = sum_ij x_i y_j bil[i][j]
               + sum_{i : d_i > 0} floor((x_i + y_i) / d_i) carry_i.

Elements are pairs (a, u) in A x B with

    (x, u) + (y, v) = (x + y, u + v + beta(x, y)).

B is required to be exactly the commutator subgroup: the antisymmetrized
bilinear part must generate B, otherwise construction is rejected.

The module also provides the constructions (product, coproduct, free
group, the universal quadratic extension), ingestion of concrete finite
groups via multiplication tables, and canonicalization of any finite
class-two table into this format.
"""

from __future__ import annotations

import itertools
from math import lcm

from . import abelian as ab
from .errors import (
    CommutatorMismatch,
    InvalidArgument,
    InvalidCocycle,
    NotAGroup,
    NotAnAction,
    NotClassTwo,
    UnsupportedEnumeration,
)


class Nil2Group:
    """A nil_2-group as central-extension data over explicit cocycles."""

    __slots__ = ("A", "B", "bil", "carry", "provenance",
                 "_bilc", "_carryc", "_orders", "_borders", "_kappa_cache")

    def __init__(self, A, B, bil, carry, provenance=None, _validated=False):
        self._kappa_cache = {}
        self.A, self.B = A, B
        self.bil = tuple(tuple(row) for row in bil)
        self.carry = tuple(carry)
        self.provenance = provenance
        r = A.rank
        if len(self.bil) != r or any(len(row) != r for row in self.bil):
            raise InvalidArgument(f"bil must be {r}x{r}")
        if len(self.carry) != r:
            raise InvalidArgument(f"carry must have {r} entries")
        for i in range(r):
            for j in range(r):
                if self.bil[i][j].group != B:
                    raise InvalidArgument(f"bil[{i+1}][{j+1}] not in B")
            if self.carry[i].group != B:
                raise InvalidArgument(f"carry[{i+1}] not in B")
        if not _validated:
            self._validate()
        # flat coordinate caches for the hot cocycle path
        self._orders = A.orders
        self._borders = B.orders
        self._bilc = tuple(
            tuple(None if e.is_zero() else e.coords for e in row) for row in self.bil)
        self._carryc = tuple(None if e.is_zero() else e.coords for e in self.carry)

    def _validate(self):
        r = self.A.rank
        for i in range(r):
            di = self.A.orders[i]
            for j in range(r):
                dj = self.A.orders[j]
                e = self.bil[i][j]
                if not (di * e).is_zero() or not (dj * e).is_zero():
                    raise InvalidCocycle(
                        f"bil[{i+1}][{j+1}] = {e} not killed by generator orders "
                        f"({di}, {dj})")
            if di == 0 and not self.carry[i].is_zero():
                raise InvalidCocycle(
                    f"carry[{i+1}] nonzero on an infinite cyclic factor")
        anti = [self.bil[i][j] - self.bil[j][i]
                for i in range(r) for j in range(i + 1, r)]
        if not self.B.is_trivial():
            sub = ab.subgroup_generated(anti, self.B)
            if not sub.is_whole():
                raise CommutatorMismatch(
                    "commutators generate a proper subgroup of B with invariants "
                    f"{list(sub.invariants())}, B = {self.B}")
        elif r == 0:
            pass

    # -- structure ---------------------------------------------------------

    @property
    def rank(self):
        return self.A.rank

    def is_finite(self):
        return self.A.is_finite() and self.B.is_finite()

    def order(self):
        return self.A.order() * self.B.order() if self.is_finite() else 0

    def is_abelian(self):
        return self.B.is_trivial()

    def __eq__(self, other):
        return (isinstance(other, Nil2Group) and self.A == other.A
                and self.B == other.B and self.bil == other.bil
                and self.carry == other.carry)

    def __hash__(self):
        return hash((self.A, self.B,
                     tuple(tuple(e.coords for e in row) for row in self.bil),
                     tuple(e.coords for e in self.carry)))

    def __repr__(self):
        return f"Nil2Group(A={self.A}, B={self.B})"

    def __str__(self):
        return f"G[{self.A}|{self.B}]"

    # -- elements ----------------------------------------------------------

    def element(self, acoords, bcoords) -> "Nil2Element":
        return Nil2Element(self, self.A.element(acoords), self.B.element(bcoords))

    def pair(self, a: ab.AbElement, b: ab.AbElement) -> "Nil2Element":
        if a.group != self.A or b.group != self.B:
            raise InvalidArgument("components not in A and B")
        return Nil2Element(self, a, b)

    def zero(self) -> "Nil2Element":
        return Nil2Element(self, self.A.zero(), self.B.zero())

    def gen(self, i: int) -> "Nil2Element":
        """The chosen lift (e_i, 0) of abelianization generator i."""
        return Nil2Element(self, self.A.gen(i), self.B.zero())

    def central(self, b: ab.AbElement) -> "Nil2Element":
        """The element (0, b) of the commutator subgroup."""
        if b.group != self.B:
            raise InvalidArgument("not an element of B")
        return Nil2Element(self, self.A.zero(), b)

    def cocycle(self, x: ab.AbElement, y: ab.AbElement) -> ab.AbElement:
        """beta(x, y) evaluated on canonical representatives."""
        return self.B.element(self._cocycle_coords(x.coords, y.coords))

    def _cocycle_coords(self, x, y):
        acc = [0] * len(self._borders)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self._bilc[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                e = row[j]
                if e is not None:
                    c = xi * yj
                    for t, et in enumerate(e):
                        acc[t] += c * et
        for i, di in enumerate(self._orders):
            if di > 0 and x[i] + y[i] >= di:
                e = self._carryc[i]
                if e is not None:
                    for t, et in enumerate(e):
                        acc[t] += et
        return acc

    def elements(self):
        """All elements, deterministic (A x B lexicographic) order."""
        if not self.is_finite():
            raise UnsupportedEnumeration(f"cannot enumerate infinite group {self}")
        for a in self.A.elements():
            for b in self.B.elements():
                yield Nil2Element(self, a, b)

    def exponent(self) -> int:
        if not self.is_finite():
            raise InvalidArgument("exponent of an infinite group")
        n = 1
        for z in self.elements():
            n = lcm(n, z.order())
        return n

    def commutator_pairing(self, x: ab.AbElement, y: ab.AbElement) -> ab.AbElement:
        """The antisymmetrized cocycle: the commutator [(x,*), (y,*)] in B."""
        return self.cocycle(x, y) - self.cocycle(y, x)

    def kappa(self, a: ab.AbElement) -> ab.AbElement:
        """B-part of the ordered generator-multiple sum lifting a.

        With a = (x_1, ..., x_r) canonical, this is the B-part of
        x_1 (e_1, 0) + ... + x_r (e_r, 0) summed left to right.
        """
        key = a.coords
        hit = self._kappa_cache.get(key)
        if hit is None:
            acc = self.zero()
            for i, m in enumerate(key):
                acc = acc + m * self.gen(i)
            assert acc.a == a
            hit = self._kappa_cache[key] = acc.b
        return hit


class Nil2Element:
    """Element (a, u) of a Nil2Group, both components canonical."""

    __slots__ = ("group", "a", "b")

    def __init__(self, group, a, b):
        self.group = group
        self.a = a
        self.b = b

    def _check(self, other):
        if self.group is not other.group and self.group != other.group:
            raise InvalidArgument("elements of different nil_2-groups")

    def __add__(self, other):
        self._check(other)
        g = self.group
        bsum = [p + q for p, q in zip(self.b.coords, other.b.coords)]
        coc = g._cocycle_coords(self.a.coords, other.a.coords)
        return Nil2Element(g, self.a + other.a,
                           g.B.element([p + q for p, q in zip(bsum, coc)]))

    def __neg__(self):
        g = self.group
        na = -self.a
        coc = g._cocycle_coords(self.a.coords, na.coords)
        return Nil2Element(g, na,
                           g.B.element([-p - q for p, q in zip(self.b.coords, coc)]))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        z = self
        if n < 0:
            z, n = -z, -n
        acc = self.group.zero()
        while n:
            if n & 1:
                acc = acc + z
            n >>= 1
            if n:
                z = z + z
        return acc

    __rmul__ = __mul__

    def comm(self, other) -> "Nil2Element":
        """The commutator [self, other] = -self - other + self + other."""
        self._check(other)
        g = self.group
        return Nil2Element(g, g.A.zero(),
                           g.commutator_pairing(self.a, other.a))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def order(self) -> int:
        """Element order, 0 for infinite."""
        m = self.a.order()
        if m == 0:
            return 0
        w = (m * self).b
        k = w.order()
        return 0 if k == 0 else m * k

    def __eq__(self, other):
        return (isinstance(other, Nil2Element) and self.group == other.group
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a.coords, self.b.coords))

    def __repr__(self):
        return f"({','.join(map(str, self.a.coords))} | {','.join(map(str, self.b.coords))})"


# ---------------------------------------------------------------------------
# Constructors.

def make(A, B, bil, carry, provenance=None) -> Nil2Group:
    """Validate cocycle data and build the group."""
    return Nil2Group(A, B, bil, carry, provenance)


def from_abelian(A: ab.FGAbelian) -> Nil2Group:
    """An abelian group viewed as a nil_2-group with trivial B."""
    B = ab.FGAbelian([])
    z = B.zero()
    r = A.rank
    return Nil2Group(A, B, [[z] * r for _ in range(r)], [z] * r,
                     provenance=("abelian",))


def product(g1: Nil2Group, g2: Nil2Group) -> Nil2Group:
    """Direct product: block-diagonal cocycle data."""
    A = ab.direct_sum(g1.A, g2.A)
    B = ab.direct_sum(g1.B, g2.B)
    r1, r2 = g1.rank, g2.rank
    s1, s2 = g1.B.rank, g2.B.rank

    def emb1(e):
        return B.element(e.coords + (0,) * s2)

    def emb2(e):
        return B.element((0,) * s1 + e.coords)

    z = B.zero()
    bil = [[z] * (r1 + r2) for _ in range(r1 + r2)]
    for i in range(r1):
        for j in range(r1):
            bil[i][j] = emb1(g1.bil[i][j])
    for i in range(r2):
        for j in range(r2):
            bil[r1 + i][r1 + j] = emb2(g2.bil[i][j])
    carry = [emb1(e) for e in g1.carry] + [emb2(e) for e in g2.carry]
    return Nil2Group(A, B, bil, carry, provenance=("product", g1, g2))


def coproduct(g1: Nil2Group, g2: Nil2Group) -> Nil2Group:
    """Coproduct in the category of nil_2-groups.

    B gains the extra summand A1 (x) A2; the cocycle cross term sends the
    generator pair (f_j in the A2 slot, e_i in the A1 slot) to
    -(e_i (x) f_j), matching the group law
    (xi, g, h) + (xi', g', h') = (xi + xi' - g'^ (x) h^, g + g', h + h').
    """
    A = ab.direct_sum(g1.A, g2.A)
    tens = ab.tensor(g1.A, g2.A)
    B = ab.direct_sum(ab.direct_sum(g1.B, g2.B), tens.group)
    r1, r2 = g1.rank, g2.rank
    s1, s2, sT = g1.B.rank, g2.B.rank, tens.group.rank

    def emb1(e):
        return B.element(e.coords + (0,) * (s2 + sT))

    def emb2(e):
        return B.element((0,) * s1 + e.coords + (0,) * sT)

    def embt(e):
        return B.element((0,) * (s1 + s2) + e.coords)

    z = B.zero()
    bil = [[z] * (r1 + r2) for _ in range(r1 + r2)]
    for i in range(r1):
        for j in range(r1):
            bil[i][j] = emb1(g1.bil[i][j])
    for i in range(r2):
        for j in range(r2):
            bil[r1 + i][r1 + j] = emb2(g2.bil[i][j])
    for j in range(r2):
        for i in range(r1):
            bil[r1 + j][i] = embt(-tens.pure(g1.A.gen(i), g2.A.gen(j)))
    carry = [emb1(e) for e in g1.carry] + [emb2(e) for e in g2.carry]
    return Nil2Group(A, B, bil, carry,
                     provenance=("coproduct", g1, g2, tens))


def free(n: int) -> Nil2Group:
    """The free nil_2-group of rank n: B = Lambda^2(Z^n)."""
    if n < 0:
        raise InvalidArgument("rank must be nonnegative")
    A = ab.FGAbelian([0] * n)
    ext = ab.exterior_square(A)
    B = ext.group
    z = B.zero()
    bil = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bil[i][j] = B.gen(ext.position(i, j))
    carry = [z] * n
    return Nil2Group(A, B, bil, carry, provenance=("free", n, ext))


# ---------------------------------------------------------------------------
# The universal quadratic central extension P2.

class P2Element:
    __slots__ = ("ext", "xi", "g")

    def __init__(self, ext, xi, g):
        self.ext = ext
        self.xi = xi
        self.g = g

    def __add__(self, other):
        if self.ext is not other.ext:
            raise InvalidArgument("elements of different extensions")
        t = self.ext.tensor
        xi = self.xi + other.xi - t.pure(self.g.a, other.g.a)
        return P2Element(self.ext, xi, self.g + other.g)

    def __neg__(self):
        t = self.ext.tensor
        return P2Element(self.ext, -self.xi - t.pure(self.g.a, self.g.a), -self.g)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return self.xi.is_zero() and self.g.is_zero()

    def __eq__(self, other):
        return (isinstance(other, P2Element) and self.ext is other.ext
                and self.xi == other.xi and self.g == other.g)

    def __hash__(self):
        return hash((self.xi.coords, hash(self.g)))

    def __repr__(self):
        return f"P2({self.xi!r}, {self.g!r})"


class P2Extension:
    """The central extension 0 -> A (x) A -> P2(G) -> G -> 0.

    Pairs (xi, g) with (xi, g) + (xi', g') = (xi + xi' - g^ (x) g'^, g + g').
    The section p2(g) = (0, g) is the universal quadratic map out of G.
    """

    def __init__(self, base: Nil2Group):
        self.base = base
        self.tensor = ab.tensor(base.A, base.A)

    def element(self, xi, g):
        if xi.group != self.tensor.group or g.group != self.base:
            raise InvalidArgument("components not in A (x) A and G")
        return P2Element(self, xi, g)

    def zero(self):
        return P2Element(self, self.tensor.group.zero(), self.base.zero())

    def p2(self, g: Nil2Element) -> P2Element:
        return P2Element(self, self.tensor.group.zero(), g)

    def iota(self, xi) -> P2Element:
        return P2Element(self, xi, self.base.zero())

    def proj(self, el: P2Element) -> Nil2Element:
        return el.g

    def order(self):
        b = self.base.order()
        t = self.tensor.group.order()
        return b * t if b and t else 0

    def elements(self):
        if not self.base.is_finite() or not self.tensor.group.is_finite():
            raise UnsupportedEnumeration("cannot enumerate an infinite extension")
        for xi in self.tensor.group.elements():
            for g in self.base.elements():
                yield P2Element(self, xi, g)


def p2_extension(g: Nil2Group) -> P2Extension:
    return P2Extension(g)


# ---------------------------------------------------------------------------
# Center.

class CenterInfo:
    """The center as (kernel of the commutator pairing) x B."""

    def __init__(self, group: Nil2Group):
        self.group = group
        r, br = group.rank, group.B.rank
        rows = []
        for k in range(r):
            cols = [group.bil[i][k] - group.bil[k][i] for i in range(r)]
            for t in range(br):
                rows.append([c.coords[t] for c in cols])
        target = ab.FGAbelian(group.B.orders * r)
        pairing = ab.AbHom(group.A, target, rows)
        self.a_kernel, self.a_incl = ab.kernel(pairing)
        self._pairing = pairing

    def contains(self, z: Nil2Element) -> bool:
        if z.group != self.group:
            raise InvalidArgument("element of a different group")
        return self._pairing.apply(z.a).is_zero()

    def order(self) -> int:
        ka = self.a_kernel.order()
        kb = self.group.B.order()
        return ka * kb if ka and kb else 0

    def invariants(self):
        """Invariant factors of the A-part kernel and of B."""
        return self.a_kernel.invariant_factors(), self.group.B.invariant_factors()


def center(group: Nil2Group) -> CenterInfo:
    return CenterInfo(group)


# ---------------------------------------------------------------------------
# Concrete finite groups as multiplication tables.

class GroupOracle:
    """A finite group given by labels and a total multiplication table."""

    def __init__(self, labels, table, identity):
        self.labels = tuple(str(x) for x in labels)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.identity = int(identity)
        self._inv = None
        self._validate()

    def _validate(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroup("multiplication table is not total")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise NotAGroup(f"table entry {v} out of range")
        e = self.identity
        for x in range(n):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise NotAGroup(f"'{self.labels[e]}' is not an identity")
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if self.table[x][y] == e and self.table[y][x] == e:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise NotAGroup(f"'{self.labels[x]}' has no inverse")
        self._inv = tuple(inv)
        t = self.table
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise NotAGroup(
                            f"associativity fails at ({self.labels[x]}, "
                            f"{self.labels[y]}, {self.labels[z]})")

    def __len__(self):
        return len(self.labels)

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self._inv[x]

    def comm(self, x, y):
        """[x, y] = -x - y + x + y in additive convention."""
        t = self.table
        return t[t[self._inv[x]][self._inv[y]]][t[x][y]]

    def power(self, x, n):
        if n < 0:
            return self.power(self._inv[x], -n)
        acc = self.identity
        for _ in range(n):
            acc = self.table[acc][x]
        return acc

    def element_order(self, x):
        n, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            n += 1
        return n

    def subgroup_closure(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def commutator_subgroup(self):
        n = len(self.labels)
        gens = {self.comm(x, y) for x in range(n) for y in range(n)}
        gens.discard(self.identity)
        return self.subgroup_closure(sorted(gens))

    def is_class_two(self) -> bool:
        n = len(self.labels)
        comms = {self.comm(x, y) for x in range(n) for y in range(n)}
        for c in comms:
            for z in range(n):
                if self.table[c][z] != self.table[z][c]:
                    return False
        return True

    @classmethod
    def from_text(cls, text: str) -> "GroupOracle":
        """Parse the ingestion format: element labels, `id = <label>`,
        and one `a * b = c` line per product."""
        labels = None
        identity_label = None
        products = []
        statements = []
        for raw in text.replace(";", "\n").splitlines():
            line = raw.strip()
            if line and not line.startswith("#"):
                statements.append(line)
        for line in statements:
            if "*" in line:
                lhs, _, rhs = line.partition("=")
                a, _, b = lhs.partition("*")
                a, b, c = a.strip(), b.strip(), rhs.strip()
                if not (a and b and c):
                    raise NotAGroup(f"malformed product line: {line!r}")
                products.append((a, b, c))
            elif line.startswith("elements"):
                _, _, rhs = line.partition("=")
                labels = [tok for tok in rhs.replace(",", " ").split() if tok]
            elif line.startswith("id"):
                _, _, rhs = line.partition("=")
                identity_label = rhs.strip()
            else:
                raise NotAGroup(f"unrecognized oracle line: {line!r}")
        if identity_label is None:
            raise NotAGroup("missing `id = <label>` line")
        if labels is None:
            seen = []
            for a, b, c in products:
                for tok in (a, b, c):
                    if tok not in seen:
                        seen.append(tok)
            labels = seen
        index = {lab: i for i, lab in enumerate(labels)}
        if identity_label not in index:
            raise NotAGroup(f"identity label {identity_label!r} not declared")
        n = len(labels)
        table = [[None] * n for _ in range(n)]
        for a, b, c in products:
            for tok in (a, b, c):
                if tok not in index:
                    raise NotAGroup(f"undeclared element label {tok!r}")
            table[index[a]][index[b]] = index[c]
        for i in range(n):
            for j in range(n):
                if table[i][j] is None:
                    raise NotAGroup(
                        f"table is not total: missing {labels[i]} * {labels[j]}")
        return cls(labels, table, index[identity_label])


def table_of(group: Nil2Group) -> GroupOracle:
    """Multiplication table of a finite Nil2Group (elements in lex order)."""
    elems = list(group.elements())
    index = {z: i for i, z in enumerate(elems)}
    table = [[index[x + y] for y in elems] for x in elems]
    labels = [repr(z) for z in elems]
    return GroupOracle(labels, table, index[group.zero()])


def semidirect(n: int, m: int, k: int) -> GroupOracle:
    """The semidirect product Z/n x| Z/m, generator acting by a -> k*a.

    Requires k^m = 1 (mod n) for a genuine action and (k-1)^2 = 0 (mod n)
    for nilpotence class two.
    """
    if n < 1 or m < 1:
        raise InvalidArgument("moduli must be positive")
    if pow(k, m, n) != 1 % n:
        raise NotAnAction(f"k^m = {pow(k, m, n)} != 1 (mod {n})")
    if (k - 1) ** 2 % n != 0:
        raise NotClassTwo(f"(k-1)^2 = {(k - 1) ** 2} != 0 (mod {n})")
    elems = [(a, b) for a in range(n) for b in range(m)]
    index = {ab_: i for i, ab_ in enumerate(elems)}
    table = []
    for a, b in elems:
        row = []
        kb = pow(k, b, n)
        for a2, b2 in elems:
            row.append(index[((a + kb * a2) % n, (b + b2) % m)])
        table.append(row)
    labels = [f"({a},{b})" for a, b in elems]
    return GroupOracle(labels, table, index[(0, 0)])


# ---------------------------------------------------------------------------
# Abelian structure of a (sub)table, and canonicalization.

def _element_orders(table, identity):
    out = []
    for i in range(len(table)):
        n, x = 1, i
        while x != identity:
            x = table[x][i]
            n += 1
        out.append(n)
    return out


def _abelian_basis(table, identity):
    """Basis of a finite abelian multiplication table.

    Returns (gens, orders, coords): generator indices with orders in a
    decreasing divisibility chain, and a dict element -> coordinates.
    Greedy: an element of maximal order splits off as a direct summand;
    the quotient basis is lifted preserving orders.
    """
    n = len(table)
    if n == 1:
        return [], [], {identity: ()}
    orders = _element_orders(table, identity)
    d = max(orders)
    q = orders.index(d)
    powers = [identity]
    x = identity
    for _ in range(d - 1):
        x = table[x][q]
        powers.append(x)
    power_index = {p: i for i, p in enumerate(powers)}
    if d == n:
        coords = {p: (i,) for i, p in enumerate(powers)}
        return [q], [d], coords
    sub = set(powers)
    coset_of = [None] * n
    reps = []
    for x in range(n):
        if coset_of[x] is None:
            members = sorted(table[x][s] for s in sub)
            cid = len(reps)
            reps.append(members[0])
            for y in members:
                coset_of[y] = cid
    qtable = [[coset_of[table[reps[c1]][reps[c2]]] for c2 in range(len(reps))]
              for c1 in range(len(reps))]
    qid = coset_of[identity]
    qgens, qorders, qcoords = _abelian_basis(qtable, qid)
    gens, gorders = [q], [d]
    for cg, m in zip(qgens, qorders):
        h = reps[cg]
        mh = identity
        for _ in range(m):
            mh = table[mh][h]
        k = power_index[mh]
        assert k % m == 0, "maximal-order summand lift failed"
        t = (-(k // m)) % d
        gens.append(table[h][powers[t]])
        gorders.append(m)
    coords = {}
    for tup in itertools.product(*(range(o) for o in gorders)):
        acc = identity
        for g, c in zip(gens, tup):
            for _ in range(c):
                acc = table[acc][g]
        assert acc not in coords, "generator coordinates collide"
        coords[acc] = tup
    assert len(coords) == n, "generators do not span the table"
    return gens, gorders, coords


class Canonicalization:
    """Result of canonicalizing a finite class-two table."""

    def __init__(self, group, oracle, to_oracle, from_oracle):
        self.group = group
        self.oracle = oracle
        self._to = to_oracle
        self._from = from_oracle

    def to_oracle(self, z: Nil2Element) -> int:
        return self._to[z]

    def from_oracle(self, idx: int) -> Nil2Element:
        return self._from[idx]


def canonicalize_finite(oracle: GroupOracle) -> Canonicalization:
    """Read central-extension data off a finite class-two table.

    Chooses invariant-factor generators of G/[G,G] greedily, lifts them
    (smallest element index in each coset), and reads bil from commutators
    of the lifts and carry from their d_i-fold sums.  The returned
    bijection is verified exhaustively to be an isomorphism.
    """
    if not oracle.is_class_two():
        raise NotClassTwo("table has nilpotence class greater than two")
    n = len(oracle)
    comm_set = oracle.commutator_subgroup()
    celems = sorted(comm_set)
    cindex = {x: i for i, x in enumerate(celems)}
    ctable = [[cindex[oracle.table[x][y]] for y in celems] for x in celems]
    cgens, corders, ccoords = _abelian_basis(ctable, cindex[oracle.identity])
    B = ab.FGAbelian(corders)

    def bcoords(x):
        return B.element(ccoords[cindex[x]])

    coset_of = [None] * n
    reps = []
    for x in range(n):
        if coset_of[x] is None:
            members = sorted(oracle.table[x][s] for s in celems)
            cid = len(reps)
            reps.append(members[0])
            for y in members:
                coset_of[y] = cid
    qtable = [[coset_of[oracle.table[reps[c1]][reps[c2]]] for c2 in range(len(reps))]
              for c1 in range(len(reps))]
    qgens, qorders, _ = _abelian_basis(qtable, coset_of[oracle.identity])
    lifts = [reps[c] for c in qgens]
    A = ab.FGAbelian(qorders)
    r = len(lifts)
    z = B.zero()
    bil = [[z] * r for _ in range(r)]
    for i in range(r):
        for j in range(i):
            bil[i][j] = bcoords(oracle.comm(lifts[i], lifts[j]))
    carry = [bcoords(oracle.power(lifts[i], qorders[i])) for i in range(r)]
    group = Nil2Group(A, B, bil, carry)

    to_oracle = {}
    for acoords in itertools.product(*(range(d) for d in qorders)):
        s = oracle.identity
        for t, c in zip(lifts, acoords):
            s = oracle.table[s][oracle.power(t, c)]
        for bco in itertools.product(*(range(e) for e in corders)):
            x = s
            for cg, c in zip(cgens, bco):
                x = oracle.table[x][oracle.power(celems[cg], c)]
            to_oracle[group.element(acoords, bco)] = x
    if len(set(to_oracle.values())) != n:
        raise NotAGroup("canonicalization bijection failed")  # pragma: no cover
    from_oracle = {v: k for k, v in to_oracle.items()}
    elems = list(group.elements())
    for x in elems:
        for y in elems:
            if to_oracle[x + y] != oracle.table[to_oracle[x]][to_oracle[y]]:
                raise NotAGroup(
                    "canonicalized data does not reproduce the table at "
                    f"({x!r}, {y!r})")  # pragma: no cover
    return Canonicalization(group, oracle, to_oracle, from_oracle)
