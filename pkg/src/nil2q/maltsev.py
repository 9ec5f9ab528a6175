"""Class-two Lie rings over odd-torsion abelian groups and the exp/log
correspondence with odd-order nil_2-groups.

A Lie ring is stored as (A, B, carry, bracket): the underlying abelian
group is the central extension of A by B along the carry cocycle alone,
and the bracket is an antisymmetric matrix over B whose values generate
B.  exp keeps the data and sets the group cocycle's bilinear part to
half the bracket; log antisymmetrizes the group's bilinear part and
discharges the symmetric residue into the element identification
(subtracting the coboundary of a -> half * sym(a, a)), which makes
log(exp(L)) the literal identity on data.
"""

from __future__ import annotations

import itertools

from . import abelian as ab
from . import nil2
from . import qmaps
from .errors import (
    CommutatorMismatch,
    InvalidArgument,
    InvalidBracket,
    NotUniquely2Divisible,
    Unsupported,
)


def _require_odd(group: ab.FGAbelian, what: str):
    for d in group.orders:
        if d == 0 or d % 2 == 0:
            raise NotUniquely2Divisible(
                f"{what} has a factor of order {d}; odd finite torsion required")


def _half(modulus: int) -> int:
    """Multiplicative inverse of 2 modulo an odd modulus (0 when trivial)."""
    return pow(2, -1, modulus) if modulus > 1 else 0


class LieElement:
    """Element (a, u) of a class-two Lie ring, components canonical."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    def _check(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise InvalidArgument("elements of different Lie rings")

    def __add__(self, other):
        self._check(other)
        r = self.ring
        carry = r._carry_cocycle(self.a.coords, other.a.coords)
        return LieElement(r, self.a + other.a, self.b + other.b + carry)

    def __neg__(self):
        r = self.ring
        carry = r._carry_cocycle(self.a.coords, (-self.a).coords)
        return LieElement(r, -self.a, -self.b - carry)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        z = self
        if n < 0:
            z, n = -z, -n
        acc = self.ring.zero()
        while n:
            if n & 1:
                acc = acc + z
            n >>= 1
            if n:
                z = z + z
        return acc

    __rmul__ = __mul__

    def bracket(self, other) -> "LieElement":
        self._check(other)
        r = self.ring
        acc = r.B.zero()
        for i, xi in enumerate(self.a.coords):
            if xi == 0:
                continue
            for j, yj in enumerate(other.a.coords):
                if yj:
                    acc = acc + (xi * yj) * r.bracket[i][j]
        return LieElement(r, r.A.zero(), acc)

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.ring == other.ring
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a.coords, self.b.coords))

    def __repr__(self):
        return f"({','.join(map(str, self.a.coords))} | {','.join(map(str, self.b.coords))})"


class Nil2LieRing:
    """Class-two nilpotent Lie ring over odd finite abelian groups."""

    __slots__ = ("A", "B", "carry", "bracket", "_carryc")

    def __init__(self, A, B, carry, bracket):
        _require_odd(A, "A")
        _require_odd(B, "B")
        self.A, self.B = A, B
        self.carry = tuple(carry)
        self.bracket = tuple(tuple(row) for row in bracket)
        r = A.rank
        if len(self.carry) != r:
            raise InvalidArgument(f"carry must have {r} entries")
        if len(self.bracket) != r or any(len(row) != r for row in self.bracket):
            raise InvalidArgument(f"bracket must be {r}x{r}")
        for i in range(r):
            if self.carry[i].group != B:
                raise InvalidArgument(f"carry[{i+1}] not in B")
            for j in range(r):
                e = self.bracket[i][j]
                if e.group != B:
                    raise InvalidArgument(f"bracket[{i+1}][{j+1}] not in B")
                if not (A.orders[i] * e).is_zero() or not (A.orders[j] * e).is_zero():
                    raise InvalidBracket(
                        f"bracket[{i+1}][{j+1}] not killed by generator orders")
                if self.bracket[i][j] != -self.bracket[j][i]:
                    raise InvalidBracket(
                        f"bracket is not antisymmetric at ({i+1}, {j+1})")
            if not self.bracket[i][i].is_zero():
                raise InvalidBracket(f"bracket[{i+1}][{i+1}] is nonzero")
        vals = [self.bracket[i][j] for i in range(r) for j in range(i + 1, r)]
        if not B.is_trivial():
            if not ab.subgroup_generated(vals, B).is_whole():
                raise CommutatorMismatch(
                    "bracket values generate a proper subgroup of B")
        self._carryc = tuple(None if e.is_zero() else e.coords for e in self.carry)

    def _carry_cocycle(self, x, y):
        acc = self.B.zero()
        for i, d in enumerate(self.A.orders):
            if d > 0 and x[i] + y[i] >= d:
                e = self._carryc[i]
                if e is not None:
                    acc = acc + self.B.element(e)
        return acc

    def element(self, acoords, bcoords) -> LieElement:
        return LieElement(self, self.A.element(acoords), self.B.element(bcoords))

    def pair(self, a, b) -> LieElement:
        if a.group != self.A or b.group != self.B:
            raise InvalidArgument("components not in A and B")
        return LieElement(self, a, b)

    def zero(self) -> LieElement:
        return LieElement(self, self.A.zero(), self.B.zero())

    def gen(self, i) -> LieElement:
        return LieElement(self, self.A.gen(i), self.B.zero())

    def central(self, b) -> LieElement:
        if b.group != self.B:
            raise InvalidArgument("not an element of B")
        return LieElement(self, self.A.zero(), b)

    def order(self):
        return self.A.order() * self.B.order()

    def elements(self):
        for a in self.A.elements():
            for b in self.B.elements():
                yield LieElement(self, a, b)

    def additive_invariants(self):
        """Invariant factors of the underlying abelian group."""
        r, s = self.A.rank, self.B.rank
        rels = []
        for i, d in enumerate(self.A.orders):
            row = [0] * (r + s)
            row[i] = d
            for t, c in enumerate(self.carry[i].coords):
                row[r + t] = -c
            rels.append(row)
        for j, e in enumerate(self.B.orders):
            row = [0] * (r + s)
            row[r + j] = e
            rels.append(row)
        return ab.presented(r + s, rels).invariant_factors()

    def __eq__(self, other):
        return (isinstance(other, Nil2LieRing) and self.A == other.A
                and self.B == other.B and self.carry == other.carry
                and self.bracket == other.bracket)

    def __hash__(self):
        return hash((self.A, self.B, tuple(e.coords for e in self.carry),
                     tuple(e.coords for row in self.bracket for e in row)))

    def __repr__(self):
        return f"Nil2LieRing(A={self.A}, B={self.B})"


def lie_make(A, B, carry, bracket) -> Nil2LieRing:
    return Nil2LieRing(A, B, carry, bracket)


# ---------------------------------------------------------------------------
# exp / log on data.

def lie_exp(ring: Nil2LieRing) -> nil2.Nil2Group:
    """The group on the same data: a (+) b = a + b + half [a, b]."""
    half = _half(ring.B.exponent())
    bil = [[half * e for e in row] for row in ring.bracket]
    return nil2.Nil2Group(ring.A, ring.B, bil, list(ring.carry))


def lie_log(group: nil2.Nil2Group) -> Nil2LieRing:
    """The Lie ring of an odd-order group: bracket = antisymmetrized bil,
    carries preserved (the symmetric residue moves into the element
    identification, see `LogCorrespondence`)."""
    _require_odd(group.A, "the abelianization")
    _require_odd(group.B, "the commutator subgroup")
    r = group.rank
    bracket = [[group.bil[i][j] - group.bil[j][i] for j in range(r)]
               for i in range(r)]
    return Nil2LieRing(group.A, group.B, list(group.carry), bracket)


class LogCorrespondence:
    """Set-level identification of an odd-order group with its Lie ring.

    to_lie / from_lie translate between group pairs (a, u) and normalized
    Lie pairs via (a, u) -> (a, u - chi(a)), chi(a) = half * sym(a, a)
    with sym the symmetric part of the group's bilinear cocycle.  The
    same coordinate map is an isomorphism of groups G -> exp(log G).
    """

    def __init__(self, group: nil2.Nil2Group):
        self.group = group
        self.ring = lie_log(group)
        self.exp_group = lie_exp(self.ring)
        r = group.rank
        half = _half(group.B.exponent())
        self._sym = [[half * (group.bil[i][j] + group.bil[j][i])
                      for j in range(r)] for i in range(r)]
        self._half = half

    def _chi(self, a: ab.AbElement) -> ab.AbElement:
        acc = self.group.B.zero()
        for i, xi in enumerate(a.coords):
            if xi == 0:
                continue
            for j, xj in enumerate(a.coords):
                if xj:
                    acc = acc + (xi * xj) * self._sym[i][j]
        return self._half * acc

    def to_lie(self, z: nil2.Nil2Element) -> LieElement:
        if z.group != self.group:
            raise InvalidArgument("element of a different group")
        return self.ring.pair(z.a, z.b - self._chi(z.a))

    def from_lie(self, w: LieElement) -> nil2.Nil2Element:
        if w.ring != self.ring:
            raise InvalidArgument("element of a different Lie ring")
        return self.group.pair(w.a, w.b + self._chi(w.a))

    def to_exp(self, z: nil2.Nil2Element) -> nil2.Nil2Element:
        """The group isomorphism G -> exp(log G)."""
        w = self.to_lie(z)
        return self.exp_group.pair(w.a, w.b)


# ---------------------------------------------------------------------------
# Lie-side operations directly on group elements.

def _group_half(group: nil2.Nil2Group) -> int:
    n = group.order()
    if n == 0 or n % 2 == 0:
        raise NotUniquely2Divisible("group must be finite of odd order")
    return _half(n)


def lie_add(x: nil2.Nil2Element, y: nil2.Nil2Element) -> nil2.Nil2Element:
    """The Lie addition on an odd-order group: x + y - half [x, y]."""
    half = _group_half(x.group)
    return x + y - half * x.comm(y)


def lie_sub(x: nil2.Nil2Element, y: nil2.Nil2Element) -> nil2.Nil2Element:
    return lie_add(x, -y)


# ---------------------------------------------------------------------------
# (g, h) decomposition of q-maps between odd-order groups.

class QMapDecomposition:
    """f(a) = g(a) + half h(a^, a^): linear part and symmetric cross part.

    `g` is stored by images of the source generator lifts and of the
    commutator-subgroup generators (it is linear for the Lie additions
    and carries [G,G] into [H,H]); `h` is a symmetric matrix over the
    target's commutator subgroup indexed by abelianization generators.
    """

    def __init__(self, source, target, gen_images, bgen_images, h):
        self.source, self.target = source, target
        self.gen_images = tuple(gen_images)
        self.bgen_images = tuple(bgen_images)
        self.h = tuple(tuple(row) for row in h)
        r = source.rank
        for i in range(r):
            for j in range(r):
                if self.h[i][j] != self.h[j][i]:
                    raise InvalidArgument(f"h is not symmetric at ({i+1}, {j+1})")
        for w in self.bgen_images:
            if not w.a.is_zero():
                raise InvalidArgument("g does not carry [G,G] into [H,H]")

    def g_value(self, z: nil2.Nil2Element) -> nil2.Nil2Element:
        """The linear part at z, expanded over the Lie additive structure."""
        G = self.source
        acc = self.target.zero()
        lift = G.zero()
        for i, m in enumerate(z.a.coords):
            if m:
                acc = lie_add(acc, m * self.gen_images[i])
                lift = lie_add(lift, m * G.gen(i))
        rest = z.b - lift.b
        for j, c in enumerate(rest.coords):
            if c:
                acc = lie_add(acc, c * self.bgen_images[j])
        return acc

    def h_value(self, a: ab.AbElement, b: ab.AbElement) -> nil2.Nil2Element:
        acc = self.target.B.zero()
        for i, xi in enumerate(a.coords):
            if xi == 0:
                continue
            for j, yj in enumerate(b.coords):
                if yj:
                    acc = acc + (xi * yj) * self.h[i][j]
        return self.target.central(acc)

    def eval(self, z: nil2.Nil2Element) -> nil2.Nil2Element:
        half = _group_half(self.target)
        return lie_add(self.g_value(z), half * self.h_value(z.a, z.a))


def lie_qmap_decompose(q: qmaps.QMap) -> QMapDecomposition:
    """g(a) = 2 f(a) - half f(2a), h(a^, b^) = f(a + b) - f(a) - f(b),
    with all operations on the Lie side."""
    G, H = q.source, q.target
    half = _group_half(H)
    _group_half(G)

    def g_fn(z):
        return lie_sub(2 * q.eval(z), half * q.eval(2 * z))

    def h_fn(x, y):
        w = lie_sub(lie_sub(q.eval(lie_add(x, y)), q.eval(x)), q.eval(y))
        if not w.a.is_zero():
            raise Unsupported("cross part leaves the commutator subgroup")
        return w

    gen_images = [g_fn(G.gen(i)) for i in range(G.rank)]
    bgen_images = [g_fn(G.central(G.B.gen(j))) for j in range(G.B.rank)]
    h = [[h_fn(G.gen(i), G.gen(j)).b for j in range(G.rank)]
         for i in range(G.rank)]
    return QMapDecomposition(G, H, gen_images, bgen_images, h)


def lie_qmap_recompose(d: QMapDecomposition) -> qmaps.QMap:
    return qmaps.qmap_from_function(d.source, d.target, d.eval)


def linear_part(q: qmaps.QMap):
    """The morphism q(f)(a) = 2 f(a) - half f(2a) to the linear subcategory,
    as a plain function on elements."""
    half = _group_half(q.target)

    def g_fn(z):
        return lie_sub(2 * q.eval(z), half * q.eval(2 * z))

    return g_fn


# ---------------------------------------------------------------------------
# Pair isomorphism of logs: the odd-order Niq-isomorphism criterion.

class PairIsoWitness:
    """An abelian isomorphism log G -> log H matching [G,G] with [H,H],
    given by images of the additive generators."""

    def __init__(self, source_ring, target_ring, gen_images, bgen_images):
        self.source_ring = source_ring
        self.target_ring = target_ring
        self.gen_images = tuple(gen_images)
        self.bgen_images = tuple(bgen_images)

    def apply(self, w: LieElement) -> LieElement:
        acc = self.target_ring.zero()
        for i, m in enumerate(w.a.coords):
            if m:
                acc = acc + m * self.gen_images[i]
        for j, c in enumerate(w.b.coords):
            if c:
                acc = acc + c * self.bgen_images[j]
        return acc


def _additive_iso_search(lg: Nil2LieRing, lh: Nil2LieRing):
    """Generator-image search for an additive isomorphism of the underlying
    abelian groups carrying B onto B.  Lexicographic; first hit."""
    if lg.order() != lh.order() or lg.B.order() != lh.B.order():
        return None
    if lg.additive_invariants() != lh.additive_invariants():
        return None
    n = lh.order()
    r, s = lg.A.rank, lg.B.rank
    helems = list(lh.elements())
    belems = [lh.central(b) for b in lh.B.elements()]
    gelems = list(lg.elements())

    def relations_hold(gen_imgs, bgen_imgs):
        for i, d in enumerate(lg.A.orders):
            need = lh.zero()
            for t, c in enumerate(lg.carry[i].coords):
                if c:
                    need = need + c * bgen_imgs[t]
            if d * gen_imgs[i] != need:
                return False
        for j, e in enumerate(lg.B.orders):
            if not (e * bgen_imgs[j]).is_zero():
                return False
        return True

    for bgen_imgs in itertools.product(belems, repeat=s):
        # the B generators must map onto B
        img = {lh.zero()}
        for y in bgen_imgs:
            img = {w + c * y for w in img for c in range(max(lh.B.orders, default=1))}
        if len(img) != lg.B.order():
            continue
        for gen_imgs in itertools.product(helems, repeat=r):
            if not relations_hold(gen_imgs, bgen_imgs):
                continue
            w = PairIsoWitness(lg, lh, gen_imgs, bgen_imgs)
            image = {w.apply(z) for z in gelems}
            if len(image) == n:
                return w
    return None


def log_criterion_decide(g: nil2.Nil2Group, h: nil2.Nil2Group):
    """Niq-isomorphism criterion for finite odd order: true iff the logs
    are isomorphic as abelian groups matching commutator subgroups.

    Returns (verdict, witness-or-None)."""
    for grp in (g, h):
        if not grp.is_finite() or grp.order() % 2 == 0:
            raise Unsupported("the log criterion needs finite odd order")
    lg, lh = lie_log(g), lie_log(h)
    witness = _additive_iso_search(lg, lh)
    return witness is not None, witness
