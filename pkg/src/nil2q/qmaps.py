"""The q-map calculus.

A q-map f : G -> H between nil_2-groups is a map whose cross-effect
(x|y)_f = -(f(x) + f(y)) + f(x+y) lands in [H,H] and is bilinear.  It is
stored by generator data:

    fab    : G_ab -> H_ab        induced homomorphism,
    fcomm  : [G,G] -> [H,H]      restriction to the commutator subgroup,
    gamma  : r corrections       f(e_i-lift) = (fab(e_i), gamma_i),
    delta  : r x r cross matrix  delta[i][j] = (e_i | e_j)_f in [H,H].

Three relation families gate the data (torsion of delta, commutator
relations, order relations); the exhaustive set-map filter over the
defining conditions is the independent completeness oracle.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm

from . import abelian as ab
from . import nil2
from .errors import (
    InvalidArgument,
    InvalidHomomorphism,
    NotAQMap,
    UnsupportedEnumeration,
)


class QMap:
    """Finite presentation of a q-map between nil_2-groups."""

    __slots__ = ("source", "target", "fab", "fcomm", "gamma", "delta",
                 "_mult_cache")

    def __init__(self, source, target, fab, fcomm, gamma, delta,
                 _validated=False):
        self.source, self.target = source, target
        self.fab, self.fcomm = fab, fcomm
        self.gamma = tuple(gamma)
        self.delta = tuple(tuple(row) for row in delta)
        self._mult_cache = {}
        r = source.rank
        if fab.source != source.A or fab.target != target.A:
            raise InvalidArgument("fab endpoints do not match")
        if fcomm.source != source.B or fcomm.target != target.B:
            raise InvalidArgument("fcomm endpoints do not match")
        if len(self.gamma) != r or any(g.group != target.B for g in self.gamma):
            raise InvalidArgument("gamma must hold r elements of [H,H]")
        if (len(self.delta) != r
                or any(len(row) != r for row in self.delta)
                or any(e.group != target.B for row in self.delta for e in row)):
            raise InvalidArgument("delta must be an r x r matrix over [H,H]")
        if not _validated:
            self._validate()

    # -- validation ----------------------------------------------------------

    def _validate(self):
        G, H = self.source, self.target
        r = G.rank
        for i in range(r):
            di = G.A.orders[i]
            for j in range(r):
                dj = G.A.orders[j]
                e = self.delta[i][j]
                if not (di * e).is_zero() or not (dj * e).is_zero():
                    raise NotAQMap(
                        f"delta[{i+1}][{j+1}] = {e} not killed by source orders "
                        f"({di}, {dj})")
        for i in range(r):
            for j in range(i + 1, r):
                lhs = self.fcomm.apply(G.bil[i][j] - G.bil[j][i])
                rhs = (H.commutator_pairing(self.fab.column(i), self.fab.column(j))
                       + self.delta[i][j] - self.delta[j][i])
                if lhs != rhs:
                    raise NotAQMap(
                        f"commutator relation fails at generator pair "
                        f"({i+1}, {j+1}): {lhs} != {rhs}")
        for i in range(r):
            di = G.A.orders[i]
            if di == 0:
                continue
            torsion = (di * G.gen(i)).b
            lhs = (di * self.gen_image(i)
                   + (di * (di - 1) // 2) * H.central(self.delta[i][i]))
            rhs = H.central(self.fcomm.apply(torsion))
            if lhs != rhs:
                raise NotAQMap(
                    f"order relation fails at generator {i+1}: {lhs!r} != {rhs!r}")

    def check_function_exhaustively(self):
        """Confirm the evaluated function satisfies the defining conditions
        (finite sources only)."""
        if not is_qmap_function(self.eval, self.source, self.target):
            raise NotAQMap("evaluated function violates the q-map definition")

    # -- evaluation ----------------------------------------------------------

    def gen_image(self, i: int) -> nil2.Nil2Element:
        """f(e_i-lift) = (fab(e_i), gamma_i)."""
        return self.target.pair(self.fab.column(i), self.gamma[i])

    def _gen_multiple(self, i: int, m: int) -> nil2.Nil2Element:
        key = (i, m)
        hit = self._mult_cache.get(key)
        if hit is None:
            hit = (m * self.gen_image(i)
                   + (m * (m - 1) // 2) * self.target.central(self.delta[i][i]))
            self._mult_cache[key] = hit
        return hit

    def cross_data(self, acoords, bcoords) -> ab.AbElement:
        """Bilinear cross-effect through delta on canonical A-coordinates."""
        acc = self.target.B.zero()
        for i, xi in enumerate(acoords):
            if xi == 0:
                continue
            for j, yj in enumerate(bcoords):
                if yj:
                    acc = acc + (xi * yj) * self.delta[i][j]
        return acc

    def eval(self, z: nil2.Nil2Element) -> nil2.Nil2Element:
        """Evaluate by the fixed generator expansion (ascending index)."""
        if z.group != self.source:
            raise InvalidArgument("element not in the source group")
        G, H = self.source, self.target
        x = z.a.coords
        acc = H.zero()
        for i, m in enumerate(x):
            if m == 0:
                continue
            term = self._gen_multiple(i, m)
            cross = self.target.B.zero()
            for p in range(i):
                if x[p]:
                    cross = cross + (x[p] * m) * self.delta[p][i]
            acc = acc + term + H.central(cross)
        rest = z.b - G.kappa(z.a)
        return acc + H.central(self.fcomm.apply(rest))

    def cross(self, z, zp) -> nil2.Nil2Element:
        """(z | z')_f as an element of (0, [H,H])."""
        if z.group != self.source or zp.group != self.source:
            raise InvalidArgument("elements not in the source group")
        return self.target.central(self.cross_data(z.a.coords, zp.a.coords))

    def is_hom(self, exhaustive=False) -> bool:
        """A q-map is a homomorphism iff its cross-effect vanishes."""
        if any(not e.is_zero() for row in self.delta for e in row):
            return False
        if exhaustive and self.source.is_finite():
            elems = list(self.source.elements())
            for a in elems:
                fa = self.eval(a)
                for b in elems:
                    if self.eval(a + b) != fa + self.eval(b):
                        return False
        return True

    def is_bijective(self) -> bool:
        if not self.source.is_finite() or self.source.order() != self.target.order():
            return False
        return len({self.eval(z) for z in self.source.elements()}) == self.source.order()

    # -- group structure on qw(G, H) ------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            raise InvalidArgument("q-map sum needs equal endpoints")
        H = self.target
        r = self.source.rank
        gamma = [(self.gen_image(i) + other.gen_image(i)).b for i in range(r)]
        delta = [[self.delta[i][j] + other.delta[i][j]
                  + H.commutator_pairing(self.fab.column(j), other.fab.column(i))
                  for j in range(r)] for i in range(r)]
        return QMap(self.source, H, self.fab + other.fab,
                    self.fcomm + other.fcomm, gamma, delta)

    def __neg__(self):
        H = self.target
        r = self.source.rank
        gamma = [(-self.gen_image(i)).b for i in range(r)]
        delta = [[H.commutator_pairing(self.fab.column(j), self.fab.column(i))
                  - self.delta[i][j] for j in range(r)] for i in range(r)]
        return QMap(self.source, H, -self.fab, -self.fcomm, gamma, delta)

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "QMap") -> "QMap":
        """self o other (apply `other` first); cross-effect by
        (a|b)_{fg} = f((a|b)_g) + (g(a)|g(b))_f."""
        if other.target != self.source:
            raise InvalidArgument("composition endpoints do not match")
        r = other.source.rank
        gamma = [self.eval(other.gen_image(i)).b for i in range(r)]
        delta = [[self.fcomm.apply(other.delta[i][j])
                  + self.cross_data(other.fab.column(i).coords,
                                    other.fab.column(j).coords)
                  for j in range(r)] for i in range(r)]
        return QMap(other.source, self.target,
                    self.fab.compose(other.fab), self.fcomm.compose(other.fcomm),
                    gamma, delta)

    def is_zero(self):
        return (self.fab.is_zero() and self.fcomm.is_zero()
                and all(g.is_zero() for g in self.gamma)
                and all(e.is_zero() for row in self.delta for e in row))

    def __eq__(self, other):
        return (isinstance(other, QMap)
                and self.source == other.source and self.target == other.target
                and self.fab == other.fab and self.fcomm == other.fcomm
                and self.gamma == other.gamma and self.delta == other.delta)

    def __hash__(self):
        return hash((self.fab, self.fcomm,
                     tuple(g.coords for g in self.gamma),
                     tuple(e.coords for row in self.delta for e in row)))

    def __repr__(self):
        return (f"QMap({self.source} -> {self.target}, fab={self.fab.matrix}, "
                f"gamma={[g.coords for g in self.gamma]})")


# ---------------------------------------------------------------------------
# Basic constructors.

def qmap_make(source, target, fab, fcomm, gamma, delta, exhaustive=False) -> QMap:
    q = QMap(source, target, fab, fcomm, gamma, delta)
    if exhaustive:
        if not source.is_finite():
            raise UnsupportedEnumeration("exhaustive cross-check needs a finite source")
        q.check_function_exhaustively()
    return q


def identity_qmap(g: nil2.Nil2Group) -> QMap:
    bz = g.B.zero()
    r = g.rank
    return QMap(g, g, ab.AbHom.identity(g.A), ab.AbHom.identity(g.B),
                [bz] * r, [[bz] * r for _ in range(r)])


def zero_qmap(g: nil2.Nil2Group, h: nil2.Nil2Group) -> QMap:
    bz = h.B.zero()
    r = g.rank
    return QMap(g, h, ab.AbHom.zero(g.A, h.A), ab.AbHom.zero(g.B, h.B),
                [bz] * r, [[bz] * r for _ in range(r)])


def power_qmap(g: nil2.Nil2Group, n: int) -> QMap:
    """The n-th power map a -> n a, with (a|b)_n = -(n(n-1)/2) [a,b]."""
    r = g.rank
    gamma = [(n * g.gen(i)).b for i in range(r)]
    c = -(n * (n - 1) // 2)
    delta = [[c * (g.bil[i][j] - g.bil[j][i]) for j in range(r)] for i in range(r)]
    nid_a = ab.AbHom(g.A, g.A, [[n if i == j else 0 for j in range(g.A.rank)]
                                for i in range(g.A.rank)])
    nid_b = ab.AbHom(g.B, g.B, [[n if i == j else 0 for j in range(g.B.rank)]
                                for i in range(g.B.rank)])
    return QMap(g, g, nid_a, nid_b, gamma, delta)


def addition_qmap(g: nil2.Nil2Group) -> QMap:
    """The group law + : G x G -> G with ((a,b)|(c,d))_+ = [c, b]."""
    p = nil2.product(g, g)
    r = g.rank
    fab = ab.AbHom(p.A, g.A, [[1 if (j % r == i) else 0 for j in range(2 * r)]
                              for i in range(g.A.rank)]) if r else ab.AbHom.zero(p.A, g.A)
    s = g.B.rank
    fcomm = ab.AbHom(p.B, g.B, [[1 if (j % s == i) else 0 for j in range(2 * s)]
                                for i in range(s)]) if s else ab.AbHom.zero(p.B, g.B)
    bz = g.B.zero()
    gamma = [bz] * (2 * r)
    delta = [[bz] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            # ((a,b)|(c,d)) = [c,b]: second-slot coordinate of the first
            # argument against the first-slot coordinate of the second
            delta[r + j][i] = g.bil[i][j] - g.bil[j][i]
    return QMap(p, g, fab, fcomm, gamma, delta)


def qmap_from_z(h: nil2.Nil2Group, a: nil2.Nil2Element, b: nil2.Nil2Element) -> QMap:
    """f_{a,b} : Z -> H, n -> n a + (n(n-1)/2) b; requires b in [H,H]."""
    if a.group != h or b.group != h:
        raise InvalidArgument("images must lie in the target group")
    if not b.a.is_zero():
        raise NotAQMap(f"{b!r} is not in the commutator subgroup")
    src = nil2.free(1)
    fab = ab.AbHom.from_columns(src.A, h.A, [a.a])
    fcomm = ab.AbHom.zero(src.B, h.B)
    return QMap(src, h, fab, fcomm, [a.b], [[b.b]])


def qmap_from_function(source, target, fn, verify=True) -> QMap:
    """Read generator data off a concrete function and validate it.

    With `verify` (finite sources) the evaluated presentation is checked
    to reproduce `fn` pointwise.
    """
    try:
        fab = ab.AbHom.from_columns(
            source.A, target.A, [fn(source.gen(i)).a for i in range(source.rank)])
    except InvalidHomomorphism as exc:
        raise NotAQMap(f"induced abelianization map is not a homomorphism: {exc}")
    gamma = [fn(source.gen(i)).b for i in range(source.rank)]
    fcols = []
    for j in range(source.B.rank):
        w = fn(source.central(source.B.gen(j)))
        if not w.a.is_zero():
            raise NotAQMap("image of the commutator subgroup leaves [H,H]")
        fcols.append(w.b)
    try:
        fcomm = ab.AbHom.from_columns(source.B, target.B, fcols)
    except InvalidHomomorphism as exc:
        raise NotAQMap(f"restriction to [G,G] is not a homomorphism: {exc}")
    r = source.rank
    delta = [[None] * r for _ in range(r)]
    for i in range(r):
        gi = fn(source.gen(i))
        for j in range(r):
            c = -(gi + fn(source.gen(j))) + fn(source.gen(i) + source.gen(j))
            if not c.a.is_zero():
                raise NotAQMap(
                    f"cross-effect at generators ({i+1}, {j+1}) leaves [H,H]")
            delta[i][j] = c.b
    q = QMap(source, target, fab, fcomm, gamma, delta)
    if verify and source.is_finite():
        for z in source.elements():
            if q.eval(z) != fn(z):
                raise NotAQMap(
                    f"function disagrees with its generator data at {z!r}")
    return q


# ---------------------------------------------------------------------------
# beta(f) : Ker(fab) -> coker(fcomm).

class BetaData:
    """The induced map beta(f) : Ker(fab) -> coker(fcomm).

    Always well-defined on cosets (different lifts differ by commutator
    elements, and f is additive on those).  Additivity over the kernel is
    checked exhaustively and recorded in `additive`: it holds for all
    homomorphisms, but genuine q-maps with a symmetric cross-effect on
    the kernel can fail it (the squaring map on Q8 is an example), in
    which case `hom` is None and only `value` is meaningful.
    """

    def __init__(self, qmap: QMap):
        if not (qmap.source.is_finite() and qmap.target.is_finite()):
            raise UnsupportedEnumeration("beta is computed for finite groups")
        self.qmap = qmap
        self.kernel, self.incl = ab.kernel(qmap.fab)
        self.coker, self.proj = ab.cokernel(qmap.fcomm)
        self.additive = all(
            self.value(x + y) == self.value(x) + self.value(y)
            for x in self.kernel.elements() for y in self.kernel.elements())
        if self.additive:
            cols = [self.value(self.kernel.gen(i))
                    for i in range(self.kernel.rank)]
            self.hom = ab.AbHom.from_columns(self.kernel, self.coker, cols)
        else:
            self.hom = None

    def value(self, k: ab.AbElement) -> ab.AbElement:
        """beta(f) at a kernel element, via the defining formula."""
        z = self.qmap.source.pair(self.incl.apply(k), self.qmap.source.B.zero())
        w = self.qmap.eval(z)
        assert w.a.is_zero()
        return self.proj.apply(w.b)


def qmap_beta(qmap: QMap) -> BetaData:
    return BetaData(qmap)


# ---------------------------------------------------------------------------
# Factorization through the universal quadratic extension.

class P2Factorization:
    """The homomorphism P2(G) -> H induced by a q-map q : G -> H,
    (xi, g) -> (cross-effect hom)(xi) + q(g)."""

    def __init__(self, qmap: QMap):
        self.qmap = qmap
        self.extension = nil2.p2_extension(qmap.source)
        tens = self.extension.tensor
        cols = []
        src = qmap.source
        for i in range(src.A.rank):
            for j in range(src.A.rank):
                if tens.position(i, j) is not None:
                    cols.append(qmap.delta[i][j])
        self.cross_hom = ab.AbHom.from_columns(tens.group, qmap.target.B, cols)

    def eval(self, el: nil2.P2Element) -> nil2.Nil2Element:
        return (self.qmap.target.central(self.cross_hom.apply(el.xi))
                + self.qmap.eval(el.g))


def qmap_p2_factorize(qmap: QMap) -> P2Factorization:
    return P2Factorization(qmap)


# ---------------------------------------------------------------------------
# Structural q-maps of products and coproducts.

def _require_provenance(g, tag):
    if not g.provenance or g.provenance[0] != tag:
        raise InvalidArgument(f"group was not built as a {tag}")
    return g.provenance


def product_projection(p: nil2.Nil2Group, k: int) -> QMap:
    _, g1, g2 = _require_provenance(p, "product")
    gk = (g1, g2)[k]
    off_a = 0 if k == 0 else g1.A.rank
    off_b = 0 if k == 0 else g1.B.rank
    fab = ab.AbHom(p.A, gk.A,
                   [[1 if j == off_a + i else 0 for j in range(p.A.rank)]
                    for i in range(gk.A.rank)])
    fcomm = ab.AbHom(p.B, gk.B,
                     [[1 if j == off_b + i else 0 for j in range(p.B.rank)]
                      for i in range(gk.B.rank)])
    bz = gk.B.zero()
    r = p.rank
    return QMap(p, gk, fab, fcomm, [bz] * r, [[bz] * r for _ in range(r)])


def _inclusion(whole, gk, off_a, off_b):
    fab = ab.AbHom(gk.A, whole.A,
                   [[1 if i == off_a + j else 0 for j in range(gk.A.rank)]
                    for i in range(whole.A.rank)])
    fcomm = ab.AbHom(gk.B, whole.B,
                     [[1 if i == off_b + j else 0 for j in range(gk.B.rank)]
                      for i in range(whole.B.rank)])
    bz = whole.B.zero()
    r = gk.rank
    return QMap(gk, whole, fab, fcomm, [bz] * r, [[bz] * r for _ in range(r)])


def product_inclusion(p: nil2.Nil2Group, k: int) -> QMap:
    _, g1, g2 = _require_provenance(p, "product")
    gk = (g1, g2)[k]
    return _inclusion(p, gk, 0 if k == 0 else g1.A.rank, 0 if k == 0 else g1.B.rank)


def coproduct_inclusion(c: nil2.Nil2Group, k: int) -> QMap:
    _, g1, g2, _ = _require_provenance(c, "coproduct")
    gk = (g1, g2)[k]
    return _inclusion(c, gk, 0 if k == 0 else g1.A.rank, 0 if k == 0 else g1.B.rank)


def coproduct_couniversal(c: nil2.Nil2Group, u: QMap, v: QMap) -> QMap:
    """The unique homomorphism out of a coproduct restricting to the
    homomorphisms u and v: (xi, g, h) -> [u,v](xi) + u(g) + v(h)."""
    _, g1, g2, tens = _require_provenance(c, "coproduct")
    if u.source != g1 or v.source != g2 or u.target != v.target:
        raise InvalidArgument("u, v must map the coproduct factors to one target")
    if not (u.is_hom() and v.is_hom()):
        raise InvalidArgument("the coproduct property extends homomorphisms only")
    x = u.target
    fab = ab.AbHom(c.A, x.A,
                   [list(u.fab.matrix[i]) + list(v.fab.matrix[i])
                    for i in range(x.A.rank)])
    tens_cols = []
    for i in range(g1.A.rank):
        for j in range(g2.A.rank):
            if tens.position(i, j) is not None:
                tens_cols.append(
                    x.commutator_pairing(u.fab.column(i), v.fab.column(j)))
    fcomm_cols = ([u.fcomm.column(j) for j in range(g1.B.rank)]
                  + [v.fcomm.column(j) for j in range(g2.B.rank)]
                  + tens_cols)
    fcomm = ab.AbHom.from_columns(c.B, x.B, fcomm_cols)
    gamma = list(u.gamma) + list(v.gamma)
    bz = x.B.zero()
    r = c.rank
    return QMap(c, x, fab, fcomm, gamma, [[bz] * r for _ in range(r)])


# ---------------------------------------------------------------------------
# Enumeration.

def _scalar_solutions(d: int, t: ab.AbElement):
    """All y with d y = t in t's group, lexicographic; empty list if none."""
    per_coord = []
    for e, tc in zip(t.group.orders, t.coords):
        if e == 0:
            if tc % d:
                return []
            per_coord.append([tc // d])
        else:
            g = gcd(d, e)
            if tc % g:
                return []
            step = e // g
            y0 = ((tc // g) * pow(d // g, -1, step)) % step if step > 1 else 0
            per_coord.append([y0 + k * step for k in range(g)])
    return [t.group.element(c) for c in itertools.product(*per_coord)]


def _annihilator(group: ab.FGAbelian, *ds):
    """Elements killed by every nonzero d in ds, lexicographic order."""
    ranges = []
    for e in group.orders:
        if e == 0:
            if any(ds):
                ranges.append([0])
            else:
                raise UnsupportedEnumeration("unconstrained free coordinate")
            continue
        m = 1
        for d in ds:
            if d:
                m = lcm(m, e // gcd(e, d))
        ranges.append(range(0, e, m))
    return [group.element(c) for c in itertools.product(*ranges)]


def enumerate_qmaps(g: nil2.Nil2Group, h: nil2.Nil2Group):
    """All q-maps G -> H, deterministic order.

    Iterates (fab, fcomm), derives the lower delta triangle from the
    commutator relations, solves the order relations for gamma, and
    yields validated presentations.  Complete against the brute-force
    set-map filter (acceptance property).
    """
    if not (g.is_finite() and h.is_finite()):
        raise UnsupportedEnumeration("q-map enumeration needs finite groups")
    r = g.rank
    orders = g.A.orders
    torsion_b = [(d * g.gen(i)).b for i, d in enumerate(orders)]
    diag_choices = [_annihilator(h.B, d) for d in orders]
    upper_pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    upper_choices = [_annihilator(h.B, orders[i], orders[j]) for i, j in upper_pairs]
    all_b = list(h.B.elements())
    for fab in ab.enumerate_homs(g.A, h.A):
        cols = [fab.column(i) for i in range(r)]
        pair_comm = {(i, j): h.commutator_pairing(cols[i], cols[j])
                     for i, j in upper_pairs}
        power_b = [(orders[i] * h.pair(cols[i], h.B.zero())).b for i in range(r)]
        for fcomm in ab.enumerate_homs(g.B, h.B):
            anti = {(i, j): fcomm.apply(g.bil[i][j] - g.bil[j][i])
                    for i, j in upper_pairs}
            for diag in itertools.product(*diag_choices):
                gamma_choices = []
                for i in range(r):
                    d = orders[i]
                    if d == 0:
                        gamma_choices.append(all_b)
                        continue
                    tgt = (fcomm.apply(torsion_b[i]) - power_b[i]
                           - (d * (d - 1) // 2) * diag[i])
                    sols = _scalar_solutions(d, tgt)
                    if not sols:
                        gamma_choices = None
                        break
                    gamma_choices.append(sols)
                if gamma_choices is None:
                    continue
                for upper in itertools.product(*upper_choices):
                    delta = [[h.B.zero()] * r for _ in range(r)]
                    ok = True
                    for pos, (i, j) in enumerate(upper_pairs):
                        dij = upper[pos]
                        delta[i][j] = dij
                        dji = dij + pair_comm[(i, j)] - anti[(i, j)]
                        if not ((orders[i] * dji).is_zero()
                                and (orders[j] * dji).is_zero()):
                            ok = False
                            break
                        delta[j][i] = dji
                    if not ok:
                        continue
                    for i in range(r):
                        delta[i][i] = diag[i]
                    for gamma in itertools.product(*gamma_choices):
                        yield QMap(g, h, fab, fcomm, list(gamma), delta,
                                   _validated=True)


def enumerate_homs(g: nil2.Nil2Group, h: nil2.Nil2Group):
    """All group homomorphisms G -> H (q-maps with zero cross-effect).

    Same order as filtering enumerate_qmaps by is_hom, but skips the
    delta loops: with delta pinned to zero the commutator relations
    constrain (fab, fcomm) directly.
    """
    if not (g.is_finite() and h.is_finite()):
        raise UnsupportedEnumeration("homomorphism enumeration needs finite groups")
    r = g.rank
    orders = g.A.orders
    torsion_b = [(d * g.gen(i)).b for i, d in enumerate(orders)]
    upper_pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    zero_delta = [[h.B.zero()] * r for _ in range(r)]
    for fab in ab.enumerate_homs(g.A, h.A):
        cols = [fab.column(i) for i in range(r)]
        pair_comm = {p: h.commutator_pairing(cols[p[0]], cols[p[1]])
                     for p in upper_pairs}
        power_b = [(orders[i] * h.pair(cols[i], h.B.zero())).b for i in range(r)]
        for fcomm in ab.enumerate_homs(g.B, h.B):
            if any(fcomm.apply(g.bil[i][j] - g.bil[j][i]) != pair_comm[(i, j)]
                   for i, j in upper_pairs):
                continue
            gamma_choices = []
            for i in range(r):
                d = orders[i]
                if d == 0:
                    gamma_choices.append(list(h.B.elements()))
                    continue
                sols = _scalar_solutions(d, fcomm.apply(torsion_b[i]) - power_b[i])
                if not sols:
                    gamma_choices = None
                    break
                gamma_choices.append(sols)
            if gamma_choices is None:
                continue
            for gamma in itertools.product(*gamma_choices):
                yield QMap(g, h, fab, fcomm, list(gamma), zero_delta,
                           _validated=True)


# ---------------------------------------------------------------------------
# Function-level oracles (independent of the presentation machinery).

def cross_table(fn, g: nil2.Nil2Group):
    """All cross-effect values of a concrete function on a finite group."""
    elems = list(g.elements())
    vals = {z: fn(z) for z in elems}
    return elems, vals, {(x, y): -(vals[x] + vals[y]) + vals[x + y]
                         for x in elems for y in elems}


def _cross_bilinear(elems, cross) -> bool:
    for x in elems:
        for y in elems:
            cxy = cross[(x, y)]
            for z in elems:
                if cross[(x + z, y)] != cxy + cross[(z, y)]:
                    return False
                if cross[(x, y + z)] != cxy + cross[(x, z)]:
                    return False
    return True


def _checked_cross_table(fn, g, member):
    """Cross-effect table, bailing at the first value outside `member`."""
    elems = list(g.elements())
    vals = {z: fn(z) for z in elems}
    cross = {}
    for x in elems:
        vx = vals[x]
        for y in elems:
            c = -(vx + vals[y]) + vals[x + y]
            if not member(c):
                return None, None
            cross[(x, y)] = c
    return elems, cross


def is_qmap_function(fn, g: nil2.Nil2Group, h: nil2.Nil2Group) -> bool:
    """Definition-level check: cross-effect in [H,H] and bilinear."""
    elems, cross = _checked_cross_table(fn, g, lambda c: c.a.is_zero())
    if elems is None:
        return False
    return _cross_bilinear(elems, cross)


def is_quadratic_function(fn, g: nil2.Nil2Group, h: nil2.Nil2Group,
                          ctr: nil2.CenterInfo = None) -> bool:
    """Cross-effect central and bilinear (not necessarily in [H,H])."""
    if ctr is None:
        ctr = nil2.center(h)
    elems, cross = _checked_cross_table(fn, g, ctr.contains)
    if elems is None:
        return False
    return _cross_bilinear(elems, cross)


def quadratic_functions_bruteforce(g: nil2.Nil2Group, h: nil2.Nil2Group,
                                   kind: str = "qmap"):
    """Exhaustive filter of all set maps G -> H by the defining conditions.

    `kind` = "qmap" requires the cross-effect in [H,H]; "quadratic"
    requires it central.  Backtracking assigns values in element order and
    prunes on the membership condition; survivors get the full bilinearity
    check.  Returns value tables as tuples of H-element indices, sorted.
    """
    if not (g.is_finite() and h.is_finite()):
        raise UnsupportedEnumeration("brute-force filter needs finite groups")
    gel = list(g.elements())
    hel = list(h.elements())
    n = len(gel)
    gidx = {z: i for i, z in enumerate(gel)}
    sums = [[gidx[x + y] for y in gel] for x in gel]
    if kind == "qmap":
        good = [w.a.is_zero() for w in hel]
    elif kind == "quadratic":
        ctr = nil2.center(h)
        good = [ctr.contains(w) for w in hel]
    else:
        raise InvalidArgument(f"unknown filter kind {kind!r}")
    hidx = {z: i for i, z in enumerate(hel)}
    neg = [hidx[-w] for w in hel]
    hsums = [[hidx[x + y] for y in hel] for x in hel]

    by_max = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = sums[i][j]
            by_max[max(i, j, k)].append((i, j, k))

    values = [None] * n
    out = []

    def crosses_ok(i, j, k):
        c = hsums[neg[hsums[values[i]][values[j]]]][values[k]]
        return good[c]

    def rec(pos):
        if pos == n:
            def fn(z):
                return hel[values[gidx[z]]]
            if kind == "qmap":
                if is_qmap_function(fn, g, h):
                    out.append(tuple(values))
            else:
                if is_quadratic_function(fn, g, h):
                    out.append(tuple(values))
            return
        for v in range(len(hel)):
            values[pos] = v
            if all(crosses_ok(i, j, k) for (i, j, k) in by_max[pos]):
                rec(pos + 1)
        values[pos] = None

    rec(0)
    return sorted(out)
