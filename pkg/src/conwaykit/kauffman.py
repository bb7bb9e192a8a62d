"""Regular-isotopy invariants from Kauffman algebras.

A Kauffman algebra carries two domains: ``A`` for oriented diagrams and
``A'`` for unoriented ones, tied together by a forgetful map ``phi``.  The
evaluator resolves the first bad crossing ``p`` into three children

    w(L) = star(w(L with p switched), w(L_o), w'(L_inf))

where ``L_inf`` (the smoothing that ignores orientation) lives in the
unoriented world from then on.  Leaves are descending diagrams and take
``a(i, j)`` or ``a'(i, j)`` with ``i`` components and writhe ``j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import LinkDiagram
from .poly import LaurentPoly, make_vars, poly_substitute, substitute_rational

__all__ = [
    "KauffmanAlgebra",
    "KauffmanLAlgebra",
    "JCKAlgebra",
    "BrokenJCKAlgebra",
    "TernaryBranch",
    "TernaryLeaf",
    "build_ternary_tree",
    "evaluate_regular",
    "kauffman_L",
    "kauffman_F",
    "q_polynomial",
    "homfly_regular",
    "homfly_from_regular",
    "jck",
    "jck_tilde",
    "jones_from_kauffman",
    "KauffmanAxiomReport",
    "check_kauffman_axioms",
]


class KauffmanAlgebra:
    """Contract: ``a(i, j)``, ``a_prime(i, j)``, ``star``, ``star_prime``, ``phi``."""

    name = "kauffman-algebra"

    def a(self, i: int, j: int):
        raise NotImplementedError

    def a_prime(self, i: int, j: int):
        raise NotImplementedError

    def star(self, b, c, d):
        raise NotImplementedError

    def star_prime(self, b, c, d):
        raise NotImplementedError

    def phi(self, x):
        raise NotImplementedError

    def sample(self, rng: random.Random, oriented: bool):
        raise NotImplementedError


def _random_poly(vars, rng, nonneg=()):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 2) if v.name in nonneg else rng.randint(-2, 2) for v in vars)
        terms[e] = terms.get(e, 0) + rng.choice([-2, -1, 1, 2, 3])
    return LaurentPoly(vars, terms)


class KauffmanLAlgebra(KauffmanAlgebra):
    """``L+ + L- = z(L_o + L_inf)`` with ``a(i, j) = a^j mu^(i-1)``, ``mu = (a + a^-1)/z - 1``.

    Both domains are Z[a^±1, z^±1] and ``phi`` is the identity.
    """

    name = "kauffman-L"

    def __init__(self):
        self.vars = make_vars("a z")
        one = LaurentPoly.one(self.vars)
        self._mu = one.shifted((1, -1)) + one.shifted((-1, -1)) - one
        self._mu_pow = [one]

    def _mu_power(self, k):
        while len(self._mu_pow) <= k:
            self._mu_pow.append(self._mu_pow[-1] * self._mu)
        return self._mu_pow[k]

    def a(self, i, j):
        return self._mu_power(i - 1).shifted((j, 0))

    a_prime = a

    def star(self, b, c, d):
        return (c + d).shifted((0, 1)) - b

    star_prime = star

    def phi(self, x):
        return x

    def sample(self, rng, oriented):
        return _random_poly(self.vars, rng)


class JCKAlgebra(KauffmanAlgebra):
    """Three-variable algebra: ``b*(c,d) + b = tc + zd`` and ``b*'(c,d) + b = tc + td``.

    ``A = Z[a^±1, t^±1, z]``, ``A' = Z[a^±1, t^±1]`` and ``phi`` sends z to t.
    """

    name = "jck"

    def __init__(self):
        self.vars = make_vars("a t z")
        self.uvars = make_vars("a t")
        one = LaurentPoly.one(self.vars)
        z = one.shifted((0, 0, 1))
        s = one.shifted((1, -1, 0)) + one.shifted((-1, -1, 0))  # (a + a^-1)/t
        self._s, self._s1 = s, s - one
        self._head = one - z.shifted((0, -1, 0))  # 1 - z/t
        self._zt = z.shifted((0, -1, 0))
        uone = LaurentPoly.one(self.uvars)
        self._us1 = uone.shifted((1, -1)) + uone.shifted((-1, -1)) - uone
        self._cache: dict = {}
        self._ucache: dict = {}

    def a(self, i, j):
        base = self._cache.get(i)
        if base is None:
            base = self._s ** (i - 1) * self._head + self._zt * self._s1 ** (i - 1)
            self._cache[i] = base
        return base.shifted((j, 0, 0))

    def a_prime(self, i, j):
        base = self._ucache.get(i)
        if base is None:
            base = self._us1 ** (i - 1)
            self._ucache[i] = base
        return base.shifted((j, 0))

    def star(self, b, c, d):
        d3 = d.regrid(self.vars)
        return c.shifted((0, 1, 0)) + d3.shifted((0, 0, 1)) - b

    def star_prime(self, b, c, d):
        return (c + d).shifted((0, 1)) - b

    def phi(self, x):
        t = LaurentPoly.gen(self.uvars, "t")
        return poly_substitute(x, {"z": t}, target_vars=self.uvars).regrid(self.uvars)

    def sample(self, rng, oriented):
        if oriented:
            return _random_poly(self.vars, rng, nonneg=("z",))
        return _random_poly(self.uvars, rng)


class BrokenJCKAlgebra(JCKAlgebra):
    """JCK with ``b*'(c,d) + b = tc + zd``; violates K6 (used as a negative control).

    The unoriented domain has to carry z here, so it is Z[a^±1, t^±1, z].
    """

    name = "jck-broken"

    def __init__(self):
        super().__init__()
        self.uvars = self.vars

    def a_prime(self, i, j):
        return super().a_prime(i, j).regrid(self.vars)

    def star_prime(self, b, c, d):
        return c.shifted((0, 1, 0)) + d.shifted((0, 0, 1)) - b

    def phi(self, x):
        t = LaurentPoly.gen(self.vars, "t")
        return poly_substitute(x, {"z": t}, target_vars=self.vars).regrid(self.vars)


# ---------------------------------------------------------------- evaluator

class TernaryLeaf:
    __slots__ = ("components", "writhe", "oriented")

    def __init__(self, components, writhe, oriented):
        self.components = components
        self.writhe = writhe
        self.oriented = oriented

    def __repr__(self):
        return f"TernaryLeaf({self.components}, {self.writhe}, {'o' if self.oriented else 'u'})"


class TernaryBranch:
    __slots__ = ("crossing", "sign", "oriented", "switch", "smooth", "smooth_inf")

    def __init__(self, crossing, sign, oriented, switch, smooth, smooth_inf):
        self.crossing = crossing
        self.sign = sign
        self.oriented = oriented
        self.switch = switch
        self.smooth = smooth
        self.smooth_inf = smooth_inf


def _rebase(node, rng):
    starts = [rng.randrange(len(c)) if c else 0 for c in node.components]
    order = list(range(node.n_components))
    rng.shuffle(order)
    node = node.rebased(starts, order)
    return node


def _reorient(node, rng):
    for k in range(node.n_components):
        if rng.random() < 0.5:
            node = node.reverse_component(k)
    return node


def build_ternary_tree(d: LinkDiagram, *, cache: bool = True):
    memo: dict = {} if cache else None

    def rec(node, oriented):
        if memo is not None:
            key = (oriented, node.canonical_key())
            hit = memo.get(key)
            if hit is not None:
                return hit
        p = node.first_bad()
        if p is None:
            out = TernaryLeaf(node.n_components, node.writhe, oriented)
        else:
            out = TernaryBranch(p, node.signs[p], oriented, rec(node.switch(p), oriented),
                                rec(node.smooth_oriented(p), oriented), rec(node.smooth_unoriented(p), False))
        if memo is not None:
            memo[key] = out
        return out

    return rec(d, True)


def evaluate_regular(d: LinkDiagram, alg: KauffmanAlgebra, *, cache: bool = True,
                     rng: random.Random | None = None, simplify: bool = True):
    """Regular-isotopy invariant of ``d`` in the algebra's oriented domain.

    With ``rng`` every node picks random base points and component order,
    and every unoriented node also picks a random orientation; the result
    must not change (that is what the tests check).  ``simplify`` removes
    bigons from every node first; that keeps the regular-isotopy class and
    shrinks the trees of the larger table knots by one or two orders of
    magnitude.
    """
    memo: dict | None = {} if cache and rng is None else None

    # Base points may only be re-chosen where the crossing count drops;
    # along a chain of switches they must stay put or the recursion can cycle.
    def rec(node: LinkDiagram, oriented: bool, fresh: bool = True):
        if rng is not None and fresh:
            node = _rebase(node if oriented else _reorient(node, rng), rng)
        if simplify:
            node = node.simplified()
        if memo is not None:
            key = (oriented, node.canonical_key())
            if key in memo:
                return memo[key]
        p = node.first_bad()
        if p is None:
            n, j = node.n_components, node.writhe
            val = alg.a(n, j) if oriented else alg.a_prime(n, j)
        else:
            b = rec(node.switch(p), oriented, False)
            c = rec(node.smooth_oriented(p), oriented)
            e = rec(node.smooth_unoriented(p), False)
            val = alg.star(b, c, e) if oriented else alg.star_prime(b, c, e)
        if memo is not None:
            memo[key] = val
        return val

    return rec(d, True)


# ---------------------------------------------------------------- named polynomials

_L = KauffmanLAlgebra()
_JCK = JCKAlgebra()


def kauffman_L(d: LinkDiagram) -> LaurentPoly:
    """Kauffman's regular-isotopy polynomial L(a, z)."""
    return evaluate_regular(d, _L)


def kauffman_F(d: LinkDiagram) -> LaurentPoly:
    """Kauffman polynomial F = a^(-writhe) L, an isotopy invariant."""
    return kauffman_L(d).shifted((-d.writhe, 0))


def q_polynomial(d: LinkDiagram) -> LaurentPoly:
    """Q(x) = F(1, x)."""
    xv = make_vars("x")
    x = LaurentPoly.gen(xv, "x")
    return poly_substitute(kauffman_F(d), {"a": 1, "z": x}, target_vars=xv).regrid(xv)


def homfly_regular(d: LinkDiagram) -> LaurentPoly:
    """R(a, z) with R+ - R- = z R_o and R(descending, n comps, writhe j) = a^j ((a - a^-1)/z)^(n-1)."""
    vars = make_vars("a z")
    one = LaurentPoly.one(vars)
    delta = one.shifted((1, -1)) - one.shifted((-1, -1))
    pw = [one]
    memo: dict = {}

    def rec(node):
        key = node.canonical_key()
        if key in memo:
            return memo[key]
        p = node.first_bad()
        if p is None:
            n = node.n_components
            while len(pw) < n:
                pw.append(pw[-1] * delta)
            val = pw[n - 1].shifted((node.writhe, 0))
        else:
            a = rec(node.switch(p))
            b = rec(node.smooth_oriented(p)).shifted((0, 1))
            val = a + b if node.signs[p] > 0 else a - b
        memo[key] = val
        return val

    return rec(d)


def homfly_from_regular(d: LinkDiagram) -> LaurentPoly:
    """a^(-writhe) R, which equals HOMFLY at x = a/z, y = -1/(az)."""
    return homfly_regular(d).shifted((-d.writhe, 0))


def jck(d: LinkDiagram) -> LaurentPoly:
    """Jones-Conway-Kauffman regular-isotopy polynomial J(a, t, z)."""
    return evaluate_regular(d, _JCK)


def jck_tilde(d: LinkDiagram) -> LaurentPoly:
    """Isotopy-invariant normalisation a^(-writhe) J."""
    return jck(d).shifted((-d.writhe, 0, 0))


def jones_from_kauffman(d: LinkDiagram) -> LaurentPoly:
    """V(t) = F(t^3/4, -(t^-1/4 + t^1/4)) on the quarter grid."""
    tv = make_vars("t:4")
    one = LaurentPoly.one(tv)
    a_img = (one.shifted((3,)), one)
    z_img = (-(one + one.shifted((2,))), one.shifted((1,)))
    return substitute_rational(kauffman_F(d), {"a": a_img, "z": z_img}, target_vars=tv).regrid(tv)


# ---------------------------------------------------------------- axiom checks

@dataclass
class KauffmanAxiomReport:
    violations: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        out = []
        for ax in ("K1", "K2", "K3", "K4", "K5", "K6"):
            w = self.violations.get(ax)
            out.append(f"{ax}: {'ok' if w is None else 'FAIL witness=' + repr(w)} ({self.counts.get(ax, 0)} checks)")
        return "\n".join(out)


def check_kauffman_axioms(alg: KauffmanAlgebra, samples: int = 20, *, seed: int = 0,
                          max_i: int = 4, j_range: range = range(-3, 4)) -> KauffmanAxiomReport:
    """K1, K3 on constants; K2, K4, K5, K6 on random elements."""
    rng = random.Random(seed)
    rep = KauffmanAxiomReport()

    def record(ax, ok, witness):
        rep.counts[ax] = rep.counts.get(ax, 0) + 1
        if not ok and ax not in rep.violations:
            rep.violations[ax] = witness

    for i in range(1, max_i + 1):
        for j in j_range:
            record("K1", alg.phi(alg.a(i, j)) == alg.a_prime(i, j), (i, j))
            lhs = alg.star(alg.a(i, j - 1), alg.a(i + 1, j), alg.a_prime(i, j))
            record("K3", lhs == alg.a(i, j + 1), (i, j))
    for _ in range(samples):
        o = [alg.sample(rng, True) for _ in range(4)]
        u = [alg.sample(rng, False) for _ in range(5)]
        a, b, d, e = o
        c, f, g, h, i = u
        record("K2", alg.phi(alg.star(a, b, c)) == alg.star_prime(alg.phi(a), alg.phi(b), c), (a, b, c))
        lhs = alg.star(alg.star(a, b, c), alg.star(d, e, f), alg.star_prime(g, h, i))
        rhs = alg.star(alg.star(a, d, g), alg.star(b, e, h), alg.star_prime(c, f, i))
        record("K4", lhs == rhs, (a, b, c, d, e, f, g, h, i))
        record("K5", alg.star(alg.star(a, b, c), b, c) == a, (a, b, c))
        record("K6", alg.star_prime(c, f, g) == alg.star_prime(c, g, f), (c, f, g))
    return rep
