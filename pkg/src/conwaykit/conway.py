"""Conway algebras and the resolving-tree evaluator.

The evaluator walks a diagram from its base points, stops at the first
crossing met on its under-strand, and recurses on the diagram with that
crossing switched and on its oriented smoothing.  A descending diagram with
``n`` components is a trivial link and takes the constant ``a_n``.  A
positive crossing combines the two children with ``|``, a negative one with
``*``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .diagram import LinkDiagram, TrivialForm
from .poly import LaurentPoly, make_vars, poly_substitute

__all__ = [
    "UndefinedOperationError",
    "ConwayAlgebra",
    "HomflyAlgebra",
    "ConwayPolyAlgebra",
    "JonesAlgebra",
    "ThreeVarAlgebra",
    "LinkingNumberAlgebra",
    "FiniteAlgebra",
    "FiniteAlgebraTable",
    "Branch",
    "Leaf",
    "build_resolving_tree",
    "evaluate_tree",
    "evaluate",
    "tree_height",
    "tree_size",
    "homfly",
    "conway_poly",
    "jones",
    "three_var_invariant",
    "global_linking",
    "weighted_simplex",
    "simplices_equivalent",
    "AxiomReport",
    "check_axioms",
    "mirror_involution_check",
    "find_mirror_involutions",
    "divisible_by_x_plus_y_minus_1",
    "MOD3_ALGEBRA",
    "TREFOIL_CHIRALITY_ALGEBRA",
    "trivial_algebra_table",
]


class UndefinedOperationError(ArithmeticError):
    """A partial algebra met an operation outside its domain."""

    def __init__(self, op: str, a, b, reason: str = ""):
        self.op = op
        self.a = a
        self.b = b
        self.reason = reason
        msg = f"{op} undefined on ({a!r}, {b!r})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ConwayAlgebra:
    """Contract for the evaluator.

    Subclasses provide ``constant(n)``, ``bar(a, b)`` and ``star(a, b)``.
    Partial algebras set ``partial = True`` and raise
    :class:`UndefinedOperationError` outside their domain.
    """

    partial = False
    name = "conway-algebra"

    def constant(self, n: int):
        raise NotImplementedError

    def bar(self, a, b):
        raise NotImplementedError

    def star(self, a, b):
        raise NotImplementedError

    def equal(self, a, b) -> bool:
        return a == b

    def sample_elements(self, rng: random.Random, k: int) -> list:
        return [self.constant(n) for n in range(1, k + 1)]


# ---------------------------------------------------------------- polynomial algebras

class HomflyAlgebra(ConwayAlgebra):
    """``x w(L+) + y w(L-) = w(L0)`` over Z[x^±1, y^±1] with ``a_n = (x+y)^(n-1)``."""

    name = "homfly"

    def __init__(self):
        self.vars = make_vars("x y")
        self.x = LaurentPoly.gen(self.vars, "x")
        self.y = LaurentPoly.gen(self.vars, "y")
        self._consts = [None, LaurentPoly.one(self.vars)]

    def constant(self, n):
        while len(self._consts) <= n:
            self._consts.append(self._consts[-1] * (self.x + self.y))
        return self._consts[n]

    def bar(self, a, b):
        # w(L+) from w(L-) = a and w(L0) = b
        return (b - a.shifted((0, 1))).shifted((-1, 0))

    def star(self, a, b):
        # w(L-) from w(L+) = a and w(L0) = b
        return (b - a.shifted((1, 0))).shifted((0, -1))

    def sample_elements(self, rng, k):
        out = []
        for _ in range(k):
            terms = {(rng.randint(-3, 3), rng.randint(-3, 3)): rng.randint(-3, 3) for _ in range(rng.randint(1, 4))}
            out.append(LaurentPoly(self.vars, terms))
        return out


class ConwayPolyAlgebra(ConwayAlgebra):
    """``w(L+) - w(L-) = z w(L0)`` over Z[z]; split links vanish."""

    name = "conway"

    def __init__(self):
        self.vars = make_vars("z")
        self.z = LaurentPoly.gen(self.vars, "z")
        self._one = LaurentPoly.one(self.vars)
        self._zero = LaurentPoly.zero(self.vars)

    def constant(self, n):
        return self._one if n == 1 else self._zero

    def bar(self, a, b):
        return a + b.shifted((1,))

    def star(self, a, b):
        return a - b.shifted((1,))


class JonesAlgebra(ConwayAlgebra):
    """``-t V(L+) + t^-1 V(L-) = (t^1/2 - t^-1/2) V(L0)`` on the half-integer grid."""

    name = "jones"

    def __init__(self):
        self.vars = make_vars("t:2")
        one = LaurentPoly.one(self.vars)
        self._delta = -(one.shifted((1,)) + one.shifted((-1,)))
        self._consts = [None, one]

    def constant(self, n):
        while len(self._consts) <= n:
            self._consts.append(self._consts[-1] * self._delta)
        return self._consts[n]

    def bar(self, a, b):
        # V+ = t^-2 V- - (t^-1/2 - t^-3/2) V0
        return a.shifted((-4,)) - b.shifted((-1,)) + b.shifted((-3,))

    def star(self, a, b):
        # V- = t^2 V+ + (t^3/2 - t^1/2) V0
        return a.shifted((4,)) + b.shifted((3,)) - b.shifted((1,))


class ThreeVarAlgebra(ConwayAlgebra):
    """``x w1 + y w2 = w0 - z`` with ``a_i = (x+y)^(i-1) + z((x+y)^(i-2) + ... + 1)``."""

    name = "three-var"

    def __init__(self):
        self.vars = make_vars("x y z")
        self.x = LaurentPoly.gen(self.vars, "x")
        self.y = LaurentPoly.gen(self.vars, "y")
        self.z = LaurentPoly.gen(self.vars, "z")
        one = LaurentPoly.one(self.vars)
        self._consts = [None, one]
        self._geo = [None, one]  # 1 + s + ... + s^(i-1), s = x + y
        self._pow = [None, one]

    def constant(self, n):
        s = self.x + self.y
        while len(self._consts) <= n:
            i = len(self._consts)
            self._pow.append(self._pow[-1] * s)
            self._consts.append(self._pow[i] + self.z * self._geo[i - 1])
            self._geo.append(self._geo[-1] + self._pow[i])
        return self._consts[n]

    def bar(self, a, b):
        return (b - self.z - a.shifted((0, 1, 0))).shifted((-1, 0, 0))

    def star(self, a, b):
        return (b - self.z - a.shifted((1, 0, 0))).shifted((0, -1, 0))


class LinkingNumberAlgebra(ConwayAlgebra):
    """Pairs (components, linking number); the first coordinate decides the step."""

    name = "lk"

    def constant(self, n):
        return (n, 0)

    def bar(self, a, b):
        return (a[0], a[1] + 1) if a[0] > b[0] else a

    def star(self, a, b):
        return (a[0], a[1] - 1) if a[0] > b[0] else a

    def sample_elements(self, rng, k):
        return [(rng.randint(1, 5), rng.randint(-4, 4)) for _ in range(k)]


# ---------------------------------------------------------------- finite tables

@dataclass(frozen=True)
class FiniteAlgebraTable:
    """Operation tables on {1..n}; ``bar[a-1][b-1] = a|b``.

    The constant sequence is ``prefix`` followed by ``period`` repeated
    forever.
    """

    n: int
    bar: tuple
    star: tuple
    prefix: tuple = ()
    period: tuple = (1,)

    def __post_init__(self):
        n = self.n
        bar = tuple(tuple(int(v) for v in row) for row in self.bar)
        star = tuple(tuple(int(v) for v in row) for row in self.star)
        if len(bar) != n or len(star) != n or any(len(r) != n for r in bar + star):
            raise ValueError(f"tables must be {n}x{n}")
        for v in itertools.chain.from_iterable(bar + star):
            if not 1 <= v <= n:
                raise ValueError(f"table entry {v} outside 1..{n}")
        seq = tuple(self.prefix) + tuple(self.period)
        if not self.period:
            raise ValueError("constant period must be nonempty")
        for v in seq:
            if not 1 <= v <= n:
                raise ValueError(f"constant {v} outside 1..{n}")
        object.__setattr__(self, "bar", bar)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        object.__setattr__(self, "period", tuple(int(v) for v in self.period))

    def constant(self, k: int) -> int:
        if k < 1:
            raise ValueError("constants are indexed from 1")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.period[(k - 1 - len(self.prefix)) % len(self.period)]

    def constants_window(self) -> list[int]:
        """Enough constants to cover the prefix and two full periods."""
        return [self.constant(k) for k in range(1, len(self.prefix) + 2 * len(self.period) + 2)]

    def op_bar(self, a: int, b: int) -> int:
        return self.bar[a - 1][b - 1]

    def op_star(self, a: int, b: int) -> int:
        return self.star[a - 1][b - 1]

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(map(str, r)) for r in self.bar]
        lines += [" ".join(map(str, r)) for r in self.star]
        per = " ".join(map(str, self.period))
        lines.append(f"{' '.join(map(str, self.prefix))} / {per}" if self.prefix else per)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FiniteAlgebraTable":
        rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        rows = [r for r in rows if r]
        try:
            n = int(rows[0])
            bar = [list(map(int, r.split())) for r in rows[1:1 + n]]
            star = [list(map(int, r.split())) for r in rows[1 + n:1 + 2 * n]]
            const = rows[1 + 2 * n]
        except (IndexError, ValueError) as exc:
            raise ValueError(f"malformed algebra table: {exc}") from None
        if len(rows) != 2 + 2 * n:
            raise ValueError("unexpected trailing lines in algebra table")
        if "/" in const:
            pre, per = const.split("/", 1)
            prefix, period = tuple(map(int, pre.split())), tuple(map(int, per.split()))
        else:
            prefix, period = (), tuple(map(int, const.split()))
        return cls(n, tuple(map(tuple, bar)), tuple(map(tuple, star)), prefix, period)

    def relabel(self, perm: dict) -> "FiniteAlgebraTable":
        """Image under the bijection ``perm`` (old label -> new label)."""
        n = self.n
        inv = {v: k for k, v in perm.items()}
        bar = tuple(tuple(perm[self.op_bar(inv[a], inv[b])] for b in range(1, n + 1)) for a in range(1, n + 1))
        star = tuple(tuple(perm[self.op_star(inv[a], inv[b])] for b in range(1, n + 1)) for a in range(1, n + 1))
        return FiniteAlgebraTable(n, bar, star, tuple(perm[v] for v in self.prefix), tuple(perm[v] for v in self.period))


class FiniteAlgebra(ConwayAlgebra):
    def __init__(self, table: FiniteAlgebraTable):
        self.table = table
        self.name = f"finite-{table.n}"

    def constant(self, n):
        return self.table.constant(n)

    def bar(self, a, b):
        return self.table.op_bar(a, b)

    def star(self, a, b):
        return self.table.op_star(a, b)

    def sample_elements(self, rng, k):
        return list(range(1, self.table.n + 1))


def _table_from_rule(n, rule_bar, rule_star, prefix, period):
    bar = tuple(tuple(rule_bar(a, b) for b in range(1, n + 1)) for a in range(1, n + 1))
    star = tuple(tuple(rule_star(a, b) for b in range(1, n + 1)) for a in range(1, n + 1))
    return FiniteAlgebraTable(n, bar, star, prefix, period)


def trivial_algebra_table(n: int = 3) -> FiniteAlgebraTable:
    """``i|j = i*j = i`` on {1..n} with constants 1, 2, ..., n, n, n, ..."""
    return _table_from_rule(n, lambda a, b: a, lambda a, b: a, tuple(range(1, n)), (n,))


# three-element algebra on {0,1,2} with 0 relabelled as 3; constants 1,2,0,1,2,0,...
def _mod3_table():
    def op(a, b):
        a0, b0 = a % 3, b % 3
        r = (-a0 - b0 + 1) % 3
        return r if r else 3
    return _table_from_rule(3, op, op, (), (1, 2, 3))


MOD3_ALGEBRA = _mod3_table()

TREFOIL_CHIRALITY_ALGEBRA = FiniteAlgebraTable(
    4,
    ((2, 1, 4, 3), (3, 4, 1, 2), (1, 2, 3, 4), (4, 3, 2, 1)),
    ((3, 1, 2, 4), (1, 3, 4, 2), (2, 4, 3, 1), (4, 2, 1, 3)),
    (),
    (1, 2, 4),
)


# ---------------------------------------------------------------- resolving trees

class Leaf:
    __slots__ = ("components", "writhe")

    def __init__(self, components: int, writhe: int):
        self.components = components
        self.writhe = writhe

    @property
    def form(self) -> TrivialForm:
        return TrivialForm(self.components, self.writhe)

    def __repr__(self):
        return f"Leaf({self.components}, {self.writhe})"


class Branch:
    __slots__ = ("crossing", "sign", "switch", "smooth")

    def __init__(self, crossing, sign, switch, smooth):
        self.crossing = crossing
        self.sign = sign
        self.switch = switch
        self.smooth = smooth

    def __repr__(self):
        return f"Branch(p={self.crossing}, sign={self.sign:+d})"


def _random_rebase(d: LinkDiagram, rng: random.Random) -> LinkDiagram:
    starts = [rng.randrange(len(c)) if c else 0 for c in d.components]
    order = list(range(d.n_components))
    rng.shuffle(order)
    return d.rebased(starts, order)


def build_resolving_tree(d: LinkDiagram, *, cache: bool = False, rng: random.Random | None = None):
    """Binary resolving tree.  With ``cache`` equal subdiagrams share one node (a DAG).

    With ``rng`` every node re-chooses base points and component order at
    random before looking for its first bad crossing.
    """
    memo: dict = {} if cache and rng is None else None

    def rec(node: LinkDiagram, fresh: bool = True):
        if rng is not None and fresh:
            node = _random_rebase(node, rng)
        if memo is not None:
            key = node.canonical_key()
            hit = memo.get(key)
            if hit is not None:
                return hit
        p = node.first_bad()
        if p is None:
            out = Leaf(node.n_components, node.writhe)
        else:
            out = Branch(p, node.signs[p], rec(node.switch(p), False), rec(node.smooth_oriented(p)))
        if memo is not None:
            memo[key] = out
        return out

    return rec(d)


def evaluate_tree(tree, alg: ConwayAlgebra):
    memo: dict = {}

    def rec(node):
        k = id(node)
        if k in memo:
            return memo[k]
        if isinstance(node, Leaf):
            val = alg.constant(node.components)
        else:
            a = rec(node.switch)
            b = rec(node.smooth)
            val = alg.bar(a, b) if node.sign > 0 else alg.star(a, b)
        memo[k] = val
        return val

    return rec(tree)


def evaluate(d: LinkDiagram, alg: ConwayAlgebra, *, cache: bool = False, rng: random.Random | None = None,
             simplify: bool = True):
    """Invariant of ``d`` defined by the Conway algebra ``alg``.

    With ``simplify`` every node first loses its curls and bigons; the
    invariant is one of isotopy, so the value is unchanged.
    """
    memo: dict | None = {} if cache and rng is None else None

    # base points are re-chosen only where the crossing count drops; moving
    # them along a chain of switches could undo earlier switches forever
    def rec(node: LinkDiagram, fresh: bool = True):
        if rng is not None and fresh:
            node = _random_rebase(node, rng)
        if simplify:
            node = node.simplified(kinks=True)
        if memo is not None:
            key = node.canonical_key()
            if key in memo:
                return memo[key]
        p = node.first_bad()
        if p is None:
            val = alg.constant(node.n_components)
        else:
            a = rec(node.switch(p), False)
            b = rec(node.smooth_oriented(p))
            val = alg.bar(a, b) if node.signs[p] > 0 else alg.star(a, b)
        if memo is not None:
            memo[key] = val
        return val

    return rec(d)


def tree_height(tree) -> int:
    memo: dict = {}

    def rec(node):
        k = id(node)
        if k not in memo:
            memo[k] = 0 if isinstance(node, Leaf) else 1 + max(rec(node.switch), rec(node.smooth))
        return memo[k]

    return rec(tree)


def tree_size(tree) -> tuple[int, int]:
    """(distinct branch nodes, distinct leaves)."""
    seen = set()
    branches = leaves = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Leaf):
            leaves += 1
        else:
            branches += 1
            stack.extend((node.switch, node.smooth))
    return branches, leaves


# ---------------------------------------------------------------- named invariants

_HOMFLY = HomflyAlgebra()
_CONWAY = ConwayPolyAlgebra()
_JONES = JonesAlgebra()
_THREE = ThreeVarAlgebra()
_LK = LinkingNumberAlgebra()


def _auto_cache(d: LinkDiagram, cache):
    return d.n_crossings >= 12 if cache is None else cache


def homfly(d: LinkDiagram, *, cache=None) -> LaurentPoly:
    return evaluate(d, _HOMFLY, cache=_auto_cache(d, cache))


def conway_poly(d: LinkDiagram, *, cache=None) -> LaurentPoly:
    return evaluate(d, _CONWAY, cache=_auto_cache(d, cache))


def jones(d: LinkDiagram, *, cache=None) -> LaurentPoly:
    return evaluate(d, _JONES, cache=_auto_cache(d, cache)).normalize_grid().regrid(make_vars("t:2"))


def three_var_invariant(d: LinkDiagram, *, cache=None) -> LaurentPoly:
    return evaluate(d, _THREE, cache=_auto_cache(d, cache))


def global_linking(d: LinkDiagram) -> tuple[int, int]:
    """(component count, total linking number) via the pair algebra."""
    return evaluate(d, _LK)


def divisible_by_x_plus_y_minus_1(p: LaurentPoly) -> bool:
    """Whether x + y - 1 divides p in Z[x^±1, y^±1].

    x and y are units, so clear them and test whether the polynomial vanishes
    on the line x = 1 - y, which is the remainder after substituting
    x = 1 - y + u and setting u = 0.
    """
    if p.is_zero():
        return True
    lo_x = min(e[0] for e in p.terms)
    lo_y = min(e[1] for e in p.terms)
    q = p.shifted((-lo_x, -lo_y))
    yv = make_vars("y")
    y = LaurentPoly.gen(yv, "y")
    return poly_substitute(q, {"x": 1 - y, "y": y}).is_zero()


# ---------------------------------------------------------------- weighted simplices

def weighted_simplex(d: LinkDiagram, invariant: Callable[[LinkDiagram], Hashable]) -> dict:
    """Invariant value on every nonempty sublink, keyed by frozenset of component indices."""
    n = d.n_components
    if n > 8:
        raise ValueError("weighted simplices are limited to 8 components")
    out = {}
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            out[frozenset(sub)] = invariant(d.sublink(sub))
    return out


def simplices_equivalent(w1: dict, w2: dict) -> bool:
    """Equal up to a bijection of the vertices (brute force)."""
    n1 = max((max(s) for s in w1), default=-1) + 1
    n2 = max((max(s) for s in w2), default=-1) + 1
    if n1 != n2:
        return False
    for perm in itertools.permutations(range(n1)):
        if all(w2.get(frozenset(perm[i] for i in s)) == v for s, v in w1.items()):
            return True
    return False


# ---------------------------------------------------------------- axiom checks

@dataclass
class AxiomReport:
    violations: dict = field(default_factory=dict)   # axiom -> witness tuple
    checked: list = field(default_factory=list)
    implications: list = field(default_factory=list)  # (premises, conclusion, premises hold, conclusion holds)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        lines = []
        for ax in self.checked:
            w = self.violations.get(ax)
            lines.append(f"{ax}: {'FAIL witness=' + repr(w) if w is not None else 'ok'}")
        for prem, concl, ph, ch in self.implications:
            status = "holds" if ch else "fails"
            lines.append(f"{'+'.join(prem)} => {concl}: premises {'hold' if ph else 'fail'}, conclusion {status}")
        return "\n".join(lines)


LEMMA_2_1_3 = [
    (("C1", "C6"), "C2"),
    (("C2", "C7"), "C1"),
    (("C6", "C4"), "C7"),
    (("C7", "C4"), "C6"),
    (("C6", "C4"), "C5"),
    (("C7", "C4"), "C3"),
    (("C5", "C6", "C7"), "C4"),
    (("C3", "C6", "C7"), "C4"),
]


def check_axioms(t: FiniteAlgebraTable) -> AxiomReport:
    """Exhaustive C1-C7 check with witnesses, plus the pattern C3, C6, C7 => C4 => C5."""
    B, S = t.op_bar, t.op_star
    els = range(1, t.n + 1)
    rep = AxiomReport()
    consts = t.constants_window()

    def first(pred, tuples):
        for tup in tuples:
            if not pred(*tup):
                return tup
        return None

    pairs = [(consts[k], consts[k + 1]) for k in range(len(consts) - 1)]
    quads = list(itertools.product(els, repeat=4))
    duos = list(itertools.product(els, repeat=2))
    tests = {
        "C1": (lambda a, b: B(a, b) == a, pairs),
        "C2": (lambda a, b: S(a, b) == a, pairs),
        "C3": (lambda a, b, c, d: B(B(a, b), B(c, d)) == B(B(a, c), B(b, d)), quads),
        "C4": (lambda a, b, c, d: S(B(a, b), B(c, d)) == B(S(a, c), S(b, d)), quads),
        "C5": (lambda a, b, c, d: S(S(a, b), S(c, d)) == S(S(a, c), S(b, d)), quads),
        "C6": (lambda a, b: S(B(a, b), b) == a, duos),
        "C7": (lambda a, b: B(S(a, b), b) == a, duos),
    }
    for ax, (pred, tuples) in tests.items():
        rep.checked.append(ax)
        w = first(pred, tuples)
        if w is not None:
            rep.violations[ax] = w
    for prem, concl in LEMMA_2_1_3:
        ph = all(p not in rep.violations for p in prem)
        rep.implications.append((prem, concl, ph, concl not in rep.violations))
    return rep


def mirror_involution_check(alg: ConwayAlgebra, tau: Callable, elements: Sequence | None = None,
                            n_constants: int = 8, rng: random.Random | None = None, samples: int = 12) -> bool:
    """True iff ``tau`` fixes the constants and turns ``|`` into ``*`` on the tested elements."""
    rng = rng or random.Random(0)
    for n in range(1, n_constants + 1):
        if not alg.equal(tau(alg.constant(n)), alg.constant(n)):
            return False
    if elements is None:
        elements = alg.sample_elements(rng, samples) + [alg.constant(n) for n in range(1, 4)]
    for a in elements:
        for b in elements:
            try:
                lhs = tau(alg.bar(a, b))
            except UndefinedOperationError:
                continue
            if not alg.equal(lhs, alg.star(tau(a), tau(b))):
                return False
            if not alg.equal(tau(alg.star(a, b)), alg.bar(tau(a), tau(b))):
                return False
    return True


def find_mirror_involutions(t: FiniteAlgebraTable) -> list[dict]:
    """All bijections of {1..n} that fix every constant and swap | with *."""
    fixed = set(t.constants_window())
    free = [e for e in range(1, t.n + 1) if e not in fixed]
    alg = FiniteAlgebra(t)
    found = []
    for img in itertools.permutations(free):
        tau = {e: e for e in fixed}
        tau.update(dict(zip(free, img)))
        if mirror_involution_check(alg, tau.__getitem__, elements=list(range(1, t.n + 1))):
            found.append(tau)
    return found
