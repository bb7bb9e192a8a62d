"""Enumeration of small finite Conway algebras up to isomorphism.

An algebra on {1..n} is determined by its ``|`` table: each column
``a -> a|b`` must be a permutation (so ``*`` is the column-wise inverse and
C6, C7 hold), and C3 must hold.  C4 and C5 then follow, which the census
double-checks on every representative.  Element 1 is ``a_1`` and element 2
is ``a_2``; isomorphisms are the bijections fixing both.

Which tables count depends on what is demanded of the constants:

``"sequence"``
    some infinite sequence ``1, 2, a_3, ...`` with ``a_k | a_{k+1} = a_k``
    exists (C1; C2 then follows from C6).  This is the default.
``"pair"``
    only ``1|2 = 1`` and some ``a_3`` with ``2|a_3 = 2``.
``"none"``
    only ``1|2 = 1``.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .conway import FiniteAlgebra, FiniteAlgebraTable, check_axioms, evaluate
from .diagram import LinkDiagram

__all__ = [
    "CONVENTIONS",
    "CensusResult",
    "enumerate_algebras",
    "census_report",
    "canonical_form",
    "invariant_battery",
    "brute_force_census",
    "bar_tables",
]

CONVENTIONS = ("sequence", "pair", "none")
MAX_SIZE = 5


@dataclass
class CensusResult:
    size: int
    count: int
    representatives: list = field(default_factory=list)
    convention: str = "sequence"

    def summary_line(self) -> str:
        return f"size={self.size} count={self.count}"

    def to_text(self) -> str:
        blocks = [t.to_text() for t in self.representatives]
        return "\n".join(blocks) + ("\n" if blocks else "") + self.summary_line() + "\n"


# ---------------------------------------------------------------- search

def _search(n: int, first: int | None = None) -> list[tuple]:
    """All ``|`` tables (0-based, rows = left operand) with permutation
    columns, ``0|1 = 0`` and C3.  ``first`` pins the cell (1, 0) to split
    the work between processes."""
    N = range(n)
    quads = [(a, b, c, d) for a in N for b in N for c in N for d in N if b != c]
    T = [[-1] * n for _ in N]
    T[0][1] = 0
    used = [set() for _ in N]  # values present in each column
    used[1].add(0)
    out = []

    def put(r, c, v, trail):
        if v in used[c]:
            return False
        T[r][c] = v
        used[c].add(v)
        trail.append((r, c))
        return True

    def propagate(trail) -> bool:
        changed = True
        while changed:
            changed = False
            for c in N:
                free = [r for r in N if T[r][c] < 0]
                if len(free) == 1:
                    (v,) = set(N) - used[c]
                    put(free[0], c, v, trail)
                    changed = True
            for a, b, c, d in quads:
                x, y, u, v = T[a][b], T[c][d], T[a][c], T[b][d]
                if x < 0 or y < 0 or u < 0 or v < 0:
                    continue
                p, q = T[x][y], T[u][v]
                if p >= 0 and q >= 0:
                    if p != q:
                        return False
                elif p >= 0:
                    if not put(u, v, p, trail):
                        return False
                    changed = True
                elif q >= 0:
                    if not put(x, y, q, trail):
                        return False
                    changed = True
        return True

    def undo(trail):
        for r, c in trail:
            used[c].discard(T[r][c])
            T[r][c] = -1

    def rec():
        best = None
        for r in N:
            for c in N:
                if T[r][c] < 0:
                    k = n - len(used[c])
                    if best is None or k < best[0]:
                        best = (k, r, c)
        if best is None:
            out.append(tuple(tuple(row) for row in T))
            return
        _, r, c = best
        for v in sorted(set(N) - used[c]):
            trail = []
            put(r, c, v, trail)
            if propagate(trail):
                rec()
            undo(trail)

    trail = []
    if first is not None:
        if n < 2 or not put(1, 0, first, trail):
            return []
    if propagate(trail):
        rec()
    return out


def bar_tables(n: int, *, workers: int | None = None) -> list[tuple]:
    """Every ``|`` table passing the structural search (not up to isomorphism)."""
    if not 2 <= n <= MAX_SIZE:
        raise ValueError(f"census size must be between 2 and {MAX_SIZE}, got {n}")
    if workers is None:
        workers = int(os.environ.get("CONWAYKIT_THREADS", "1") or 1)
    if workers <= 1 or n < 4:
        return _search(n)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = ex.map(_search, [n] * n, range(n))
    return [t for part in parts for t in part]


# ---------------------------------------------------------------- constants

def _fixed_successors(T, a):
    return [b for b in range(len(T)) if T[a][b] == a]


def _infinite_nodes(T) -> set:
    """Elements from which an infinite walk a -> b (with a|b = a) starts."""
    good = set(range(len(T)))
    while True:
        nxt = {a for a in good if any(b in good for b in _fixed_successors(T, a))}
        if nxt == good:
            return good
        good = nxt


def _admissible(T, convention: str) -> bool:
    if T[0][1] != 0:
        return False
    if convention == "none":
        return True
    if convention == "pair":
        return bool(_fixed_successors(T, 1))
    if convention == "sequence":
        return 1 in _infinite_nodes(T)
    raise ValueError(f"unknown convention {convention!r}")


def _constants(T) -> tuple[tuple, tuple]:
    """Lexicographically least admissible sequence 1, 2, ... as (prefix, period), 0-based."""
    good = _infinite_nodes(T)
    seq = [0, 1]
    seen = {1: 1}
    while True:
        a = seq[-1]
        b = min(x for x in _fixed_successors(T, a) if x in good)
        if b in seen:
            # the walk is deterministic from here on, so it cycles through seq[seen[b]:]
            k = seen[b]
            return tuple(seq[:k]), tuple(seq[k:])
        seen[b] = len(seq)
        seq.append(b)


def _partial_constants(T) -> tuple[tuple, tuple]:
    """Constants 1, 2, a_3, a_3, ... for tables without an infinite sequence."""
    succ = _fixed_successors(T, 1)
    a3 = min(succ) if succ else 1
    return (0, 1), (a3,)


def _to_table(T) -> FiniteAlgebraTable:
    n = len(T)
    star = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            star[T[a][b]][b] = a
    if 1 in _infinite_nodes(T):
        prefix, period = _constants(T)
    else:
        prefix, period = _partial_constants(T)
    return FiniteAlgebraTable(
        n,
        tuple(tuple(v + 1 for v in row) for row in T),
        tuple(tuple(v + 1 for v in row) for row in star),
        tuple(v + 1 for v in prefix),
        tuple(v + 1 for v in period),
    )


# ---------------------------------------------------------------- isomorphism

def _canonical_bar(T) -> tuple:
    n = len(T)
    best = None
    for rest in itertools.permutations(range(2, n)):
        perm = (0, 1) + rest
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        R = tuple(tuple(perm[T[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or R < best:
            best = R
    return best


def canonical_form(t: FiniteAlgebraTable) -> FiniteAlgebraTable:
    """Least relabelling (fixing 1 and 2) of the ``|`` table, with ``*`` and
    the least admissible constants recomputed from it."""
    T = tuple(tuple(v - 1 for v in row) for row in t.bar)
    return _to_table(_canonical_bar(T))


def enumerate_algebras(n: int, *, convention: str = "sequence", workers: int | None = None) -> CensusResult:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    tables = bar_tables(n, workers=workers)
    canon = sorted({_canonical_bar(T) for T in tables if _admissible(T, convention)})
    reps = [_to_table(T) for T in canon]
    return CensusResult(n, len(reps), reps, convention)


def census_report(n: int, *, workers: int | None = None) -> dict:
    """Counts under every convention, plus the tables that separate
    ``pair`` from ``sequence`` (admissible for one, not the other)."""
    tables = bar_tables(n, workers=workers)
    classes = {c: {_canonical_bar(T) for T in tables if _admissible(T, c)} for c in CONVENTIONS}
    extra = sorted(classes["pair"] - classes["sequence"])
    return {
        "size": n,
        "counts": {c: len(v) for c, v in classes.items()},
        "pair_only": [_to_table(T) for T in extra],
    }


# ---------------------------------------------------------------- brute force

def brute_force_census(n: int, convention: str = "sequence") -> set:
    """Canonical ``|`` tables found by scanning every pair of operation tables.

    C3 involves only ``|`` and C5 only ``*``, so the two table spaces are
    filtered separately before the pairs are tested against C4, C6, C7.
    Feasible for n <= 3 (n**(n*n) tables per operation).
    """
    if n > 3:
        raise ValueError("brute force is limited to n <= 3")
    N = range(n)
    quads = list(itertools.product(N, repeat=4))

    def tables():
        for flat in itertools.product(N, repeat=n * n):
            yield tuple(tuple(flat[a * n:(a + 1) * n]) for a in N)

    bars = [B for B in tables()
            if all(B[B[a][b]][B[c][d]] == B[B[a][c]][B[b][d]] for a, b, c, d in quads)]
    stars = [S for S in tables()
             if all(S[S[a][b]][S[c][d]] == S[S[a][c]][S[b][d]] for a, b, c, d in quads)]
    found = set()
    for B in bars:
        for S in stars:
            if any(S[B[a][b]][b] != a or B[S[a][b]][b] != a for a in N for b in N):
                continue
            if any(S[B[a][b]][B[c][d]] != B[S[a][c]][S[b][d]] for a, b, c, d in quads):
                continue
            if _admissible(B, convention):
                found.add(_canonical_bar(B))
    return found


# ---------------------------------------------------------------- use as invariants

def invariant_battery(t: FiniteAlgebraTable, diagrams: Sequence[LinkDiagram] | dict) -> dict:
    """Evaluate the algebra on each diagram; keys are names (or positions)."""
    rep = check_axioms(t)
    if not rep.ok:
        raise ValueError("table fails the axioms:\n" + rep.summary())
    alg = FiniteAlgebra(t)
    items = diagrams.items() if isinstance(diagrams, dict) else enumerate(diagrams)
    return {k: evaluate(d, alg) for k, d in items}
