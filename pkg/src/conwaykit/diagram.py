"""Oriented combinatorial link diagrams and braid words.

A diagram is stored as a signed Gauss code: every component is a cyclic
sequence of passages ``(crossing_id, over)`` read along the orientation, and
every crossing has a sign.  Edge identifiers are derived on demand by
numbering the arcs component by component, so the edge entering the first
passage of the first component is edge 0.  With that numbering the base point
of a component (its smallest edge) is always the start of its stored
sequence, and components are stored in the order of their smallest edges.

Planarity is not checked.  Braid closures and the catalog's hand-built
diagrams are realisable by construction.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "BraidSyntaxError",
    "Crossing",
    "TrivialForm",
    "LinkDiagram",
    "BraidWord",
    "parse_braid",
    "braid_closure",
    "switch_crossing",
    "smooth_oriented",
    "smooth_unoriented",
    "traversal_report",
    "mirror",
    "reverse_all",
    "reverse_component",
    "disjoint_sum",
    "connected_sum",
    "sublink",
    "perturb",
    "unknot",
    "unlink",
    "from_pd",
]


class DiagramError(ValueError):
    pass


class BraidSyntaxError(DiagramError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Crossing:
    id: int
    sign: int
    under_in: int
    under_out: int
    over_in: int
    over_out: int

    def switched(self) -> "Crossing":
        return Crossing(self.id, -self.sign, self.over_in, self.over_out, self.under_in, self.under_out)


@dataclass(frozen=True)
class TrivialForm:
    components: int
    writhe: int

    def __post_init__(self):
        if self.components < 1:
            raise DiagramError("a trivial form needs at least one component")


Passage = tuple  # (crossing id, over flag)


class LinkDiagram:
    """Immutable oriented link diagram (signed Gauss code)."""

    __slots__ = ("components", "signs", "_where", "_key")

    def __init__(self, components: Iterable[Iterable[Passage]], signs: dict, *, validate: bool = True):
        self.components = tuple(tuple((int(c), bool(o)) for c, o in comp) for comp in components)
        self.signs = dict(signs)
        self._where = None
        self._key = None
        if validate:
            self.validate()

    @classmethod
    def _raw(cls, components, signs):
        d = cls.__new__(cls)
        d.components = components
        d.signs = signs
        d._where = None
        d._key = None
        return d

    # ------------------------------------------------------------ structure
    def validate(self) -> None:
        if not self.components:
            raise DiagramError("a diagram needs at least one component")
        seen: dict[int, list[bool]] = {}
        for comp in self.components:
            for c, o in comp:
                seen.setdefault(c, []).append(o)
        if set(seen) != set(self.signs):
            raise DiagramError("crossing ids in the code and the sign table disagree")
        for c, flags in seen.items():
            if sorted(flags) != [False, True]:
                raise DiagramError(f"crossing {c} must be passed exactly once over and once under")
            if self.signs[c] not in (1, -1):
                raise DiagramError(f"crossing {c} has sign {self.signs[c]!r}")
        # the derived edge view must satisfy the in/out role invariant
        ins = Counter()
        outs = Counter()
        for x in self.crossings():
            ins.update([x.under_in, x.over_in])
            outs.update([x.under_out, x.over_out])
        for e in range(self.n_edges):
            circle = e in self._circle_edges()
            if circle:
                if ins[e] or outs[e]:
                    raise DiagramError(f"circle edge {e} touches a crossing")
            elif ins[e] != 1 or outs[e] != 1:
                raise DiagramError(f"edge {e} has {ins[e]} in-roles and {outs[e]} out-roles")

    def _circle_edges(self) -> set[int]:
        out = set()
        off = 0
        for comp in self.components:
            if not comp:
                out.add(off)
            off += max(1, len(comp))
        return out

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return sum(self.signs.values())

    @property
    def n_edges(self) -> int:
        return sum(max(1, len(c)) for c in self.components)

    def crossing_ids(self) -> list[int]:
        return sorted(self.signs)

    def where(self) -> dict:
        """crossing id -> [(component, position, over), ...] for both passages."""
        if self._where is None:
            w: dict = {}
            for k, comp in enumerate(self.components):
                for j, (c, o) in enumerate(comp):
                    w.setdefault(c, []).append((k, j, o))
            self._where = w
        return self._where

    def edge_offsets(self) -> list[int]:
        offs = []
        off = 0
        for comp in self.components:
            offs.append(off)
            off += max(1, len(comp))
        return offs

    def crossings(self) -> list[Crossing]:
        """Edge-role view: the edge entering passage j of component k is ``offset_k + j``."""
        offs = self.edge_offsets()
        roles: dict = {}
        for k, comp in enumerate(self.components):
            m = len(comp)
            for j, (c, o) in enumerate(comp):
                roles.setdefault(c, {})["over" if o else "under"] = (offs[k] + j, offs[k] + (j + 1) % m)
        out = []
        for c in sorted(roles):
            ui, uo = roles[c]["under"]
            oi, oo = roles[c]["over"]
            out.append(Crossing(c, self.signs[c], ui, uo, oi, oo))
        return out

    def component_of_crossing(self, c: int) -> tuple[int, int]:
        (k1, _, _), (k2, _, _) = self.where()[c]
        return k1, k2

    def is_mixed(self, c: int) -> bool:
        k1, k2 = self.component_of_crossing(c)
        return k1 != k2

    def linking_number(self, i: int | None = None, j: int | None = None) -> int:
        """Half the signed count of crossings between two components (all pairs if no indices)."""
        total = 0
        for c, s in self.signs.items():
            k1, k2 = self.component_of_crossing(c)
            if k1 == k2:
                continue
            if i is None or {k1, k2} == {i, j}:
                total += s
        if total % 2:
            raise DiagramError("odd mixed-crossing sum; the diagram is not realisable")
        return total // 2

    def linking_matrix(self) -> list[list[int]]:
        n = self.n_components
        m = [[0] * n for _ in range(n)]
        for c, s in self.signs.items():
            k1, k2 = self.component_of_crossing(c)
            if k1 != k2:
                m[k1][k2] += s
                m[k2][k1] += s
        return [[x // 2 for x in row] for row in m]

    def trivial_form(self) -> TrivialForm:
        return TrivialForm(self.n_components, self.writhe)

    def first_bad(self):
        """First crossing met on its under-strand when walking from the base points, or None."""
        seen = set()
        add = seen.add
        for comp in self.components:
            for c, o in comp:
                if c not in seen:
                    if not o:
                        return c
                    add(c)
        return None

    def is_descending(self) -> bool:
        return self.first_bad() is None

    def canonical_key(self):
        """Signed Gauss code with crossings relabelled by first occurrence.

        Two diagrams with the same key are the same combinatorial diagram
        with the same base points, so any evaluation that only reads this
        data agrees on them.
        """
        if self._key is None:
            relabel: dict = {}
            code = []
            for comp in self.components:
                row = []
                for c, o in comp:
                    r = relabel.get(c)
                    if r is None:
                        r = relabel[c] = len(relabel)
                    row.append(r * 2 + o)
                code.append(tuple(row))
            signs = [0] * len(relabel)
            for c, r in relabel.items():
                signs[r] = self.signs[c]
            self._key = (tuple(code), tuple(signs))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self.components == other.components and self.signs == other.signs

    def __hash__(self):
        return hash((self.components, tuple(sorted(self.signs.items()))))

    def __repr__(self):
        return f"LinkDiagram(components={self.n_components}, crossings={self.n_crossings}, writhe={self.writhe})"

    # ------------------------------------------------------------ text I/O
    def to_text(self) -> str:
        lines = []
        for x in self.crossings():
            lines.append(f"X {x.under_in} {x.under_out} {x.over_in} {x.over_out} {'+' if x.sign > 0 else '-'}")
        offs = self.edge_offsets()
        for k, comp in enumerate(self.components):
            if not comp:
                lines.append(f"O {offs[k]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinkDiagram":
        crossings = []
        circles = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "X" and len(parts) == 6:
                    if parts[5] not in ("+", "-"):
                        raise ValueError
                    ui, uo, oi, oo = (int(p) for p in parts[1:5])
                    crossings.append(Crossing(len(crossings), 1 if parts[5] == "+" else -1, ui, uo, oi, oo))
                elif parts[0] == "O" and len(parts) == 2:
                    circles.append(int(parts[1]))
                else:
                    raise ValueError
            except ValueError:
                raise DiagramError(f"line {lineno}: cannot parse {line!r}") from None
        return cls.from_crossings(crossings, circles)

    @classmethod
    def from_crossings(cls, crossings: Sequence[Crossing], circles: Iterable[int] = ()) -> "LinkDiagram":
        """Build from edge-role data; components start at their smallest edge."""
        head: dict[int, tuple[int, bool]] = {}
        tail: dict[int, tuple[int, bool]] = {}
        signs = {}
        for x in crossings:
            if x.id in signs:
                raise DiagramError(f"duplicate crossing id {x.id}")
            if x.sign not in (1, -1):
                raise DiagramError(f"crossing {x.id} has sign {x.sign!r}")
            signs[x.id] = x.sign
            for e, role in ((x.under_in, False), (x.over_in, True)):
                if e in head:
                    raise DiagramError(f"edge {e} enters two crossings")
                head[e] = (x.id, role)
            for e, role in ((x.under_out, False), (x.over_out, True)):
                if e in tail:
                    raise DiagramError(f"edge {e} leaves two crossings")
                tail[e] = (x.id, role)
        if set(head) != set(tail):
            raise DiagramError("some edge has a head but no tail (or vice versa)")
        out_edge = {}
        for x in crossings:
            out_edge[(x.id, False)] = x.under_out
            out_edge[(x.id, True)] = x.over_out
        circles = list(circles)
        if set(circles) & set(head):
            raise DiagramError("a circle edge also touches a crossing")
        comps = []
        visited = set()
        for e in sorted(set(head) | set(circles)):
            if e in visited:
                continue
            if e in circles:
                visited.add(e)
                comps.append(())
                continue
            seq = []
            cur = e
            while True:
                visited.add(cur)
                passage = head[cur]
                seq.append(passage)
                cur = out_edge[passage]
                if cur == e:
                    break
                if cur in visited:
                    raise DiagramError("edge walk does not close up consistently")
            comps.append(tuple(seq))
        if not comps:
            raise DiagramError("empty diagram")
        return cls(comps, signs)

    # ------------------------------------------------------------ surgery
    def _locate(self, c: int):
        try:
            return self.where()[c]
        except KeyError:
            raise DiagramError(f"unknown crossing id {c}") from None

    def switch(self, c: int) -> "LinkDiagram":
        self._locate(c)
        comps = tuple(
            tuple((x, not o) if x == c else (x, o) for x, o in comp) if any(x == c for x, _ in comp) else comp
            for comp in self.components
        )
        signs = dict(self.signs)
        signs[c] = -signs[c]
        return LinkDiagram._raw(comps, signs)

    def smooth_oriented(self, c: int) -> "LinkDiagram":
        (k1, j1, _), (k2, j2, _) = self._locate(c)
        signs = dict(self.signs)
        del signs[c]
        comps = list(self.components)
        if k1 == k2:
            comp = comps[k1]
            j1, j2 = min(j1, j2), max(j1, j2)
            outer = comp[:j1] + comp[j2 + 1:]
            inner = comp[j1 + 1:j2]
            comps[k1:k1 + 1] = [outer, inner]
        else:
            if k1 > k2:
                k1, j1, k2, j2 = k2, j2, k1, j1
            a, b = comps[k1], comps[k2]
            merged = a[:j1] + b[j2 + 1:] + b[:j2] + a[j1 + 1:]
            comps[k1] = merged
            del comps[k2]
        return LinkDiagram._raw(tuple(comps), signs)

    def smooth_unoriented(self, c: int) -> "LinkDiagram":
        (k1, j1, _), (k2, j2, _) = self._locate(c)
        signs = dict(self.signs)
        del signs[c]
        comps = list(self.components)
        if k1 == k2:
            comp = comps[k1]
            j1, j2 = min(j1, j2), max(j1, j2)
            loop = comp[j1 + 1:j2]
            head, tail = comp[:j1], comp[j2 + 1:]
            # edges: the loop side owns j2 - j1 of them, the rest the other side
            if j2 - j1 < len(comp) - (j2 - j1):
                rev = loop[::-1]
                _flip_partial(signs, rev)
                comps[k1] = head + rev + tail
            else:
                other = tail + head
                rev = other[::-1]
                _flip_partial(signs, rev)
                comps[k1] = loop + rev
        else:
            if k1 > k2:
                k1, j1, k2, j2 = k2, j2, k1, j1
            a, b = comps[k1], comps[k2]
            if len(b) < len(a):
                rb = (b[:j2] + (None,) + b[j2 + 1:])[::-1]
                # walk b backwards starting just before passage j2
                pos = len(b) - 1 - j2
                walk = rb[pos + 1:] + rb[:pos]
                _flip_partial(signs, walk)
                comps[k1] = a[:j1] + walk + a[j1 + 1:]
            else:
                ra = (a[:j1] + (None,) + a[j1 + 1:])[::-1]
                pos = len(a) - 1 - j1
                walk = ra[pos + 1:] + ra[:pos]
                _flip_partial(signs, walk)
                comps[k1] = b[:j2] + walk + b[j2 + 1:]
            del comps[k2]
        return LinkDiagram._raw(tuple(comps), signs)

    # ------------------------------------------------------------ simplification
    def find_kink(self):
        """A crossing whose two passages are consecutive on one component (a curl), or None."""
        for comp in self.components:
            n = len(comp)
            for j in range(n):
                c, o = comp[j]
                c2, o2 = comp[(j + 1) % n]
                if c == c2 and n > 1:
                    return c
        return None

    def find_bigon(self):
        """Two crossings joined by two edges, with the same strand over at both (a move-2 bigon)."""
        pairs_over = {}
        pairs_under = set()
        for comp in self.components:
            n = len(comp)
            if n < 2:
                continue
            for j in range(n):
                c, o = comp[j]
                d, o2 = comp[(j + 1) % n]
                if c == d or o != o2:
                    continue
                key = (min(c, d), max(c, d))
                if o:
                    pairs_over[key] = True
                else:
                    pairs_under.add(key)
        for key in pairs_over:
            if key in pairs_under and self.signs[key[0]] == -self.signs[key[1]]:
                return key
        return None

    def _drop(self, gone) -> "LinkDiagram":
        comps = tuple(tuple(p for p in comp if p[0] not in gone) for comp in self.components)
        return LinkDiagram._raw(comps, {c: s for c, s in self.signs.items() if c not in gone})

    def simplified(self, *, kinks: bool = False) -> "LinkDiagram":
        """Remove bigons (and, with ``kinks``, curls) until none are left.

        Bigon removal keeps the regular-isotopy class; curl removal keeps the
        isotopy class but changes the writhe, so it is only for invariants of
        isotopy.  Planarity of the diagram is assumed, as everywhere else.
        """
        d = self
        while True:
            if kinks:
                k = d.find_kink()
                if k is not None:
                    d = d._drop({k})
                    continue
            b = d.find_bigon()
            if b is None:
                return d
            d = d._drop(set(b))

    def mirror(self) -> "LinkDiagram":
        comps = tuple(tuple((c, not o) for c, o in comp) for comp in self.components)
        return LinkDiagram._raw(comps, {c: -s for c, s in self.signs.items()})

    def reverse_all(self) -> "LinkDiagram":
        return LinkDiagram._raw(tuple(comp[::-1] for comp in self.components), dict(self.signs))

    def reverse_component(self, i: int) -> "LinkDiagram":
        if not 0 <= i < self.n_components:
            raise DiagramError(f"component index {i} out of range")
        comps = list(self.components)
        comps[i] = comps[i][::-1]
        signs = dict(self.signs)
        _flip_partial(signs, comps[i])
        return LinkDiagram._raw(tuple(comps), signs)

    def relabelled(self, offset: int) -> "LinkDiagram":
        comps = tuple(tuple((c + offset, o) for c, o in comp) for comp in self.components)
        return LinkDiagram._raw(comps, {c + offset: s for c, s in self.signs.items()})

    def _fresh_offset(self) -> int:
        return (max(self.signs) + 1) if self.signs else 0

    def disjoint_sum(self, other: "LinkDiagram") -> "LinkDiagram":
        o = other.relabelled(self._fresh_offset() - (min(other.signs) if other.signs else 0))
        return LinkDiagram._raw(self.components + o.components, {**self.signs, **o.signs})

    def connected_sum(self, other: "LinkDiagram") -> "LinkDiagram":
        """Cut both first components at their base edges and splice."""
        o = other.relabelled(self._fresh_offset() - (min(other.signs) if other.signs else 0))
        merged = self.components[0] + o.components[0]
        comps = (merged,) + self.components[1:] + o.components[1:]
        return LinkDiagram._raw(comps, {**self.signs, **o.signs})

    def sublink(self, keep: Iterable[int]) -> "LinkDiagram":
        keep = sorted(set(keep))
        if not keep:
            raise DiagramError("sublink needs a nonempty component set")
        for k in keep:
            if not 0 <= k < self.n_components:
                raise DiagramError(f"component index {k} out of range")
        kept = set(keep)
        w = self.where()
        alive = {c for c, places in w.items() if all(p[0] in kept for p in places)}
        comps = tuple(tuple(p for p in self.components[k] if p[0] in alive) for k in keep)
        return LinkDiagram._raw(comps, {c: s for c, s in self.signs.items() if c in alive})

    def rebased(self, starts: Sequence[int] | None = None, order: Sequence[int] | None = None) -> "LinkDiagram":
        """Rotate each component to start at passage ``starts[k]`` and reorder components."""
        comps = list(self.components)
        if starts is not None:
            comps = [comp[s % len(comp):] + comp[:s % len(comp)] if comp else comp for comp, s in zip(comps, starts)]
        if order is not None:
            if sorted(order) != list(range(len(comps))):
                raise DiagramError("order must be a permutation of the components")
            comps = [comps[i] for i in order]
        return LinkDiagram._raw(tuple(comps), dict(self.signs))


def _flip_partial(signs: dict, passages) -> None:
    """Flip the sign of every crossing met exactly once in ``passages`` (one strand reversed)."""
    cnt = Counter(c for c, _ in passages)
    for c, n in cnt.items():
        if n == 1 and c in signs:
            signs[c] = -signs[c]


def unknot() -> LinkDiagram:
    return LinkDiagram([()], {})


def unlink(n: int) -> LinkDiagram:
    if n < 1:
        raise DiagramError("unlink needs n >= 1")
    return LinkDiagram([()] * n, {})


def from_pd(pd: Sequence[Sequence[int]]) -> LinkDiagram:
    """Diagram from a planar-diagram code of a knot.

    Each quadruple ``(i, j, k, l)`` lists the edges counterclockwise starting
    from the incoming under-edge, edges numbered 1..2n along the knot.  The
    over-strand runs ``l -> j`` at a positive crossing and ``j -> l`` at a
    negative one.
    """
    m = 2 * len(pd)
    xs = []
    for k, quad in enumerate(pd):
        if len(quad) != 4:
            raise DiagramError(f"PD entry {k} is not a quadruple")
        i, j, kk, l = (int(v) for v in quad)
        if l % m + 1 == j:
            xs.append(Crossing(k, 1, i, kk, l, j))
        elif j % m + 1 == l:
            xs.append(Crossing(k, -1, i, kk, j, l))
        else:
            raise DiagramError(f"PD entry {k}: over-strand edges {j}, {l} are not consecutive")
    return LinkDiagram.from_crossings(xs)


# ---------------------------------------------------------------- functional API

def switch_crossing(d: LinkDiagram, p: int) -> LinkDiagram:
    return d.switch(p)


def smooth_oriented(d: LinkDiagram, p: int) -> LinkDiagram:
    return d.smooth_oriented(p)


def smooth_unoriented(d: LinkDiagram, p: int) -> LinkDiagram:
    return d.smooth_unoriented(p)


def traversal_report(d: LinkDiagram) -> tuple[list[int], bool]:
    """Bad crossings in first-encounter order and the descending flag."""
    seen = set()
    bad = []
    for comp in d.components:
        for c, o in comp:
            if c not in seen:
                seen.add(c)
                if not o:
                    bad.append(c)
    return bad, not bad


def mirror(d: LinkDiagram) -> LinkDiagram:
    return d.mirror()


def reverse_all(d: LinkDiagram) -> LinkDiagram:
    return d.reverse_all()


def reverse_component(d: LinkDiagram, i: int) -> LinkDiagram:
    return d.reverse_component(i)


def disjoint_sum(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    return d1.disjoint_sum(d2)


def connected_sum(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    return d1.connected_sum(d2)


def sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    return d.sublink(keep)


# ---------------------------------------------------------------- braids

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i < self.strands:
                raise DiagramError(f"generator s{i} does not exist on {self.strands} strands")
            if e not in (1, -1):
                raise DiagramError(f"letter exponent must be +-1, got {e}")
        object.__setattr__(self, "letters", letters)

    @property
    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def permutation(self) -> list[int]:
        """Position (0-based) at the bottom of the strand starting at each top position."""
        pos = list(range(self.strands))
        where = list(range(self.strands))  # where[p] = strand index currently at position p
        for i, _ in self.letters:
            where[i - 1], where[i] = where[i], where[i - 1]
        for p, s in enumerate(where):
            pos[s] = p
        return pos

    def to_text(self) -> str:
        out = []
        k = 0
        L = self.letters
        while k < len(L):
            i, e = L[k]
            run = 1
            while k + run < len(L) and L[k + run] == (i, e):
                run += 1
            power = run * e
            out.append(f"s{i}" if power == 1 else f"s{i}^{power}")
            k += run
        return " ".join(out)

    def __str__(self):
        return self.to_text()

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in self.letters))


_BRAID_TOKEN = re.compile(r"s(\d+)(?:\^\{?([+-]?\d+)\}?)?")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``s1^2 s2^-1 s1`` style words; strands default to 1 + max index."""
    letters = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _BRAID_TOKEN.match(text, pos)
        if not m:
            raise BraidSyntaxError("expected a token like s1, s2^-1 or s3^2", text, pos)
        end = m.end()
        if end < n and not text[end].isspace():
            raise BraidSyntaxError("tokens must be separated by whitespace", text, end)
        i = int(m.group(1))
        if i == 0:
            raise BraidSyntaxError("generator index 0 is not allowed", text, pos + 1)
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise BraidSyntaxError("zero exponent", text, pos)
        letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
        pos = end
    top = max((i for i, _ in letters), default=0) + 1
    if strands is None:
        strands = top
    elif strands < top:
        raise BraidSyntaxError(f"{strands} strands cannot hold generator s{top - 1}", text, 0)
    return BraidWord(strands, tuple(letters))


def braid_closure(b: BraidWord) -> LinkDiagram:
    """Close a braid: strands run downwards, letter k becomes crossing k.

    For s_i with exponent +1 the strand moving from position i+1 to i passes
    over (a positive crossing for downward strands); for exponent -1 the
    strand moving from i to i+1 passes over.
    """
    n = b.strands
    # per letter: which incoming position is over
    passes: list[list[tuple[int, int, bool]]] = [[] for _ in range(n)]  # by top position: (letter, over)
    # walk each strand through the braid once, collecting passages per top position
    perm_next = [0] * n
    for start in range(n):
        p = start
        seq = []
        for k, (i, e) in enumerate(b.letters):
            if p == i - 1:
                seq.append((k, e < 0))
                p = i
            elif p == i:
                seq.append((k, e > 0))
                p = i - 1
        passes[start] = seq
        perm_next[start] = p
    comps = []
    done = [False] * n
    for start in range(n):
        if done[start]:
            continue
        seq = []
        p = start
        while not done[p]:
            done[p] = True
            seq.extend(passes[p])
            p = perm_next[p]
        comps.append(tuple(seq))
    signs = {k: e for k, (_, e) in enumerate(b.letters)}
    return LinkDiagram(comps, signs)


def perturb(b: BraidWord, ops: Iterable[tuple]) -> BraidWord:
    """Apply Markov/braid moves.

    Supported ops (tuples):
      ``("conjugate", i, e)``      w -> s_i^e w s_i^-e
      ``("stabilize", e)``         add a strand and append s_n^e
      ``("destabilize",)``         undo a stabilization
      ``("insert", pos, i, e)``    insert s_i^e s_i^-e at ``pos``
      ``("free_reduce",)``         cancel adjacent inverse pairs
      ``("rotate",)``              cyclic shift (conjugation by the first letter)
      ``("braid_relation", pos)``  s_i s_j s_i -> s_j s_i s_j at ``pos`` when |i-j| = 1
      ``("commute", pos)``         swap far-apart neighbours at ``pos``
    """
    n = b.strands
    L = list(b.letters)
    for op in ops:
        kind = op[0]
        if kind == "conjugate":
            _, i, e = op
            if not 1 <= i < n:
                raise DiagramError(f"s{i} does not exist on {n} strands")
            L = [(i, e)] + L + [(i, -e)]
        elif kind == "stabilize":
            e = op[1] if len(op) > 1 else 1
            n += 1
            L = L + [(n - 1, e)]
        elif kind == "destabilize":
            if n < 2 or not L or L[-1][0] != n - 1 or sum(1 for i, _ in L if i == n - 1) != 1:
                raise DiagramError("destabilize needs the last letter to be the only s_{n-1}")
            L = L[:-1]
            n -= 1
        elif kind == "insert":
            _, pos, i, e = op
            if not 1 <= i < n:
                raise DiagramError(f"s{i} does not exist on {n} strands")
            pos = max(0, min(pos, len(L)))
            L = L[:pos] + [(i, e), (i, -e)] + L[pos:]
        elif kind == "free_reduce":
            out: list = []
            for letter in L:
                if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                    out.pop()
                else:
                    out.append(letter)
            L = out
        elif kind == "rotate":
            if L:
                L = L[1:] + L[:1]
        elif kind == "braid_relation":
            pos = op[1]
            if 0 <= pos and pos + 2 < len(L):
                (i, e1), (j, e2), (k, e3) = L[pos:pos + 3]
                if i == k and abs(i - j) == 1 and e1 == e2 == e3:
                    L[pos:pos + 3] = [(j, e1), (i, e1), (j, e1)]
        elif kind == "commute":
            pos = op[1]
            if 0 <= pos and pos + 1 < len(L) and abs(L[pos][0] - L[pos + 1][0]) >= 2:
                L[pos], L[pos + 1] = L[pos + 1], L[pos]
        else:
            raise DiagramError(f"unknown perturbation {kind!r}")
    return BraidWord(n, tuple(L))
