"""Shipped knot and link data, and a pretzel-link constructor.

The catalog lives in ``data/catalog.txt`` (INI layout, one section per
entry).  Each entry gives a braid word or crossing lines, the expected
invariant values in conwaykit's polynomial text format, and a provenance
note.  Table rows also keep the printed polynomial verbatim together with
the corrections that make it agree with the evaluator.
"""

from __future__ import annotations

import configparser
import difflib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .conway import homfly
from .diagram import DiagramError, LinkDiagram, braid_closure, parse_braid
from .kauffman import jck_tilde, q_polynomial
from .poly import LaurentPoly, make_vars, parse_poly
from .supersig import TABLE_PARAMETERS, supersignature

__all__ = [
    "CatalogEntry",
    "load_catalog",
    "get_entry",
    "table_entries",
    "pretzel",
    "verify_entry",
    "correction_sizes",
    "mirror_a",
    "VARS",
]

VARS = {
    "jck_tilde": make_vars("a t z"),
    "homfly": make_vars("x y"),
    "q": make_vars("x"),
}


@dataclass
class CatalogEntry:
    name: str
    kind: str = "link"
    braid: str | None = None
    strands: int | None = None
    diagram_text: str | None = None
    braid_printed: str | None = None
    jck_tilde: LaurentPoly | None = None
    jck_tilde_printed: str | None = None
    corrections: list = field(default_factory=list)  # (printed fragment, replacement)
    printed_chirality: str = "same"
    signatures: tuple | None = None  # entries are int or None (infinity)
    homfly: LaurentPoly | None = None
    q: LaurentPoly | None = None
    provenance: str = ""

    def diagram(self) -> LinkDiagram:
        if self.diagram_text is not None:
            return LinkDiagram.from_text(self.diagram_text)
        return braid_closure(parse_braid(self.braid or "", self.strands))

    def corrected_printed(self) -> str | None:
        """The printed polynomial with every correction applied once."""
        if self.jck_tilde_printed is None:
            return None
        text = self.jck_tilde_printed
        for old, new in self.corrections:
            if old not in text:
                raise ValueError(f"{self.name}: correction target {old!r} not in printed text")
            text = text.replace(old, new, 1)
        return text

    def printed_polynomial(self) -> LaurentPoly | None:
        text = self.corrected_printed()
        return None if text is None else parse_poly(text, VARS["jck_tilde"])


def _sig(tok: str):
    return None if tok in ("inf", "oo") else int(tok)


def _parse_entry(name: str, sec) -> CatalogEntry:
    e = CatalogEntry(name)
    e.kind = sec.get("kind", "link")
    braid = sec.get("braid")
    e.braid = "" if braid == '""' else braid
    e.strands = int(sec["strands"]) if "strands" in sec else None
    e.diagram_text = sec.get("diagram")
    e.braid_printed = sec.get("braid_printed")
    e.jck_tilde_printed = sec.get("jck_tilde_printed")
    e.printed_chirality = sec.get("printed_chirality", "same")
    e.provenance = sec.get("provenance", "")
    for line in (sec.get("corrections") or "").splitlines():
        if line.strip():
            old, new = line.split(" => ", 1)
            e.corrections.append((old.strip(), new.strip()))
    for key in ("jck_tilde", "homfly", "q"):
        if key in sec:
            setattr(e, key, parse_poly(sec[key], VARS[key]))
    if "signatures" in sec:
        e.signatures = tuple(_sig(t) for t in sec["signatures"].split())
    if e.braid is None and e.diagram_text is None:
        raise DiagramError(f"catalog entry {name} has neither a braid nor a diagram")
    return e


@lru_cache(maxsize=1)
def _load() -> tuple:
    text = resources.files("conwaykit").joinpath("data/catalog.txt").read_text()
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",), empty_lines_in_values=False)
    cp.optionxform = str
    cp.read_string(text)
    return tuple(_parse_entry(name, cp[name]) for name in cp.sections())


def load_catalog() -> list[CatalogEntry]:
    return list(_load())


def get_entry(name: str) -> CatalogEntry:
    for e in _load():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def table_entries() -> list[CatalogEntry]:
    return [e for e in _load() if e.kind == "table"]


def mirror_a(p: LaurentPoly) -> LaurentPoly:
    """a -> 1/a, which is what mirroring does to J~ and F."""
    idx = [v.name for v in p.vars].index("a")
    return LaurentPoly(p.vars, {tuple(-x if i == idx else x for i, x in enumerate(e)): c
                                for e, c in p.terms.items()})


def _brace_free(s: str) -> str:
    return re.sub(r"\^\{([^}]*)\}", r"^\1", s)


def correction_sizes(entry: CatalogEntry) -> list[int]:
    """Length of every changed block between printed and corrected text.

    Braces around exponents are dropped first so ``a^{-2}`` and ``a^-2``
    count as the same characters.
    """
    if entry.jck_tilde_printed is None:
        return []
    a = _brace_free(entry.jck_tilde_printed)
    b = _brace_free(entry.corrected_printed())
    sm = difflib.SequenceMatcher(None, a, b, autojunk=False)
    return [max(i2 - i1, j2 - j1) for tag, i1, i2, j1, j2 in sm.get_opcodes() if tag != "equal"]


def verify_entry(entry: CatalogEntry) -> list[tuple[str, bool, str, str]]:
    """Recompute every stored expectation: (invariant, ok, expected, computed)."""
    d = entry.diagram()
    out = []
    if entry.homfly is not None:
        got = homfly(d)
        out.append(("homfly", got == entry.homfly, entry.homfly.pretty(), got.pretty()))
    if entry.q is not None:
        got = q_polynomial(d)
        out.append(("q", got == entry.q, entry.q.pretty(), got.pretty()))
    if entry.jck_tilde is not None:
        got = jck_tilde(d)
        out.append(("jck_tilde", got == entry.jck_tilde, entry.jck_tilde.pretty(), got.pretty()))
    if entry.signatures is not None:
        got = tuple(supersignature(d, u, v).z for u, v in TABLE_PARAMETERS)
        fmt = lambda s: " ".join("inf" if z is None else str(z) for z in s)
        out.append(("signatures", got == entry.signatures, fmt(entry.signatures), fmt(got)))
    return out


# ---------------------------------------------------------------- pretzel links

_POS = {"NW": (-1, 1), "NE": (1, 1), "SW": (-1, -1), "SE": (1, -1)}
_OPP = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}


def pretzel(twists) -> LinkDiagram:
    """Pretzel link with one vertical twist box per entry, left to right.

    Positive entries twist so that (1, 1, 1) is the right-handed trefoil.
    The arc over the top of the boxes is oriented from right to left, and
    the arc under them (when it lies on another component) from left to
    right; any further components start from their first arc in
    construction order.  Crossing signs then follow from the geometry.
    """
    twists = [int(p) for p in twists]
    if not twists:
        raise ValueError("a pretzel link needs at least one twist box")
    if any(p == 0 for p in twists):
        raise ValueError("twist counts must be nonzero")
    arcs: dict = {}

    def join(p, q):
        arcs[p] = q
        arcs[q] = p

    boxes = []
    over_ports = {}
    cid = 0
    for p in twists:
        col = []
        for _ in range(abs(p)):
            col.append(cid)
            over_ports[cid] = ("NW", "SE") if p > 0 else ("NE", "SW")
            cid += 1
        for a, b in zip(col, col[1:]):
            join((a, "SW"), (b, "NW"))
            join((a, "SE"), (b, "NE"))
        boxes.append(col)
    for left, right in zip(boxes, boxes[1:]):
        join((left[0], "NE"), (right[0], "NW"))
        join((left[-1], "SE"), (right[-1], "SW"))
    join((boxes[0][0], "NW"), (boxes[-1][0], "NE"))
    join((boxes[0][-1], "SW"), (boxes[-1][-1], "SE"))

    visited = set()
    comps = []
    direction = {}
    for start in [(boxes[0][0], "NW"), (boxes[0][-1], "SW")] + sorted(arcs):
        if start in visited:
            continue
        seq = []
        port = start
        while True:
            c, entry = port
            exit_ = _OPP[entry]
            visited.update([port, (c, exit_)])
            over = entry in over_ports[c]
            seq.append((c, over))
            (x0, y0), (x1, y1) = _POS[entry], _POS[exit_]
            direction[(c, over)] = (x1 - x0, y1 - y0)
            port = arcs[(c, exit_)]
            if port == start:
                break
        comps.append(seq)
    signs = {}
    for c in range(cid):
        (ox, oy), (ux, uy) = direction[(c, True)], direction[(c, False)]
        signs[c] = 1 if ox * uy - oy * ux > 0 else -1
    return LinkDiagram(comps, signs)
