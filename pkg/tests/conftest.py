from __future__ import annotations

import random

import pytest

from conwaykit.catalog import get_entry, load_catalog
from conwaykit.diagram import BraidWord, LinkDiagram, braid_closure, parse_braid


def closure(word: str, strands: int | None = None) -> LinkDiagram:
    return braid_closure(parse_braid(word, strands))


def random_braid(rng: random.Random, max_strands: int = 4, min_len: int = 1, max_len: int = 10) -> BraidWord:
    n = rng.randint(2, max_strands)
    length = rng.randint(min_len, max_len)
    letters = tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(n, letters)


def random_perturbation(rng: random.Random, b: BraidWord, steps: int = 6, *, stabilize: bool = True) -> list:
    """A random list of ops that keep the closure's isotopy class."""
    ops = []
    n = b.strands
    length = len(b.letters)
    for _ in range(steps):
        kinds = ["conjugate", "insert", "rotate", "free_reduce", "braid_relation", "commute"]
        if stabilize:
            kinds.append("stabilize")
        kind = rng.choice(kinds)
        if kind == "conjugate":
            ops.append(("conjugate", rng.randint(1, n - 1), rng.choice((1, -1))))
            length += 2
        elif kind == "insert":
            ops.append(("insert", rng.randint(0, length), rng.randint(1, n - 1), rng.choice((1, -1))))
            length += 2
        elif kind == "rotate":
            ops.append(("rotate",))
        elif kind in ("braid_relation", "commute"):
            ops.append((kind, rng.randint(0, max(0, length - 1))))
        elif kind == "free_reduce":
            ops.append(("free_reduce",))
        else:
            ops.append(("stabilize", rng.choice((1, -1))))
            n += 1
            length += 1
    return ops


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def entry():
    return get_entry


def small_diagram_set() -> dict:
    """Named diagrams with at most 8 crossings, cheap enough for every identity."""
    return {
        "unknot": closure("", 1),
        "right_trefoil": closure("s1^3"),
        "left_trefoil": closure("s1^-3"),
        "figure_eight": closure("s1 s2^-1 s1 s2^-1"),
        "hopf_positive": closure("s1^2"),
        "hopf_negative": closure("s1^-2"),
        "cinquefoil": closure("s1^5"),
        "three_twist": closure("s1^3 s2 s1^-1 s2"),
        "two_component_7": closure("s1^2 s2^-1 s1^-1 s2^-1 s1^-1 s2^-1"),
        "link_8_3_2": closure("s1^-2 s2^3 s1^-2 s2"),
        "trivial_2": closure("", 2),
    }


@pytest.fixture(scope="session")
def small_diagrams():
    return small_diagram_set()
