"""Pairs that the HOMFLY polynomial cannot tell apart, and what does."""

from conwaykit.catalog import get_entry
from conwaykit.conway import homfly, simplices_equivalent, weighted_simplex
from conwaykit.diagram import mirror
from conwaykit.kauffman import q_polynomial

names = ("8_8", "13_6714", "m10_129")
diagrams = [get_entry(n).diagram() for n in names]
print("HOMFLY equal:", len({homfly(d).to_text() for d in diagrams}) == 1)
for n, d in zip(names, diagrams):
    print(f"  Q({n}) = {q_polynomial(d).pretty()}")

d = get_entry("skein_pair_a").diagram()
lk = lambda sub: sub.linking_number()  # noqa: E731
print("\nskein_pair_a vs its mirror")
print("  HOMFLY equal:", homfly(d) == homfly(mirror(d)))
print("  lk-weighted simplices equivalent:",
      simplices_equivalent(weighted_simplex(d, lk), weighted_simplex(mirror(d), lk)))
