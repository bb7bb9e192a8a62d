"""Scan the supersignature of 8_8 and its mirror over a small grid of (u, v).

"-" marks an undefined signature value, "?" a case where an operation leaves its domain.
"""

from fractions import Fraction

from conwaykit.catalog import get_entry
from conwaykit.conway import UndefinedOperationError
from conwaykit.diagram import mirror
from conwaykit.supersig import supersignature

d = get_entry("8_8").diagram()
grid = [Fraction(1, 2), Fraction(1), Fraction(3), Fraction(10), Fraction(20)]
for label, diag in (("8_8", d), ("mirror", mirror(d))):
    print(label)
    for u in grid:
        row = []
        for v in grid:
            try:
                z = supersignature(diag, u, v).z
            except UndefinedOperationError:
                z = "?"
            row.append(f"{z:>2}" if z is not None else " -")
        print(f"  u={str(u):>4}: " + " ".join(row))
