"""Count finite Conway algebras of sizes 2 to 5 under each constant-sequence convention."""

from conwaykit.algsearch import census_report

for n in range(2, 6):
    rep = census_report(n)
    counts = ", ".join(f"{k}={v}" for k, v in rep["counts"].items())
    print(f"size {n}: {counts}")
