"""Compute the main polynomial invariants of a few small knots and links."""

from conwaykit.conway import conway_poly, homfly, jones
from conwaykit.diagram import braid_closure, parse_braid
from conwaykit.kauffman import jck_tilde, kauffman_F, q_polynomial

BRAIDS = {
    "right trefoil": "s1^3",
    "figure eight": "s1 s2^-1 s1 s2^-1",
    "Hopf link": "s1^2",
    "three-component closed 3-braid": "s1^-2 s2^3 s1^-2 s2",
}

for name, word in BRAIDS.items():
    d = braid_closure(parse_braid(word))
    print(f"{name} ({word}): {d.n_components} component(s), {d.n_crossings} crossings")
    for label, f in [("HOMFLY", homfly), ("Conway", conway_poly), ("Jones", jones),
                     ("Kauffman F", kauffman_F), ("Q", q_polynomial), ("J~", jck_tilde)]:
        print(f"  {label:10} {f(d).pretty()}")
    print()
