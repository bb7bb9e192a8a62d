import random

import pytest

from conwaykit.conway import homfly, jones
from conwaykit.diagram import braid_closure, mirror, perturb, reverse_component, unknot
from conwaykit.kauffman import (BrokenJCKAlgebra, JCKAlgebra, KauffmanLAlgebra, build_ternary_tree,
                                check_kauffman_axioms, evaluate_regular, homfly_from_regular, homfly_regular, jck,
                                jck_tilde, jones_from_kauffman, kauffman_F, kauffman_L, q_polynomial)
from conwaykit.poly import LaurentPoly, make_vars, parse_poly, poly_substitute, reduced_degree, substitute_rational

from conftest import closure

AZ = make_vars("a z")
ATZ = make_vars("a t z")
AT = make_vars("a t")
T2 = make_vars("t:2")
T4 = make_vars("t:4")


def az(text):
    return parse_poly(text, AZ)


def flip_a(p):
    """p with a -> 1/a."""
    return LaurentPoly(p.vars, {(-e[0],) + tuple(e[1:]): c for e, c in p.terms.items()})


def half_t(k):
    """t^(k/2) on the half grid."""
    return LaurentPoly.one(T2).shifted((k,))


def quarter_t(k):
    return LaurentPoly.one(T4).shifted((k,))


def signed_pair(d, p):
    """(L+, L-) at crossing p."""
    return (d, d.switch(p)) if d.signs[p] > 0 else (d.switch(p), d)


@pytest.fixture(scope="module")
def two_component_links():
    rng = random.Random(3)
    out = [closure("s1^2"), closure("s1^-2"), closure("s1^4"), closure("s1^2 s2^-1 s1^-1 s2^-1 s1^-1 s2^-1")]
    while len(out) < 30:
        n = rng.randint(2, 4)
        word = " ".join(f"s{rng.randint(1, n - 1)}^{rng.choice((1, -1))}" for _ in range(rng.randint(2, 8)))
        d = closure(word, n)
        if d.n_components == 2:
            out.append(d)
    return out


@pytest.fixture(scope="module")
def knots():
    out = [closure(w) for w in ("s1^3", "s1 s2^-1 s1 s2^-1", "s1^5", "s1^3 s2 s1^-1 s2", "s1^-3 s2 s1 s2")]
    assert all(d.n_components == 1 for d in out)
    return out


class TestAxioms:
    def test_jck_algebra(self):
        rep = check_kauffman_axioms(JCKAlgebra(), samples=15)
        assert rep.ok, rep.summary()

    def test_kauffman_l_algebra(self):
        rep = check_kauffman_axioms(KauffmanLAlgebra(), samples=15)
        assert rep.ok, rep.summary()

    def test_broken_star_prime_fails_symmetry(self):
        rep = check_kauffman_axioms(BrokenJCKAlgebra(), samples=15)
        assert "K6" in rep.violations
        c, f, g = rep.violations["K6"]
        alg = BrokenJCKAlgebra()
        assert alg.star_prime(c, f, g) != alg.star_prime(c, g, f)


class TestEvaluator:
    def test_trivial_links_give_constants(self):
        alg = JCKAlgebra()
        for n in (1, 2, 3):
            assert evaluate_regular(closure("", n), alg) == alg.a(n, 0)

    def test_stabilized_unknot(self):
        d = closure("s1", 2)
        assert d.writhe == 1
        alg = JCKAlgebra()
        assert evaluate_regular(d, alg) == alg.a(1, 1)
        assert kauffman_L(d) == az("a")

    def test_random_base_points_and_orientations(self, small_diagrams):
        alg = KauffmanLAlgebra()
        for name, d in small_diagrams.items():
            ref = evaluate_regular(d, alg)
            for seed in range(3):
                assert evaluate_regular(d, alg, rng=random.Random(seed)) == ref, name

    def test_cache_and_simplify_do_not_change_values(self, small_diagrams):
        alg = JCKAlgebra()
        for d in small_diagrams.values():
            ref = evaluate_regular(d, alg)
            assert evaluate_regular(d, alg, cache=False) == ref
            assert evaluate_regular(d, alg, simplify=False) == ref

    def test_tree_leaves_are_descending_shape(self):
        tree = build_ternary_tree(closure("s1^3"))
        leaves = []

        def walk(node):
            if hasattr(node, "switch"):
                walk(node.switch)
                walk(node.smooth)
                walk(node.smooth_inf)
            else:
                leaves.append(node)

        walk(tree)
        assert leaves and all(leaf.components >= 1 for leaf in leaves)
        assert any(not leaf.oriented for leaf in leaves)


class TestKauffmanPolynomial:
    def test_examples(self):
        assert kauffman_F(unknot()) == 1
        assert kauffman_F(closure("", 2)) == az("a z^-1 + a^-1 z^-1 - 1")
        xv = make_vars("x")
        assert q_polynomial(unknot()) == 1
        assert q_polynomial(closure("", 2)) == parse_poly("2 x^-1 - 1", xv)

    def test_skein_at_every_crossing(self, catalog):
        for e in catalog:
            d = e.diagram()
            if d.n_crossings > 11:
                continue
            for p in d.crossing_ids():
                plus, minus = signed_pair(d, p)
                lhs = kauffman_L(plus) + kauffman_L(minus)
                rhs = kauffman_L(d.smooth_oriented(p)) + kauffman_L(d.smooth_unoriented(p))
                assert lhs == rhs.shifted((0, 1)), (e.name, p)

    def test_mirror(self, catalog):
        for e in catalog:
            d = e.diagram()
            if d.n_components == 1 and d.n_crossings <= 11:
                assert kauffman_F(mirror(d)) == flip_a(kauffman_F(d)), e.name

    def test_orientation_independence_of_L(self, small_diagrams):
        for d in small_diagrams.values():
            for i in range(d.n_components):
                assert kauffman_L(reverse_component(d, i)) == kauffman_L(d)

    def test_reversing_a_component_scales_F(self, two_component_links):
        for d in two_component_links:
            lk = d.linking_number()
            for i in range(2):
                assert kauffman_F(d.reverse_component(i)) == kauffman_F(d).shifted((4 * lk, 0))

    def test_oriented_skein_self_crossing(self, knots):
        # a F(L+) + F(L-)/a = z (F(L_o) + a^(-4 lk(L_o)) F(L_inf)) at self-crossings of a knot
        for d in knots:
            for p in d.crossing_ids():
                plus, minus = signed_pair(d, p)
                zero, inf = d.smooth_oriented(p), d.smooth_unoriented(p)
                lhs = kauffman_F(plus).shifted((1, 0)) + kauffman_F(minus).shifted((-1, 0))
                rhs = kauffman_F(zero) + kauffman_F(inf).shifted((-4 * zero.linking_number(), 0))
                assert lhs == rhs.shifted((0, 1))

    def test_oriented_skein_mixed_crossing(self, two_component_links):
        # same relation with a^(-4 lk(L+) + 2) when the crossing joins two components
        for d in two_component_links:
            for p in d.crossing_ids():
                if not d.is_mixed(p):
                    continue
                plus, minus = signed_pair(d, p)
                zero, inf = d.smooth_oriented(p), d.smooth_unoriented(p)
                lhs = kauffman_F(plus).shifted((1, 0)) + kauffman_F(minus).shifted((-1, 0))
                rhs = kauffman_F(zero) + kauffman_F(inf).shifted((-4 * plus.linking_number() + 2, 0))
                assert lhs == rhs.shifted((0, 1))

    def test_q_polynomials_separate_skein_equivalent_knots(self, entry):
        names = ("8_8", "m10_129", "13_6714")
        ds = [entry(n).diagram() for n in names]
        hs = [homfly(d) for d in ds]
        assert hs[0] == hs[1] == hs[2]
        qs = [q_polynomial(d) for d in ds]
        assert len({q.to_text() for q in qs}) == 3

    def test_q_is_mirror_and_orientation_invariant(self, small_diagrams):
        for d in small_diagrams.values():
            q = q_polynomial(d)
            assert q_polynomial(mirror(d)) == q
            assert q_polynomial(reverse_component(d, 0)) == q


class TestRegularHomfly:
    def test_examples(self):
        assert homfly_regular(unknot()) == 1
        assert homfly_regular(closure("s1", 2)) == az("a")
        assert homfly_regular(closure("s1^-1", 2)) == az("a^-1")

    def test_matches_homfly(self, catalog):
        xy_img = {"x": (LaurentPoly(AZ, {(1, 0): 1}), LaurentPoly(AZ, {(0, 1): 1})),
                  "y": (LaurentPoly(AZ, {(0, 0): -1}), LaurentPoly(AZ, {(1, 1): 1}))}
        for e in catalog:
            d = e.diagram()
            if d.n_crossings > 13:
                continue
            expected = substitute_rational(homfly(d), xy_img, target_vars=AZ)
            assert homfly_from_regular(d) == expected, e.name

    def test_regular_isotopy_and_curls(self):
        from conftest import random_braid, random_perturbation
        rng = random.Random(5)
        for _ in range(30):
            b = random_braid(rng, max_len=7)
            d = braid_closure(b)
            R, L = homfly_regular(d), kauffman_L(d)
            ops = random_perturbation(rng, b, stabilize=False)
            d2 = braid_closure(perturb(b, ops))
            assert homfly_regular(d2) == R and kauffman_L(d2) == L
            for s in (1, -1):
                d3 = braid_closure(perturb(b, [("stabilize", s)]))
                assert homfly_regular(d3) == R.shifted((s, 0))
                assert kauffman_L(d3) == L.shifted((s, 0))


class TestJCK:
    def test_trefoil_values(self):
        d = closure("s1^3")
        assert jck(d) == parse_poly("-a^-1 - 2a + t^2 a + z(1 + a^-2 + t a^-1)", ATZ)
        assert jck_tilde(d) == parse_poly("-a^{-4}-2a^{-2}+t^2a^{-2}+z(a^{-3}+a^{-5}+ta^{-4})", ATZ)

    def test_z_equal_t_gives_L(self, small_diagrams):
        t = LaurentPoly.gen(AT, "t")
        for d in small_diagrams.values():
            J = poly_substitute(jck(d), {"z": LaurentPoly.gen(ATZ, "t")}).regrid(AT)
            assert J == poly_substitute(kauffman_L(d), {"z": t}, target_vars=AT).regrid(AT)

    def test_linear_in_z(self, small_diagrams):
        tz = LaurentPoly.gen(ATZ, "t")
        z = LaurentPoly.gen(ATZ, "z")
        for d in small_diagrams.values():
            J = jck(d)
            J0 = poly_substitute(J, {"z": 0}).regrid(ATZ)
            Jt = poly_substitute(J, {"z": tz}).regrid(ATZ)
            assert tz * J == tz * J0 + z * (Jt - J0)

    def test_z_zero_gives_homfly_variant(self, small_diagrams):
        # J~(a, t, 0) = P(a/t, 1/(a t)); the sign of y is as printed
        one = LaurentPoly.one(AT)
        for sign, expect in ((1, True), (-1, False)):
            imgs = {"x": (LaurentPoly(AT, {(1, -1): 1}), one), "y": (LaurentPoly(AT, {(-1, -1): sign}), one)}
            results = []
            for d in small_diagrams.values():
                lhs = poly_substitute(jck_tilde(d), {"z": 0}).regrid(AT)
                results.append(substitute_rational(homfly(d), imgs, target_vars=AT) == lhs)
            assert all(results) is expect

    def test_mirror_involution(self, catalog):
        for e in catalog:
            d = e.diagram()
            if d.n_components == 1 and d.n_crossings <= 11:
                assert jck_tilde(mirror(d)) == flip_a(jck_tilde(d)), e.name


class TestJonesFromKauffman:
    def test_unknot(self):
        assert jones_from_kauffman(unknot()) == 1

    def test_equals_skein_jones(self, small_diagrams):
        for name, d in small_diagrams.items():
            assert jones_from_kauffman(d) == jones(d).regrid(T4), name

    def test_span_of_alternating_diagrams(self, small_diagrams):
        assert reduced_degree(jones_from_kauffman(small_diagrams["right_trefoil"]), "t") == 3
        assert reduced_degree(jones_from_kauffman(small_diagrams["figure_eight"]), "t") == 4
        assert reduced_degree(jones(small_diagrams["right_trefoil"]), "t") == 3
        assert reduced_degree(jones(small_diagrams["figure_eight"]), "t") == 4

    def test_normalised_jones_recursion(self, small_diagrams, two_component_links):
        # V~ = t^(3 writhe / 4) V satisfies an unoriented three-term recursion at every crossing
        def vt(d):
            return jones_from_kauffman(d).shifted((3 * d.writhe,))

        ds = [small_diagrams[k] for k in ("right_trefoil", "figure_eight", "hopf_positive", "hopf_negative")]
        for d in ds + two_component_links[:10]:
            for p in d.crossing_ids():
                plus, minus = signed_pair(d, p)
                zero, inf = vt(d.smooth_oriented(p)), vt(d.smooth_unoriented(p))
                assert vt(plus) == -quarter_t(1) * zero - quarter_t(-1) * inf
                assert vt(minus) == -quarter_t(-1) * zero - quarter_t(1) * inf


class TestJonesReversing:
    def test_reverse_component(self, two_component_links):
        for d in two_component_links:
            lk = d.linking_number()
            for i in range(2):
                assert jones(d.reverse_component(i)) == jones(d) * half_t(6 * lk)

    def test_infinity_smoothing_at_mixed_crossings(self, two_component_links):
        # sqrt(t) V+ - V-/sqrt(t) = (sqrt(t) - 1/sqrt(t)) t^(-3(lk(L+) - 1/2)) V_inf
        checked = 0
        for d in two_component_links:
            for p in d.crossing_ids():
                if not d.is_mixed(p):
                    continue
                plus, minus = signed_pair(d, p)
                lhs = jones(plus) * half_t(1) - jones(minus) * half_t(-1)
                rhs = (half_t(1) - half_t(-1)) * half_t(-6 * plus.linking_number() + 3) * jones(d.smooth_unoriented(p))
                assert lhs == rhs
                checked += 1
        assert checked > 50

    def test_infinity_smoothing_at_self_crossings(self, knots):
        # same left side with t^(-3 lk(L_o)) when the crossing belongs to one component
        for d in knots:
            for p in d.crossing_ids():
                plus, minus = signed_pair(d, p)
                zero = d.smooth_oriented(p)
                lhs = jones(plus) * half_t(1) - jones(minus) * half_t(-1)
                rhs = (half_t(1) - half_t(-1)) * half_t(-6 * zero.linking_number()) * jones(d.smooth_unoriented(p))
                assert lhs == rhs

    def test_literal_mixed_formula_fails(self, two_component_links):
        # the unshifted power t^(-3 lk) does not hold at mixed crossings
        d = closure("s1^2")
        plus, minus = signed_pair(d, 0)
        lhs = jones(plus) * half_t(1) - jones(minus) * half_t(-1)
        rhs = (half_t(1) - half_t(-1)) * half_t(-6 * plus.linking_number()) * jones(d.smooth_unoriented(0))
        assert lhs != rhs
