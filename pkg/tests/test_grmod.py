import itertools
import random

from hypothesis import given, settings, strategies as st

from mcmhilbert.exactla import FieldSpec
from mcmhilbert.grmod import (
    GradedQuotient,
    ci_series,
    graded_hf,
    initial_form_witness,
    regular_sequence_test,
    socle_witness,
    verify_assoc_graded,
)
from mcmhilbert.locring import QuotientPresentation, RingSpec

V = ("X", "Y", "Z")
GRADED_6_7_15 = ["X*Z", "Y^6", "Y^3*Z", "Z^2"]


def ring_6_7_15(D=12):
    return QuotientPresentation(RingSpec(V, D), ["Y^3 - X*Z", "X^5 - Z^2"])


def surviving_monomials(n):
    # X^a Y^b with b <= 5, and Y^b Z with b <= 2
    count = sum(1 for b in range(6) if b <= n)
    if 1 <= n <= 3:
        count += 1
    return count


def test_ring_6_7_15_graded_hf_by_counting():
    G = GradedQuotient(V, GRADED_6_7_15)
    assert graded_hf(G, 12).values == tuple(surviving_monomials(n) for n in range(13))
    assert graded_hf(G, 9).values == (1, 3, 4, 5, 5, 6, 6, 6, 6, 6)


def test_graded_hf_trivial_cases():
    assert graded_hf(GradedQuotient(("X", "Y")), 5).values == (1, 2, 3, 4, 5, 6)
    assert graded_hf(GradedQuotient(("X",), ["X^2"]), 4).values == (1, 1, 0, 0, 0)


def test_verify_ring_6_7_15():
    v = verify_assoc_graded(ring_6_7_15(), GradedQuotient(V, GRADED_6_7_15), 9)
    assert v.verified
    for h, element, mult in v.witnesses:
        # the exhibited element has initial form h and lies in the ideal via mult
        assert element.initial_form() == ring_6_7_15().ring.series(h.terms)
        A = ring_6_7_15()
        combo = sum((m * f for m, f in zip(mult, A.relations)), A.ring.zero())
        assert combo == element


def test_verify_refutes_smaller_ideal():
    v = verify_assoc_graded(ring_6_7_15(), GradedQuotient(V, ["X*Z", "Z^2"]), 9)
    assert not v.verified
    # dim of K[X,Y,Z]/(XZ,Z^2) in degree 4 is X^aY^b (5) plus Y^3Z (1)
    assert v.degree == 4
    assert graded_hf(GradedQuotient(V, ["X*Z", "Z^2"]), 4).values[4] == 6


def test_verify_rejects_non_initial_forms():
    v = verify_assoc_graded(ring_6_7_15(), GradedQuotient(V, ["X*Y", "Z^2"]), 9)
    assert not v.verified
    assert initial_form_witness(ring_6_7_15(), RingSpec(V, None)("X*Y")) is None


def test_verify_regular_ring():
    A = QuotientPresentation(RingSpec(("x", "y"), 8))
    assert verify_assoc_graded(A, GradedQuotient(("x", "y")), 7).verified


def test_socle_ring_6_7_15():
    G = GradedQuotient(V, GRADED_6_7_15)
    cert = socle_witness(G, 6)
    assert cert.degree == 3
    assert cert.element == G.ring("Y^2*Z")
    assert [a[0] for a in cert.annihilation] == list(V)
    for var, prod, mult in cert.annihilation:
        # each product is a combination of the generators with the given multipliers
        assert sum((m * g for m, g in zip(mult, G.generators)), G.ring.zero()) == prod
    assert [str(p) for _, p, _ in cert.annihilation] == ["X*Y^2*Z", "Y^3*Z", "Y^2*Z^2"]


def test_socle_trivial_cases():
    assert socle_witness(GradedQuotient(("X", "Y")), 5) is None
    cert = socle_witness(GradedQuotient(("X",), ["X^2"]), 3)
    assert cert.degree == 1 and str(cert.element) == "X"


def test_ci_series():
    # (1-t^2)(1-t^3)/(1-t)^3
    assert ci_series([2, 3], 3, 6) == [1, 3, 5, 6, 6, 6, 6]
    assert ci_series([], 2, 3) == [1, 2, 3, 4]


def test_regular_sequence_examples():
    bad = regular_sequence_test(V, ["X*Z", "Z^2"])
    assert bad.status == "NotRegular" and bad.degree == 3
    good = regular_sequence_test(V, ["X^2", "Y^3"])
    assert good.status == "RegularCertified"
    assert len(good.linear_forms) == 1
    assert regular_sequence_test(V, ["X"]).status == "RegularCertified"


def test_regular_sequence_short_window_is_inconclusive():
    assert regular_sequence_test(V, ["X^2", "Y^3"], check_to=2).status == "Inconclusive"
    # a refutation inside a short window is still a refutation
    assert regular_sequence_test(V, ["X*Z", "Z^2"], check_to=3).status == "NotRegular"


def test_regular_sequence_over_prime_field():
    assert regular_sequence_test(V, ["X^2 - Y^2", "X*Y"], field=FieldSpec(7)).regular
    assert not regular_sequence_test(V, ["X*Y", "X*Z"], field=FieldSpec(7)).regular


def test_redundant_and_reordered_generators():
    base = graded_hf(GradedQuotient(V, GRADED_6_7_15), 10).values
    rng = random.Random(3)
    for _ in range(5):
        gens = GRADED_6_7_15 + ["X*Y*Z", "Y^7", "X*Z + Z^2"]
        rng.shuffle(gens)
        assert graded_hf(GradedQuotient(V, gens), 10).values == base


forms = st.sampled_from(["X^2", "Y^2", "Z^2", "X*Y", "X*Z", "Y*Z", "X^2 - Y*Z", "X*Y + Z^2", "Y^3", "X^3 - Z^3", "X*Y*Z"])


@settings(max_examples=30, deadline=None)
@given(st.lists(forms, min_size=1, max_size=3, unique=True))
def test_regular_sequence_symmetric(seq):
    status = regular_sequence_test(V, seq).status
    for perm in itertools.permutations(seq):
        assert regular_sequence_test(V, list(perm)).status == status
