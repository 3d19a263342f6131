import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mcmhilbert.exactla import (
    EchelonBasis,
    ExactMatrix,
    FieldSpec,
    inverse,
    is_prime,
    kernel_basis,
    rank,
    rref,
    solve_linear,
    sparse_rank,
)

Q = FieldSpec()
F2 = FieldSpec(2)
F5 = FieldSpec(5)


def brute_rank(rows, field):
    """Largest k with a nonzero k x k minor (cofactor expansion, independent of rref)."""
    def det(m):
        if not m:
            return field.one()
        total = field.zero()
        for j, a in enumerate(m[0]):
            if a:
                minor = [r[:j] + r[j + 1:] for r in m[1:]]
                term = field.mul(a, det(minor))
                total = field.add(total, term if j % 2 == 0 else field.neg(term))
        return total

    n, m = len(rows), len(rows[0]) if rows else 0
    for k in range(min(n, m), 0, -1):
        for ri in itertools.combinations(range(n), k):
            for ci in itertools.combinations(range(m), k):
                if det([[rows[i][j] for j in ci] for i in ri]):
                    return k
    return 0


def test_field_parse():
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("fp:7") == FieldSpec(7)
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:8")
    with pytest.raises(ValueError):
        FieldSpec.parse("r")


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_prime(32003)


def test_prime_field_matches_integers_mod_p():
    p = 32003
    F = FieldSpec(p)
    rng = random.Random(7)
    for _ in range(10_000):
        a, b, c = (rng.randrange(p) for _ in range(3))
        assert F.add(a, F.mul(b, c)) == (a + b * c) % p
        assert F.sub(a, b) == (a - b) % p
        assert F.neg(c) == (-c) % p
        if b:
            assert F.mul(F.div(a, b), b) == a
            assert F.mul(b, F.inv(b)) == 1


def test_rationals_are_exact():
    x = Q("1/3")
    assert Q.add(x, Q.add(x, x)) == 1
    big = Fraction(10) ** 40
    assert Q.mul(big, Q.inv(big)) == 1
    assert Q.signed(Fraction(-2, 3)) == Fraction(-2, 3)


def test_rref_identity_and_zero():
    r, red, piv = rref(ExactMatrix.identity(Q, 3))
    assert (r, piv) == (3, [0, 1, 2])
    assert red == ExactMatrix.identity(Q, 3)
    assert rank(ExactMatrix.zeros(Q, 2, 4)) == 0


def test_rref_over_f2():
    assert rank(ExactMatrix(F2, [[1, 1], [1, 1]])) == 1


def test_rref_pivot_rule():
    r, red, piv = rref(ExactMatrix(Q, [[0, 2, 4], [0, 1, 3]]))
    assert piv == [1, 2]
    assert red.tolist() == [[0, 1, 0], [0, 0, 1]]


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(Q, 3)) == []
    (v,) = kernel_basis(ExactMatrix(Q, [[1, 1]]))
    assert v[0] == -v[1] != 0
    m = ExactMatrix(F5, [[1, 2, 3]])
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert m.apply(v) == [0]


def test_solve_linear():
    b = [Q(3), Q(-1), Q("2/5")]
    assert solve_linear(ExactMatrix.identity(Q, 3), b) == b
    x = solve_linear(ExactMatrix(Q, [[1, 1]]), [3])
    assert x[0] + x[1] == 3
    assert solve_linear(ExactMatrix.zeros(Q, 2, 2), [1, 0]) is None


def test_inverse():
    m = ExactMatrix(FieldSpec(7), [[1, 2], [3, 4]])
    assert m @ inverse(m) == ExactMatrix.identity(FieldSpec(7), 2)
    assert inverse(ExactMatrix(Q, [[1, 2], [2, 4]])) is None


def test_echelon_tracks_relations():
    eb = EchelonBasis(Q, track=True)
    assert eb.add({0: 1, 1: 1}, tag="a") is None
    assert eb.add({1: 1}, tag="b") is None
    rel = eb.add({0: 2, 1: 3}, tag="c")
    # c = 2a + b
    assert rel == {"c": 1, "a": -2, "b": -1}
    assert eb.contains({0: 1})
    assert eb.count_below(1) == 1
    assert sparse_rank(Q, [{0: 1}, {0: 2}, {3: 1}]) == 2


small = st.integers(min_value=-3, max_value=3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4)),
       st.sampled_from([Q, FieldSpec(3), FieldSpec(5)]))
def test_rank_nullity_and_kernel(rows, field):
    m = ExactMatrix(field, rows)
    r = rank(m)
    ker = kernel_basis(m)
    assert r + len(ker) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert r == brute_rank([list(row) for row in m.rows], field)
    assert sparse_rank(field, [{j: x for j, x in enumerate(row) if x} for row in m.rows]) == r


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_solve_substitution(rows, b):
    m = ExactMatrix(Q, rows)
    x = solve_linear(m, b)
    augmented = ExactMatrix(Q, [list(r) + [c] for r, c in zip(rows, b)])
    if x is None:
        assert rank(augmented) > rank(m)
    else:
        assert m.apply(x) == [Q(c) for c in b]
