from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coassoc_words
from qperm.errors import StructuralError
from qperm.magic import random_magic_unitary, verify_magic_unitary
from qperm.ncalg import (
    NCPolynomial,
    ParseError,
    QQi,
    check_identity,
    coassoc_check_symbolic,
    column_sum,
    comultiply_leg,
    delta,
    evaluate,
    normal_form,
    normal_form_steps,
    parse_expression,
    row_sum,
    technical_lemma_identity,
)


@pytest.fixture(scope="module")
def reps():
    rng = np.random.default_rng(7)
    out = [random_magic_unitary(4, rng, blocks=1 + k % 2) for k in range(50)]
    assert all(verify_magic_unitary(u).passed for u in out)
    return out


def P(src, n=4, legs=None):
    return parse_expression(src, n, legs)


class TestParser:
    def test_single_generator(self):
        p = P("a(1,2)")
        assert p.legs == 1
        assert p.terms == {(((1, 2),),): QQi(1)}

    def test_sum_with_coefficients(self):
        p = P("a(1,1)*a(1,2) + 2*a(2,2)")
        assert p.terms == {(((2, 2),),): QQi(2), (((1, 1), (1, 2)),): QQi(1)}

    def test_tensor_legs(self):
        p = P("a(1,2) # a(2,3)")
        assert p.legs == 2
        assert p.terms == {(((1, 2),), ((2, 3),)): QQi(1)}

    def test_coefficients(self):
        assert P("3/4*a(1,1)").terms[(((1, 1),),)] == QQi(Fraction(3, 4))
        assert P("0.25*a(1,1)").terms[(((1, 1),),)] == QQi(Fraction(1, 4))
        assert P("-a(1,1)").terms[(((1, 1),),)] == QQi(-1)
        assert P("2i*a(1,1)").terms[(((1, 1),),)] == QQi(0, 2)
        assert P("a(1,1)*3 # 2*1").terms[(((1, 1),), ())] == QQi(6)

    def test_scalar_term_spans_all_legs(self):
        p = P("a(1,1) # a(1,1) - 1")
        assert p.terms[((), ())] == QQi(-1)

    def test_adjoint_mark(self):
        assert P("a(1,2)'*a(2,1)'") == P("a(1,2)*a(2,1)")

    def test_whitespace(self):
        assert P(" a ( 1 , 2 )  *a(2,2)") == P("a(1,2)*a(2,2)")

    @pytest.mark.parametrize("src, pos", [
        ("a(1,2) +", 8),
        ("a(1,2) a(1,1)", 7),
        ("a(1,5)", 0),
        ("a(1,2)*a(1,2", 7),
        ("b(1,1)", 0),
        ("", 0),
        ("1/0", 0),
    ])
    def test_errors_carry_position(self, src, pos):
        with pytest.raises(ParseError) as exc:
            P(src)
        assert exc.value.pos == pos
        assert "^" in exc.value.caret()

    def test_mixed_leg_counts(self):
        with pytest.raises(ParseError):
            P("a(1,1) + a(1,1) # a(2,2)")

    def test_zero_prints_as_zero(self):
        assert str(P("a(1,1) - a(1,1)")) == "0"


gen = st.tuples(st.integers(1, 3), st.integers(1, 3))
leg = st.lists(gen, max_size=3).map(tuple)
coef = st.builds(QQi, st.fractions(max_denominator=7).filter(lambda f: abs(f) < 50),
                 st.sampled_from([0, 0, 1, Fraction(-3, 2)]))


@st.composite
def polys(draw, n=3, max_legs=3):
    legs = draw(st.integers(1, max_legs))
    words = draw(st.lists(st.tuples(st.tuples(*[leg] * legs), coef), max_size=5))
    return NCPolynomial(n, legs, words)


@settings(max_examples=150, deadline=None)
@given(polys())
def test_print_parse_roundtrip(p):
    q = parse_expression(str(p), p.n, p.legs)
    assert q == p
    assert str(parse_expression(str(q), p.n, p.legs)) == str(q)


class TestNormalForm:
    def test_idempotence_relation(self):
        assert normal_form(P("a(1,2)*a(1,2)")) == P("a(1,2)")

    def test_same_row_orthogonality(self, reps):
        assert normal_form(P("a(1,2)*a(1,3)")).is_zero()
        worst = max(np.max(np.abs(evaluate(P("a(1,2)*a(1,3)"), u))) for u in reps)
        assert worst <= 1e-10

    def test_same_column_orthogonality(self, reps):
        assert normal_form(P("a(1,2)*a(3,2)")).is_zero()
        worst = max(np.max(np.abs(evaluate(P("a(1,2)*a(3,2)"), u))) for u in reps)
        assert worst <= 1e-10

    def test_zero_leg_kills_word(self):
        assert normal_form(P("a(1,1) # a(2,1)*a(2,2)")).is_zero()

    def test_rows_are_not_collapsed(self):
        p = P("a(1,1) + a(1,2)", n=2)
        assert normal_form(p) == p

    def test_collects_like_terms(self):
        assert normal_form(P("a(1,1)*a(1,1) - a(1,1) + a(2,2)*a(1,1)")) == P("a(2,2)*a(1,1)")

    def test_long_word_reduces(self):
        p = P("a(1,1)*a(1,1)*a(2,2)*a(2,2)*a(1,1)")
        assert normal_form(p) == P("a(1,1)*a(2,2)*a(1,1)")


def test_adjoint_reverses_words():
    p = P("2i*a(1,1)*a(2,2) # a(3,3)")
    assert p.adjoint() == P("-2i*a(2,2)*a(1,1) # a(3,3)")
    assert p.adjoint().adjoint() == p


class TestCheckIdentity:
    def test_row_sum(self):
        assert check_identity(P("a(2,1) + a(2,2) + a(2,3) + a(2,4)"), P("1")).passed is True

    def test_column_sum(self):
        assert check_identity(column_sum(4, 3), NCPolynomial.unit(4)).passed is True

    def test_technical_lemma_core(self):
        for c in (QQi(5), QQi(Fraction(-2, 3)), QQi(1, 1)):
            rep = technical_lemma_identity(4, 2, c)
            assert rep.passed is True

    def test_unequal_coefficients_do_not_collapse(self):
        lhs = P("a(1,1) + 2*a(1,2) + a(1,3) + a(1,4)")
        assert check_identity(lhs, P("1")).passed is None

    def test_distinct_generators_inconclusive(self):
        rep = check_identity(P("a(1,1)"), P("a(1,2)"))
        assert rep.passed is None
        assert rep.metrics["residue"] == "a(1,1) - a(1,2)"

    def test_collapse_with_other_leg_context(self):
        lhs = P("a(2,3) # a(1,1) + a(2,3) # a(1,2) + a(2,3) # a(1,3)", n=3)
        assert check_identity(lhs, P("a(2,3) # 1", n=3)).passed is True

    def test_collapse_inside_leg_context(self):
        lhs = P("a(1,1)*a(2,1)*a(1,1) + a(1,1)*a(2,2)*a(1,1) + a(1,1)*a(2,3)*a(1,1)", n=3)
        assert check_identity(lhs, P("a(1,1)", n=3)).passed is True

    def test_context_annihilated_summand_counts(self):
        # a(3,3)*a(1,3) is already zero, so two summands complete the row
        lhs = P("a(3,3)*a(1,1)*a(3,3) + a(3,3)*a(1,2)*a(3,3)", n=3)
        assert check_identity(lhs, P("a(3,3)", n=3)).passed is True

    def test_partial_row_is_not_collapsed(self):
        assert check_identity(P("a(1,1) + a(1,2)", n=3), P("1", n=3)).passed is None

    def test_defining_relations(self):
        for n in range(1, 5):
            for i, j in product(range(1, n + 1), repeat=2):
                g = NCPolynomial.gen(n, i, j)
                assert check_identity(g * g, g).passed is True
                assert check_identity(g.adjoint(), g).passed is True

    @pytest.mark.parametrize("n", range(1, 7))
    def test_delta_respects_row_and_column_sums(self, n):
        one = NCPolynomial.unit(n, 2)
        for k in range(1, n + 1):
            rows = sum((delta(n, k, j) for j in range(2, n + 1)), delta(n, k, 1))
            cols = sum((delta(n, i, k) for i in range(2, n + 1)), delta(n, 1, k))
            assert check_identity(rows, one).passed is True
            assert check_identity(cols, one).passed is True

    def test_shape_mismatch(self):
        with pytest.raises(StructuralError):
            check_identity(P("a(1,1)"), P("a(1,1) # 1"))
        with pytest.raises(StructuralError):
            check_identity(P("a(1,1)", n=3), P("a(1,1)", n=4))


@pytest.mark.parametrize("n", [1, 3, 6])
def test_coassoc_symbolic(n):
    rep = coassoc_check_symbolic(n)
    assert rep.passed is True
    assert rep.metrics["words_per_generator"] == n * n
    for i, j in [(1, 1), (n, 1), (1, n)]:
        lhs_o, rhs_o = coassoc_words(n, i, j)
        assert lhs_o == rhs_o
        d = delta(n, i, j)
        lhs = Counter({tuple(leg[0] for leg in w): 1 for w, _ in comultiply_leg(d, 0).items()})
        rhs = Counter({tuple(leg[0] for leg in w): 1 for w, _ in comultiply_leg(d, 1).items()})
        assert lhs == lhs_o and rhs == rhs_o


def test_coassoc_n1_is_single_word():
    d = delta(1, 1, 1)
    assert comultiply_leg(d, 0).terms == {(((1, 1),),) * 3: QQi(1)}


class TestEvaluate:
    def test_lookup(self, u4):
        assert np.array_equal(evaluate(P("a(1,1)"), u4), np.diag([1, 0]))

    def test_row_sum_is_identity(self, u4):
        assert np.max(np.abs(evaluate(row_sum(4, 1), u4) - np.eye(2))) <= 1e-15

    def test_orthogonal_product_vanishes(self, reps):
        for u in reps:
            assert np.max(np.abs(evaluate(P("a(1,1)*a(1,2)"), u))) <= 1e-10

    def test_tensor_legs_kron(self, u4):
        got = evaluate(P("a(1,1) # a(3,3)"), u4)
        assert np.array_equal(got, np.kron(u4.entry(1, 1), u4.entry(3, 3)))

    def test_size_mismatch(self, u4):
        with pytest.raises(StructuralError):
            evaluate(P("a(1,1)", n=3), u4)

    def test_delta_matches_delta_rep(self, u4):
        from qperm.magic import delta_rep
        du = delta_rep(u4)
        for i, j in [(1, 1), (2, 3), (4, 4)]:
            assert np.max(np.abs(evaluate(delta(4, i, j), u4) - du.entry(i, j))) <= 1e-15


@settings(max_examples=100, deadline=None)
@given(polys(n=4, max_legs=2))
def test_normal_form_sound_idempotent_and_bounded(p):
    rng = np.random.default_rng(11)
    u = random_magic_unitary(4, rng)
    nf, steps = normal_form_steps(p)
    assert steps <= 10 * max(p.size(), 1) ** 2
    assert normal_form(nf) == nf
    assert np.max(np.abs(evaluate(p, u) - evaluate(nf, u)), initial=0) <= 1e-9



@settings(max_examples=150, deadline=None)
@given(polys(n=3, max_legs=2), st.data())
def test_collapse_is_sound(p, data):
    """Whatever collapse_sums produces must evaluate to the same matrix."""
    from qperm.ncalg import collapse_sums
    rng = np.random.default_rng(data.draw(st.integers(0, 1000)))
    u = random_magic_unitary(3, rng, blocks=2)
    out, _ = collapse_sums(p)
    assert np.max(np.abs(evaluate(p, u) - evaluate(out, u)), initial=0) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(polys(n=4, max_legs=1))
def test_collapse_is_sound_noncommutative(p):
    from qperm.ncalg import collapse_sums
    u = random_magic_unitary(4, np.random.default_rng(3), blocks=2)
    # pad with full row sums inside a context so collapses actually fire
    ctx = NCPolynomial.gen(4, 2, 3)
    q = p + ctx * row_sum(4, 1) * ctx + row_sum(4, 4) * p
    out, rounds = collapse_sums(q)
    assert rounds >= 1
    assert np.max(np.abs(evaluate(q, u) - evaluate(out, u)), initial=0) <= 1e-9
