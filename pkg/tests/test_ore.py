import pytest
from hypothesis import given, settings, strategies as st

from cglforge import ore
from cglforge.ore import PBWElement, leading_term, skew_delta, validate_cgl
from cglforge.presets import b2_presentation, lastex_presentation
from cglforge.scalars import LaurentScalar

from conftest import FIXTURE_NAMES, get_preset


def q(p, exp2, c=1):
    return p.q(exp2, c)


def test_lastex_relation_x3_x1():
    p = lastex_presentation()
    x = [p.gen(i) for i in range(6)]
    want = p.monomial((1, 0, 1, 0, 0, 0), q(p, 2)) + p.monomial((0, 2, 0, 0, 0, 0), p.q(0) - q(p, 2))
    assert p.multiply(x[2], x[0]) == want


def test_normal_words_unchanged():
    p = lastex_presentation()
    assert p.multiply(p.gen(0), p.gen(2)) == p.monomial((1, 0, 1, 0, 0, 0))


def test_b2_relation_x4_x2():
    p = b2_presentation()
    got = p.multiply(p.gen(3), p.gen(1))
    want = p.monomial((0, 1, 0, 1)) - p.monomial((0, 0, 1, 0), q(p, -2) - q(p, 2))
    assert got == want


def test_leading_term_reverse_lex():
    p = lastex_presentation()
    a = p.monomial((0, 2, 0, 0, 0, 0), q(p, -2)) + p.monomial((1, 0, 1, 0, 0, 0))
    c, f = leading_term(a)
    assert f == (1, 0, 1, 0, 0, 0) and c == p.q(0)
    c, f = leading_term(p.scalar(q(p, 3)))
    assert f == (0,) * 6 and c == q(p, 3)
    with pytest.raises(ore.ZeroElement):
        leading_term(p.zero())


def test_skew_delta_examples():
    p = lastex_presentation()
    assert skew_delta(p, 2, p.gen(0)) == p.monomial((0, 2, 0, 0, 0, 0), p.q(0) - q(p, 2))
    assert skew_delta(p, 2, p.one()).is_zero()
    b = b2_presentation()
    assert skew_delta(b, 3, b.gen(1)) == b.monomial((0, 0, 1, 0), q(b, 2) - q(b, -2))
    with pytest.raises(ore.SupportViolation):
        skew_delta(b, 1, b.gen(3))


def test_validate_lastex_and_inferred_lambda():
    rep = validate_cgl(lastex_presentation())
    assert rep.ok, rep.violations
    assert {k: v for k, v in rep.data["lambda_k_inferred"].items()} == {3: 2, 4: 2, 5: 2, 6: 2}
    assert rep.checks["symmetric"]


def test_validate_rejects_nonhomogeneous_nonnilpotent():
    lam = [[0, 0], [0, 0]]
    delta = {(1, 0): PBWElement.monomial((1, 0))}
    p = ore.CGLPresentation(lam, [2, 2], delta, [(1,), (1,)])
    rep = validate_cgl(p)
    assert not rep.ok
    assert not rep.checks["locally_nilpotent"]
    assert not rep.checks["homogeneous"]


def test_rescale_identity_and_delta_scaling():
    p = lastex_presentation()
    assert ore.rescale(p, [1] * 6) == p
    a1 = get_preset("a1q").presentation
    one = LaurentScalar.const(1)
    qq = LaurentScalar.qpow(2)
    scaled = ore.rescale(a1, [one, qq - one])
    # delta_2(x_1) = -q^-1 picks up t_1 t_2 = q - 1
    assert scaled.delta[(1, 0)] == a1.delta[(1, 0)].scale(qq - one)
    assert scaled.lambda_exp2 == a1.lambda_exp2


def test_rescale_rejects_zero():
    with pytest.raises(ore.ZeroScale):
        ore.rescale(lastex_presentation(), [0, 1, 1, 1, 1, 1])


def test_interval_permutations():
    assert ore.is_interval_permutation((1, 0, 2))
    assert not ore.is_interval_permutation((0, 2, 1))
    from cglforge.primes import enumerate_xi
    assert sorted(enumerate_xi(2)) == [(0, 1), (1, 0)]
    assert len(list(enumerate_xi(4))) == 8


def test_json_round_trip_and_char_change():
    p = lastex_presentation()
    assert ore.CGLPresentation.from_json(p.to_json()) == p
    p3 = p.with_char(3)
    assert p3.char == 3 and p3 == lastex_presentation(3)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_all_fixtures_are_cgl(name):
    rep = validate_cgl(get_preset(name).presentation)
    assert rep.ok, rep.violations


# -- randomized laws ------------------------------------------------------------------

ASSOC_ALGEBRAS = {"b2": b2_presentation(), "lastex": lastex_presentation()}


def bounded_elements(n):
    mono = st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple)
    coeff = st.tuples(st.integers(-2, 2), st.integers(-2, 2).filter(bool)).map(
        lambda ec: LaurentScalar.qpow(*ec))
    return st.dictionaries(mono, coeff, min_size=1, max_size=2)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.sampled_from(sorted(ASSOC_ALGEBRAS)), st.data())
def test_multiply_associative(name, data):
    p = ASSOC_ALGEBRAS[name]
    a, b, c = (p.element(data.draw(bounded_elements(p.N))) for _ in range(3))
    assert p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c))


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.sampled_from(sorted(ASSOC_ALGEBRAS)), st.data())
def test_leading_term_of_reversed_word(name, data):
    """lt(x_N^m_N ... x_1^m_1) = prod_{k>j} lambda_kj^(m_k m_j) x^m."""
    p = ASSOC_ALGEBRAS[name]
    m = data.draw(st.lists(st.integers(0, 2), min_size=p.N, max_size=p.N))
    word = p.one()
    for k in reversed(range(p.N)):
        for _ in range(m[k]):
            word = p.multiply(word, p.gen(k))
    lam = p.lambda_exp2.exp2
    exp2 = sum(lam[k][j] * m[k] * m[j] for k in range(p.N) for j in range(k))
    c, f = leading_term(word)
    assert f == tuple(m)
    assert c == p.q(exp2)
