import itertools
from collections import deque

import pytest

from cglforge import kacmoody as km
from cglforge.qtorus import bicharacter2
from cglforge.scalars import HalfInt

from conftest import get_preset

B2 = km.cartan_b2()
A2TW = km.cartan_a2_twisted()


def rho(c):
    return km.Weight((1,) * c.rank, (0,) * c.rank)


def orbit_lengths(c, depth):
    """Length of w read off BFS distance of w(rho) from rho; rho is regular so the orbit is free."""
    start = rho(c)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        if dist[mu] == depth:
            continue
        for i in range(c.rank):
            nu = km.reflect(c, i, mu)
            if nu not in dist:
                dist[nu] = dist[mu] + 1
                queue.append(nu)
    return dist


@pytest.mark.parametrize("c", [B2, A2TW], ids=["B2", "A2tw"])
def test_reducedness_matches_orbit_oracle(c):
    dist = orbit_lengths(c, 6)
    for n in range(1, 6):
        for word in itertools.product(range(c.rank), repeat=n):
            reduced = dist.get(km.act(c, word, rho(c))) == n
            if reduced:
                assert len(km.root_sequence(c, word)) == n
            else:
                with pytest.raises(km.NotReduced):
                    km.root_sequence(c, word)


def positive_roots_b2():
    """Real roots from the W-orbit of the simple roots, keeping the positive ones."""
    seen = set()
    frontier = [B2.simple_root(i) for i in range(2)]
    while frontier:
        mu = frontier.pop()
        if mu in seen:
            continue
        seen.add(mu)
        frontier += [km.reflect(B2, i, mu) for i in range(2)]
    return {r for r in seen if r.is_positive_root_combination()}


def test_longest_word_enumerates_positive_roots():
    betas = km.root_sequence(B2, (0, 1, 0, 1))
    assert len(set(betas)) == 4
    assert set(betas) == positive_roots_b2()


def test_pairing_is_the_symmetrized_form():
    a1, a2 = B2.simple_root(0), B2.simple_root(1)
    assert km.pairing(B2, a1, a1) == 4
    assert km.pairing(B2, a2, a2) == 2
    assert km.pairing(B2, a1, a2) == km.pairing(B2, a2, a1) == -2
    w1 = B2.fundamental_weight(0)
    assert km.pairing(B2, w1, a1) == 2 and km.pairing(B2, w1, a2) == 0
    with pytest.raises(km.UndefinedPairing):
        km.pairing(B2, w1, w1)


def test_reflection_is_involution():
    mu = km.Weight((1, 2), (3, -1))
    for c in (B2, A2TW):
        for i in range(2):
            assert km.reflect(c, i, km.reflect(c, i, mu)) == mu


def test_bad_cartan_data():
    with pytest.raises(km.BadCartan):
        km.CartanDatum(((2, -1), (-2, 2)), (1, 1))
    with pytest.raises(km.BadCartan):
        km.CartanDatum(((1, 0), (0, 2)), (1, 1))
    with pytest.raises(km.BadCartan):
        km.CartanDatum(((2, -1), (-2, 2)), (4, 2))
    with pytest.raises(km.BadCartan):
        km.CartanDatum.from_json({"rank": 3, "a": [[2, -1], [-2, 2]], "d": [2, 1]})


def test_labels_and_json():
    assert km.parse_word(A2TW, "0,1,0") == (0, 1, 0)
    assert km.parse_word(B2, [1, 2]) == (0, 1)
    with pytest.raises(ValueError):
        km.parse_word(A2TW, "2")
    assert km.CartanDatum.from_json(A2TW.to_json()) == A2TW


@pytest.mark.parametrize("name", ["b2-w1212", "a2tw-01010"])
def test_blueprint_lambda_matches_preset_relations(name):
    pr = get_preset(name)
    bp = km.blueprint(pr.cartan, pr.word)
    assert bp.lambda_exp2 == pr.presentation.lambda_exp2
    assert bp.lambda_k_exp2 == pr.presentation.lambda_k_exp2


def test_b2_blueprint_columns_and_identities(b2):
    bp = km.blueprint(B2, (0, 1, 0, 1))
    want = b2.fixtures["btilde_blueprint"].value
    assert {k + 1: v for k, v in bp.btilde.columns().items()} == want
    assert bp.report.ok, bp.report.violations
    for k in bp.exw:
        col = bp.btilde.column(k)
        e = [int(i == k) for i in range(4)]
        assert bicharacter2(bp.r_w, col, e) == -2 * B2.d[bp.word[k]]


def test_a2tw_blueprint_matrix(a2tw):
    bp = km.blueprint(A2TW, (0, 1, 0, 1, 0))
    assert {k + 1: v for k, v in bp.btilde.columns().items()} == a2tw.fixtures["btilde_printed"].value
    assert bp.exw == (0, 1, 2)
    assert bp.a_scalars[(0, 2)] == HalfInt(4)
    assert bp.report.ok


def test_blueprint_json_is_a_seed_file():
    from cglforge.seed import load_seed
    bp = km.blueprint(B2, (0, 1, 0, 1))
    out = bp.to_json()
    s = load_seed(out)
    assert s.btilde == bp.btilde
    assert out["word"] == [1, 2, 1, 2] and out["compat"]["ok"]


def test_non_reduced_blueprint():
    with pytest.raises(km.NotReduced):
        km.blueprint(B2, (0, 0))
