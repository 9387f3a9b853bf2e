"""Named presentations shipped with the tool, plus the values they are expected to produce.

Every fixture carries a provenance tag: ``printed`` (transcribed from the
published relation lists and tables), ``derived`` (computed by an independent
oracle and frozen) or ``trivial``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ore import CGLPresentation, PBWElement
from .scalars import LaurentScalar, qint


class UnknownPreset(KeyError):
    pass


@dataclass
class Fixture:
    value: object
    provenance: str
    note: str = ""


@dataclass
class Preset:
    name: str
    presentation: CGLPresentation
    fixtures: dict = field(default_factory=dict)
    cartan: object = None
    word: tuple = ()


def _q(e, c=1, char=0):
    """c * q^e for integer or half-integer e."""
    return LaurentScalar.qpow(int(round(2 * e)), c, char)


def _lq(terms: dict, char=0) -> LaurentScalar:
    """Laurent scalar from {exponent: coefficient} with exponents in q (not doubled)."""
    return LaurentScalar({int(round(2 * e)): c for e, c in terms.items()}, char)


def _lambda_matrix(n: int, lower: dict) -> list:
    """Doubled exponents from {(k, j): exponent of lambda_kj} (1-based, k > j)."""
    m = [[0] * n for _ in range(n)]
    for (k, j), e in lower.items():
        m[k - 1][j - 1] = int(round(2 * e))
        m[j - 1][k - 1] = -int(round(2 * e))
    return m


def _elem(n: int, terms: Sequence, char=0) -> PBWElement:
    """PBW element from [(scalar, {var(1-based): power}), ...]."""
    out = {}
    for c, mono in terms:
        f = [0] * n
        for v, e in mono.items():
            f[v - 1] += e
        out[tuple(f)] = out[tuple(f)] + c if tuple(f) in out else c
    return PBWElement(n, out, char)


# -- type B2, word 1,2,1,2 -------------------------------------------------------

def b2_presentation(char: int = 0) -> CGLPresentation:
    n = 4
    lam = _lambda_matrix(n, {(2, 1): 2, (3, 1): 0, (3, 2): 2, (4, 1): -2, (4, 2): 0, (4, 3): 2})
    a = _lq({-2: 1, 2: -1}, char)  # q^-2 - q^2
    delta = {
        (2, 0): _elem(n, [(-a, {2: 2})], char),
        (3, 0): _elem(n, [(-(_q(-1, 1, char) * a), {2: 1})], char),
        (3, 1): _elem(n, [(-_lq({-1: 1, 1: -1}, char), {3: 1})], char),
    }
    degrees = [(1, 0), (1, 1), (1, 2), (0, 1)]
    return CGLPresentation(lam, [8, 4, 8, 4], delta, degrees, char=char)


# -- type A2^(2), word 0,1,0,1,0 --------------------------------------------------------

def a2tw_presentation(char: int = 0) -> CGLPresentation:
    n = 5
    lam = _lambda_matrix(n, {(2, 1): 4, (3, 1): 2, (3, 2): 4, (4, 1): 4, (4, 2): 8, (4, 3): 4,
                             (5, 1): 2, (5, 2): 4, (5, 3): 2, (5, 4): 4})
    one = LaurentScalar.const(1, char)
    a = c = _q(2, 1, char) - one
    b = _q(8, 1, char) - one
    q2 = _q(2, 1, char)
    frac = _q(4, 1, char) - q2                      # q^4 - q^2 = q^2 (q^2 - 1)
    ab_frac = (a * b).__truediv__(frac)             # exact: q^6 - q^-2
    bc_frac = (b * c).__truediv__(frac)
    long = (a * b * c * (_q(6, 1, char) - one)).__truediv__(q2 * (q2 - one) ** 2 * b)
    delta = {
        (2, 0): _elem(n, [(a, {2: 1})], char),
        (3, 0): _elem(n, [(ab_frac, {3: 3})], char),
        (3, 1): _elem(n, [(b, {3: 4})], char),
        (4, 0): _elem(n, [(long, {3: 2})], char),
        (4, 1): _elem(n, [(bc_frac, {3: 3})], char),
        (4, 2): _elem(n, [(c, {4: 1})], char),
    }
    degrees = [(1, 0), (4, 1), (3, 1), (8, 3), (5, 2)]
    return CGLPresentation(lam, [4, 16, 4, 16, 4], delta, degrees, char=char)


# -- six-generator example with non-trivial frozen structure ------------------------------

def lastex_presentation(char: int = 0) -> CGLPresentation:
    n = 6
    lam = _lambda_matrix(n, {
        (2, 1): 1, (3, 1): 1, (3, 2): 1, (4, 1): 1, (4, 2): 1, (4, 3): 1,
        (5, 1): -1, (5, 2): -1, (5, 3): -1, (5, 4): -1,
        (6, 1): -1, (6, 2): -1, (6, 3): -1, (6, 4): -1, (6, 5): 1})
    one = LaurentScalar.const(1, char)
    qq = _q(1, 1, char)
    delta = {
        (2, 0): _elem(n, [(one - qq, {2: 2})], char),
        (3, 0): _elem(n, [(one - qq * qq, {2: 1, 3: 1})], char),
        (3, 1): _elem(n, [(qq - one, {3: 2})], char),
        (4, 3): _elem(n, [((qq - one) ** 3, {})], char),
    }
    partial = CGLPresentation(lam, [2] * n, delta, None, char=char)
    y = lastex_y45(partial)
    x = [partial.gen(i) for i in range(n)]
    mul = partial.product
    qinv = _q(-1, 1, char)
    delta[(5, 0)] = (mul(x[1], y, x[4]).scale(qinv - qq)
                     + mul(x[2], x[2], x[4], x[4]).scale(one - qq))
    delta[(5, 1)] = mul(x[2], y, x[4]).scale(qq - qinv)
    delta[(5, 2)] = mul(y, y).scale(qq - one)
    degrees = [(4, 3), (3, 2), (2, 1), (1, 0), (-1, 0), (-2, -1)]
    return CGLPresentation(lam, [2] * n, delta, degrees, char=char)


def lastex_y45(p: CGLPresentation) -> PBWElement:
    """The interval prime x_4 x_5 - q (1-q)^2 of the six-generator example."""
    qq = _q(1, 1, p.char)
    one = LaurentScalar.const(1, p.char)
    return _elem(p.N, [(one, {4: 1, 5: 1}), (-(qq * (one - qq) ** 2), {})], p.char)


# -- quantized Weyl algebras ----------------------------------------------------------------

def _alpha(n, alpha):
    if alpha is None:
        return [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if alpha[i][j] != -alpha[j][i]:
                raise ValueError("alpha must be skew-symmetric")
    return alpha


def qweyl_presentation(n: int, alpha=None, char: int = 0) -> CGLPresentation:
    """Normalized quantized Weyl algebra on 2n generators.

    x_i = (q-1) w_{n+1-i} for i <= n and x_i = (-1)^(i-n) q^((i-n-1)/2) v_{i-n}
    for i > n; alpha is the skew integer matrix of the multiparameter family.
    """
    a = _alpha(n, alpha)
    N = 2 * n
    c = lambda i, j: a[n - i][n - j]  # c_ij = a_{n+1-i, n+1-j}, 1-based i, j
    prime = lambda l: 2 * n + 1 - l
    lower = {}
    for i in range(1, N + 1):
        for j in range(1, i):
            if i <= n:                          # x_i x_j = q^{c_ij} x_j x_i
                lower[(i, j)] = c(i, j)
            elif j > n:                         # x_j x_i = q^{1 + c_{j'i'}} x_i x_j
                lower[(i, j)] = -(1 + c(prime(j), prime(i)))
            elif i < prime(j):                  # j <= n < i < j'
                lower[(i, j)] = -c(prime(i), j)
            elif i > prime(j):                  # j <= n < j' < i
                lower[(i, j)] = 1 - c(prime(i), j)
            else:                               # i = j'
                lower[(i, j)] = 1
    lam = _lambda_matrix(N, lower)
    one = LaurentScalar.const(1, char)
    qm1 = _q(1, 1, char) - one
    delta = {}
    for j in range(1, n + 1):
        terms = [(_q((n - j) / 2, (-1) ** (n + 1 - j), char) * qm1, {})]
        for l in range(j + 1, n + 1):
            terms.append((_q((l - j) / 2, (-1) ** (l - j), char) * qm1, {l: 1, prime(l): 1}))
        delta[(prime(j) - 1, j - 1)] = _elem(N, terms, char)
    degrees = []
    for i in range(1, N + 1):
        d = [0] * n
        if i <= n:
            d[n - i] = -1
        else:
            d[i - n - 1] = 1
        degrees.append(tuple(d))
    lk = [2] * n + [-2] * n
    labels = [f"x{i}" for i in range(1, N + 1)]
    return CGLPresentation(lam, lk, delta, degrees, labels, char)


def qweyl_raw_presentation(n: int, alpha=None, char: int = 0) -> CGLPresentation:
    """Unscaled quantized Weyl algebra on w_n, ..., w_1, v_1, ..., v_n."""
    a = _alpha(n, alpha)
    N = 2 * n
    lower = {}
    delta = {}
    one = LaurentScalar.const(1, char)
    qm1 = _q(1, 1, char) - one
    # position of w_i is n - i (0-based), of v_i is n + i - 1
    wpos = lambda i: n - i
    vpos = lambda i: n + i - 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and wpos(i) > wpos(j):           # w_i w_j = q^{a_ij} w_j w_i
                lower[(wpos(i) + 1, wpos(j) + 1)] = a[i - 1][j - 1]
            if i > j:                                  # v_i v_j = q^{-1-a_ji} ... from v_j v_i = q^{1+a_ji} v_i v_j
                lower[(vpos(i) + 1, vpos(j) + 1)] = -(1 + a[j - 1][i - 1])
            if i < j:                                  # v_i w_j = q^{-a_ij} w_j v_i
                lower[(vpos(i) + 1, wpos(j) + 1)] = -a[i - 1][j - 1]
            elif i > j:                                # v_i w_j = q^{1-a_ij} w_j v_i
                lower[(vpos(i) + 1, wpos(j) + 1)] = 1 - a[i - 1][j - 1]
            else:                                      # v_j w_j = q w_j v_j + 1 + (q-1) sum_{l<j} w_l v_l
                lower[(vpos(i) + 1, wpos(j) + 1)] = 1
                terms = [(one, {})]
                for l in range(1, j):
                    terms.append((qm1, {wpos(l) + 1: 1, vpos(l) + 1: 1}))
                delta[(vpos(j), wpos(j))] = _elem(N, terms, char)
    lam = _lambda_matrix(N, lower)
    degrees = []
    for pos in range(N):
        d = [0] * n
        if pos < n:
            d[n - pos - 1] = -1
        else:
            d[pos - n] = 1
        degrees.append(tuple(d))
    labels = [f"w{n - p}" for p in range(n)] + [f"v{i}" for i in range(1, n + 1)]
    return CGLPresentation(lam, [2] * n + [-2] * n, delta, degrees, labels, char)


def a1q_presentation(char: int = 0) -> CGLPresentation:
    """x_1 x_2 = q x_2 x_1 + 1, i.e. x_2 x_1 = q^-1 x_1 x_2 - q^-1."""
    lam = _lambda_matrix(2, {(2, 1): -1})
    delta = {(1, 0): _elem(2, [(_q(-1, -1, char), {})], char)}
    return CGLPresentation(lam, [2, 2], delta, [(1,), (-1,)], char=char)


# -- named presets with expected values ----------------------------------------------

def _b2_preset(char: int) -> Preset:
    from .kacmoody import cartan_b2

    p = b2_presentation(char)
    q = lambda e: _q(e, 1, char)
    one = LaurentScalar.const(1, char)
    ybar = [
        _elem(4, [(one, {1: 1})], char),
        _elem(4, [(one, {2: 1})], char),
        _elem(4, [(one, {1: 1, 3: 1}), (-q(-2), {2: 2})], char),
        _elem(4, [(one, {2: 1, 4: 1}), (-q(-1), {3: 1})], char),
    ]
    fixtures = {
        "levels": Fixture([[1, 3], [2, 4]], "printed"),
        "ybar": Fixture(ybar, "printed"),
        "btilde_printed": Fixture({1: (0, 2, -1, 0), 2: (-1, 0, 0, -1)}, "printed"),
        "btilde_blueprint": Fixture({1: (0, 2, -1, 0), 2: (-1, 0, 1, -1)}, "derived",
                                    "second column fixed by the grading identity"),
        "condition_b": Fixture([2, 1], "derived"),
    }
    return Preset("b2-w1212", p, fixtures, cartan_b2(), (0, 1, 0, 1))


def _a2tw_preset(char: int) -> Preset:
    from .kacmoody import cartan_a2_twisted

    p = a2tw_presentation(char)
    q = lambda e: _q(e, 1, char)
    one = LaurentScalar.const(1, char)
    ybar = [
        _elem(5, [(one, {1: 1})], char),
        _elem(5, [(one, {2: 1})], char),
        _elem(5, [(q(1), {1: 1, 3: 1}), (-q(-1), {2: 1})], char),
        _elem(5, [(q(4), {2: 1, 4: 1}), (-q(-4), {3: 4})], char),
        _elem(5, [(q(3), {1: 1, 3: 1, 5: 1}), (-q(1), {2: 1, 5: 1}),
                  (-(q(-1) * qint(3, char)), {3: 3}), (-q(1), {1: 1, 4: 1})], char),
    ]
    fixtures = {
        "levels": Fixture([[1, 3, 5], [2, 4]], "printed"),
        "ybar": Fixture(ybar, "printed"),
        "btilde_printed": Fixture({1: (0, 1, -1, 0, 0), 2: (-4, 0, 4, -1, 0), 3: (1, -1, 0, 1, -1)},
                                  "printed"),
    }
    return Preset("a2tw-01010", p, fixtures, cartan_a2_twisted(), (0, 1, 0, 1, 0))


def _lastex_preset(char: int) -> Preset:
    p = lastex_presentation(char)
    q = lambda e: _q(e, 1, char)
    one = LaurentScalar.const(1, char)
    x = [p.gen(i) for i in range(6)]
    y = lastex_y45(p)
    m = p.product
    ys = [
        x[0],
        x[1],
        _elem(6, [(one, {1: 1, 3: 1}), (q(-1), {2: 2})], char),
        _elem(6, [(one, {2: 1, 4: 1}), (-q(-1), {3: 2})], char),
        _elem(6, [(one, {2: 1, 4: 1, 5: 1}), (-q(-1), {3: 2, 5: 1}),
                  (-(q(1) * (one - q(1)) ** 2), {2: 1})], char),
        (m(x[0], x[2], x[5]) + m(x[1], x[1], x[5]).scale(q(-1)) - m(x[0], y, y).scale(q(1))
         - m(x[1], x[2], y, x[4]).scale(one + q(-1)) + m(x[2], x[2], x[2], x[4], x[4]).scale(q(-2))),
    ]
    r = [[0, -1, -1, -2, -1, 0],
         [1, 0, 0, -1, 0, 1],
         [1, 0, 0, -2, 0, 2],
         [2, 1, 2, 0, 2, 4],
         [1, 0, 0, -2, 0, 1],
         [0, -1, -2, -4, -1, 0]]
    edges = sorted([(1, 2), (1, 2), (2, 3), (2, 3), (4, 2), (6, 3), (3, 1), (3, 5), (3, 5), (5, 4)])
    fixtures = {
        "levels": Fixture([[1, 3, 6], [2, 4, 5]], "printed"),
        "y": Fixture(ys, "printed"),
        "r_exp2": Fixture(r, "printed", "entries are exponents of q^(1/2)"),
        "quiver_edges": Fixture(edges, "printed"),
        "frozen": Fixture([5, 6], "printed"),
        "interval_45": Fixture(y, "printed"),
    }
    return Preset("lastex", p, fixtures)


def qweyl_r_pattern(n: int, alpha=None) -> list:
    """Expected frame exponents (powers of q^(1/2)) of the initial seed."""
    a = _alpha(n, alpha)
    N = 2 * n
    r = [[0] * N for _ in range(N)]
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i <= n and j <= n:
                v = a[n - i][n - j]
            elif i <= n < j:
                v = -1 if j >= N + 1 - i else 0
            elif j <= n < i:
                v = 1 if j >= N + 1 - i else 0
            else:
                v = 0
            r[i - 1][j - 1] = v
    return r


def _qweyl_preset(n: int, char: int, alpha=None) -> Preset:
    p = qweyl_presentation(n, alpha, char)
    N = 2 * n
    edges = sorted([(N + 1 - i, i) for i in range(1, n + 1)] + [(i, N - i) for i in range(1, n)])
    fixtures = {
        "r_exp2": Fixture(qweyl_r_pattern(n, alpha), "printed"),
        "quiver_edges": Fixture(edges, "printed"),
        "frozen": Fixture(list(range(n + 1, N + 1)), "printed"),
    }
    return Preset(f"qweyl:{n}", p, fixtures)


PRESET_NAMES = ("b2-w1212", "a2tw-01010", "lastex", "qweyl:n", "qweyl-raw:n", "a1q")


def preset(name: str, char: int = 0) -> Preset:
    if name == "b2-w1212":
        return _b2_preset(char)
    if name == "a2tw-01010":
        return _a2tw_preset(char)
    if name == "lastex":
        return _lastex_preset(char)
    if name == "a1q":
        return Preset("a1q", a1q_presentation(char),
                      {"integral_scale": Fixture(["1", "q - 1"], "derived")})
    for prefix, build in (("qweyl:", None), ("qweyl-raw:", qweyl_raw_presentation)):
        if name.startswith(prefix):
            try:
                n = int(name[len(prefix):])
            except ValueError:
                raise UnknownPreset(name) from None
            if n < 1:
                raise UnknownPreset(name)
            if build is None:
                return _qweyl_preset(n, char)
            return Preset(name, build(n, None, char))
    raise UnknownPreset(name)
