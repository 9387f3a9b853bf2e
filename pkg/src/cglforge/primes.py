"""Prime elements, normalization, seeds and the checks that tie them together."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional, Sequence

from .linalg import solve_gf2, solve_integer, solve_rational
from .ore import (
    HALF_RING,
    CGLPresentation,
    PBWElement,
    d_form_check,
    interval_view,
    lambda_star_exp2,
    leading_term,
    rescale,
    skew_delta,
)
from .qtorus import FrameSpec, SkewExponentMatrix, bicharacter2, frame_monomial, reindex_frame
from .report import Report
from .scalars import (
    LaurentScalar,
    UnitMonomial,
    HalfInt,
    RationalScalar,
    field_divide,
    is_unit_monomial,
    laurent_lcm,
)
from .seed import ExchangeMatrix, QuantumSeed, mutate_seed, validate_seed


class NoPredecessorFound(ValueError):
    pass


class MultiplePredecessors(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


class ConditionAFailure(ValueError):
    pass


class ChainTooShort(ValueError):
    pass


class LeadingTermNotFound(ValueError):
    pass


class CondViolated(ValueError):
    pass


class NonUniqueColumn(ValueError):
    pass


class NonIntegralColumn(ValueError):
    pass


class NotAdjacent(ValueError):
    pass


class NonUnitLambda(ValueError):
    pass


@dataclass
class EtaData:
    eta: list
    pred: list
    succ: list
    y: list
    c: list
    ybar: Optional[list] = None

    @property
    def N(self) -> int:
        return len(self.eta)

    @property
    def rank(self) -> int:
        return len(set(self.eta))

    def chain_down(self, k: int) -> list:
        """[k, p(k), p^2(k), ...]."""
        out = [k]
        while self.pred[out[-1]] is not None:
            out.append(self.pred[out[-1]])
        return out

    def succ_power(self, i: int, m: int) -> Optional[int]:
        j = i
        for _ in range(m):
            j = self.succ[j]
            if j is None:
                return None
        return j

    def ominus(self, k: int) -> int:
        return len(self.chain_down(k)) - 1

    def oplus(self, k: int) -> int:
        m, j = 0, k
        while self.succ[j] is not None:
            j = self.succ[j]
            m += 1
        return m

    def levels(self) -> list:
        out: dict = {}
        for k, lv in enumerate(self.eta):
            out.setdefault(lv, []).append(k)
        return [out[lv] for lv in sorted(out)]

    def levels_1based(self) -> list:
        return [[k + 1 for k in lv] for lv in self.levels()]

    def ebar(self, k: int) -> tuple:
        f = [0] * self.N
        for i in self.chain_down(k):
            f[i] = 1
        return tuple(f)


# -- prime elements --------------------------------------------------------------

def quasi_commutation(p: CGLPresentation, z: PBWElement, x: PBWElement):
    """Scalar u with z*x == u*x*z, or None."""
    a = p.multiply(z, x)
    b = p.multiply(x, z)
    if a.is_zero() or b.is_zero():
        return None
    ca, fa = leading_term(a)
    cb, fb = leading_term(b)
    if fa != fb:
        return None
    u = field_divide(ca, cb)
    if a != b.scale(u):
        return None
    return u


def is_normal(p: CGLPresentation, z: PBWElement, upto: int) -> bool:
    if z.is_zero():
        return False
    for i in range(upto + 1):
        u = quasi_commutation(p, z, p.gen(i))
        if u is None or is_unit_monomial(u) is None:
            return False
    return True


def eta_and_primes(p: CGLPresentation) -> EtaData:
    N = p.N
    eta, pred, succ, y, c = [], [None] * N, [None] * N, [], []
    lam = p.lambda_exp2.exp2
    nlevels = 0
    for k in range(N):
        xk = p.gen(k)
        if not p.has_delta(k):
            eta.append(nlevels)
            nlevels += 1
            y.append(xk)
            c.append(None)
            continue
        lam_k_minus_1 = p.q(p.lambda_k_exp2[k]) - p.q(0)
        found = []
        for j in range(k):
            if succ[j] is not None:
                continue
            d = skew_delta(p, k, y[j])
            chain = [j]
            while pred[chain[-1]] is not None:
                chain.append(pred[chain[-1]])
            denom = lam_k_minus_1 * p.q(sum(lam[k][i] for i in chain))
            ck = PBWElement(N, {f: field_divide(v, denom) for f, v in d.terms.items()}, p.char)
            z = p.multiply(y[j], xk) - ck
            if is_normal(p, z, k):
                found.append((j, z, ck))
        if not found:
            raise NoPredecessorFound(f"no active prime index gives a normal element at x_{k + 1}")
        if len(found) > 1:
            raise MultiplePredecessors(
                f"x_{k + 1}: candidates {[j + 1 for j, _, _ in found]} all give normal elements")
        j, z, ck = found[0]
        pred[k], succ[j] = j, k
        eta.append(eta[j])
        y.append(z)
        c.append(ck)
    e = EtaData(eta, pred, succ, y, c)
    for k in range(N):
        lc, f = leading_term(e.y[k])
        if f != e.ebar(k) or lc != p.q(0):
            raise LeadingTermNotFound(f"y_{k + 1} has leading term {lc} x^{f}")
    return e


def predicted_quasi_commutation_exp2(p: CGLPresentation, e: EtaData, k: int, j: int) -> int:
    """Twice the exponent u with y_k x_j = q^u x_j y_k, from the lambda data."""
    lam = p.lambda_exp2.exp2
    return sum(lam[i][j] for i in e.chain_down(k))


def solve_condition_b(p: CGLPresentation, e: EtaData) -> Optional[dict]:
    """Positive integers d per level with lambda_k^(d_eta(l)) = lambda_l^(d_eta(k))."""
    by_level: dict = {}
    for k in range(p.N):
        if e.pred[k] is not None:
            by_level.setdefault(e.eta[k], set()).add(p.lambda_k_exp2[k])
    vals = {}
    for lv, s in by_level.items():
        if len(s) != 1:
            return None
        vals[lv] = s.pop()
    if vals:
        signs = {v > 0 for v in vals.values()}
        if len(signs) != 1:
            return None
        g = 0
        for v in vals.values():
            g = gcd(g, abs(v))
    d = {}
    for lv in sorted(set(e.eta)):
        d[lv] = abs(vals[lv]) // g if lv in vals else 1
    return d


# -- normalization ---------------------------------------------------------------

@dataclass
class NormalizationData:
    nu_exp2: SkewExponentMatrix
    lambda_exp2: SkewExponentMatrix
    ebar: list
    d: Optional[dict]
    char: int = 0

    def snu(self, f: Sequence[int]) -> LaurentScalar:
        return _scramble(self.nu_exp2, f, self.char)

    def slam(self, f: Sequence[int]) -> LaurentScalar:
        return _scramble(self.lambda_exp2, f, self.char)


def _scramble(m: SkewExponentMatrix, f, char) -> LaurentScalar:
    """prod_{j<k} m_jk^(-f_j f_k)."""
    n = len(f)
    e2 = -sum(m.exp2[j][k] * f[j] * f[k] for j in range(n) if f[j] for k in range(j + 1, n))
    return LaurentScalar.qpow(e2, 1, char)


def normalization_data(p: CGLPresentation, e: EtaData) -> NormalizationData:
    lam = p.lambda_exp2.exp2
    if any(x % 2 for row in lam for x in row):
        raise ConditionAFailure("lambda exponents have no square roots in q^(Z/2)")
    nu = SkewExponentMatrix(tuple(tuple(x // 2 for x in row) for row in lam))
    return NormalizationData(nu, p.lambda_exp2, [e.ebar(k) for k in range(p.N)],
                             solve_condition_b(p, e), p.char)


def normalize_primes(p: CGLPresentation, e: EtaData, n: NormalizationData) -> EtaData:
    ybar = [e.y[k].scale(n.snu(n.ebar[k])) for k in range(p.N)]
    return EtaData(e.eta, e.pred, e.succ, e.y, e.c, ybar)


# -- interval primes, u-elements and the normalization condition --------------------

def chain_vector(e: EtaData, i: int, m: int) -> tuple:
    """e_i + e_s(i) + ... + e_{s^m(i)}; zero vector for m < 0."""
    f = [0] * e.N
    j = i
    for step in range(m + 1):
        if j is None:
            raise ChainTooShort(f"s^{step}({i + 1}) is infinite")
        f[j] = 1
        j = e.succ[j]
    return tuple(f)


class Pipeline:
    """Memoizing driver for one presentation: primes, interval primes, seeds."""

    def __init__(self, p: CGLPresentation, orientation: str = "literal"):
        self.p = p
        self.eta = eta_and_primes(p)
        self.norm = normalization_data(p, self.eta)
        self.eta = normalize_primes(p, self.eta, self.norm)
        self.orientation = orientation
        self.lambda_star = lambda_star_exp2(p)
        self._interval: dict = {}
        self._seeds: dict = {}

    def interval_prime(self, i: int, m: int) -> PBWElement:
        key = (i, m)
        if key not in self._interval:
            self._interval[key] = interval_prime(self.p, i, m, self.eta)
        return self._interval[key]

    def normalized_interval_prime(self, i: int, m: int) -> PBWElement:
        return self.interval_prime(i, m).scale(self.norm.snu(chain_vector(self.eta, i, m)))

    def seed(self, sigma: Sequence[int]) -> QuantumSeed:
        sigma = tuple(sigma)
        if sigma not in self._seeds:
            self._seeds[sigma] = build_seed(self.p, self.eta, self.norm, sigma, pipeline=self)
        return self._seeds[sigma]


def interval_prime(p: CGLPresentation, i: int, m: int, e: Optional[EtaData] = None) -> PBWElement:
    e = e or eta_and_primes(p)
    top = e.succ_power(i, m)
    if top is None:
        raise ChainTooShort(f"s^{m}({i + 1}) is infinite")
    if m == 0:
        return p.gen(i)
    view = interval_view(p, i, top)
    sub = eta_and_primes(view.presentation)
    want = tuple(x for x in chain_vector(e, i, m)[i:top + 1])
    for yk in sub.y:
        lc, f = leading_term(yk)
        if f == want:
            return view.lift(yk)
    raise LeadingTermNotFound(f"no prime of [{i + 1},{top + 1}] has leading monomial {want}")


def omega2(m: SkewExponentMatrix, f, g) -> int:
    return bicharacter2(m, f, g)


@dataclass
class CondResult:
    i: int
    m: int
    orientation: str
    u: PBWElement
    pi: object
    f: tuple
    required: object
    passed: bool

    def to_json(self) -> dict:
        return {"i": self.i + 1, "m": self.m, "orientation": self.orientation,
                "pi": str(self.pi), "f": list(self.f), "required": str(self.required),
                "pass": self.passed}


def u_and_cond(p: CGLPresentation, e: EtaData, n: NormalizationData, i: int, m: int,
               orientation: str = "literal", pipeline: Optional[Pipeline] = None) -> CondResult:
    if orientation not in ("literal", "negated"):
        raise ValueError("orientation is 'literal' or 'negated'")
    if m < 1 or e.succ_power(i, m) is None:
        raise ChainTooShort(f"s^{m}({i + 1}) is infinite")
    prime = pipeline.interval_prime if pipeline else (lambda a, b: interval_prime(p, a, b, e))
    si = e.succ[i]
    one = p.one()
    y_i_m1 = prime(i, m - 1)
    y_s_m = prime(si, m - 1)
    y_s_m1 = prime(si, m - 2) if m >= 2 else one
    y_i_m = prime(i, m)
    ei = tuple(int(a == i) for a in range(p.N))
    inner = chain_vector(e, si, m - 2) if m >= 2 else (0,) * p.N
    om = p.q(omega2(p.lambda_exp2, ei, inner))
    u = p.multiply(y_i_m1, y_s_m) - p.multiply(y_s_m1, y_i_m).scale(om)
    if orientation == "negated":
        u = -u
    pi, f = leading_term(u)
    target = tuple(fa - ea for fa, ea in zip(f, ei))
    required = n.snu(target)
    if m >= 2:
        required = required * n.snu(chain_vector(e, si, m - 1)) ** (-2)
    return CondResult(i, m, orientation, u, pi, f, required, pi == required)


def cond_table(p, e, n, orientation="literal", pipeline=None, all_m: bool = True) -> list:
    out = []
    for i in range(p.N):
        m = 1
        while e.succ_power(i, m) is not None:
            out.append(u_and_cond(p, e, n, i, m, orientation, pipeline))
            if not all_m:
                break
            m += 1
    return out


@dataclass
class RescaleSolution:
    t: Optional[list]
    obstruction: Optional[str] = None


def solve_normalizing_rescale(p: CGLPresentation, e: EtaData, n: NormalizationData,
                              orientation: str = "literal", allow_signs: bool = False,
                              pipeline: Optional[Pipeline] = None) -> RescaleSolution:
    """Unit rescaling t_j = sign_j q^(a_j/2) making every m=1 condition hold."""
    rows, rhs, sign_rows, sign_rhs = [], [], [], []
    N = p.N
    for i in range(N):
        if e.succ[i] is None:
            continue
        res = u_and_cond(p, e, n, i, 1, orientation, pipeline)
        u = is_unit_monomial(res.pi)
        if u is None:
            return RescaleSolution(None, f"exponent: leading coefficient at {i + 1} is not a unit")
        row = [-x for x in res.f]
        row[i] += 1
        row[e.succ[i]] += 1
        rows.append(row)
        rhs.append(is_unit_monomial(res.required).exponent.twice - u.exponent.twice)
        sign_rows.append(row)
        sign_rhs.append(0 if u.sign == 1 else 1)
    if not rows:
        return RescaleSolution([UnitMonomial(1, HalfInt(0))] * N)
    if allow_signs:
        signs = solve_gf2(sign_rows, sign_rhs)
        if signs is None:
            return RescaleSolution(None, "sign: no sign assignment fixes the leading coefficients")
    else:
        if any(sign_rhs):
            bad = [i + 1 for i, s in zip([i for i in range(N) if e.succ[i] is not None], sign_rhs) if s]
            return RescaleSolution(None, f"sign: leading coefficient negative at {bad}")
        signs = [0] * N
    a = solve_integer(rows, rhs)
    if a is None:
        return RescaleSolution(None, "exponent: no integral solution")
    return RescaleSolution([UnitMonomial(-1 if s else 1, HalfInt(x)) for s, x in zip(signs, a)])


def solve_field_rescale(p: CGLPresentation, e: EtaData, n: NormalizationData,
                        orientation: str = "literal") -> RescaleSolution:
    """Rescaling by arbitrary nonzero field scalars making every m=1 condition hold.

    Row i only involves t_i, t_s(i) and t_j for i < j < s(i), so fixing t_s(i)
    in increasing order of s(i) solves the system triangularly; other t_j are 1.
    """
    one = LaurentScalar.const(1, p.char)
    t = [one] * p.N
    for i in sorted((i for i in range(p.N) if e.succ[i] is not None), key=lambda i: e.succ[i]):
        res = u_and_cond(p, e, n, i, 1, orientation)
        current = res.pi * t[i]
        for j, fj in enumerate(res.f):
            for _ in range(fj):
                current = field_divide(current, t[j])
        t[e.succ[i]] = field_divide(res.required, current)
    return RescaleSolution(t)


# -- integral forms ----------------------------------------------------------------

def _denominator(c, char):
    if isinstance(c, RationalScalar):
        return c.den
    return LaurentScalar.const(1, char)


def integralize(p: CGLPresentation, ring: str = HALF_RING):
    """Rescale generators until all delta images and all y_k are integral.

    Returns (t, rescaled presentation, d_form report).
    """
    from .ore import INTEGER_RING, in_subring

    if ring == INTEGER_RING and any(x % 2 for row in p.lambda_exp2.exp2 for x in row):
        raise NonUnitLambda("lambda entries are not units of Z[q^(+-1)]")
    one = LaurentScalar.const(1, p.char)
    t = [one] * p.N
    for k in range(p.N):
        cur = rescale(p, t)
        b = one
        for (kk, j), img in cur.delta.items():
            if kk == k:
                for c in img.terms.values():
                    b = laurent_lcm(b, _denominator(c, p.char))
        trial = list(t)
        trial[k] = b
        if p.has_delta(k):
            sub = interval_view(rescale(p, trial), 0, k).presentation
            yk = eta_and_primes(sub).y[k]
            if not all(in_subring(c, ring) for c in yk.terms.values()):
                trial[k] = (p.q(p.lambda_k_exp2[k]) - one) * b
        t = trial
    out = rescale(p, t)
    e = eta_and_primes(out)
    return t, out, d_form_check(out, e.y, ring)


# -- seeds ----------------------------------------------------------------------------

def sigma_level_sets(e: EtaData, sigma: Sequence[int]) -> list:
    """For each position k the set of sigma([0,k]) at the level of sigma(k)."""
    out = []
    for k in range(len(sigma)):
        lv = e.eta[sigma[k]]
        out.append(sorted(s for s in sigma[:k + 1] if e.eta[s] == lv))
    return out


def ex_sigma(e: EtaData, sigma: Sequence[int]) -> tuple:
    N = len(sigma)
    return tuple(l for l in range(N) if any(e.eta[sigma[k]] == e.eta[sigma[l]] for k in range(l + 1, N)))


def sigma_frame_matrix(e: EtaData, n: NormalizationData, sigma: Sequence[int]) -> SkewExponentMatrix:
    sets = sigma_level_sets(e, sigma)
    nu = n.nu_exp2.exp2
    N = len(sigma)
    return SkewExponentMatrix(tuple(
        tuple(sum(nu[i][l] for i in sets[k] for l in sets[j]) for j in range(N)) for k in range(N)))


def _level_min(e: EtaData, i: int) -> int:
    return min(k for k in range(e.N) if e.eta[k] == e.eta[i])


def solve_exchange_column(matrix: SkewExponentMatrix, degrees, l: int, target_exp2: int) -> tuple:
    """The integer b with Omega(b, e_j) = q^0 (j != l), exp2 Omega(b, e_l) = target,
    and sum_j b_j deg_j = 0."""
    N = matrix.n
    a = [[matrix.exp2[i][j] for i in range(N)] for j in range(N)]
    rhs = [target_exp2 if j == l else 0 for j in range(N)]
    r = len(degrees[0]) if degrees and degrees[0] else 0
    for c in range(r):
        a.append([degrees[i][c] for i in range(N)])
        rhs.append(0)
    sol, unique = solve_rational(a, rhs)
    if sol is None:
        raise NonIntegralColumn(f"column {l + 1}: inconsistent system")
    if not unique:
        raise NonUniqueColumn(f"column {l + 1}: solution not unique")
    if any(x.denominator != 1 for x in sol):
        raise NonIntegralColumn(f"column {l + 1}: {[str(x) for x in sol]}")
    return tuple(int(x) for x in sol)


def build_seed(p: CGLPresentation, e: EtaData, n: NormalizationData, sigma: Sequence[int] = None,
               pipeline: Optional[Pipeline] = None, check_cond: bool = False,
               orientation: str = "literal") -> QuantumSeed:
    N = p.N
    sigma = tuple(range(N)) if sigma is None else tuple(sigma)
    from .ore import NotInXi, is_interval_permutation
    if not is_interval_permutation(sigma):
        raise NotInXi(f"{[s + 1 for s in sigma]} has a prefix that is not an interval")
    if check_cond:
        bad = [r for r in cond_table(p, e, n, orientation, pipeline, all_m=False) if not r.passed]
        if bad:
            raise CondViolated(f"normalization condition fails at {[r.i + 1 for r in bad]}")
    if n.d is None:
        raise CondViolated("Condition (B) fails")
    pipe = pipeline or Pipeline.__new__(Pipeline)
    if pipeline is None:
        pipe.p, pipe.eta, pipe.norm, pipe._interval = p, e, n, {}
    sets = sigma_level_sets(e, sigma)
    variables, degrees, labels = [], [], []
    for k in range(N):
        lo, m = sets[k][0], len(sets[k]) - 1
        variables.append(pipe.normalized_interval_prime(lo, m))
        if p.degrees and p.degrees[0]:
            degrees.append(tuple(sum(p.degrees[i][a] for i in sets[k]) for a in range(len(p.degrees[0]))))
        else:
            degrees.append(())
        labels.append(f"y[{sets[k][0] + 1},{sets[k][-1] + 1}]")
    matrix = sigma_frame_matrix(e, n, sigma)
    star = lambda_star_exp2(p)
    cols = {}
    for l in ex_sigma(e, sigma):
        lm = _level_min(e, sigma[l])
        if star[lm] % 2:
            raise NonIntegralColumn(f"lambda*_{lm + 1} has no square root in q^(Z/2)")
        cols[l] = solve_exchange_column(matrix, degrees if degrees[0] else None, l, star[lm] // 2)
    btilde = ExchangeMatrix.from_columns(N, cols)
    sym = {l: n.d[e.eta[sigma[l]]] for l in cols}
    frame = FrameSpec(matrix, tuple(variables), tuple(degrees), tuple(labels), p)
    seed = QuantumSeed(frame, btilde, frozenset(), sym)
    rep = validate_seed(seed)
    if not rep.ok:
        raise CondViolated(f"seed for sigma={[s + 1 for s in sigma]} invalid: {rep.violations}")
    return seed


# -- permutations ---------------------------------------------------------------------

def enumerate_xi(N: int) -> Iterator[tuple]:
    """All sigma whose prefixes are intervals (0-based), grown left or right."""
    def grow(prefix, lo, hi):
        if len(prefix) == N:
            yield tuple(prefix)
            return
        if lo > 0:
            yield from grow(prefix + [lo - 1], lo - 1, hi)
        if hi < N - 1:
            yield from grow(prefix + [hi + 1], lo, hi + 1)

    for start in range(N):
        yield from grow([start], start, start)


def gamma_element(N: int, i: int, j: int) -> tuple:
    """[i+1, ..., j, i, j+1, ..., N, i-1, ..., 1] in 1-based terms; returned 0-based."""
    seq = list(range(i + 1, j + 1)) + [i] + list(range(j + 1, N + 1)) + list(range(i - 1, 0, -1))
    return tuple(s - 1 for s in seq)


def gamma_subset(N: int) -> list:
    """Distinct elements in (i, j) order; different (i, j) can give the same permutation."""
    seen = {}
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            seen.setdefault(gamma_element(N, i, j), None)
    return list(seen)


def swap_positions(sigma: Sequence[int], k: int) -> tuple:
    s = list(sigma)
    s[k], s[k + 1] = s[k + 1], s[k]
    return tuple(s)


def xi_path(N: int, target: Sequence[int]) -> list:
    """Shortest chain id = s_0, s_1, ..., target through interval-prefix permutations, adjacent by one swap."""
    from .ore import is_interval_permutation

    start = tuple(range(N))
    target = tuple(target)
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        for k in range(N - 1):
            nxt = swap_positions(cur, k)
            if nxt not in prev and is_interval_permutation(nxt):
                prev[nxt] = cur
                queue.append(nxt)
    if target not in prev:
        raise ValueError(f"{target} not reachable through interval-prefix permutations")
    path = [target]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


# -- mutation chains -----------------------------------------------------------------

def _compare_seeds(rep: Report, expected: FrameSpec, actual: FrameSpec):
    for idx, (a, b) in enumerate(zip(expected.variables, actual.variables)):
        if a != b:
            rep.check("variables", False, f"variable {idx + 1} differs")
            break
    else:
        rep.check("variables", True)
    rep.check("matrix", expected.matrix == actual.matrix, "frame matrices differ")


def verify_mutation_chain(pipe: Pipeline, sigma: Sequence[int], sigma2: Sequence[int]) -> Report:
    sigma, sigma2 = tuple(sigma), tuple(sigma2)
    diff = [a for a in range(len(sigma)) if sigma[a] != sigma2[a]]
    if len(diff) != 2 or diff[1] != diff[0] + 1 or swap_positions(sigma, diff[0]) != sigma2:
        raise NotAdjacent(f"{sigma} and {sigma2} differ by more than one adjacent swap")
    k = diff[0]
    rep = Report("chain")
    rep.data.update({"sigma": [s + 1 for s in sigma], "sigma2": [s + 1 for s in sigma2], "k": k + 1})
    seed_a, seed_b = pipe.seed(sigma), pipe.seed(sigma2)
    tau = list(range(len(sigma)))
    tau[k], tau[k + 1] = k + 1, k
    e = pipe.eta
    if e.eta[sigma[k]] != e.eta[sigma[k + 1]]:
        rep.data["case"] = "relabel"
        expected = reindex_frame(seed_a.frame, tau)
        moved = seed_a.btilde.permuted(tau)
    else:
        # positions k+1 keeps its level set, only position k changes: no relabelling after mutation
        rep.data["case"] = "mutation"
        base = mutate_seed(seed_a, k, 1)
        other = mutate_seed(seed_a, k, -1)
        rep.check("epsilon_independent", other.frame.variables == base.frame.variables
                  and other.frame.matrix == base.frame.matrix, "epsilon = +-1 disagree")
        expected, moved = base.frame, base.btilde
        swapped = reindex_frame(base.frame, tau)
        rep.data["swapped_variables_match"] = swapped.variables == seed_b.frame.variables
    _compare_seeds(rep, expected, seed_b.frame)
    common = sorted(set(moved.ex) & set(seed_b.ex))
    rep.check("btilde_common_columns",
              all(moved.column(c) == seed_b.btilde.column(c) for c in common),
              "exchange columns differ on shared indices")
    rep.data["ex_expected"] = [c + 1 for c in moved.ex]
    rep.data["ex_actual"] = [c + 1 for c in seed_b.ex]
    return rep


# -- Laurent membership -----------------------------------------------------------------

@dataclass
class LaurentExpansion:
    terms: dict          # exponent vector (may be negative at ex/inv) -> coefficient
    denominator: tuple   # the d with M(d) * elem polynomial in the frame

    def to_json(self) -> list:
        return [{"f": list(f), "c": self.terms[f].to_pairs()} for f in sorted(self.terms)]


def _lt_matrix_inverse(seed: QuantumSeed):
    from sympy import Matrix

    cols = [leading_term(v)[1] for v in seed.frame.variables]
    m = Matrix([[cols[k][i] for k in range(seed.n)] for i in range(seed.n)])
    return m.inv()


def laurent_membership(p: CGLPresentation, seed: QuantumSeed, elem: PBWElement,
                       bounds: Optional[tuple] = None, ring: str = HALF_RING
                       ) -> Optional[LaurentExpansion]:
    from sympy import Matrix
    from .ore import in_subring
    from .qtorus import UnrealizedFrame

    frame = seed.frame
    if not frame.realized:
        raise UnrealizedFrame("Laurent membership needs a realized frame")
    N = seed.n
    cap, box = bounds if bounds is not None else (3, None)
    if box is None:
        # clearing denominators of order cap can push numerators up by cap
        box = tuple(max((f[j] for f in elem.terms), default=0) + 3 + cap for j in range(N))
    elif isinstance(box, int):
        box = (box,) * N
    inv_idx = set(seed.ex) | set(seed.inv)
    vinv = _lt_matrix_inverse(seed)
    lcs = {}
    for c in range(cap + 1):
        d = tuple(c if j in inv_idx else 0 for j in range(N))
        rest = p.multiply(frame_monomial(frame, d), elem)
        found: dict = {}
        ok = True
        while not rest.is_zero():
            coeff, h = leading_term(rest)
            g = vinv * Matrix(list(h))
            if any(x.q != 1 or x < 0 for x in g):
                ok = False
                break
            g = tuple(int(x) for x in g)
            if any(g[j] - d[j] > box[j] for j in range(N)):
                ok = False
                break
            mono = frame_monomial(frame, g)
            if g not in lcs:
                lcs[g] = leading_term(mono)[0]
            cg = field_divide(coeff, lcs[g])
            if not in_subring(cg, ring):
                ok = False
                break
            found[g] = cg
            rest = rest - mono.scale(cg)
        if ok:
            terms = {}
            for g, cg in found.items():
                f = tuple(a - b for a, b in zip(g, d))
                terms[f] = cg * p.q(-bicharacter2(frame.matrix, d, g))
            return LaurentExpansion(terms, d)
    return None


def cleared_value(p: CGLPresentation, seed: QuantumSeed, exp: LaurentExpansion) -> PBWElement:
    """M(d) * sum_f c_f M(f) evaluated in the algebra; equals M(d) * elem for a valid expansion."""
    d = exp.denominator
    out = p.zero()
    for f, c in exp.terms.items():
        g = tuple(a + b for a, b in zip(f, d))
        out = out + frame_monomial(seed.frame, g).scale(c * p.q(bicharacter2(seed.frame.matrix, d, f)))
    return out
