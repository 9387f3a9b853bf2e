"""Iterated skew polynomial (CGL) algebras as rewriting systems on PBW monomials.

Generators are 0-based internally: ``x_0, ..., x_{N-1}``.  The relation for
``j < k`` is ``x_k x_j = lambda_kj x_j x_k + delta_k(x_j)``.  Files and
displayed labels are 1-based.
"""
from __future__ import annotations

import threading
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .qtorus import SkewExponentMatrix
from .report import Report
from .scalars import (
    LaurentScalar,
    RationalScalar,
    UnitMonomial,
    dump_scalar,
    field_divide,
    format_laurent,
    is_unit_monomial,
    load_scalar,
)


class SupportViolation(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class NotInXi(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class BadBounds(ValueError):
    pass


class ZeroScale(ValueError):
    pass


class IterationCapExceeded(RuntimeError):
    pass


def revlex_key(f: Sequence[int]) -> tuple:
    """Sort key for the reverse lexicographic order: highest index compared first."""
    return tuple(reversed(f))


class PBWElement:
    """Finite sum of ordered monomials x^f with scalar coefficients."""

    __slots__ = ("n", "terms", "char")

    def __init__(self, n: int, terms=None, char: int = 0):
        self.n = n
        self.char = char
        clean = {}
        if terms:
            for f, c in dict(terms).items():
                if isinstance(c, int):
                    c = LaurentScalar.const(c, char)
                if not c.is_zero():
                    clean[tuple(f)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int, char: int = 0) -> "PBWElement":
        return cls(n, {}, char)

    @classmethod
    def scalar(cls, n: int, c, char: int = 0) -> "PBWElement":
        return cls(n, {(0,) * n: c}, char)

    @classmethod
    def monomial(cls, f: Sequence[int], c=1, char: int = 0) -> "PBWElement":
        return cls(len(f), {tuple(f): c}, char)

    @classmethod
    def gen(cls, n: int, k: int, char: int = 0) -> "PBWElement":
        f = [0] * n
        f[k] = 1
        return cls(n, {tuple(f): 1}, char)

    def _check(self, other: "PBWElement"):
        if other.n != self.n:
            raise ValueError(f"PBW length {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for f, c in other.terms.items():
            terms[f] = terms[f] + c if f in terms else c
        return PBWElement(self.n, terms, self.char)

    def __neg__(self):
        return PBWElement(self.n, {f: -c for f, c in self.terms.items()}, self.char)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PBWElement":
        if isinstance(c, UnitMonomial):
            c = c.to_scalar(self.char)
        if isinstance(c, int):
            c = LaurentScalar.const(c, self.char)
        return PBWElement(self.n, {f: v * c for f, v in self.terms.items()}, self.char)

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support_vars(self) -> set:
        return {i for f in self.terms for i, e in enumerate(f) if e}

    def coefficient(self, f) -> object:
        return self.terms.get(tuple(f), LaurentScalar({}, self.char))

    def degree(self, degrees: Sequence[Sequence[int]]) -> Optional[tuple]:
        """Common grading of all monomials, or None when inhomogeneous."""
        r = len(degrees[0]) if degrees else 0
        found = None
        for f in self.terms:
            d = tuple(sum(f[i] * degrees[i][a] for i in range(self.n)) for a in range(r))
            if found is None:
                found = d
            elif d != found:
                return None
        return found if found is not None else (0,) * r

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda fc: revlex_key(fc[0]), reverse=True)

    def dump(self) -> list:
        return [{"f": list(f), "c": dump_scalar(c)} for f, c in self.sorted_terms()]

    @classmethod
    def load(cls, obj, char: int = 0, n: Optional[int] = None) -> "PBWElement":
        terms = {tuple(t["f"]): load_scalar(t["c"], char) for t in obj}
        if n is None:
            if not terms:
                raise ValueError("cannot infer length of empty PBW dump")
            n = len(next(iter(terms)))
        return cls(n, terms, char)

    def format(self, labels: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        labels = labels or [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for f, c in self.sorted_terms():
            mono = "*".join(
                labels[i] if e == 1 else f"{labels[i]}^{e}" for i, e in enumerate(f) if e)
            if isinstance(c, RationalScalar):
                coeff = f"({c})"
            else:
                coeff = format_laurent(c.terms)
                if len(c.terms) > 1:
                    coeff = f"({coeff})"
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PBWElement({self.format()})"


def leading_term(a: PBWElement) -> Tuple[object, tuple]:
    """(leading coefficient, reverse-lex maximal exponent)."""
    if a.is_zero():
        raise ZeroElement("leading term of zero")
    f = max(a.terms, key=revlex_key)
    return a.terms[f], f


def _add_into(acc: dict, f: tuple, c):
    if f in acc:
        s = acc[f] + c
        if s.is_zero():
            del acc[f]
        else:
            acc[f] = s
    elif not c.is_zero():
        acc[f] = c


class CGLPresentation:
    """Iterated Ore extension data: lambda matrix, delta images, grading.

    ``lambda_exp2[k][j]`` is twice the exponent of lambda_kj; ``lambda_k_exp2[k]``
    twice the exponent of the h_k-eigenvalue lambda_k; ``delta[(k, j)]`` the image
    delta_k(x_j) for j < k (absent means zero).
    """

    def __init__(self, lambda_exp2, lambda_k_exp2, delta, degrees=None,
                 labels=None, char: int = 0):
        if not isinstance(lambda_exp2, SkewExponentMatrix):
            lambda_exp2 = SkewExponentMatrix(tuple(map(tuple, lambda_exp2)))
        self.lambda_exp2 = lambda_exp2
        self.N = lambda_exp2.n
        self.lambda_k_exp2 = tuple(int(x) for x in lambda_k_exp2)
        if len(self.lambda_k_exp2) != self.N:
            raise ValueError("lambda_k_exp2 length")
        self.char = char
        self.delta: Dict[tuple, PBWElement] = {}
        for (k, j), img in dict(delta).items():
            if not j < k:
                raise ValueError(f"delta key ({k},{j}) needs j < k")
            if img.n != self.N:
                raise ValueError("delta image length")
            if img.char != char:
                img = PBWElement(img.n, {f: _recharacter(c, char) for f, c in img.terms.items()}, char)
            if not img.is_zero():
                bad = [i for i in img.support_vars() if i >= k]
                if bad:
                    raise SupportViolation(f"delta_{k + 1}(x_{j + 1}) uses x_{bad[0] + 1}")
                self.delta[(k, j)] = img
        self.degrees = tuple(tuple(d) for d in (degrees or [() for _ in range(self.N)]))
        self.labels = tuple(labels or [f"x{i + 1}" for i in range(self.N)])
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._lock = threading.Lock()

    # -- basic elements ---------------------------------------------------
    def zero(self) -> PBWElement:
        return PBWElement.zero(self.N, self.char)

    def one(self) -> PBWElement:
        return PBWElement.scalar(self.N, 1, self.char)

    def gen(self, k: int) -> PBWElement:
        return PBWElement.gen(self.N, k, self.char)

    def scalar(self, c) -> PBWElement:
        return PBWElement.scalar(self.N, c, self.char)

    def monomial(self, f, c=1) -> PBWElement:
        return PBWElement(self.N, {tuple(f): c}, self.char)

    def element(self, terms: dict) -> PBWElement:
        return PBWElement(self.N, terms, self.char)

    def q(self, exp2: int, coeff: int = 1) -> LaurentScalar:
        return LaurentScalar.qpow(exp2, coeff, self.char)

    def lam(self, k: int, j: int) -> LaurentScalar:
        return self.q(self.lambda_exp2.exp2[k][j])

    def has_delta(self, k: int) -> bool:
        return any(kk == k for kk, _ in self.delta)

    def theta_exp2(self, k: int, f: Sequence[int]) -> int:
        """Twice the exponent of the theta_k-eigenvalue of x^f."""
        row = self.lambda_exp2.exp2[k]
        return sum(row[i] * e for i, e in enumerate(f) if e)

    # -- multiplication ---------------------------------------------------
    def _gen_times(self, k: int, g: tuple) -> dict:
        """x_k * x^g in normal form, as {exponent: coefficient}."""
        key = (k, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        j = next((i for i, e in enumerate(g) if e), None)
        if j is None or j >= k:
            h = list(g)
            h[k] += 1
            res = {tuple(h): self.q(0)}
        else:
            g1 = list(g)
            g1[j] -= 1
            g1 = tuple(g1)
            res: dict = {}
            lam = self.lam(k, j)
            for h, c in self._gen_times(k, g1).items():
                for h2, c2 in self._gen_times(j, h).items():
                    _add_into(res, h2, c * c2 * lam)
            d = self.delta.get((k, j))
            if d is not None:
                for f, c in d.terms.items():
                    for h2, c2 in self._mono_times(f, g1).items():
                        _add_into(res, h2, c * c2)
        with self._lock:
            self._gen_cache[key] = res
        return res

    def _mono_times(self, f: tuple, g: tuple) -> dict:
        """x^f * x^g in normal form."""
        last = max((i for i, e in enumerate(f) if e), default=None)
        if last is None:
            return {g: self.q(0)}
        first = next((i for i, e in enumerate(g) if e), None)
        if first is None or last <= first:
            return {tuple(a + b for a, b in zip(f, g)): self.q(0)}
        key = (f, g)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        f1 = list(f)
        f1[last] -= 1
        f1 = tuple(f1)
        res: dict = {}
        for h, c in self._gen_times(last, g).items():
            for h2, c2 in self._mono_times(f1, h).items():
                _add_into(res, h2, c * c2)
        with self._lock:
            self._mono_cache[key] = res
        return res

    def multiply(self, a: PBWElement, b: PBWElement) -> PBWElement:
        acc: dict = {}
        for f, c in a.terms.items():
            for g, d in b.terms.items():
                cd = c * d
                for h, e in self._mono_times(f, g).items():
                    _add_into(acc, h, cd * e)
        return PBWElement(self.N, acc, self.char)

    def product(self, *elems: PBWElement) -> PBWElement:
        out = self.one()
        for e in elems:
            out = self.multiply(out, e)
        return out

    def power(self, a: PBWElement, n: int) -> PBWElement:
        out = self.one()
        for _ in range(n):
            out = self.multiply(out, a)
        return out

    def theta(self, k: int, r: PBWElement) -> PBWElement:
        return PBWElement(self.N, {f: c * self.q(self.theta_exp2(k, f)) for f, c in r.terms.items()},
                          self.char)

    def ordered_product(self, order: Sequence[int], f: Sequence[int]) -> PBWElement:
        """x_{order[0]}^{f[0]} * ... * x_{order[-1]}^{f[-1]} in normal form."""
        out = self.one()
        for idx, e in zip(order, f):
            if e:
                mono = [0] * self.N
                mono[idx] = e
                out = self.multiply(out, self.monomial(mono))
        return out

    def __eq__(self, other):
        if not isinstance(other, CGLPresentation):
            return NotImplemented
        return (self.lambda_exp2 == other.lambda_exp2 and self.lambda_k_exp2 == other.lambda_k_exp2
                and self.delta == other.delta and self.degrees == other.degrees
                and self.labels == other.labels and self.char == other.char)

    __hash__ = object.__hash__

    def relation_text(self, k: int, j: int) -> str:
        lab = self.labels
        rhs = self.multiply(self.gen(k), self.gen(j))
        return f"{lab[k]}*{lab[j]} = {rhs.format(lab)}"

    # -- files ------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "N": self.N,
            "coeff": {"char": self.char},
            "lambda_exp2": [list(r) for r in self.lambda_exp2.exp2],
            "lambda_k_exp2": list(self.lambda_k_exp2),
            "delta": {f"{k + 1},{j + 1}": img.dump() for (k, j), img in sorted(self.delta.items())},
            "degrees": [list(d) for d in self.degrees],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CGLPresentation":
        n = int(obj["N"])
        char = int(obj.get("coeff", {}).get("char", 0))
        delta = {}
        for key, dump in obj.get("delta", {}).items():
            k, j = (int(x) - 1 for x in key.split(","))
            delta[(k, j)] = PBWElement.load(dump, char, n)
        return cls(obj["lambda_exp2"], obj["lambda_k_exp2"], delta,
                   degrees=obj.get("degrees"), labels=obj.get("labels"), char=char)

    def with_char(self, char: int) -> "CGLPresentation":
        """Reduce all coefficients modulo a prime (or return self for the same char)."""
        if char == self.char:
            return self
        return CGLPresentation(self.lambda_exp2, self.lambda_k_exp2,
                               {key: PBWElement(self.N, {f: _recharacter(c, char) for f, c in img.terms.items()}, char)
                                for key, img in self.delta.items()},
                               self.degrees, self.labels, char)


def _recharacter(c, char: int):
    if isinstance(c, RationalScalar):
        return field_divide(_recharacter(c.num, char), _recharacter(c.den, char))
    if isinstance(c, int):
        return LaurentScalar.const(c, char)
    if c.char and c.char != char:
        raise ValueError("cannot change a positive characteristic")
    return LaurentScalar(c.terms, char)


def multiply(p: CGLPresentation, a: PBWElement, b: PBWElement) -> PBWElement:
    return p.multiply(a, b)


def skew_delta(p: CGLPresentation, k: int, r: PBWElement) -> PBWElement:
    """x_k r - theta_k(r) x_k for r supported on variables below k."""
    if any(i >= k for i in r.support_vars()):
        raise SupportViolation(f"element uses variables at or above x_{k + 1}")
    xk = p.gen(k)
    return p.multiply(xk, r) - p.multiply(p.theta(k, r), xk)


def scramble_scalar(p: CGLPresentation, f: Sequence[int], exp2_matrix=None) -> LaurentScalar:
    """prod_{j<k} m_kj^(f_j f_k) for the matrix (default lambda): the scalar of
    lt(x_N^{f_N} ... x_1^{f_1})."""
    m = (exp2_matrix or p.lambda_exp2).exp2
    n = len(f)
    e2 = sum(m[k][j] * f[j] * f[k] for j in range(n) for k in range(j + 1, n))
    return p.q(e2)


# -- validation ---------------------------------------------------------------

def infer_lambda_k(p: CGLPresentation) -> Dict[int, set]:
    """Twice-exponents of lambda_k read off each monomial of each delta image."""
    out: Dict[int, set] = {}
    lam = p.lambda_exp2.exp2
    for (k, j), img in p.delta.items():
        for f in img.terms:
            e2 = -lam[k][j] + sum(lam[k][i] * m for i, m in enumerate(f) if m)
            out.setdefault(k, set()).add(e2)
    return out


def infer_lambda_star(p: CGLPresentation) -> Dict[int, set]:
    """Twice-exponents of lambda*_j from the reversed-order derivations
    delta*_j(x_k) = -lambda_jk delta_k(x_j)."""
    out: Dict[int, set] = {}
    lam = p.lambda_exp2.exp2
    for (k, j), img in p.delta.items():
        for f in img.terms:
            e2 = -lam[j][k] + sum(lam[j][i] * m for i, m in enumerate(f) if m)
            out.setdefault(j, set()).add(e2)
    return out


def lambda_star_exp2(p: CGLPresentation) -> Tuple[int, ...]:
    """lambda*_j where determined by a nonzero reverse derivation; else lambda_j."""
    inferred = infer_lambda_star(p)
    out = []
    for j in range(p.N):
        vals = inferred.get(j)
        out.append(min(vals) if vals else p.lambda_k_exp2[j])
    return tuple(out)


def is_interval_permutation(sigma: Sequence[int]) -> bool:
    """Every prefix sigma([0,k]) is an interval (0-based)."""
    lo = hi = None
    for s in sigma:
        if lo is None:
            lo = hi = s
        elif s == lo - 1:
            lo = s
        elif s == hi + 1:
            hi = s
        else:
            return False
    return sorted(sigma) == list(range(len(sigma)))


def validate_cgl(p: CGLPresentation, with_conditions: bool = True) -> Report:
    """Check the CGL axioms, symmetry, confluence and Conditions (A)/(B)."""
    rep = Report("cgl")
    N = p.N
    lam = p.lambda_exp2.exp2
    for k in range(N):
        rep.check("lambda_k_nonzero", p.lambda_k_exp2[k] != 0, f"lambda_{k + 1} is a root of unity")
    symmetric = True
    for (k, j), img in sorted(p.delta.items()):
        sup = img.support_vars()
        if any(i <= j or i >= k for i in sup):
            symmetric = False
            rep.violations.append(f"symmetric: delta_{k + 1}(x_{j + 1}) leaves x_{j + 2}..x_{k}")
        if p.degrees and p.degrees[0]:
            deg = img.degree(p.degrees)
            want = tuple(a + b for a, b in zip(p.degrees[k], p.degrees[j]))
            rep.check("homogeneous", deg == want,
                      f"delta_{k + 1}(x_{j + 1}) has degree {deg}, expected {want}")
    rep.checks["symmetric"] = symmetric

    inferred = infer_lambda_k(p)
    rep.data["lambda_k_inferred"] = {}
    for k, vals in sorted(inferred.items()):
        rep.check("lambda_k_consistent", len(vals) == 1,
                  f"lambda_{k + 1} inferred inconsistently: {sorted(vals)}")
        v = min(vals)
        rep.data["lambda_k_inferred"][k + 1] = v
        rep.check("lambda_k_matches_input", v == p.lambda_k_exp2[k],
                  f"lambda_{k + 1}: inferred exp2 {v}, supplied {p.lambda_k_exp2[k]}")
    star = infer_lambda_star(p)
    for j, vals in sorted(star.items()):
        rep.check("lambda_star_consistent", len(vals) == 1,
                  f"lambda*_{j + 1} inferred inconsistently: {sorted(vals)}")
        rep.check("lambda_star_nonzero", 0 not in vals, f"lambda*_{j + 1} is a root of unity")

    # overlap ambiguities x_k x_j x_i resolve the same way both ways
    gens = [p.gen(i) for i in range(N)]
    for k in range(N):
        for j in range(k):
            for i in range(j):
                left = p.multiply(p.multiply(gens[k], gens[j]), gens[i])
                right = p.multiply(gens[k], p.multiply(gens[j], gens[i]))
                rep.check("confluent", left == right,
                          f"overlap x{k + 1} x{j + 1} x{i + 1} does not resolve")

    maxdeg = max((sum(f) for img in p.delta.values() for f in img.terms), default=0)
    cap = N * (maxdeg + 1)
    nilpotent = True
    for k in range(N):
        if not p.has_delta(k):
            continue
        for j in range(k):
            r = gens[j]
            for _ in range(cap):
                if r.is_zero():
                    break
                r = skew_delta(p, k, r)
            if not r.is_zero():
                nilpotent = False
                rep.violations.append(f"nilpotent: delta_{k + 1} on x_{j + 1} not zero after {cap} steps")
    rep.checks["locally_nilpotent"] = nilpotent

    rep.check("condition_A", all(x % 2 == 0 for row in lam for x in row),
              "lambda exponents are not all integral (no square roots in q^(Z/2))")

    if with_conditions and rep.ok:
        from .primes import eta_and_primes, solve_condition_b
        try:
            eta = eta_and_primes(p)
        except Exception as exc:  # report, do not raise
            rep.check("primes", False, str(exc))
        else:
            d = solve_condition_b(p, eta)
            rep.check("condition_B", d is not None, "no positive integers d satisfy Condition (B)")
            rep.data["condition_B_d"] = d
            rep.data["levels"] = eta.levels_1based()
    return rep


# -- transforms -----------------------------------------------------------------

def _as_scalar(t, char):
    if isinstance(t, UnitMonomial):
        return t.to_scalar(char)
    if isinstance(t, int):
        return LaurentScalar.const(t, char)
    return t


def _tpow(t: Sequence, f: Sequence[int], char: int):
    out = LaurentScalar.const(1, char)
    for ti, e in zip(t, f):
        for _ in range(e):
            out = out * ti
    return out


def rescale(p: CGLPresentation, t: Sequence) -> CGLPresentation:
    """Presentation on the generators t_j x_j."""
    t = [_as_scalar(x, p.char) for x in t]
    if len(t) != p.N:
        raise ValueError("rescale vector length")
    if any(x.is_zero() for x in t):
        raise ZeroScale("rescaling by zero")
    delta = {}
    for (k, j), img in p.delta.items():
        tk_tj = t[k] * t[j]
        delta[(k, j)] = PBWElement(
            p.N, {f: field_divide(c * tk_tj, _tpow(t, f, p.char)) for f, c in img.terms.items()}, p.char)
    return CGLPresentation(p.lambda_exp2, p.lambda_k_exp2, delta, p.degrees, p.labels, p.char)


def to_rescaled(elem: PBWElement, t: Sequence, char: int = 0) -> PBWElement:
    """Rewrite an element in the basis of the rescaled generators t_j x_j."""
    t = [_as_scalar(x, char) for x in t]
    return PBWElement(elem.n, {f: field_divide(c, _tpow(t, f, char)) for f, c in elem.terms.items()}, char)


def from_rescaled(elem: PBWElement, t: Sequence, char: int = 0) -> PBWElement:
    t = [_as_scalar(x, char) for x in t]
    return PBWElement(elem.n, {f: c * _tpow(t, f, char) for f, c in elem.terms.items()}, char)


def express_in_order(p: CGLPresentation, elem: PBWElement, order: Sequence[int]) -> PBWElement:
    """Coordinates of ``elem`` in the PBW basis of ordered products along ``order``.

    The result's exponent vector is indexed by position in ``order``.
    """
    pos = {g: a for a, g in enumerate(order)}
    out: dict = {}
    rest = elem
    cache: dict = {}
    while not rest.is_zero():
        c, f = leading_term(rest)
        fs = tuple(f[g] for g in order)
        mono = cache.get(fs)
        if mono is None:
            mono = cache[fs] = p.ordered_product(order, fs)
        c0, f0 = leading_term(mono)
        assert f0 == f, "ordered product has unexpected leading monomial"
        coef = field_divide(c, c0)
        _add_into(out, fs, coef)
        rest = rest - mono.scale(coef)
    del pos
    return PBWElement(p.N, out, p.char)


def evaluate_in_order(p: CGLPresentation, elem: PBWElement, order: Sequence[int]) -> PBWElement:
    """Inverse of :func:`express_in_order`."""
    out = p.zero()
    for f, c in elem.terms.items():
        out = out + p.ordered_product(order, f).scale(c)
    return out


def sigma_presentation(p: CGLPresentation, sigma: Sequence[int],
                       check_symmetric: bool = True) -> CGLPresentation:
    """Presentation with generators x_sigma(0), ..., x_sigma(N-1) adjoined in that order."""
    sigma = list(sigma)
    if not is_interval_permutation(sigma):
        raise NotInXi(f"{[s + 1 for s in sigma]} has a prefix that is not an interval")
    if check_symmetric:
        for (k, j), img in p.delta.items():
            if any(i <= j or i >= k for i in img.support_vars()):
                raise NotSymmetric(f"delta_{k + 1}(x_{j + 1}) is not interval-supported")
    N = p.N
    star = lambda_star_exp2(p)
    lam = p.lambda_exp2
    new_lam = lam.permuted(sigma)
    new_lk = [p.lambda_k_exp2[s] if s >= sigma[0] else star[s] for s in sigma]
    delta = {}
    for a in range(N):
        for b in range(a):
            ka, kb = sigma[a], sigma[b]
            xa, xb = p.gen(ka), p.gen(kb)
            diff = p.multiply(xa, xb) - p.multiply(xb, xa).scale(p.lam(ka, kb))
            if not diff.is_zero():
                delta[(a, b)] = express_in_order(p, diff, sigma)
    return CGLPresentation(new_lam, new_lk, delta,
                           [p.degrees[s] for s in sigma], [p.labels[s] for s in sigma], p.char)


class IntervalView:
    """The subalgebra generated by x_j..x_k, re-based to indices 0..k-j."""

    def __init__(self, parent: CGLPresentation, j: int, k: int):
        if not (0 <= j <= k < parent.N):
            raise BadBounds(f"interval [{j + 1},{k + 1}] outside [1,{parent.N}]")
        self.parent = parent
        self.lo, self.hi = j, k
        idx = list(range(j, k + 1))
        delta = {}
        for (b, a), img in parent.delta.items():
            if j <= a < b <= k:
                if any(i < j or i > k for i in img.support_vars()):
                    raise NotSymmetric(f"delta_{b + 1}(x_{a + 1}) leaves the interval")
                delta[(b - j, a - j)] = PBWElement(
                    len(idx), {f[j:k + 1]: c for f, c in img.terms.items()}, parent.char)
        self.presentation = CGLPresentation(
            parent.lambda_exp2.submatrix(idx), [parent.lambda_k_exp2[i] for i in idx], delta,
            [parent.degrees[i] for i in idx], [parent.labels[i] for i in idx], parent.char)

    def lift(self, elem: PBWElement) -> PBWElement:
        pad_l, pad_r = (0,) * self.lo, (0,) * (self.parent.N - 1 - self.hi)
        return PBWElement(self.parent.N, {pad_l + f + pad_r: c for f, c in elem.terms.items()},
                          self.parent.char)

    def restrict(self, elem: PBWElement) -> PBWElement:
        if any(i < self.lo or i > self.hi for i in elem.support_vars()):
            raise SupportViolation("element not in the interval subalgebra")
        return PBWElement(self.hi - self.lo + 1,
                          {f[self.lo:self.hi + 1]: c for f, c in elem.terms.items()}, self.parent.char)


def interval_view(p: CGLPresentation, j: int, k: int) -> IntervalView:
    return IntervalView(p, j, k)


# -- integral forms -----------------------------------------------------------------

INTEGER_RING = "Z[q^(+-1)]"
HALF_RING = "Z[q^(+-1/2)]"


def in_subring(c, ring: str) -> bool:
    if not isinstance(c, LaurentScalar):
        return False
    return ring == HALF_RING or c.has_integer_exponents()


def d_form_check(p: CGLPresentation, extra: Iterable[PBWElement] = (), ring: str = HALF_RING) -> Report:
    """Are lambda entries units and all delta images and extras integral over ``ring``?"""
    rep = Report("dform")
    rep.data["ring"] = ring if not p.char else ring.replace("Z", f"F_{p.char}")
    need_even = ring == INTEGER_RING
    lam_ok = all(x % 2 == 0 for row in p.lambda_exp2.exp2 for x in row) if need_even else True
    lam_ok &= all(x % 2 == 0 for x in p.lambda_k_exp2) if need_even else True
    rep.check("lambda_units", lam_ok, "some lambda entry is not a unit of the subring")
    for (k, j), img in sorted(p.delta.items()):
        for f, c in img.terms.items():
            rep.check("delta_integral", in_subring(c, ring),
                      f"delta_{k + 1}(x_{j + 1}) has coefficient {c}")
    for idx, e in enumerate(extra):
        for f, c in e.terms.items():
            rep.check("extra_integral", in_subring(c, ring), f"element {idx + 1} has coefficient {c}")
    return rep


def is_unit(c) -> bool:
    return is_unit_monomial(c) is not None
