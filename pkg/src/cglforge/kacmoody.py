"""Symmetrizable Cartan data, Weyl group words and the Schubert cell seed they determine."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Sequence

from .qtorus import FrameSpec, SkewExponentMatrix, bicharacter2
from .report import Report
from .scalars import HalfInt
from .seed import ExchangeMatrix, QuantumSeed, validate_seed


class NotReduced(ValueError):
    pass


class UndefinedPairing(ValueError):
    pass


class CompatibilityViolation(AssertionError):
    pass


class BadCartan(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    a: tuple
    d: tuple
    labels: tuple = ()

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.a)
        d = tuple(int(x) for x in self.d)
        r = len(a)
        if any(len(row) != r for row in a) or len(d) != r:
            raise BadCartan("Cartan matrix must be square and match d")
        for i in range(r):
            if a[i][i] != 2:
                raise BadCartan(f"a[{i}][{i}] != 2")
            if d[i] <= 0:
                raise BadCartan("symmetrizers must be positive")
            for j in range(r):
                if i != j and a[i][j] > 0:
                    raise BadCartan(f"a[{i}][{j}] > 0")
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise BadCartan(f"d does not symmetrize a at ({i},{j})")
        g = 0
        for x in d:
            g = gcd(g, x)
        if g != 1:
            raise BadCartan("symmetrizers must have gcd 1")
        labels = tuple(self.labels) if self.labels else tuple(range(1, r + 1))
        if len(labels) != r or len(set(labels)) != r:
            raise BadCartan("labels must be distinct, one per node")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.a)

    def index(self, label) -> int:
        try:
            return self.labels.index(int(label))
        except ValueError:
            raise ValueError(f"no node labelled {label}") from None

    def simple_root(self, i: int) -> "Weight":
        return Weight.root(self.rank, i)

    def fundamental_weight(self, i: int) -> "Weight":
        w = [0] * self.rank
        w[i] = 1
        return Weight(tuple(w), (0,) * self.rank)

    @classmethod
    def from_json(cls, obj: dict) -> "CartanDatum":
        r = obj.get("rank", len(obj["a"]))
        if len(obj["a"]) != r:
            raise BadCartan("rank disagrees with the matrix size")
        return cls(obj["a"], obj["d"], tuple(obj.get("labels") or ()))

    def to_json(self) -> dict:
        return {"rank": self.rank, "a": [list(r) for r in self.a], "d": list(self.d),
                "labels": list(self.labels)}


def cartan_b2() -> CartanDatum:
    """Node 1 long, node 2 short."""
    return CartanDatum(((2, -1), (-2, 2)), (2, 1))


def cartan_a2_twisted() -> CartanDatum:
    return CartanDatum(((2, -4), (-1, 2)), (1, 4), (0, 1))


@dataclass(frozen=True)
class Weight:
    """sum_i w_part[i] * fundamental_i + sum_j q_part[j] * alpha_j."""

    w_part: tuple
    q_part: tuple

    @classmethod
    def root(cls, r: int, i: int) -> "Weight":
        q = [0] * r
        q[i] = 1
        return cls((0,) * r, tuple(q))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.w_part, other.w_part)),
                      tuple(a + b for a, b in zip(self.q_part, other.q_part)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.w_part), tuple(-a for a in self.q_part))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scaled(self, n: int) -> "Weight":
        return Weight(tuple(n * a for a in self.w_part), tuple(n * a for a in self.q_part))

    @property
    def in_root_lattice(self) -> bool:
        return not any(self.w_part)

    def is_positive_root_combination(self) -> bool:
        return self.in_root_lattice and any(self.q_part) and all(x >= 0 for x in self.q_part)

    def format(self, c: Optional[CartanDatum] = None) -> str:
        labels = c.labels if c else tuple(range(1, len(self.q_part) + 1))
        parts = []
        for name, vec in (("w", self.w_part), ("a", self.q_part)):
            for lab, x in zip(labels, vec):
                if x:
                    parts.append(f"{x}*{name}{lab}" if x != 1 else f"{name}{lab}")
        return " + ".join(parts) if parts else "0"


def coroot_pairing(c: CartanDatum, i: int, mu: Weight) -> int:
    """<h_i, mu>."""
    return mu.w_part[i] + sum(c.a[i][j] * x for j, x in enumerate(mu.q_part))


def reflect(c: CartanDatum, i: int, mu: Weight) -> Weight:
    return mu - c.simple_root(i).scaled(coroot_pairing(c, i, mu))


def act(c: CartanDatum, word: Sequence[int], mu: Weight) -> Weight:
    """s_{word[0]} s_{word[1]} ... s_{word[-1]} applied to mu (0-based node indices)."""
    for i in reversed(word):
        mu = reflect(c, i, mu)
    return mu


def pairing(c: CartanDatum, mu: Weight, nu: Weight) -> HalfInt:
    if any(mu.w_part) and any(nu.w_part):
        raise UndefinedPairing("both arguments have a fundamental weight component")
    r = c.rank
    total = 0
    for i in range(r):
        for j in range(r):
            total += mu.q_part[i] * nu.q_part[j] * c.d[i] * c.a[i][j]
    for i in range(r):
        total += mu.w_part[i] * nu.q_part[i] * c.d[i]
        total += nu.w_part[i] * mu.q_part[i] * c.d[i]
    return HalfInt(2 * total)


def _pair_int(c: CartanDatum, mu: Weight, nu: Weight) -> int:
    v = pairing(c, mu, nu)
    return v.twice // 2


def parse_word(c: CartanDatum, word) -> tuple:
    """Node indices (0-based) from labels given as a sequence or comma-separated string."""
    if isinstance(word, str):
        word = [w for w in word.replace(" ", "").split(",") if w]
    return tuple(c.index(x) for x in word)


def root_sequence(c: CartanDatum, word: Sequence[int]) -> list:
    """beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}); word holds 0-based node indices."""
    out = []
    for k, i in enumerate(word):
        beta = act(c, word[:k], c.simple_root(i))
        if not beta.is_positive_root_combination():
            raise NotReduced(f"beta_{k + 1} = {beta.format(c)} is not positive")
        out.append(beta)
    return out


@dataclass
class SchubertBlueprint:
    cartan: CartanDatum
    word: tuple
    betas: list
    lambda_exp2: SkewExponentMatrix
    lambda_k_exp2: tuple
    r_w: SkewExponentMatrix
    btilde: ExchangeMatrix
    eta: tuple
    exw: tuple
    a_scalars: dict
    symmetrizers: dict
    degrees: tuple
    report: Report = field(default_factory=lambda: Report("blueprint"))

    @property
    def N(self) -> int:
        return len(self.word)

    def seed(self) -> QuantumSeed:
        labels = tuple(f"D{k + 1}" for k in range(self.N))
        frame = FrameSpec(self.r_w, (), self.degrees, labels)
        return QuantumSeed(frame, self.btilde, frozenset(), dict(self.symmetrizers))

    def to_json(self) -> dict:
        from .seed import dump_seed

        out = dump_seed(self.seed())
        out.update({
            "cartan": self.cartan.to_json(),
            "word": [self.cartan.labels[i] for i in self.word],
            "eta": [self.cartan.labels[i] for i in self.eta],
            "exw": [k + 1 for k in self.exw],
            "a_scalars": {f"{j + 1},{k + 1}": str(v) for (j, k), v in sorted(self.a_scalars.items())},
            "lambda_exp2": [list(r) for r in self.lambda_exp2.exp2],
            "compat": self.report.to_json(),
        })
        return out


def _successor(word: Sequence[int]) -> list:
    succ = [None] * len(word)
    for k, i in enumerate(word):
        for m in range(k + 1, len(word)):
            if word[m] == i:
                succ[k] = m
                break
    return succ


def blueprint(c: CartanDatum, word: Sequence[int], strict: bool = True) -> SchubertBlueprint:
    word = tuple(word)
    N = len(word)
    betas = root_sequence(c, word)
    lam = [[0] * N for _ in range(N)]
    for k in range(N):
        for j in range(k):
            v = 2 * _pair_int(c, betas[k], betas[j])
            lam[k][j], lam[j][k] = v, -v
    lam_k = tuple(4 * c.d[i] for i in word)

    # (w_{<=k} - 1) fundamental_{i_k}: lies in the root lattice
    moved = [act(c, word[:k + 1], c.fundamental_weight(i)) - c.fundamental_weight(i)
             for k, i in enumerate(word)]
    r = [[0] * N for _ in range(N)]
    for k in range(N):
        for j in range(k):
            v = -(_pair_int(c, moved[k], moved[j])
                  + 2 * _pair_int(c, c.fundamental_weight(word[k]), moved[j]))
            r[k][j], r[j][k] = v, -v
    r_w = SkewExponentMatrix(tuple(map(tuple, r)))

    succ = _successor(word)
    pred = [None] * N
    for k, s in enumerate(succ):
        if s is not None:
            pred[s] = k
    inf = N + 1
    sv = [inf if s is None else s for s in succ]
    exw = tuple(k for k in range(N) if succ[k] is not None)
    cols = {}
    for k in exw:
        col = []
        for j in range(N):
            if j == pred[k]:
                col.append(1)
            elif j == succ[k]:
                col.append(-1)
            elif j < k < sv[j] < sv[k]:
                col.append(c.a[word[j]][word[k]])
            elif k < j < sv[k] < sv[j]:
                col.append(-c.a[word[j]][word[k]])
            else:
                col.append(0)
        cols[k] = tuple(col)
    btilde = ExchangeMatrix.from_columns(N, cols)

    a_scalars = {}
    for j in range(N):
        for k in range(j + 1, N):
            v = act(c, word[j:k + 1], c.fundamental_weight(word[k])) - c.fundamental_weight(word[k])
            a_scalars[(j, k)] = HalfInt(_pair_int(c, v, v) // 2)   # stores twice of norm^2 / 4
    degrees = tuple((-m).q_part for m in moved)

    bp = SchubertBlueprint(c, word, betas, SkewExponentMatrix(tuple(map(tuple, lam))), lam_k, r_w,
                           btilde, tuple(word), exw, a_scalars,
                           {k: c.d[word[k]] for k in exw}, degrees)
    rep = bp.report
    for k in exw:
        col = cols[k]
        for l in range(N):
            e = [0] * N
            e[l] = 1
            want = -2 * c.d[word[k]] if l == k else 0
            rep.check("omega_identity", bicharacter2(r_w, col, e) == want,
                      f"column {k + 1}, row {l + 1}")
        total = [0] * c.rank
        for j in range(N):
            for a in range(c.rank):
                total[a] += col[j] * moved[j].q_part[a]
        rep.check("grading_identity", not any(total), f"column {k + 1} sums to {total}")
    seed_rep = validate_seed(bp.seed())
    rep.check("seed", seed_rep.ok, "; ".join(seed_rep.violations))
    if strict and not rep.ok:
        raise CompatibilityViolation("; ".join(rep.violations))
    return bp
