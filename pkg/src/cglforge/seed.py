"""Quantum seeds: compatibility checks, mutation and quiver export."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ore import PBWElement, leading_term
from .qtorus import (
    FrameSpec,
    SkewExponentMatrix,
    UnrealizedFrame,
    bicharacter2,
    dump_frame,
    frame_monomial,
    load_frame,
)
from .report import Report
from .scalars import field_divide


class NotExchangeable(ValueError):
    pass


class NotSkewSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    """n x |ex| integer matrix; column c belongs to exchangeable index ex[c]."""

    rows: int
    ex: tuple
    entries: tuple

    def __post_init__(self):
        ex = tuple(int(k) for k in self.ex)
        if list(ex) != sorted(set(ex)) or any(not 0 <= k < self.rows for k in ex):
            raise ValueError(f"bad exchangeable set {ex}")
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != len(ex) for r in entries):
            raise ValueError("exchange matrix shape")
        object.__setattr__(self, "ex", ex)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_columns(cls, rows: int, columns: dict) -> "ExchangeMatrix":
        ex = tuple(sorted(columns))
        entries = tuple(tuple(columns[k][i] for k in ex) for i in range(rows))
        return cls(rows, ex, entries)

    def column(self, k: int) -> tuple:
        c = self.ex.index(k)
        return tuple(row[c] for row in self.entries)

    def columns(self) -> dict:
        return {k: self.column(k) for k in self.ex}

    def entry(self, i: int, k: int) -> int:
        return self.entries[i][self.ex.index(k)]

    def principal(self) -> list:
        return [[self.entry(j, k) for k in self.ex] for j in self.ex]

    def permuted(self, tau: Sequence[int]) -> "ExchangeMatrix":
        """Reindex rows and columns: new index a corresponds to old tau[a]."""
        inv = {t: a for a, t in enumerate(tau)}
        cols = {inv[k]: tuple(col[t] for t in tau) for k, col in self.columns().items()}
        return ExchangeMatrix.from_columns(self.rows, cols)


@dataclass(frozen=True)
class QuantumSeed:
    frame: FrameSpec
    btilde: ExchangeMatrix
    inv: frozenset = frozenset()
    symmetrizers: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.frame.n

    @property
    def ex(self):
        return self.btilde.ex

    @property
    def frozen(self):
        return tuple(i for i in range(self.n) if i not in self.btilde.ex)


def validate_seed(seed: QuantumSeed, check_realization: bool = False) -> Report:
    rep = Report("seed")
    m = seed.frame.matrix
    n = seed.n
    omegas = {}
    first = None
    for k in seed.ex:
        b = seed.btilde.column(k)
        row = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            w = bicharacter2(m, b, e)
            row.append(w)
            bad = (w != 0) if j != k else (w == 0)
            if bad and first is None:
                first = (k + 1, j + 1)
        omegas[k + 1] = row[k]
    rep.check("compatible", first is None, f"first violation at column/row {first}")
    rep.data["omega_diag_exp2"] = omegas
    degs = seed.frame.degrees
    if degs and degs[0]:
        for k in seed.ex:
            b = seed.btilde.column(k)
            tot = [sum(b[j] * degs[j][a] for j in range(n)) for a in range(len(degs[0]))]
            rep.check("graded", not any(tot), f"column {k + 1} has degree {tot}")
    if seed.symmetrizers:
        d = seed.symmetrizers
        for j in seed.ex:
            for k in seed.ex:
                lhs = d[j] * seed.btilde.entry(j, k)
                rhs = -d[k] * seed.btilde.entry(k, j)
                rep.check("skew_symmetrizable", lhs == rhs, f"d-symmetry fails at ({j + 1},{k + 1})")
    if check_realization and seed.frame.realized:
        alg = seed.frame.algebra
        v = seed.frame.variables
        for j in range(n):
            for k in range(j + 1, n):
                lhs = alg.multiply(v[j], v[k])
                rhs = alg.multiply(v[k], v[j]).scale(alg.q(2 * m.exp2[j][k]))
                rep.check("quasi_commute", lhs == rhs, f"variables {j + 1},{k + 1}")
            if degs and degs[0]:
                rep.check("variable_degree", v[j].degree(alg.degrees) == tuple(degs[j]),
                          f"variable {j + 1} degree")
    return rep


def mutate_exchange(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    if k not in b.ex:
        raise NotExchangeable(f"index {k + 1} is frozen")
    cols = {}
    for j in b.ex:
        col = []
        for i in range(b.rows):
            bij = b.entry(i, j)
            if i == k or j == k:
                col.append(-bij)
            else:
                bik, bkj = b.entry(i, k), b.entry(k, j)
                col.append(bij + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        cols[j] = tuple(col)
    return ExchangeMatrix.from_columns(b.rows, cols)


def e_matrix(b: ExchangeMatrix, k: int, eps: int) -> list:
    n = b.rows
    col = b.column(k)
    e = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        e[i][k] = -1 if i == k else max(0, -eps * col[i])
    return e


def left_divide(alg, a: PBWElement, target: PBWElement) -> Optional[PBWElement]:
    """The y with a*y == target, or None if there is none."""
    lc_a, fa = leading_term(a)
    out = alg.zero()
    rest = target
    while not rest.is_zero():
        c, h = leading_term(rest)
        g = tuple(x - y for x, y in zip(h, fa))
        if any(x < 0 for x in g):
            return None
        prod = alg.multiply(a, alg.monomial(g))
        c0, h0 = leading_term(prod)
        if h0 != h:
            return None
        coef = field_divide(c, c0)
        out = out + alg.monomial(g, coef)
        rest = rest - prod.scale(coef)
    return out


def exchange_sides(seed: QuantumSeed, k: int, eps: int = 1):
    """(g1, g2, rhs): M(e_k) * new_k = Omega(e_k,g1) M(g1) + Omega(e_k,g2) M(g2)."""
    n = seed.n
    col = seed.btilde.column(k)
    g1 = [max(0, -eps * col[i]) if i != k else 0 for i in range(n)]
    g2 = [g1[i] + eps * col[i] if i != k else 0 for i in range(n)]
    ek = [int(i == k) for i in range(n)]
    m = seed.frame.matrix
    alg = seed.frame.algebra
    rhs = alg.zero()
    for g in (g1, g2):
        rhs = rhs + frame_monomial(seed.frame, g).scale(alg.q(bicharacter2(m, ek, g)))
    return g1, g2, rhs


def mutate_seed(seed: QuantumSeed, k: int, eps: int = 1, realize: bool = True) -> QuantumSeed:
    if k not in seed.ex:
        raise NotExchangeable(f"index {k + 1} is frozen")
    if realize and not seed.frame.realized:
        raise UnrealizedFrame("variable update requested on a matrix-only seed")
    e = e_matrix(seed.btilde, k, eps)
    n = seed.n
    matrix = seed.frame.matrix.congruence(e)
    degrees = list(seed.frame.degrees)
    if degrees and degrees[0]:
        degrees[k] = tuple(sum(e[i][k] * seed.frame.degrees[i][a] for i in range(n))
                           for a in range(len(degrees[0])))
    labels = list(seed.frame.labels)
    labels[k] = labels[k] + "'"
    variables = list(seed.frame.variables)
    algebra = seed.frame.algebra if realize else None
    if realize:
        _, _, rhs = exchange_sides(seed, k, eps)
        new = left_divide(seed.frame.algebra, seed.frame.variables[k], rhs)
        if new is None:
            raise ArithmeticError(f"exchange relation at {k + 1} is not divisible in the algebra")
        variables[k] = new
    else:
        variables = [None] * n
    frame = FrameSpec(matrix, tuple(variables), tuple(degrees), tuple(labels), algebra)
    return QuantumSeed(frame, mutate_exchange(seed.btilde, k), seed.inv, dict(seed.symmetrizers))


def quiver_dot(seed: QuantumSeed, name: str = "quiver") -> str:
    b = seed.btilde
    ex = set(b.ex)
    for j in b.ex:
        for k in b.ex:
            if b.entry(j, k) != -b.entry(k, j):
                raise NotSkewSymmetric(f"principal part not skew-symmetric at ({j + 1},{k + 1})")
    edges = []
    for k in b.ex:
        for j in range(b.rows):
            v = b.entry(j, k)
            if v > 0:
                edges += [(j, k)] * v
            elif v < 0 and j not in ex:
                edges += [(k, j)] * (-v)
    edges.sort()
    labels = seed.frame.labels
    lines = [f"digraph {name} {{"]
    for i in range(b.rows):
        shape = "" if i in ex else ", shape=box"
        lines.append(f'  {i + 1} [label="{labels[i]}"{shape}];')
    for s, t in edges:
        lines.append(f"  {s + 1} -> {t + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_edges(seed: QuantumSeed) -> list:
    """Sorted 1-based (source, target) pairs, repeated by multiplicity."""
    out = []
    for line in quiver_dot(seed).splitlines():
        if "->" in line:
            s, t = line.strip().rstrip(";").split(" -> ")
            out.append((int(s), int(t)))
    return out


def dump_seed(seed: QuantumSeed) -> dict:
    out = dump_frame(seed.frame)
    out.update({
        "ex": [k + 1 for k in seed.ex],
        "inv": sorted(i + 1 for i in seed.inv),
        "entries": [list(r) for r in seed.btilde.entries],
        "symmetrizers": {str(k + 1): d for k, d in sorted(seed.symmetrizers.items())},
    })
    return out


def load_seed(obj: dict, algebra=None) -> QuantumSeed:
    frame = load_frame(obj, algebra)
    b = ExchangeMatrix(frame.n, tuple(k - 1 for k in obj["ex"]), tuple(map(tuple, obj["entries"])))
    return QuantumSeed(frame, b, frozenset(i - 1 for i in obj.get("inv", [])),
                       {int(k) - 1: int(v) for k, v in obj.get("symmetrizers", {}).items()})
