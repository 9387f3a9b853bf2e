"""Skew exponent matrices, the bicharacter they define, and toric frames."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .scalars import HalfInt, LaurentScalar


class DimensionMismatch(ValueError):
    pass


class UnrealizedFrame(ValueError):
    pass


class NegativeExponent(ValueError):
    pass


class SignedFrameMatrix(ValueError):
    """Raised for frame matrices whose entries are not pure q-powers."""


@dataclass(frozen=True)
class SkewExponentMatrix:
    """Matrix (q^(exp2[j][k]/2)) with exp2 integral and skew-symmetric."""

    exp2: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.exp2)
        n = len(rows)
        for j, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch("exponent matrix must be square")
            for k in range(n):
                if row[k] != -rows[k][j]:
                    raise ValueError(f"not skew at ({j + 1},{k + 1})")
        object.__setattr__(self, "exp2", rows)

    @classmethod
    def from_scalars(cls, entries) -> "SkewExponentMatrix":
        """Build from a matrix of LaurentScalar entries; each must be q^(m/2)."""
        exp2 = []
        for row in entries:
            out = []
            for s in row:
                if not isinstance(s, LaurentScalar) or len(s.terms) != 1:
                    raise SignedFrameMatrix(f"entry {s} is not a q-power")
                (e, c), = s.terms.items()
                if c != 1:
                    raise SignedFrameMatrix(f"entry {s} carries a sign or coefficient")
                out.append(e)
            exp2.append(out)
        return cls(tuple(map(tuple, exp2)))

    @classmethod
    def zero(cls, n: int) -> "SkewExponentMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.exp2)

    def __getitem__(self, jk):
        j, k = jk
        return self.exp2[j][k]

    def congruence(self, e) -> "SkewExponentMatrix":
        """Return E^T * exp2 * E for an integer matrix E (list of rows)."""
        n = self.n
        m = len(e[0]) if e else 0
        tmp = [[sum(self.exp2[i][l] * e[l][k] for l in range(n)) for k in range(m)] for i in range(n)]
        return SkewExponentMatrix(tuple(
            tuple(sum(e[l][j] * tmp[l][k] for l in range(n)) for k in range(m)) for j in range(m)))

    def permuted(self, tau: Sequence[int]) -> "SkewExponentMatrix":
        return SkewExponentMatrix(tuple(tuple(self.exp2[a][b] for b in tau) for a in tau))

    def submatrix(self, idx: Sequence[int]) -> "SkewExponentMatrix":
        return self.permuted(idx)


def bicharacter(m: SkewExponentMatrix, f: Sequence[int], g: Sequence[int]) -> HalfInt:
    """Exponent of the product of r_jk^(f_j g_k), as a half-integer."""
    return HalfInt(bicharacter2(m, f, g))


def bicharacter2(m: SkewExponentMatrix, f, g) -> int:
    """Twice the bicharacter exponent."""
    n = m.n
    if len(f) != n or len(g) != n:
        raise DimensionMismatch(f"vectors of length {len(f)}, {len(g)} for size {n}")
    total = 0
    for j, fj in enumerate(f):
        if fj:
            row = m.exp2[j]
            total += fj * sum(row[k] * gk for k, gk in enumerate(g) if gk)
    return total


@dataclass(frozen=True)
class FrameSpec:
    """Toric frame: exponent matrix plus optional PBW realizations.

    ``algebra`` is the presentation the variables live in; it only needs a
    ``multiply`` method and is consulted by :func:`frame_monomial`.
    """

    matrix: SkewExponentMatrix
    variables: tuple = ()
    degrees: tuple = ()
    labels: tuple = ()
    algebra: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = self.matrix.n
        if not self.variables:
            object.__setattr__(self, "variables", (None,) * n)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(n)))
        if not self.degrees:
            object.__setattr__(self, "degrees", tuple(() for _ in range(n)))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not (len(self.variables) == len(self.degrees) == len(self.labels) == n):
            raise DimensionMismatch("frame data lengths disagree with matrix size")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def realized(self) -> bool:
        return self.algebra is not None and all(v is not None for v in self.variables)


def frame_monomial(frame: FrameSpec, f: Sequence[int]):
    """M(f) for f >= 0, as a PBW element of ``frame.algebra``."""
    if not frame.realized:
        raise UnrealizedFrame("frame has no PBW realization")
    if len(f) != frame.n:
        raise DimensionMismatch("exponent vector length")
    if any(x < 0 for x in f):
        raise NegativeExponent("frame_monomial needs nonnegative exponents")
    alg = frame.algebra
    n = frame.n
    # scalar prod_{j<k} r_jk^(-f_j f_k)
    e2 = -sum(frame.matrix.exp2[j][k] * f[j] * f[k] for j in range(n) for k in range(j + 1, n))
    result = alg.one()
    for k in range(n):
        for _ in range(f[k]):
            result = alg.multiply(result, frame.variables[k])
    return result.scale(LaurentScalar.qpow(e2, 1, alg.char))


def reindex_frame(frame: FrameSpec, tau: Sequence[int]) -> FrameSpec:
    """(M . tau)(e_k) = M(e_tau(k)); tau is 0-based."""
    tau = list(tau)
    if sorted(tau) != list(range(frame.n)):
        raise ValueError(f"{tau} is not a permutation")
    return FrameSpec(
        matrix=frame.matrix.permuted(tau),
        variables=tuple(frame.variables[t] for t in tau),
        degrees=tuple(frame.degrees[t] for t in tau),
        labels=tuple(frame.labels[t] for t in tau),
        algebra=frame.algebra,
    )


def dump_frame(frame: FrameSpec) -> dict:
    out = {
        "n": frame.n,
        "exp2": [list(r) for r in frame.matrix.exp2],
        "degrees": [list(d) for d in frame.degrees],
        "labels": list(frame.labels),
    }
    if any(v is not None for v in frame.variables):
        out["variables"] = [v.dump() if v is not None else None for v in frame.variables]
    return out


def load_frame(obj: dict, algebra=None) -> FrameSpec:
    from .ore import PBWElement

    char = algebra.char if algebra is not None else 0
    variables = obj.get("variables")
    if variables is not None:
        variables = tuple(None if v is None else PBWElement.load(v, char) for v in variables)
    return FrameSpec(
        matrix=SkewExponentMatrix(tuple(map(tuple, obj["exp2"]))),
        variables=variables or (),
        degrees=tuple(map(tuple, obj.get("degrees") or [[] for _ in range(obj["n"])])),
        labels=tuple(obj.get("labels") or ()),
        algebra=algebra if variables is not None else None,
    )
