"""Closed subgroups of T = (S^1)^n, their divisor-chain decomposition and
classifying-space cohomology, and the skeleton conditions on isotropy data.

A closed subgroup is the joint kernel of the rows of an integer character
matrix C (rows read as characters T -> S^1).  With U C V = D in Smith form,
the coordinates y = V^{-1} x split T' into Z_{d_1} x ... x Z_{d_rank} x
(S^1)^{n - rank}, and the character t_j of T restricts to sum_l V[j][l] s_l.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import linalg
from . import poly as P
from .grmod import DirectSum, GradedModule, PresentedModule, Shifted
from .linalg import SnfResult, smith_normal_form  # noqa: F401  (re-export)
from .ring import (
    CoefficientRing,
    PolynomialRingContext,
    QQ,
    prime_factors,
)


class DimensionMismatch(ValueError):
    pass


class InconsistentStratum(ValueError):
    pass


class UnsupportedCoefficients(ValueError):
    pass


@dataclass(frozen=True)
class ClosedSubgroup:
    n: int
    character_matrix: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.character_matrix)
        object.__setattr__(self, "character_matrix", rows)
        for r in rows:
            if len(r) != self.n:
                raise DimensionMismatch(f"character row {list(r)} does not have {self.n} entries")

    @classmethod
    def whole_torus(cls, n: int) -> "ClosedSubgroup":
        return cls(n, ())

    @classmethod
    def trivial(cls, n: int) -> "ClosedSubgroup":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def snf(self) -> SnfResult:
        return smith_normal_form([list(r) for r in self.character_matrix], self.n)

    def decompose(self) -> Tuple[Tuple[int, ...], int]:
        return decompose_subgroup(self)

    @property
    def torus_rank(self) -> int:
        return self.decompose()[1]


def decompose_subgroup(T: ClosedSubgroup) -> Tuple[Tuple[int, ...], int]:
    """(m_1, ..., m_q; r) with T' = Z_{m_1} x ... x Z_{m_q} x (S^1)^r and m_q | ... | m_1."""
    for r in T.character_matrix:
        if len(r) != T.n:
            raise DimensionMismatch("character matrix has the wrong width")
    if not T.character_matrix:
        return (), T.n
    s = T.snf()
    ms = tuple(sorted((d for d in s.invariant_factors if d > 1), reverse=True))
    return ms, T.n - s.rank


def _restriction_data(T: ClosedSubgroup):
    """(factors d_l for l < rank, W) where w_l = sum_j W[l][j] t_j are the new coordinates."""
    if not T.character_matrix:
        return (), linalg.identity(T.n)
    U, _, D, V, factors = linalg._snf([list(r) for r in T.character_matrix], len(T.character_matrix), T.n)
    # t = V s, so s = V^{-1} t; V is unimodular
    Vinv = _unimodular_inverse(V)
    return tuple(factors), Vinv


def _unimodular_inverse(V: linalg.Matrix) -> linalg.Matrix:
    n = len(V)
    cols = linalg.solve(QQ, linalg.columns(V, n), [[int(i == j) for i in range(n)] for j in range(n)], n)
    return [[int(cols[j][i]) for j in range(n)] for i in range(n)]


def present_classifying_cohomology(T: ClosedSubgroup, ctx: PolynomialRingContext) -> PresentedModule:
    """Even-degree part R[s]/(d_l s_l) of H*(BT'; R), as the cyclic A-module A/(d_l w_l)."""
    if ctx.n != T.n:
        raise DimensionMismatch("context and subgroup ranks differ")
    factors, W = _restriction_data(T)
    rels = []
    for l, d in enumerate(factors):
        f = P.scale(P.linear(W[l]), d)
        f = {m: ctx.ring.reduce(c) for m, c in f.items()}
        f = {m: c for m, c in f.items() if c}
        if f:
            rels.append({0: f})
    M = PresentedModule(ctx, [0], rels)
    M.closed_form = _classifying_closed_form(T, ctx.ring)
    return M


def full_classifying_cohomology(T: ClosedSubgroup, ctx: PolynomialRingContext) -> GradedModule:
    """All of H*(BT'; R) as an A-module, odd classes included.

    Over F_p each cyclic factor Z_m with p | m contributes an exterior class
    in degree 1, so the module is a sum of shifted copies of the even part
    indexed by subsets of those factors.  Over Z and Z[1/S] the Kunneth Tor
    terms vanish only when at most one torsion factor is a non-unit; other
    cases are rejected.
    """
    R = ctx.ring
    factors, W = _restriction_data(T)
    nonunit = [l for l, d in enumerate(factors) if d > 1 and not R.is_unit(d) and R.characteristic == 0]
    if not R.is_field and len(nonunit) > 1:
        raise UnsupportedCoefficients(
            "integral cohomology of a subgroup with two non-invertible cyclic factors has odd Tor classes"
        )
    if R.is_field and R.characteristic:
        p = R.characteristic
        ext = [l for l, d in enumerate(factors) if d % p == 0]
        rels = [{0: P.linear(W[l])} for l, d in enumerate(factors) if d % p]
        rels = [{0: {m: R.reduce(c) for m, c in r[0].items() if R.reduce(c)}} for r in rels]
        rels = [r for r in rels if r[0]]
        parts = []
        for size in range(len(ext) + 1):
            for _ in itertools.combinations(ext, size):
                parts.append(Shifted(PresentedModule(ctx, [0], rels), size) if size else PresentedModule(ctx, [0], rels))
        if len(parts) == 1:
            parts[0].closed_form = _classifying_closed_form(T, R)
            return parts[0]
        return DirectSum(parts, ctx)
    return present_classifying_cohomology(T, ctx)


def _classifying_closed_form(T: ClosedSubgroup, R: CoefficientRing) -> Optional[dict]:
    ms, r = decompose_subgroup(T)
    s = sum(1 for m in ms if not R.is_unit(m))
    dim = dim_classifying(T, R)
    if R.is_field:
        # polynomial ring in r + s variables over a field (even part)
        return {"dim": dim, "depth": dim, "why": f"polynomial ring in {r + s} variables"}
    if s == 0:
        return {"dim": dim, "depth": dim, "why": f"R[{r} variables] over a PID of dimension 1"}
    return None


def dim_classifying(T: ClosedSubgroup, R: CoefficientRing) -> int:
    """Krull dimension of H*(BT'; R) over H*(BT; R)."""
    ms, r = decompose_subgroup(T)
    s = sum(1 for m in ms if not R.is_unit(m))
    if R.is_field or s > 0:
        return r + s
    return r + 1


def p_rank(T: ClosedSubgroup, p: int) -> int:
    """Rank of the maximal p-torus of T'."""
    ms, r = decompose_subgroup(T)
    return r + sum(1 for m in ms if m % p == 0)


# ----------------------------------------------------------------------------
# Strata and skeleton conditions


@dataclass(frozen=True)
class StratumDescriptor:
    name: str
    isotropy: ClosedSubgroup
    orbit_dim: int

    def __post_init__(self):
        if not 0 <= self.orbit_dim <= self.isotropy.n:
            raise InconsistentStratum(f"{self.name}: orbit dimension out of range")

    def validate(self) -> None:
        r = self.isotropy.torus_rank
        if self.orbit_dim != self.isotropy.n - r:
            raise InconsistentStratum(
                f"{self.name}: orbit_dim {self.orbit_dim} != n - rank(T_x) = {self.isotropy.n - r}"
            )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "character_matrix": [list(r) for r in self.isotropy.character_matrix],
            "orbit_dim": self.orbit_dim,
        }


@dataclass(frozen=True)
class Violation:
    stratum: str
    i: int
    p: Optional[int]
    condition: str

    def to_json(self) -> dict:
        return {"stratum": self.stratum, "i": self.i, "p": self.p, "condition": self.condition}


@dataclass
class ConditionReport:
    ring: CoefficientRing
    k: int
    violations: List[Violation] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def index_set(self):
        return sorted({(v.stratum, v.i) for v in self.violations})

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "k": self.k,
            "holds": self.holds,
            "violations": [v.to_json() for v in self.violations],
        }


def _strata_rank(strata: Sequence[StratumDescriptor]) -> int:
    ns = {s.isotropy.n for s in strata}
    if len(ns) > 1:
        raise InconsistentStratum("strata live in tori of different ranks")
    return ns.pop() if ns else 0


def _relevant_primes(strata: Sequence[StratumDescriptor], R: CoefficientRing) -> List[int]:
    if R.kind == "Q":
        return []
    if R.is_field:
        return [R.characteristic]
    primes = set()
    for s in strata:
        for m in decompose_subgroup(s.isotropy)[0]:
            primes.update(prime_factors(m))
    return sorted(p for p in primes if not R.is_invertible(p))


def _sort(violations: List[Violation]) -> List[Violation]:
    return sorted(violations, key=lambda v: (v.i, v.p or 0, v.stratum))


def check_conditions(strata: Sequence[StratumDescriptor], R: CoefficientRing, k: int) -> ConditionReport:
    """Skeleton conditions X_{p,i} = X_i (fields) or X_{p,i-1} in X_i (subrings of Q), for i <= k."""
    n = _strata_rank(strata)
    for s in strata:
        s.validate()
    out = []
    for p in _relevant_primes(strata, R):
        for s in strata:
            o = s.orbit_dim
            pskel = n - p_rank(s.isotropy, p)  # smallest i with x in X_{p,i}
            for i in range(0, k + 1):
                if R.is_field:
                    if pskel <= i < o:
                        out.append(Violation(s.name, i, p, "X_{p,i} = X_i"))
                elif pskel <= i - 1 and i < o:
                    out.append(Violation(s.name, i, p, "X_{p,i-1} in X_i"))
    return ConditionReport(R, k, _sort(out))


def check_conditions_algebraic(strata: Sequence[StratumDescriptor], R: CoefficientRing, k: int) -> ConditionReport:
    """dim H*(BT_x) >= d + n - i must force x into X_i, for i <= k."""
    n = _strata_rank(strata)
    d = R.base_dimension()
    out = []
    for s in strata:
        s.validate()
        dim = dim_classifying(s.isotropy, R)
        for i in range(0, k + 1):
            if i < s.orbit_dim and dim >= d + n - i:
                out.append(Violation(s.name, i, R.characteristic or None, "dim H*(BT_x) >= d+n-i"))
    return ConditionReport(R, k, _sort(out))


def strata_from_json(data: dict) -> List[StratumDescriptor]:
    n = int(data["n"])
    out = []
    for entry in data["strata"]:
        T = ClosedSubgroup(n, tuple(tuple(r) for r in entry.get("character_matrix", [])))
        out.append(StratumDescriptor(str(entry["name"]), T, int(entry["orbit_dim"])))
    return out


def strata_to_json(strata: Sequence[StratumDescriptor]) -> dict:
    return {"n": _strata_rank(strata), "strata": [s.to_json() for s in strata]}
