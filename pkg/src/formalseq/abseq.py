"""Assembly and verification of the Chang-Skjelbred, Atiyah-Bredon and
Goertsches-Toeben sequences, plus the tail-module depth/dimension profile.

Positions in an assembled complex: 0 is H*_T(X), 1 is H*_T(X_k) (k = 0 for
the fixed-point versions) and position p >= 2 is H*_T(X_{k+p-1}, X_{k+p-2}).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import grmod, linalg
from .grmod import GradedComplex, GradedMap, GradedModule, Inflated
from .lattice import ConditionReport, check_conditions
from .ring import CoefficientRing
from .spaces import Fan, GkmGraph, SpaceModel, UnsupportedModelRing


class Inapplicable(ValueError):
    pass


class NotExact(ValueError):
    pass


class EngineContradiction(RuntimeError):
    """Nonzero homology although every hypothesis of the theorem was certified."""

    def __init__(self, report: "ExactnessReport"):
        super().__init__(f"{report.kind}: homology at position {report.witness['position']} "
                         f"in degree {report.witness['degree']} with all hypotheses certified")
        self.report = report


@dataclass(frozen=True)
class SequenceKind:
    name: str  # "cs", "full", "truncated" or "gt"
    k: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "SequenceKind":
        t = text.strip().lower()
        if t in ("cs", "full", "gt"):
            return cls(t)
        if t.startswith("truncated:"):
            return cls("truncated", int(t.split(":", 1)[1]))
        raise ValueError(f"unknown sequence kind {text!r}")

    def __str__(self):
        return f"truncated:{self.k}" if self.name == "truncated" else self.name


CS = SequenceKind("cs")
FULL = SequenceKind("full")
GT = SequenceKind("gt")


def truncated(k: int) -> SequenceKind:
    return SequenceKind("truncated", k)


@dataclass
class Assembled:
    kind: SequenceKind
    start: int
    complex: GradedComplex
    positions: List[int]  # positions where exactness is claimed
    condition_k: int


def _labels(start: int, count: int) -> List[str]:
    out = ["H_T(X)", f"H_T(X_{start})"]
    for i in range(start + 1, start + count - 1):
        out.append(f"H_T(X_{i},X_{i - 1})")
    return out


def assemble(X: SpaceModel, R: CoefficientRing, kind: SequenceKind, check_d: int = 0) -> Assembled:
    data = X.sequence_data(R)
    n = X.n
    if kind.name in ("full", "truncated", "cs") and data.start != 0:
        raise Inapplicable(f"X has no fixed points (minimal orbit dimension {data.start})")
    terms = [data.total] + list(data.terms)
    maps = [data.restriction] + list(data.differentials)
    if kind.name == "full" or kind.name == "gt":
        positions = list(range(len(terms)))
        ck = n
    else:
        k = 1 if kind.name == "cs" else kind.k
        if k is None or not 0 <= k <= n:
            raise ValueError(f"truncation index must lie in [0, {n}]")
        k = min(k, n)
        terms = terms[: k + 2]
        maps = maps[: k + 1]
        positions = list(range(k + 1))
        ck = k
    C = GradedComplex(terms, maps, _labels(data.start, len(terms)))
    if check_d:
        C.check(check_d)
    return Assembled(kind, data.start, C, positions, ck)


# ----------------------------------------------------------------------------
# Hypotheses


def _free_certificate(M: GradedModule, D: int) -> Tuple[Optional[bool], str]:
    ok, info = grmod.is_free(M, D)
    if ok:
        return True, f"free with generators in degrees {info['degrees']} (checked to degree {D})"
    return False, f"not free: {info['reason']}"


def _cm_certificate(M: GradedModule, D: int) -> Tuple[Optional[bool], str]:
    if isinstance(M, Inflated):
        # t_1 acts by zero; CM over the smaller ring is CM over A
        ok, why = _cm_certificate(M.module, D)
        return ok, f"inflated from rank {M.n - 1}: {why}"
    if M.ring.is_field:
        try:
            rep = grmod.is_cohen_macaulay(M, D)
        except (grmod.ZeroModule, grmod.DegreeBoundTooSmall) as exc:
            return None, str(exc)
        return rep.is_cm, "; ".join(rep.certificate)
    ok, info = grmod.is_free(M, D)
    if ok:
        return True, f"free with generators in degrees {info['degrees']}"
    cf = M.closed_form
    if cf is not None:
        return cf["depth"] == cf["dim"], f"closed form: {cf['why']}"
    return None, "no Cohen-Macaulay certificate over this ring"


# ----------------------------------------------------------------------------
# Verification


@dataclass
class ExactnessReport:
    kind: SequenceKind
    ring: CoefficientRing
    degree_bound: int
    labels: List[str]
    homology: List[dict]  # nonzero slices: position, label, degree, rank, torsion
    conditions: ConditionReport
    hypothesis: dict
    verdict: str
    witness: Optional[dict] = None
    reason: str = ""
    checked_positions: List[int] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.verdict == "ExactUpToD"

    @property
    def exit_code(self) -> int:
        return {"ExactUpToD": 0, "FailsAt": 2, "Inapplicable": 3, "EngineContradiction": 4}[self.verdict]

    def to_json(self) -> dict:
        return {
            "kind": str(self.kind),
            "ring": str(self.ring),
            "max_degree": self.degree_bound,
            "verdict": self.verdict,
            "reason": self.reason,
            "terms": self.labels,
            "checked_positions": self.checked_positions,
            "nonzero_homology": self.homology,
            "conditions": self.conditions.to_json() if self.conditions else None,
            "hypothesis": self.hypothesis,
            "witness": self.witness,
        }


def _slice(C: GradedComplex, pos: int, j: int):
    return pos, j, grmod.homology_slice(C, pos, j)


def _witness(C: GradedComplex, pos: int, sl: grmod.HomologySlice) -> dict:
    j = sl.degree
    M = C.terms[pos]
    out = {
        "position": pos,
        "label": C.labels[pos],
        "degree": j,
        "homology": sl.module.to_json(),
        "slice_dim": M.dim(j),
        "slice_relations": [list(r) for r in M.piece(j).rels],
        "kernel_basis": sl.kernel_basis,
        "boundary_generators": sl.boundary_gens,
    }
    if pos < len(C.maps):
        out["outgoing_matrix"] = C.maps[pos].matrix(j)
    if pos > 0:
        f = C.maps[pos - 1]
        out["incoming_matrix"] = f.matrix(j - f.shift)
    snf = linalg.smith_normal_form(out.get("incoming_matrix") or [[0]]) if M.ring.characteristic == 0 else None
    out["incoming_invariant_factors"] = list(snf.invariant_factors) if snf else None
    return out


def verify(X: SpaceModel, R: CoefficientRing, kind: SequenceKind, D: int = 20,
           jobs: int = 1, strict: bool = True) -> ExactnessReport:
    try:
        A = assemble(X, R, kind)
    except (Inapplicable, UnsupportedModelRing) as exc:
        return ExactnessReport(kind, R, D, [], [], None, {}, "Inapplicable", reason=str(exc))
    C = A.complex
    conds = check_conditions(X.strata(), R, A.condition_k)
    if kind.name == "gt":
        ok, why = _cm_certificate(C.terms[0], D)
        hyp = {"property": "Cohen-Macaulay", "holds": ok, "certificate": why}
    else:
        ok, why = _free_certificate(C.terms[0], D)
        hyp = {"property": "free", "holds": ok, "certificate": why}

    tasks = [(p, j) for p in A.positions for j in range(0, D + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda t: _slice(C, *t), tasks))
    else:
        results = [_slice(C, p, j) for p, j in tasks]
    results.sort(key=lambda r: (r[0], r[1]))

    nonzero = [(p, j, sl) for p, j, sl in results if not sl.module.is_zero]
    homology = [{"position": p, "label": C.labels[p], "degree": j, "rank": sl.module.free_rank,
                 "torsion": list(sl.module.torsion)} for p, j, sl in nonzero]
    rep = ExactnessReport(kind, R, D, list(C.labels), homology, conds, hyp, "ExactUpToD",
                          checked_positions=list(A.positions))
    if not nonzero:
        return rep
    p, j, sl = nonzero[0]
    rep.witness = _witness(C, p, sl)
    if conds.holds and hyp["holds"] is True:
        rep.verdict = "EngineContradiction"
        rep.reason = "hypotheses certified but homology is nonzero"
        if strict:
            raise EngineContradiction(rep)
        return rep
    rep.verdict = "FailsAt"
    failed = []
    if not conds.holds:
        failed.append("skeleton conditions")
    if hyp["holds"] is not True:
        failed.append(f"{hyp['property']} hypothesis ({'fails' if hyp['holds'] is False else 'not certified'})")
    rep.reason = "hypotheses not satisfied: " + ", ".join(failed)
    return rep


# ----------------------------------------------------------------------------
# Chang-Skjelbred comparison


@dataclass
class CsReport:
    ring: CoefficientRing
    degree_bound: int
    equal: bool
    first_difference: Optional[int]
    image_ranks: List[int]
    note: str = ""

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "max_degree": self.degree_bound,
                "result": "Equal" if self.equal else "Differs",
                "first_difference": self.first_difference, "image_ranks": self.image_ranks,
                "note": self.note}


def _same_lattice(R: CoefficientRing, a, b, dim: int) -> bool:
    return linalg.contains(R, a, b, dim) and linalg.contains(R, b, a, dim)


def cs_compare(X: SpaceModel, R: CoefficientRing, D: int = 20) -> CsReport:
    """Compare image(H_T(X) -> H_T(X_0)) with image(H_T(X_1) -> H_T(X_0)) slice by slice."""
    if isinstance(X, GkmGraph):
        data = X.sequence_data(R)
        ranks = [linalg.rank(R, linalg.columns(data.restriction.matrix(j), data.total.dim(j)), data.terms[0].dim(j))
                 if data.total.dim(j) else 0 for j in range(D + 1)]
        return CsReport(R, D, True, None, ranks, "the model is its own one-skeleton")
    if not isinstance(X, Fan):
        raise UnsupportedModelRing("cs_compare needs a fan or a GKM model")
    data = X.sequence_data(R)
    G = X.one_skeleton_graph()
    gdata = G.sequence_data(R)
    ranks = []
    for j in range(D + 1):
        dim0 = data.terms[0].dim(j)
        img_x = linalg.span_basis(R, linalg.columns(data.restriction.matrix(j), data.total.dim(j)), dim0)
        img_1 = linalg.span_basis(R, linalg.columns(gdata.restriction.matrix(j), gdata.total.dim(j)), dim0)
        ranks.append(len(img_x) if R.is_field else linalg.rank(R, img_x, dim0))
        if not _same_lattice(R, img_x, img_1, dim0):
            return CsReport(R, D, False, j, ranks)
    return CsReport(R, D, True, None, ranks)


# ----------------------------------------------------------------------------
# Tail modules H_T(X, X_i)


@dataclass
class ProfileRow:
    i: int
    dim: float
    depth: float
    cohen_macaulay: Optional[bool]
    expected_dim: int
    split: bool
    relative_depth: float

    def to_json(self) -> dict:
        enc = lambda x: x if x in (None, True, False) or abs(x) != float("inf") else ("inf" if x > 0 else "-inf")
        return {"i": self.i, "dim": enc(self.dim), "depth": enc(self.depth), "cohen_macaulay": self.cohen_macaulay,
                "expected_dim": self.expected_dim, "split": self.split, "relative_term_depth": enc(self.relative_depth)}


@dataclass
class Profile:
    ring: CoefficientRing
    degree_bound: int
    k: int
    rows: List[ProfileRow]
    total_dim: float
    expected_total_dim: int

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "max_degree": self.degree_bound, "k": self.k,
                "dim_H_T(X)": self.total_dim, "expected_dim_H_T(X)": self.expected_total_dim,
                "rows": [r.to_json() for r in self.rows]}


def _injective_on_coker(incoming: Optional[GradedMap], f: GradedMap, D: int) -> bool:
    """Is the map coker(incoming) -> target induced by f injective up to degree D?"""
    R = f.source.ring
    for j in range(0, D + 1):
        src = f.source.piece(j)
        tgt = f.target.piece(j + f.shift)
        K = linalg.preimage(R, f.matrix(j), src.dim, tgt.rels, tgt.dim)
        gens = [list(r) for r in src.rels]
        if incoming is not None:
            gens += incoming.image_vectors(j)
        if not linalg.contains(R, gens, K, src.dim):
            return False
    return True


def cm_profile(X: SpaceModel, R: CoefficientRing, D: int = 20) -> Profile:
    if not R.is_field:
        raise grmod.FieldRequired("cm_profile needs a field")
    A = assemble(X, R, GT)
    C = A.complex
    for p in range(len(C.terms)):
        for j in range(D + 1):
            if not grmod.homology_slice(C, p, j).module.is_zero:
                raise NotExact(f"sequence not exact at {C.labels[p]} in degree {j}")
    n, k = X.n, A.start
    d = R.base_dimension()
    rows = []
    for i in range(k, n):
        pos = i - k + 1  # position of H_T(X_i, X_{i-1})
        incoming = C.maps[pos - 1]
        tail = grmod.cokernel_module(incoming)
        if grmod.is_zero_up_to(tail, D):
            dim, dep, cm = float("-inf"), float("inf"), None
        else:
            dim = grmod.krull_dim(tail, D).dim
            dep = grmod.depth(tail, D).depth
            cm = dep == dim
        prev = C.maps[pos - 2] if pos >= 2 else None
        split = _injective_on_coker(prev, incoming, D)
        rel = C.terms[pos]
        rel_depth = grmod.depth(rel, D).depth
        rows.append(ProfileRow(i, dim, dep, cm, d + n - i - 1, split, rel_depth))
    total_dim = grmod.krull_dim(C.terms[0], D).dim
    return Profile(R, D, k, rows, total_dim, d + n - k)
