"""Combinatorial torus spaces: fans, GKM sphere assemblies, single orbits,
disjoint unions and free-circle products.

Each model knows its orbit-type strata and can build the graded modules
H*_T(X), H*_T(X_k) and H*_T(X_i, X_{i-1}) together with the maps between
them (see `SpaceModel.sequence_data`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from . import grmod, linalg
from . import poly as P
from .grmod import (
    DirectSum,
    GradedMap,
    GradedModule,
    Inflated,
    Piece,
    PresentedModule,
    Shifted,
)
from .lattice import (
    ClosedSubgroup,
    StratumDescriptor,
    UnsupportedCoefficients,
    full_classifying_cohomology,
    p_rank,
)
from .ring import QQ, ZZ, CoefficientRing, PolynomialRingContext


class InvalidModel(ValueError):
    pass


class UnsupportedModelRing(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class EmptySpace(ValueError):
    pass


@dataclass
class SequenceData:
    """H*_T(X), the terms H*_T(X_i, X_{i-1}) for i = k..n, and the maps between them.

    terms[0] is H*_T(X_k) (= H*_T(X_k, X_{k-1}) since X_{k-1} is empty).
    restriction: H*_T(X) -> terms[0]; differentials[i]: terms[i] -> terms[i+1].
    """

    start: int
    total: GradedModule
    terms: List[GradedModule]
    restriction: GradedMap
    differentials: List[GradedMap]


class SpaceModel:
    n: int

    def strata(self) -> List[StratumDescriptor]:
        raise NotImplementedError

    def min_orbit_dim(self) -> int:
        st = self.strata()
        if not st:
            raise EmptySpace("space has no strata")
        return min(s.orbit_dim for s in st)

    def equivariant_cohomology(self, R: CoefficientRing) -> GradedModule:
        return self.sequence_data(R).total

    def relative_term(self, i: int, R: CoefficientRing) -> GradedModule:
        data = self.sequence_data(R)
        if not -1 <= i <= self.n:
            raise IndexOutOfRange(i)
        if i < data.start or i - data.start >= len(data.terms):
            return grmod.zero_module(PolynomialRingContext(self.n, R))
        return data.terms[i - data.start]

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _ctx(n, R):
    return PolynomialRingContext(n, R)


def _unit_images(M: GradedModule, j: int) -> List[linalg.Vector]:
    """Images t^m * g0 in M_j for every monomial m of degree j, g0 = first degree-0 coordinate."""
    cache: Dict[Tuple[int, ...], linalg.Vector] = {}
    n = M.n

    def img(m, deg):
        if m in cache:
            return cache[m]
        if not any(m):
            v = [int(i == 0) for i in range(M.dim(0))]
        else:
            k = next(i for i, e in enumerate(m) if e)
            m2 = list(m)
            m2[k] -= 1
            v = linalg.apply(M.action(k, deg - 2), img(tuple(m2), deg - 2))
        cache[m] = v
        return v

    return [img(m, j) for m in M.ctx.monomials(j)] if n or j == 0 else []


# ----------------------------------------------------------------------------
# Fans


@dataclass(frozen=True)
class Fan(SpaceModel):
    n: int
    rays: Tuple[Tuple[int, ...], ...]
    cones: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(tuple(sorted(int(x) for x in c)) for c in self.cones))
        self.validate()

    def validate(self) -> None:
        for r in self.rays:
            if len(r) != self.n or not any(r):
                raise InvalidModel(f"ray {r} is zero or has the wrong length")
            g = 0
            for x in r:
                g = _gcd(g, x)
            if g != 1:
                raise InvalidModel(f"ray {r} is not primitive")
        for c in self.cones:
            if any(not 0 <= i < len(self.rays) for i in c):
                raise InvalidModel(f"cone {c} refers to a missing ray")
            if linalg.rank(QQ, [list(self.rays[i]) for i in c], self.n) != len(c):
                raise InvalidModel(f"cone {c} is not simplicial")

    def faces(self, dim: int | None = None) -> List[Tuple[int, ...]]:
        out = set()
        for c in self.cones:
            for k in range(len(c) + 1):
                out.update(itertools.combinations(c, k))
        faces = sorted(out, key=lambda f: (len(f), f))
        if dim is not None:
            faces = [f for f in faces if len(f) == dim]
        return faces

    def maximal_cones(self) -> List[Tuple[int, ...]]:
        return self.faces(self.n)

    def is_complete(self) -> bool:
        if any(len(c) != self.n for c in self.cones) or not self.cones:
            return False
        count: Dict[Tuple[int, ...], int] = {}
        for c in self.maximal_cones():
            for k in range(len(c)):
                tau = c[:k] + c[k + 1:]
                count[tau] = count.get(tau, 0) + 1
        return all(v == 2 for v in count.values())

    def multiplicity(self, cone: Sequence[int]) -> int:
        if not cone:
            return 1
        s = linalg.smith_normal_form([list(self.rays[i]) for i in cone])
        out = 1
        for d in s.invariant_factors:
            out *= d
        return out

    def is_smooth(self) -> bool:
        return all(self.multiplicity(c) == 1 for c in self.cones)

    def orthogonal_basis(self, cone: Sequence[int]) -> List[linalg.Vector]:
        """Z-basis of the characters vanishing on span(cone)."""
        return linalg.kernel(ZZ, [list(self.rays[i]) for i in cone], self.n) if cone else [
            [int(i == j) for i in range(self.n)] for j in range(self.n)
        ]

    def stratum_name(self, cone: Sequence[int]) -> str:
        return "cone(" + ",".join(map(str, cone)) + ")"

    def strata(self) -> List[StratumDescriptor]:
        out = []
        for f in self.faces():
            # isotropy of the orbit O_f is the subtorus with Lie algebra span(f)
            T = ClosedSubgroup(self.n, tuple(tuple(v) for v in self.orthogonal_basis(f)))
            out.append(StratumDescriptor(self.stratum_name(f), T, self.n - len(f)))
        return out

    def _check_ring(self, R: CoefficientRing) -> None:
        if not self.is_complete():
            raise UnsupportedModelRing("fan is not complete")
        for c in self.cones:
            m = self.multiplicity(c)
            if m != 1 and not R.is_unit(m):
                raise UnsupportedModelRing(f"cone {c} has multiplicity {m}, not invertible in {R}")

    def stanley_reisner(self, R: CoefficientRing) -> "StanleyReisnerModule":
        self._check_ring(R)
        return StanleyReisnerModule(self, R)

    def equivariant_cohomology(self, R: CoefficientRing) -> GradedModule:
        return self.stanley_reisner(R)

    def relative_term(self, i: int, R: CoefficientRing) -> GradedModule:
        if not -1 <= i <= self.n:
            raise IndexOutOfRange(i)
        self._check_ring(R)
        if i < 0:
            return grmod.zero_module(_ctx(self.n, R))
        return self.relative_presentation(i, R)

    def relative_presentation(self, i: int, R: CoefficientRing) -> PresentedModule:
        """sum over cones of dimension n - i of H*(BT_cone) placed in degree i."""
        faces = self.faces(self.n - i)
        rels = []
        for g, f in enumerate(faces):
            for m in self.orthogonal_basis(f):
                rels.append({g: P.linear(m)})
        M = PresentedModule(_ctx(self.n, R), [i] * len(faces), rels)
        d = R.base_dimension()
        M.closed_form = {
            "dim": d + self.n - i,
            "depth": d + self.n - i,
            "why": f"sum of H*(BT_cone) for {len(faces)} cones of dimension {self.n - i} (polynomial rings in {self.n - i} variables)",
        } if faces else None
        return M

    def incidence_sign(self, sigma: Tuple[int, ...], k: int) -> int:
        s = -1 if k % 2 else 1
        if len(sigma) == self.n:
            det = _det([list(self.rays[r]) for r in sigma])
            s *= 1 if det > 0 else -1
        return s

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        self._check_ring(R)
        if not self.is_smooth():
            raise UnsupportedModelRing("sequence maps are built for smooth fans only")
        SR = self.stanley_reisner(R)
        terms = [self.relative_presentation(i, R) for i in range(self.n + 1)]
        res = GradedMap(SR, terms[0], 0, lambda j: SR.restriction_matrix(j))
        diffs = []
        for i in range(self.n):
            src = self.faces(self.n - i)
            tgt = {f: idx for idx, f in enumerate(self.faces(self.n - i - 1))}
            entries = {}
            for c, sigma in enumerate(src):
                for k in range(len(sigma)):
                    tau = sigma[:k] + sigma[k + 1:]
                    entries[(tgt[tau], c)] = P.const(self.incidence_sign(sigma, k), self.n)
            diffs.append(grmod.poly_map(terms[i], terms[i + 1], 1, entries))
        return SequenceData(0, SR, terms, res, diffs)

    def one_skeleton_graph(self) -> "GkmGraph":
        maxc = self.maximal_cones()
        verts = [self.stratum_name(c) for c in maxc]
        edges = []
        for tau in self.faces(self.n - 1):
            adj = [c for c in maxc if set(tau) <= set(c)]
            if len(adj) != 2:
                raise InvalidModel(f"codimension-one cone {tau} is not a wall between two cones")
            (alpha,) = self.orthogonal_basis(tau)
            edges.append((self.stratum_name(adj[0]), self.stratum_name(adj[1]), tuple(alpha)))
        return GkmGraph(self.n, tuple(verts), tuple(edges))

    def to_json(self) -> dict:
        return {"n": self.n, "rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]}


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _det(M: List[List[int]]) -> int:
    s = linalg.smith_normal_form(M)
    if s.rank < len(M):
        return 0
    # det(U) det(A) det(V) = prod(d); det(U), det(V) are +-1
    val = 1
    for d in s.invariant_factors:
        val *= d
    return val * _unimodular_sign(s.U) * _unimodular_sign(s.V)


def _unimodular_sign(U: List[List[int]]) -> int:
    from fractions import Fraction

    A = [[Fraction(x) for x in row] for row in U]
    n = len(A)
    sign = 1
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        if A[c][c] < 0:
            sign = -sign
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return sign


class StanleyReisnerModule(GradedModule):
    """Face ring of a fan as an A-module: t_k acts by sum_rho <e_k, v_rho> x_rho.

    The monomials supported on cones form an R-basis; there are no relations.
    """

    def __init__(self, fan: Fan, R: CoefficientRing):
        super().__init__(_ctx(fan.n, R), 0)
        self.fan = fan
        self._faces = fan.faces()
        self._bases: Dict[int, List[Tuple[int, ...]]] = {}
        self._dual: Dict[Tuple[int, ...], List[linalg.Vector]] = {}

    def basis(self, j: int) -> List[Tuple[int, ...]]:
        if j < 0 or j % 2:
            return []
        b = self._bases.get(j)
        if b is None:
            k = j // 2
            nr = len(self.fan.rays)
            out = []
            for f in self._faces:
                if len(f) > k or (k > 0 and not f):
                    continue
                for parts in _positive_compositions(k, len(f)):
                    e = [0] * nr
                    for r, a in zip(f, parts):
                        e[r] = a
                    out.append(tuple(e))
            b = sorted(out, reverse=True)
            self._bases[j] = b
        return b

    def _piece(self, j):
        return Piece(len(self.basis(j)), ())

    def _action(self, k, j):
        src = self.basis(j)
        idx = {b: i for i, b in enumerate(self.basis(j + 2))}
        A = linalg.zeros(len(idx), len(src))
        for c, e in enumerate(src):
            for r, v in enumerate(self.fan.rays):
                if v[k]:
                    e2 = list(e)
                    e2[r] += 1
                    key = tuple(e2)
                    if key in idx:
                        A[idx[key]][c] += self.ring.reduce(v[k])
        return [[self.ring.reduce(x) for x in row] for row in A]

    def dual_basis(self, sigma: Tuple[int, ...]) -> List[linalg.Vector]:
        """u_rho for rho in sigma with <u_rho, v_rho'> = delta (integral for smooth cones)."""
        if sigma not in self._dual:
            n = self.fan.n
            V = [list(self.fan.rays[r]) for r in sigma]
            cols = linalg.solve(QQ, linalg.columns(V, n), [[int(i == j) for i in range(n)] for j in range(n)], n)
            # cols[j] = column j of V^{-1}; u_rho (rho = sigma[a]) is column a of V^{-1}
            Vinv = [[cols[j][i] for j in range(n)] for i in range(n)]
            us = []
            for a in range(n):
                col = [Vinv[i][a] for i in range(n)]
                if any(x.denominator != 1 for x in col):
                    raise UnsupportedModelRing("cone is not smooth")
                us.append([int(x) for x in col])
            self._dual[sigma] = us
        return self._dual[sigma]

    def restriction_matrix(self, j: int) -> linalg.Matrix:
        n = self.fan.n
        maxc = self.fan.maximal_cones()
        mon = self.ctx.monomial_index(j)
        A = linalg.zeros(len(maxc) * len(mon), len(self.basis(j)))
        for c, e in enumerate(self.basis(j)):
            for s, sigma in enumerate(maxc):
                if any(a and r not in sigma for r, a in enumerate(e)):
                    continue
                us = self.dual_basis(sigma)
                f = P.const(1, n)
                for a, r in enumerate(sigma):
                    if e[r]:
                        f = P.mul(f, P.power(P.linear(us[a]), e[r], n))
                for m, coef in f.items():
                    A[s * len(mon) + mon[m]][c] += coef
        return [[self.ring.reduce(x) for x in row] for row in A]


def _positive_compositions(k: int, parts: int):
    if parts == 0:
        if k == 0:
            yield ()
        return
    for a in range(k - parts + 1, 0, -1):
        for rest in _positive_compositions(k - a, parts - 1):
            yield (a,) + rest


# ----------------------------------------------------------------------------
# GKM assemblies of spinning spheres


@dataclass(frozen=True)
class GkmGraph(SpaceModel):
    """X = X_1: fixed points joined by spheres S(alpha) on which T acts through alpha."""

    n: int
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, Tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((str(v), str(w), tuple(int(x) for x in a)) for v, w, a in self.edges))
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise InvalidModel("duplicate vertex names")
        for v, w, a in self.edges:
            if v not in names or w not in names:
                raise InvalidModel(f"edge {v}-{w} uses an unknown vertex")
            if len(a) != self.n or not any(a):
                raise InvalidModel(f"edge {v}-{w} has an invalid label {a}")

    def edge_name(self, e: int) -> str:
        v, w, a = self.edges[e]
        return f"{v}-{w}"

    def strata(self) -> List[StratumDescriptor]:
        out = [StratumDescriptor(v, ClosedSubgroup.whole_torus(self.n), 0) for v in self.vertices]
        for e, (v, w, a) in enumerate(self.edges):
            out.append(StratumDescriptor(self.edge_name(e), ClosedSubgroup(self.n, (a,)), 1))
        return out

    def fixed_term(self, R: CoefficientRing) -> PresentedModule:
        M = grmod.free_module(_ctx(self.n, R), [0] * len(self.vertices))
        d = R.base_dimension() + self.n
        M.closed_form = {"dim": d, "depth": d, "why": "free module"} if self.vertices else None
        return M

    def edge_term(self, R: CoefficientRing) -> GradedModule:
        ctx = _ctx(self.n, R)
        parts = []
        for v, w, a in self.edges:
            try:
                H = full_classifying_cohomology(ClosedSubgroup(self.n, (a,)), ctx)
            except UnsupportedCoefficients as exc:
                raise UnsupportedModelRing(str(exc)) from None
            parts.append(Shifted(H, 1))
        return DirectSum(parts, ctx)

    def boundary_map(self, X0: PresentedModule, E: DirectSum) -> GradedMap:
        vidx = {v: i for i, v in enumerate(self.vertices)}

        def fn(j):
            mons = X0.ctx.monomials(j)
            A = linalg.zeros(E.dim(j + 1), X0.dim(j))
            offs = E.offsets(j + 1)
            for e, ((v, w, a), part) in enumerate(zip(self.edges, E.summands)):
                imgs = _unit_images(part.module, j)
                for sign, u in ((-1, vidx[v]), (1, vidx[w])):
                    for mi in range(len(mons)):
                        col = u * len(mons) + mi
                        for r, x in enumerate(imgs[mi]):
                            A[offs[e] + r][col] += sign * x
            return [[E.ring.reduce(x) for x in row] for row in A]

        return GradedMap(X0, E, 1, fn)

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        X0 = self.fixed_term(R)
        E = self.edge_term(R)
        delta = self.boundary_map(X0, E)
        ker = grmod.kernel_module(delta)
        cok = grmod.cokernel_module(delta)
        total = DirectSum([cok, ker], X0.ctx)

        def res(j):
            A = linalg.zeros(X0.dim(j), total.dim(j))
            off = cok.dim(j)
            for c, v in enumerate(ker.basis(j)):
                for r, x in enumerate(v):
                    A[r][off + c] = x
            return A

        restriction = GradedMap(total, X0, 0, res)
        terms: List[GradedModule] = [X0, E]
        diffs = [delta]
        ctx = X0.ctx
        for _ in range(2, self.n + 1):
            Z = grmod.zero_module(ctx)
            diffs.append(GradedMap(terms[-1], Z, 1, lambda j: []))
            terms.append(Z)
        return SequenceData(0, total, terms, restriction, diffs)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": list(self.vertices),
            "edges": [{"v": v, "w": w, "label": list(a)} for v, w, a in self.edges],
        }


# ----------------------------------------------------------------------------
# Single orbits, unions, free-circle products


@dataclass(frozen=True)
class SingleOrbit(SpaceModel):
    isotropy: ClosedSubgroup

    @property
    def n(self) -> int:
        return self.isotropy.n

    def strata(self) -> List[StratumDescriptor]:
        return [StratumDescriptor("orbit", self.isotropy, self.n - self.isotropy.torus_rank)]

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        try:
            H = full_classifying_cohomology(self.isotropy, _ctx(self.n, R))
        except UnsupportedCoefficients as exc:
            raise UnsupportedModelRing(str(exc)) from None
        k = self.min_orbit_dim()
        terms: List[GradedModule] = [H]
        diffs = []
        for _ in range(k + 1, self.n + 1):
            Z = grmod.zero_module(H.ctx)
            diffs.append(GradedMap(terms[-1], Z, 1, lambda j: []))
            terms.append(Z)
        return SequenceData(k, H, terms, grmod.identity_map(H), diffs)

    def to_json(self) -> dict:
        return {"n": self.n, "single_orbit": {"character_matrix": [list(r) for r in self.isotropy.character_matrix]}}


@dataclass(frozen=True)
class DisjointUnion(SpaceModel):
    parts: Tuple[SpaceModel, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise InvalidModel("empty union")
        if len({p.n for p in self.parts}) != 1:
            raise InvalidModel("parts of a union must share the torus")

    @property
    def n(self) -> int:
        return self.parts[0].n

    def strata(self) -> List[StratumDescriptor]:
        out = []
        for idx, p in enumerate(self.parts):
            for s in p.strata():
                out.append(StratumDescriptor(f"{idx}:{s.name}", s.isotropy, s.orbit_dim))
        return out

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        datas = [p.sequence_data(R) for p in self.parts]
        if len({d.start for d in datas}) != 1:
            raise UnsupportedModelRing("union parts with different minimal orbit dimensions")
        ctx = _ctx(self.n, R)
        total = DirectSum([d.total for d in datas], ctx)
        terms = [DirectSum([d.terms[i] for d in datas], ctx) for i in range(len(datas[0].terms))]
        res = grmod.direct_sum_map([d.restriction for d in datas], total, terms[0])
        diffs = [
            grmod.direct_sum_map([d.differentials[i] for d in datas], terms[i], terms[i + 1])
            for i in range(len(terms) - 1)
        ]
        return SequenceData(datas[0].start, total, terms, res, diffs)

    def to_json(self) -> dict:
        return {"n": self.n, "union": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class FreeCircleProduct(SpaceModel):
    """S^1 x Y with the first circle of T acting freely on S^1 and the rest on Y."""

    base: SpaceModel

    @property
    def n(self) -> int:
        return self.base.n + 1

    def strata(self) -> List[StratumDescriptor]:
        out = []
        first = (1,) + (0,) * self.base.n
        for s in self.base.strata():
            rows = (first,) + tuple((0,) + tuple(r) for r in s.isotropy.character_matrix)
            out.append(StratumDescriptor(s.name, ClosedSubgroup(self.n, rows), s.orbit_dim + 1))
        return out

    def sequence_data(self, R: CoefficientRing) -> SequenceData:
        b = self.base.sequence_data(R)
        total = _inflate(b.total)
        terms = [_inflate(t) for t in b.terms]
        res = grmod.inflated_map(b.restriction, total, terms[0])
        diffs = [grmod.inflated_map(f, terms[i], terms[i + 1]) for i, f in enumerate(b.differentials)]
        return SequenceData(b.start + 1, total, terms, res, diffs)

    def to_json(self) -> dict:
        return {"n": self.n, "free_circle_times": self.base.to_json()}


def _inflate(M: GradedModule) -> Inflated:
    out = Inflated(M)
    # t_1 acts by zero, so dimension and depth are those over the smaller ring
    out.closed_form = M.closed_form
    return out


# ----------------------------------------------------------------------------
# Operations on strata


def strata(X: SpaceModel) -> List[StratumDescriptor]:
    return X.strata()


def skeleton(X: SpaceModel, i: int) -> List[StratumDescriptor]:
    """Strata of the equivariant i-skeleton X_i (orbits of dimension <= i)."""
    if not -1 <= i <= X.n:
        raise IndexOutOfRange(f"skeleton index {i} outside [-1, {X.n}]")
    return [s for s in X.strata() if s.orbit_dim <= i]


def p_skeleton(X: SpaceModel, p: int, i: int) -> List[StratumDescriptor]:
    """Strata of X_{p,i}: points whose T_p-orbit has at most p^i elements."""
    if not -1 <= i <= X.n:
        raise IndexOutOfRange(f"skeleton index {i} outside [-1, {X.n}]")
    return [s for s in X.strata() if X.n - p_rank(s.isotropy, p) <= i]


def min_orbit_dim(X: SpaceModel) -> int:
    return X.min_orbit_dim()


def equivariant_cohomology(X: SpaceModel, R: CoefficientRing) -> GradedModule:
    return X.equivariant_cohomology(R)


def relative_term(X: SpaceModel, i: int, R: CoefficientRing) -> GradedModule:
    return X.relative_term(i, R)


# ----------------------------------------------------------------------------
# Catalog and file formats


def projective_line() -> Fan:
    return Fan(1, ((1,), (-1,)), ((0,), (1,)))


def projective_plane() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


def p1_times_p1() -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))


def hirzebruch(a: int) -> Fan:
    return Fan(2, ((1, 0), (0, 1), (-1, a), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))


def spinning_sphere(m: int, n: int = 1) -> GkmGraph:
    label = (m,) + (0,) * (n - 1)
    return GkmGraph(n, ("N", "S"), (("N", "S", label),))


CATALOG_NAMES = ["P1", "P2", "P1xP1", "Hirzebruch:<a>", "SpinningSphere:<m>", "FreeCircleTimes:<model>"]


def catalog(name: str) -> SpaceModel:
    name = name.strip()
    if name == "P1":
        return projective_line()
    if name == "P2":
        return projective_plane()
    if name == "P1xP1":
        return p1_times_p1()
    head, _, arg = name.partition(":")
    if head == "Hirzebruch" and arg:
        return hirzebruch(int(arg))
    if head == "SpinningSphere" and arg:
        return spinning_sphere(int(arg))
    if head == "FreeCircleTimes" and arg:
        return FreeCircleProduct(catalog(arg))
    raise KeyError(f"unknown catalog model {name!r}")


def model_from_json(data: dict) -> SpaceModel:
    n = int(data["n"])
    if "rays" in data:
        return Fan(n, tuple(tuple(r) for r in data["rays"]), tuple(tuple(c) for c in data["cones"]))
    if "vertices" in data:
        edges = tuple((e["v"], e["w"], tuple(e["label"])) for e in data["edges"])
        return GkmGraph(n, tuple(data["vertices"]), edges)
    if "single_orbit" in data:
        rows = tuple(tuple(r) for r in data["single_orbit"].get("character_matrix", []))
        return SingleOrbit(ClosedSubgroup(n, rows))
    if "free_circle_times" in data:
        return FreeCircleProduct(model_from_json(data["free_circle_times"]))
    if "union" in data:
        return DisjointUnion(tuple(model_from_json(p) for p in data["union"]))
    raise InvalidModel("unrecognized space description")
