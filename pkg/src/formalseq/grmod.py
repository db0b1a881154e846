"""Graded modules over A = R[t_1..t_n] (deg t_j = 2), handled slice by slice.

Every module exposes, for each degree j, a free coordinate space R^dim with a
list of relation vectors (so M_j = R^dim / span(rels)) and, for each
variable t_k, an action matrix from degree j to degree j + 2.  Finitely
presented modules produce these from their presentation; kernels, images,
quotients, sums, shifts and inflations are built on top.  All homological
verification is degreewise over R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import linalg
from . import poly as P
from .ring import (
    CoefficientRing,
    FinitelyGeneratedRModule,
    PolynomialRingContext,
    prime_factors,
)

INF = math.inf


class NotAComplex(ArithmeticError):
    pass


class DegreeBoundTooSmall(RuntimeError):
    pass


class FieldRequired(ValueError):
    pass


class ZeroModule(ValueError):
    pass


class Piece(NamedTuple):
    dim: int
    rels: Tuple[Tuple[int, ...], ...]


def default_degree_bound(n: int, max_generator_degree: int = 0) -> int:
    return 2 * (n + max_generator_degree) + 8


# ----------------------------------------------------------------------------
# Modules


class GradedModule:
    """Base class; subclasses implement `_piece` and `_action`."""

    ctx: PolynomialRingContext
    min_degree: int = 0
    # closed-form depth/dim data used where no general algorithm applies
    closed_form: Optional[dict] = None

    def __init__(self, ctx: PolynomialRingContext, min_degree: int = 0):
        self.ctx = ctx
        self.min_degree = min_degree
        self._pieces: Dict[int, Piece] = {}
        self._actions: Dict[Tuple[int, int], linalg.Matrix] = {}

    @property
    def ring(self) -> CoefficientRing:
        return self.ctx.ring

    @property
    def n(self) -> int:
        return self.ctx.n

    def piece(self, j: int) -> Piece:
        if j < self.min_degree:
            return Piece(0, ())
        pc = self._pieces.get(j)
        if pc is None:
            pc = self._piece(j)
            self._pieces[j] = pc
        return pc

    def dim(self, j: int) -> int:
        return self.piece(j).dim

    def action(self, k: int, j: int) -> linalg.Matrix:
        """Matrix of multiplication by t_{k+1} from degree j to j + 2."""
        key = (k, j)
        a = self._actions.get(key)
        if a is None:
            if self.dim(j) == 0 or self.dim(j + 2) == 0:
                a = linalg.zeros(self.dim(j + 2), self.dim(j))
            else:
                a = self._action(k, j)
            self._actions[key] = a
        return a

    def _piece(self, j: int) -> Piece:
        raise NotImplementedError

    def _action(self, k: int, j: int) -> linalg.Matrix:
        raise NotImplementedError

    def graded_piece(self, j: int) -> FinitelyGeneratedRModule:
        pc = self.piece(j)
        return linalg.cokernel(self.ring, pc.dim, pc.rels)

    def hilbert_function(self, D: int) -> List[FinitelyGeneratedRModule]:
        return hilbert_function(self, D)


class PresentedModule(GradedModule):
    """Coker of a homogeneous relation matrix over a free module.

    `relations` is a list of dicts {generator index: Poly}; each is one
    relation column and must be homogeneous.
    """

    def __init__(self, ctx: PolynomialRingContext, generator_degrees: Sequence[int], relations: Sequence[Dict[int, P.Poly]] = ()):
        gd = tuple(int(d) for d in generator_degrees)
        super().__init__(ctx, min(gd) if gd else 0)
        self.generator_degrees = gd
        self.relations: Tuple[Dict[int, P.Poly], ...] = tuple(
            {g: dict(f) for g, f in r.items() if f} for r in relations
        )
        self.relation_degrees = tuple(self._relation_degree(r) for r in self.relations)

    def _relation_degree(self, rel: Dict[int, P.Poly]) -> Optional[int]:
        degs = set()
        for g, f in rel.items():
            if not 0 <= g < len(self.generator_degrees):
                raise ValueError(f"relation refers to missing generator {g}")
            if any(len(m) != self.n for m in f):
                raise ValueError("relation polynomial has wrong number of variables")
            degs.add(self.generator_degrees[g] + P.degree(f))
        if len(degs) > 1:
            raise ValueError("relation column is not homogeneous")
        return degs.pop() if degs else None

    def basis(self, j: int) -> List[Tuple[int, Tuple[int, ...]]]:
        out = []
        for g, d in enumerate(self.generator_degrees):
            for m in self.ctx.monomials(j - d):
                out.append((g, m))
        return out

    def _index(self, j: int) -> Dict[Tuple[int, Tuple[int, ...]], int]:
        return {b: i for i, b in enumerate(self.basis(j))}

    def _piece(self, j):
        idx = self._index(j)
        dim = len(idx)
        rels = []
        for rel, e in zip(self.relations, self.relation_degrees):
            if e is None or e > j or (j - e) % 2:
                continue
            for mu in self.ctx.monomials(j - e):
                v = [0] * dim
                for g, f in rel.items():
                    for m, c in f.items():
                        key = (g, tuple(a + b for a, b in zip(m, mu)))
                        v[idx[key]] += c
                v = [self.ring.reduce(x) for x in v]
                if any(v):
                    rels.append(tuple(v))
        return Piece(dim, tuple(rels))

    def _action(self, k, j):
        src = self.basis(j)
        idx = self._index(j + 2)
        A = linalg.zeros(len(idx), len(src))
        for c, (g, m) in enumerate(src):
            m2 = list(m)
            m2[k] += 1
            A[idx[(g, tuple(m2))]][c] = 1
        return A

    def to_json(self) -> dict:
        rels = []
        for r in self.relations:
            if len(r) == 1:
                (g, f), = r.items()
                rels.append({"target": g, "poly": P.format_poly(f)})
            else:
                rels.append({"entries": {str(g): P.format_poly(f) for g, f in sorted(r.items())}})
        return {
            "n": self.n,
            "ring": str(self.ring),
            "generators": list(self.generator_degrees),
            "relations": rels,
        }


def free_module(ctx: PolynomialRingContext, degrees: Sequence[int]) -> PresentedModule:
    return PresentedModule(ctx, degrees, ())


def cyclic_module(ctx: PolynomialRingContext, ideal: Sequence[P.Poly], degree: int = 0) -> PresentedModule:
    """A/(ideal) with its generator in the given degree."""
    return PresentedModule(ctx, [degree], [{0: f} for f in ideal if f])


class SubModule(GradedModule):
    """Submodule of `ambient` generated slice-wise by `gens(j)` (ambient coordinates).

    The generating sets must be A-stable modulo the ambient relations.
    """

    def __init__(self, ambient: GradedModule, gens: Callable[[int], Sequence[Sequence[int]]]):
        super().__init__(ambient.ctx, ambient.min_degree)
        self.ambient = ambient
        self._gens = gens
        self._bases: Dict[int, List[linalg.Vector]] = {}

    def basis(self, j: int) -> List[linalg.Vector]:
        b = self._bases.get(j)
        if b is None:
            amb = self.ambient.piece(j)
            vecs = list(self._gens(j)) + [list(r) for r in amb.rels]
            b = linalg.span_basis(self.ring, vecs, amb.dim)
            self._bases[j] = b
        return b

    def inclusion(self, j: int) -> linalg.Matrix:
        return linalg.from_columns(self.basis(j), self.ambient.dim(j))

    def _piece(self, j):
        amb = self.ambient.piece(j)
        b = self.basis(j)
        coords = linalg.solve(self.ring, b, [list(r) for r in amb.rels], amb.dim)
        return Piece(len(b), tuple(tuple(c) for c in coords if any(c)))

    def _action(self, k, j):
        A = self.ambient.action(k, j)
        imgs = [linalg.apply(A, v) for v in self.basis(j)]
        coords = linalg.solve(self.ring, self.basis(j + 2), imgs, self.ambient.dim(j + 2))
        return linalg.from_columns(coords, self.dim(j + 2))


class QuotientModule(GradedModule):
    """`ambient` modulo the submodule generated slice-wise by `gens(j)`."""

    def __init__(self, ambient: GradedModule, gens: Callable[[int], Sequence[Sequence[int]]]):
        super().__init__(ambient.ctx, ambient.min_degree)
        self.ambient = ambient
        self._gens = gens

    def _piece(self, j):
        amb = self.ambient.piece(j)
        extra = [tuple(self.ring.reduce(x) for x in v) for v in self._gens(j)]
        return Piece(amb.dim, amb.rels + tuple(v for v in extra if any(v)))

    def _action(self, k, j):
        return self.ambient.action(k, j)


class DirectSum(GradedModule):
    def __init__(self, summands: Sequence[GradedModule], ctx: PolynomialRingContext | None = None):
        summands = list(summands)
        if ctx is None:
            if not summands:
                raise ValueError("empty direct sum needs a context")
            ctx = summands[0].ctx
        lo = min((s.min_degree for s in summands), default=0)
        super().__init__(ctx, lo)
        self.summands = summands

    def offsets(self, j: int) -> List[int]:
        out, o = [], 0
        for s in self.summands:
            out.append(o)
            o += s.dim(j)
        return out

    def _piece(self, j):
        dim = sum(s.dim(j) for s in self.summands)
        rels = []
        for s, o in zip(self.summands, self.offsets(j)):
            for r in s.piece(j).rels:
                v = [0] * dim
                v[o:o + len(r)] = r
                rels.append(tuple(v))
        return Piece(dim, tuple(rels))

    def _action(self, k, j):
        A = linalg.zeros(self.dim(j + 2), self.dim(j))
        for s, o1, o2 in zip(self.summands, self.offsets(j), self.offsets(j + 2)):
            B = s.action(k, j)
            for r, row in enumerate(B):
                A[o2 + r][o1:o1 + len(row)] = row
        return A


class Shifted(GradedModule):
    """M[-s]: the degree-j piece is M_{j-s}."""

    def __init__(self, module: GradedModule, shift: int):
        super().__init__(module.ctx, module.min_degree + shift)
        self.module = module
        self.shift = shift
        self.closed_form = module.closed_form

    def _piece(self, j):
        return self.module.piece(j - self.shift)

    def _action(self, k, j):
        return self.module.action(k, j - self.shift)


class Inflated(GradedModule):
    """A module over R[t_2..t_n] viewed over R[t_1..t_n] with t_1 acting by zero."""

    def __init__(self, module: GradedModule):
        super().__init__(PolynomialRingContext(module.n + 1, module.ring), module.min_degree)
        self.module = module

    def _piece(self, j):
        return self.module.piece(j)

    def _action(self, k, j):
        if k == 0:
            return linalg.zeros(self.dim(j + 2), self.dim(j))
        return self.module.action(k - 1, j)


class BaseChanged(GradedModule):
    """M tensor_R R' for R -> R' among Z -> Q, Z -> F_p (same integer slices)."""

    def __init__(self, module: GradedModule, ring: CoefficientRing):
        super().__init__(module.ctx.with_ring(ring), module.min_degree)
        self.module = module

    def _piece(self, j):
        pc = self.module.piece(j)
        rels = tuple(tuple(self.ring.reduce(x) for x in r) for r in pc.rels)
        return Piece(pc.dim, tuple(r for r in rels if any(r)))

    def _action(self, k, j):
        return [[self.ring.reduce(x) for x in row] for row in self.module.action(k, j)]


def zero_module(ctx: PolynomialRingContext) -> PresentedModule:
    return PresentedModule(ctx, [], [])


# ----------------------------------------------------------------------------
# Maps and complexes


class GradedMap:
    """Degreewise R-linear map raising degree by `shift`, compatible with t-actions."""

    def __init__(self, source: GradedModule, target: GradedModule, shift: int, fn: Callable[[int], linalg.Matrix]):
        self.source = source
        self.target = target
        self.shift = shift
        self._fn = fn
        self._cache: Dict[int, linalg.Matrix] = {}

    def matrix(self, j: int) -> linalg.Matrix:
        """Rows: target coordinates in degree j + shift; columns: source coordinates in degree j."""
        A = self._cache.get(j)
        if A is None:
            sd, td = self.source.dim(j), self.target.dim(j + self.shift)
            if sd == 0 or td == 0:
                A = linalg.zeros(td, sd)
            else:
                A = self._fn(j)
            self._cache[j] = A
        return A

    def image_vectors(self, j: int) -> List[linalg.Vector]:
        """Image of degree-(j - shift) source coordinates inside target degree j."""
        s = j - self.shift
        return linalg.columns(self.matrix(s), self.source.dim(s))

    def compose(self, first: "GradedMap") -> "GradedMap":
        """self o first."""
        if first.target is not self.source:
            raise ValueError("maps are not composable")

        def fn(j):
            return linalg.matmul(self.matrix(j + first.shift), first.matrix(j))

        return GradedMap(first.source, self.target, first.shift + self.shift, fn)


def poly_map(source: PresentedModule, target: PresentedModule, shift: int, entries: Dict[Tuple[int, int], P.Poly]) -> GradedMap:
    """Map of presented modules: generator g of the source goes to sum_h entries[(h, g)] e_h."""
    by_src: Dict[int, List[Tuple[int, P.Poly]]] = {}
    for (h, g), f in entries.items():
        if f:
            if source.generator_degrees[g] + shift != target.generator_degrees[h] + P.degree(f):
                raise ValueError(f"entry ({h},{g}) has the wrong degree")
            by_src.setdefault(g, []).append((h, f))

    def fn(j):
        src = source.basis(j)
        idx = target._index(j + shift)
        A = linalg.zeros(len(idx), len(src))
        for c, (g, m) in enumerate(src):
            for h, f in by_src.get(g, ()):
                for mm, coef in f.items():
                    key = (h, tuple(a + b for a, b in zip(m, mm)))
                    A[idx[key]][c] += coef
        return [[source.ring.reduce(x) for x in row] for row in A]

    return GradedMap(source, target, shift, fn)


def identity_map(M: GradedModule) -> GradedMap:
    return GradedMap(M, M, 0, lambda j: linalg.identity(M.dim(j)))


def inclusion_map(S: SubModule) -> GradedMap:
    return GradedMap(S, S.ambient, 0, S.inclusion)


def projection_map(Q: QuotientModule) -> GradedMap:
    return GradedMap(Q.ambient, Q, 0, lambda j: linalg.identity(Q.dim(j)))


def kernel_module(f: GradedMap) -> SubModule:
    ring = f.source.ring

    def gens(j):
        tgt = f.target.piece(j + f.shift)
        return linalg.preimage(ring, f.matrix(j), f.source.dim(j), tgt.rels, tgt.dim)

    return SubModule(f.source, gens)


def image_module(f: GradedMap) -> SubModule:
    return SubModule(f.target, f.image_vectors)


def cokernel_module(f: GradedMap) -> QuotientModule:
    return QuotientModule(f.target, f.image_vectors)


def direct_sum_map(maps: Sequence[GradedMap], source: DirectSum, target: DirectSum) -> GradedMap:
    shift = maps[0].shift if maps else 0

    def fn(j):
        A = linalg.zeros(target.dim(j + shift), source.dim(j))
        for f, o1, o2 in zip(maps, source.offsets(j), target.offsets(j + shift)):
            B = f.matrix(j)
            for r, row in enumerate(B):
                A[o2 + r][o1:o1 + len(row)] = row
        return A

    return GradedMap(source, target, shift, fn)


def inflated_map(f: GradedMap, source: Inflated, target: Inflated) -> GradedMap:
    return GradedMap(source, target, f.shift, f.matrix)


@dataclass
class GradedComplex:
    """terms[i] --maps[i]--> terms[i+1]."""

    terms: List[GradedModule]
    maps: List[GradedMap]
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.maps) != len(self.terms) - 1:
            raise ValueError("a complex needs one map between consecutive terms")
        for i, f in enumerate(self.maps):
            if f.source is not self.terms[i] or f.target is not self.terms[i + 1]:
                raise ValueError(f"map {i} does not connect terms {i} and {i + 1}")
        if not self.labels:
            self.labels = [f"C{i}" for i in range(len(self.terms))]

    def check(self, D: int) -> None:
        """Raise NotAComplex if some composite fails to vanish in degree <= D."""
        for i in range(len(self.maps) - 1):
            f, g = self.maps[i], self.maps[i + 1]
            ring = f.source.ring
            for j in range(0, D + 1):
                comp = g.compose(f).matrix(j)
                tgt = g.target.piece(j + f.shift + g.shift)
                cols = linalg.columns(comp, f.source.dim(j))
                if not linalg.contains(ring, tgt.rels, cols, tgt.dim):
                    raise NotAComplex(f"composite {labels_pair(self, i)} nonzero in degree {j}")
        for i, f in enumerate(self.maps):
            _check_well_defined(f, D)


def labels_pair(C: GradedComplex, i: int) -> str:
    return f"{C.labels[i]} -> {C.labels[i + 1]} -> {C.labels[i + 2]}"


def _check_well_defined(f: GradedMap, D: int) -> None:
    ring = f.source.ring
    for j in range(0, D + 1):
        src = f.source.piece(j)
        tgt = f.target.piece(j + f.shift)
        imgs = [linalg.apply(f.matrix(j), r) for r in src.rels]
        if not linalg.contains(ring, tgt.rels, imgs, tgt.dim):
            raise NotAComplex(f"map does not respect relations in degree {j}")


@dataclass
class HomologySlice:
    degree: int
    module: FinitelyGeneratedRModule
    kernel_basis: List[linalg.Vector]
    boundary_gens: List[linalg.Vector]


def homology_slice(C: GradedComplex, position: int, j: int) -> HomologySlice:
    M = C.terms[position]
    ring = M.ring
    pc = M.piece(j)
    if position < len(C.maps):
        f = C.maps[position]
        tgt = f.target.piece(j + f.shift)
        K = linalg.preimage(ring, f.matrix(j), pc.dim, tgt.rels, tgt.dim)
    else:
        K = [[int(i == c) for i in range(pc.dim)] for c in range(pc.dim)]
    gens = [list(r) for r in pc.rels]
    if position > 0:
        gens += C.maps[position - 1].image_vectors(j)
    gens = [g for g in gens if any(g)]
    try:
        H = linalg.subquotient(ring, K, gens, pc.dim)
    except linalg.NotInSpan:
        raise NotAComplex(f"image not inside kernel at {C.labels[position]} in degree {j}") from None
    return HomologySlice(j, H, K, gens)


def homology_at(C: GradedComplex, position: int, D: int, lo: int = 0) -> List[FinitelyGeneratedRModule]:
    """Homology at `position` for degrees lo..D (index 0 is degree lo)."""
    return [homology_slice(C, position, j).module for j in range(lo, D + 1)]


# ----------------------------------------------------------------------------
# Hilbert functions, dimension, resolutions


def hilbert_function(M: GradedModule, D: int) -> List[FinitelyGeneratedRModule]:
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    return [M.graded_piece(j) for j in range(0, D + 1)]


def hilbert_ranks(M: GradedModule, D: int) -> List[int]:
    return [h.free_rank for h in hilbert_function(M, D)]


def is_zero_up_to(M: GradedModule, D: int) -> bool:
    return all(M.graded_piece(j).is_zero for j in range(min(M.min_degree, 0), D + 1))


def _field_krull_dim(M: GradedModule, D: int) -> Tuple[float, str]:
    n = M.n
    lo = min(M.min_degree, 0)
    samples = []
    j = lo
    while j + 1 <= D:
        samples.append(M.graded_piece(j).free_rank + M.graded_piece(j + 1).free_rank)
        j += 2
    if not any(samples):
        if is_zero_up_to(M, D):
            return -INF, "zero up to degree bound"
    need = n + 3
    if len(samples) < need:
        raise DegreeBoundTooSmall(f"need {need} even/odd sample pairs, have {len(samples)}")
    diffs = [samples]
    for _ in range(n + 1):
        prev = diffs[-1]
        diffs.append([b - a for a, b in zip(prev, prev[1:])])
    if any(diffs[n + 1][-2:]):
        raise DegreeBoundTooSmall("Hilbert function not yet polynomial within the degree bound")
    deg = -1
    for e in range(n + 1):
        if diffs[e][-1]:
            deg = e
    dim = deg + 1 if deg >= 0 else 0
    return dim, f"Hilbert polynomial of degree {deg} fitted from {len(samples)} samples"


def relevant_primes(M: GradedModule, D: int) -> List[int]:
    ring = M.ring
    primes = set()
    for j in range(min(M.min_degree, 0), D + 1):
        for d in M.graded_piece(j).torsion:
            primes.update(prime_factors(d))
    return sorted(q for q in primes if not ring.is_invertible(q))


def krull_dim(M: GradedModule, D: int) -> "DepthDimReport":
    ring = M.ring
    if ring.is_field:
        dim, cert = _field_krull_dim(M, D)
        return DepthDimReport(None, dim, None, [f"dim: {cert}"])
    from .ring import QQ, GF

    dq, cq = _field_krull_dim(BaseChanged(M, QQ), D)
    best = dq + 1 if dq != -INF else -INF
    notes = [f"dim over Q: {dq} ({cq})"]
    primes = relevant_primes(M, D)
    for q in primes:
        dp, cp = _field_krull_dim(BaseChanged(M, GF(q)), D)
        notes.append(f"dim over F{q}: {dp}")
        best = max(best, dp)
    notes.append(f"primes examined: {primes}")
    return DepthDimReport(None, best, None, ["dim: " + "; ".join(notes)])


class _Echelon:
    """Incremental row-echelon basis over a field."""

    def __init__(self, ring: CoefficientRing, dim: int):
        self.ring = ring
        self.dim = dim
        self.rows: Dict[int, List] = {}
        self.norm, self.inv = linalg._field_ops(ring)

    def reduce(self, v):
        v = [self.norm(x) for x in v]
        p = self.ring.p if self.ring.kind == "Fp" else 0
        for c in range(self.dim):
            if v[c] and c in self.rows:
                f = v[c]
                r = self.rows[c]
                v = [x - f * y for x, y in zip(v, r)]
                if p:
                    v = [x % p for x in v]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        for c in range(self.dim):
            if v[c]:
                s = self.inv(v[c])
                self.rows[c] = [self.norm(x * s) for x in v]
                return True
        return False


@dataclass
class Resolution:
    """Minimal graded free resolution; betti[i] lists generator degrees of F_i."""

    betti: List[List[int]]
    differentials: List[List[linalg.Vector]]
    complete: bool
    degree_bound: int

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    def betti_numbers(self) -> List[int]:
        return [len(b) for b in self.betti]

    def betti_table(self) -> Dict[int, Dict[int, int]]:
        table: Dict[int, Dict[int, int]] = {}
        for i, degs in enumerate(self.betti):
            for d in degs:
                table.setdefault(i, {}).setdefault(d, 0)
                table[i][d] += 1
        return table


def _minimal_generators(ring, ambient: GradedModule, sub: Callable[[int], List], rel: Callable[[int], List], lo: int, D: int):
    """Minimal homogeneous generators (degree, ambient vector) of a submodule, over a field."""
    gens = []
    for j in range(lo, D + 1):
        W = sub(j)
        if not W:
            continue
        ech = _Echelon(ring, ambient.dim(j))
        for r in rel(j):
            ech.add(r)
        prev = sub(j - 2)
        for k in range(ambient.n):
            A = ambient.action(k, j - 2)
            for w in prev:
                ech.add(linalg.apply(A, w))
        for w in W:
            if ech.add(w):
                gens.append((j, list(w)))
    return gens


def _free_images(ambient: GradedModule, F: PresentedModule, gens, j: int):
    """Columns: image in `ambient` (degree j) of each basis element (g, m) of F_j."""
    cache = {}

    def img(g, m, deg):
        key = (g, m)
        if key in cache:
            return cache[key]
        if not any(m):
            v = list(gens[g][1])
        else:
            k = next(i for i, e in enumerate(m) if e)
            m2 = list(m)
            m2[k] -= 1
            v = linalg.apply(ambient.action(k, deg - 2), img(g, tuple(m2), deg - 2))
        cache[key] = v
        return v

    return [img(g, m, j) for g, m in F.basis(j)]


def minimal_resolution(M: GradedModule, D: int | None = None) -> Resolution:
    ring = M.ring
    if not ring.is_field:
        raise FieldRequired("minimal resolutions are computed over fields only")
    n = M.n
    if D is None:
        D = default_degree_bound(n, max(M.min_degree, 0))
    lo = M.min_degree
    ambient: GradedModule = M

    def sub0(j):
        if j < lo:
            return []
        pc = M.piece(j)
        return [[int(i == c) for i in range(pc.dim)] for c in range(pc.dim)]

    def rel0(j):
        return [list(r) for r in M.piece(j).rels]

    sub, rel = sub0, rel0
    betti: List[List[int]] = []
    diffs: List[List[linalg.Vector]] = []
    complete = True
    window = n + 2
    for level in range(n + 2):
        gens = _minimal_generators(ring, ambient, sub, rel, lo, D)
        if not gens:
            break
        if level == n + 1:
            raise ArithmeticError("resolution longer than n: inconsistent module data")
        degs = [d for d, _ in gens]
        if any(d > D - window for d in degs) and level > 0:
            complete = False
        betti.append(degs)
        diffs.append([v for _, v in gens])
        F = free_module(PolynomialRingContext(n, ring), degs)
        kers: Dict[int, List] = {}

        def make_sub(F=F, gens=gens, ambient=ambient, rel=rel, kers=kers):
            def s(j):
                if j in kers:
                    return kers[j]
                if F.dim(j) == 0:
                    kers[j] = []
                    return []
                imgs = _free_images(ambient, F, gens, j)
                A = linalg.from_columns(imgs, ambient.dim(j))
                r = rel(j)
                K = linalg.preimage(ring, A, F.dim(j), r, ambient.dim(j))
                kers[j] = K
                return K
            return s

        sub = make_sub()
        rel = lambda j: []  # noqa: E731
        ambient = F
        lo = min(degs)
    return Resolution(betti, diffs, complete, D)


@dataclass
class DepthDimReport:
    depth: Optional[float]
    dim: Optional[float]
    is_cm: Optional[bool]
    certificate: List[str]

    def to_json(self) -> dict:
        def enc(x):
            if x is None:
                return "unknown"
            if x == INF:
                return "inf"
            if x == -INF:
                return "-inf"
            return x
        return {"depth": enc(self.depth), "dim": enc(self.dim),
                "cohen_macaulay": "unknown" if self.is_cm is None else self.is_cm,
                "certificate": list(self.certificate)}


def depth(M: GradedModule, D: int | None = None) -> DepthDimReport:
    ring = M.ring
    if D is None:
        D = default_degree_bound(M.n, max(M.min_degree, 0))
    if ring.is_field:
        if is_zero_up_to(M, D):
            return DepthDimReport(INF, None, None, ["depth: zero module"])
        res = minimal_resolution(M, D)
        pd = res.length
        cert = f"depth: n - pd = {M.n} - {pd} (Betti {res.betti_numbers()}"
        cert += ", complete)" if res.complete else ", resolution may be truncated)"
        return DepthDimReport(M.n - pd, None, None, [cert])
    return _closed_form_report(M, D, want="depth")


def _closed_form_report(M: GradedModule, D: int, want: str) -> DepthDimReport:
    cf = M.closed_form
    if cf is not None:
        return DepthDimReport(cf["depth"], cf["dim"], cf["depth"] == cf["dim"], [f"closed form: {cf['why']}"])
    ok, info = is_free(M, D)
    if ok:
        if not info["degrees"]:
            return DepthDimReport(INF, -INF, None, ["zero module"])
        d = M.ring.base_dimension() + M.n
        return DepthDimReport(d, d, True, [f"free with generators in degrees {info['degrees']}"])
    return DepthDimReport(None, None, None, ["no general depth algorithm over this ring"])


def is_cohen_macaulay(M: GradedModule, D: int | None = None) -> DepthDimReport:
    if D is None:
        D = default_degree_bound(M.n, max(M.min_degree, 0))
    if M.ring.is_field:
        if is_zero_up_to(M, D):
            raise ZeroModule("Cohen-Macaulay property is defined for nonzero modules")
        dp = depth(M, D)
        dm = krull_dim(M, D)
        return DepthDimReport(dp.depth, dm.dim, dp.depth == dm.dim, dp.certificate + dm.certificate)
    rep = _closed_form_report(M, D, want="cm")
    if rep.dim is None:
        try:
            rep.dim = krull_dim(M, D).dim
            rep.certificate.append("dim from fibre dimensions")
        except DegreeBoundTooSmall:
            pass
    return rep


def is_free(M: GradedModule, D: int | None = None) -> Tuple[bool, dict]:
    """Try to exhibit M as free up to degree D.

    Lifts a basis of each slice of M / A_{>0} M and checks the induced map
    from the free module is bijective in every degree <= D.
    """
    ring = M.ring
    if D is None:
        D = default_degree_bound(M.n, max(M.min_degree, 0))
    lo = min(M.min_degree, 0)
    gens: List[Tuple[int, linalg.Vector]] = []
    for j in range(lo, D + 1):
        pc = M.piece(j)
        lower = [list(r) for r in pc.rels]
        for k in range(M.n):
            A = M.action(k, j - 2)
            for c in linalg.columns(A, M.dim(j - 2)):
                lower.append(c)
        q, lifts = linalg.quotient_lifts(ring, pc.dim, lower)
        if q.torsion:
            return False, {"degree": j, "reason": f"M/A+M has torsion {q.torsion} in degree {j}", "degrees": []}
        gens.extend((j, v) for v in lifts)
    degs = [d for d, _ in gens]
    F = free_module(PolynomialRingContext(M.n, ring), degs)
    for j in range(lo, D + 1):
        pc = M.piece(j)
        imgs = _free_images(M, F, gens, j) if F.dim(j) else []
        target = linalg.cokernel(ring, pc.dim, pc.rels)
        if target.torsion:
            return False, {"degree": j, "reason": f"torsion {target.torsion} in degree {j}", "degrees": degs}
        if target.free_rank != F.dim(j):
            return False, {"degree": j, "reason": f"rank {target.free_rank} != free rank {F.dim(j)} in degree {j}", "degrees": degs}
        if not linalg.cokernel(ring, pc.dim, list(pc.rels) + imgs).is_zero:
            return False, {"degree": j, "reason": f"lifted generators do not span degree {j}", "degrees": degs}
    return True, {"degrees": degs}
