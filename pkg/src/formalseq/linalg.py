"""Exact linear algebra over Z (Smith normal form) and over Q / F_p (elimination).

Matrices are lists of rows.  Spanning sets are lists of vectors (columns).
Over Z[1/S] every computation runs over Z; module structures are localized
at the end by `CoefficientRing.localize_factors`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .ring import CoefficientRing, FinitelyGeneratedRModule, PRIME_FIELD

Matrix = List[List[int]]
Vector = List[int]


class NotInSpan(ArithmeticError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def from_columns(cols: Sequence[Sequence[int]], dim: int) -> Matrix:
    if not cols:
        return [[] for _ in range(dim)]
    return [list(r) for r in zip(*cols)]


def columns(A: Matrix, ncols: int) -> List[Vector]:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*A)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    if not A:
        return []
    if not B:
        n = ncols if ncols is not None else 0
        return [[0] * n for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def apply(A: Matrix, v: Sequence[int]) -> Vector:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


# ----------------------------------------------------------------------------
# Smith normal form over Z


@dataclass(frozen=True)
class SnfResult:
    """U * A * V == D with U, V unimodular; invariant factors form a divisor chain."""

    U: Matrix
    D: Matrix
    V: Matrix
    invariant_factors: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SnfResult:
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U, _, D, V, factors = _snf([list(map(int, r)) for r in A], m, n)
    return SnfResult(U, D, V, tuple(factors))


def _snf(A: Matrix, m: int, n: int, want_U=True, want_Uinv=True, want_V=True):
    """Returns (U, Uinv, D, V, factors); D is A reduced in place."""
    U = identity(m) if want_U else None
    Ui = identity(m) if want_Uinv else None
    V = identity(n) if want_V else None
    D = A

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        rd, rs = D[dst], D[src]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if U is not None:
            ud, us = U[dst], U[src]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]
        if Ui is not None:
            for r in range(m):
                if Ui[r][dst]:
                    Ui[r][src] -= q * Ui[r][dst]

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for r in range(m):
            if D[r][src]:
                D[r][dst] += q * D[r][src]
        if V is not None:
            for r in range(n):
                if V[r][src]:
                    V[r][dst] += q * V[r][src]

    def swap_rows(a, b):
        if a == b:
            return
        D[a], D[b] = D[b], D[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]
        if Ui is not None:
            for r in range(m):
                Ui[r][a], Ui[r][b] = Ui[r][b], Ui[r][a]

    def swap_cols(a, b):
        if a == b:
            return
        for r in range(m):
            D[r][a], D[r][b] = D[r][b], D[r][a]
        if V is not None:
            for r in range(n):
                V[r][a], V[r][b] = V[r][b], V[r][a]

    def negate_row(a):
        D[a] = [-x for x in D[a]]
        if U is not None:
            U[a] = [-x for x in U[a]]
        if Ui is not None:
            for r in range(m):
                Ui[r][a] = -Ui[r][a]

    factors = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = D[t][t]
            moved = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // piv))
                    if D[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            piv = D[t][t]
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // piv))
                    if D[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            piv = D[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if D[t][t] < 0:
            negate_row(t)
        factors.append(D[t][t])
        t += 1
    return U, Ui, D, V, factors


# ----------------------------------------------------------------------------
# Field elimination


def _field_ops(ring: CoefficientRing):
    if ring.kind == PRIME_FIELD:
        p = ring.p

        def norm(x):
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, p) % p
            return x % p

        def inv(x):
            return pow(x, -1, p)

        return norm, inv

    def qnorm(x):
        return x

    def qinv(x):
        return Fraction(1) / x

    return qnorm, qinv


def rref(ring: CoefficientRing, A: Matrix, ncols: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over a field; returns (nonzero rows, pivot columns)."""
    norm, inv = _field_ops(ring)
    rows = [[norm(x) for x in r] for r in A]
    rows = [r for r in rows if any(r)]
    pivots: List[int] = []
    out: Matrix = []
    p = ring.p if ring.kind == PRIME_FIELD else 0
    for c in range(ncols):
        pr = None
        for idx, r in enumerate(rows):
            if r[c]:
                pr = idx
                break
        if pr is None:
            continue
        prow = rows.pop(pr)
        s = inv(prow[c])
        prow = [norm(x * s) for x in prow]
        nz = [k for k in range(c, ncols) if prow[k]]

        def elim(r):
            f = r[c]
            if not f:
                return r
            r = list(r)
            for k in nz:
                r[k] = r[k] - f * prow[k]
                if p:
                    r[k] %= p
            return r

        rows = [elim(r) for r in rows]
        rows = [r for r in rows if any(r)]
        out = [elim(r) for r in out]
        out.append(prow)
        pivots.append(c)
        if not rows:
            break
    return out, pivots


# ----------------------------------------------------------------------------
# Ring-generic operations


def rank(ring: CoefficientRing, A: Matrix, ncols: int | None = None) -> int:
    if not A:
        return 0
    n = len(A[0]) if ncols is None else ncols
    if ring.is_field:
        return len(rref(ring, A, n)[1])
    return len(_snf([list(r) for r in A], len(A), n, False, False, False)[4])


def kernel(ring: CoefficientRing, A: Matrix, ncols: int) -> List[Vector]:
    """Basis of {x in R^ncols : A x = 0} (over Z a saturated lattice basis)."""
    if ncols == 0:
        return []
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    if ring.is_field:
        R, piv = rref(ring, A, ncols)
        free = [c for c in range(ncols) if c not in set(piv)]
        basis = []
        norm, _ = _field_ops(ring)
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for r, pc in zip(R, piv):
                v[pc] = norm(-r[f])
            basis.append(v)
        return basis
    m = len(A)
    _, _, _, V, factors = _snf([list(r) for r in A], m, ncols, False, False, True)
    r = len(factors)
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def span_basis(ring: CoefficientRing, vecs: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """Independent vectors with the same R-span."""
    vecs = [list(v) for v in vecs if any(v)]
    if not vecs or dim == 0:
        return []
    if ring.is_field:
        R, piv = rref(ring, vecs, dim)
        return R
    A = from_columns(vecs, dim)
    _, Ui, D, _, factors = _snf(A, dim, len(vecs), False, True, False)
    return [[Ui[i][j] * factors[j] for i in range(dim)] for j in range(len(factors))]


def solve(ring: CoefficientRing, basis: Sequence[Sequence[int]], targets: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """Coordinates of each target in terms of an independent `basis`."""
    g = len(basis)
    if not targets:
        return []
    if g == 0:
        for y in targets:
            if any(ring.reduce(x) for x in y):
                raise NotInSpan("target outside the zero span")
        return [[] for _ in targets]
    if ring.is_field:
        norm, _ = _field_ops(ring)
        # rows: [B | Y] transposed system B c = y
        aug = [list(r) + [t[i] for t in targets] for i, r in enumerate(from_columns(basis, dim))]
        R, piv = rref(ring, aug, g + len(targets))
        if any(pc >= g for pc in piv):
            raise NotInSpan("target outside span")
        out = []
        for k in range(len(targets)):
            c = [0] * g
            for r, pc in zip(R, piv):
                c[pc] = norm(r[g + k])
            out.append(c)
        return out
    B = from_columns(basis, dim)
    U, _, _, V, factors = _snf(B, dim, g, True, False, True)
    if len(factors) != g:
        raise ValueError("basis vectors are not independent")
    out = []
    for y in targets:
        z = apply(U, y)
        w = []
        for i in range(g):
            if z[i] % factors[i]:
                raise NotInSpan("target not in lattice span")
            w.append(z[i] // factors[i])
        if any(z[i] for i in range(g, dim)):
            raise NotInSpan("target outside span")
        out.append(apply(V, w))
    return out


def cokernel(ring: CoefficientRing, dim: int, rels: Sequence[Sequence[int]]) -> FinitelyGeneratedRModule:
    """Structure of R^dim / span(rels)."""
    rels = [r for r in rels if any(r)]
    if not rels:
        return FinitelyGeneratedRModule(dim, ())
    if ring.is_field:
        return FinitelyGeneratedRModule(dim - rank(ring, rels, dim), ())
    A = from_columns(rels, dim)
    factors = _snf(A, dim, len(rels), False, False, False)[4]
    free = dim - len(factors)
    return FinitelyGeneratedRModule(free, ring.localize_factors(sorted(f for f in factors if f > 1)))


def subquotient(ring: CoefficientRing, basis: Sequence[Sequence[int]], gens: Sequence[Sequence[int]], dim: int) -> FinitelyGeneratedRModule:
    """Structure of span(basis) / span(gens), assuming gens lie in span(basis)."""
    coords = solve(ring, basis, [g for g in gens if any(g)], dim)
    return cokernel(ring, len(basis), coords)


def preimage(ring: CoefficientRing, f: Matrix, nsrc: int, rels: Sequence[Sequence[int]], ntgt: int) -> List[Vector]:
    """Basis of {x : f x in span(rels)} inside R^nsrc."""
    if nsrc == 0:
        return []
    rels = [r for r in rels if any(r)]
    if ntgt == 0:
        return kernel(ring, [], nsrc)
    block = [list(f[i]) + [-r[i] for r in rels] for i in range(ntgt)]
    ker = kernel(ring, block, nsrc + len(rels))
    proj = [v[:nsrc] for v in ker]
    return span_basis(ring, proj, nsrc)


def quotient_lifts(ring: CoefficientRing, dim: int, rels: Sequence[Sequence[int]]) -> Tuple[FinitelyGeneratedRModule, List[Vector]]:
    """Structure of R^dim/span(rels) and lifts of a basis of its free part."""
    rels = [r for r in rels if any(r)]
    if ring.is_field:
        if rels:
            _, piv = rref(ring, rels, dim)
        else:
            piv = []
        ps = set(piv)
        lifts = [[int(i == c) for i in range(dim)] for c in range(dim) if c not in ps]
        return FinitelyGeneratedRModule(len(lifts), ()), lifts
    if not rels:
        return FinitelyGeneratedRModule(dim, ()), [[int(i == c) for i in range(dim)] for c in range(dim)]
    A = from_columns(rels, dim)
    _, Ui, _, _, factors = _snf(A, dim, len(rels), False, True, False)
    r = len(factors)
    lifts = [[Ui[i][j] for i in range(dim)] for j in range(r, dim)]
    tors = ring.localize_factors(sorted(f for f in factors if f > 1))
    return FinitelyGeneratedRModule(dim - r, tors), lifts


def contains(ring: CoefficientRing, span: Sequence[Sequence[int]], vecs: Sequence[Sequence[int]], dim: int) -> bool:
    """Whether every vector of `vecs` lies in the R-span of `span`."""
    vecs = [v for v in vecs if any(ring.reduce(x) for x in v)]
    if not vecs:
        return True
    basis = span_basis(ring, span, dim)
    both = span_basis(ring, list(basis) + list(vecs), dim)
    if len(both) != len(basis):
        return False
    if ring.is_field:
        return True
    # same rank; compare lattice index after localization
    return cokernel(ring, len(both), solve(ring, both, basis, dim)).is_zero
