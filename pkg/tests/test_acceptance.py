"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import io
import itertools
import random
import time
from contextlib import redirect_stdout

import sympy
from sympy.matrices.normalforms import invariant_factors

from formalseq import abseq as AB
from formalseq import grmod
from formalseq import poly as P
from formalseq import spaces as S
from formalseq.cli import main
from formalseq.lattice import (
    ClosedSubgroup,
    StratumDescriptor,
    check_conditions,
    check_conditions_algebraic,
    dim_classifying,
)
from formalseq.ring import GF, QQ, ZZ, PolynomialRingContext, make_ring

RINGS = [QQ, GF(2), GF(3), GF(5), ZZ, make_ring("Z[1/2]"), make_ring("Z[1/2,1/3]")]


# ----------------------------------------------------------------------------
# 1. dimension of H*(BT') against an enumeration of minimal primes


def _primes_dividing(m):
    return [p for p in range(2, m + 1) if m % p == 0 and sympy.isprime(p)]


def dim_oracle(rows, n, R):
    """Krull dim of R[s_1..s_r, u_1..u_q]/(m_j u_j) by enumerating minimal primes."""
    M = sympy.Matrix(rows) if rows else sympy.zeros(0, n)
    rank = M.rank() if rows else 0
    ms = [abs(int(x)) for x in (invariant_factors(M) if rows else []) if x not in (0, 1, -1)]
    r = n - rank
    if R.kind == "Q":
        return r
    if R.kind == "Fp":
        return r + sum(1 for m in ms if m % R.p == 0)
    # every u_j in the prime: R[s]; otherwise a prime p of R must lie in it
    options = [r + 1]
    for p in sorted({p for m in ms for p in _primes_dividing(m)}):
        if p not in R.inverted:
            options.append(r + sum(1 for m in ms if m % p == 0))
    return max(options)


def random_subgroup(rng):
    n = rng.randint(1, 4)
    q = rng.randint(0, n + 1)
    rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(q)]
    return n, rows


def test_criterion_1_dim_classifying(criterion):
    rng = random.Random(1)
    start = time.perf_counter()
    mismatches = 0
    count = 0
    for _ in range(220):
        n, rows = random_subgroup(rng)
        T = ClosedSubgroup(n, tuple(tuple(r) for r in rows))
        for R in RINGS:
            count += 1
            if dim_classifying(T, R) != dim_oracle(rows, n, R):
                mismatches += 1
    # hand-picked torsion-heavy cases
    for rows in ([[2, 0], [0, 2]], [[6, 0], [0, 4]], [[12]], [[2, 4], [4, 2]]):
        T = ClosedSubgroup(len(rows[0]), tuple(tuple(r) for r in rows))
        for R in RINGS:
            count += 1
            mismatches += dim_classifying(T, R) != dim_oracle(rows, len(rows[0]), R)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 5
    criterion(1, ok, f"{count} (subgroup, ring) pairs, {mismatches} mismatches, {elapsed:.2f}s (limit 5s)")
    assert ok


# ----------------------------------------------------------------------------
# 2. geometric vs algebraic skeleton conditions


def random_strata(rng):
    n = rng.randint(1, 3)
    out = []
    for idx in range(rng.randint(1, 5)):
        q = rng.randint(0, n + 1)
        rows = tuple(tuple(rng.choice([0, 0, 1, -1, 2, 3, 4, 6, -2]) for _ in range(n)) for _ in range(q))
        T = ClosedSubgroup(n, rows)
        out.append(StratumDescriptor(f"s{idx}", T, n - T.torus_rank))
    return n, out


def test_criterion_2_condition_equivalence(criterion):
    rng = random.Random(2)
    start = time.perf_counter()
    bad = 0
    count = 0
    violated = 0
    for _ in range(250):
        n, st = random_strata(rng)
        for R in RINGS:
            for k in range(n + 1):
                g = check_conditions(st, R, k)
                a = check_conditions_algebraic(st, R, k)
                count += 1
                violated += not g.holds
                if g.holds != a.holds or g.index_set() != a.index_set():
                    bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5 and violated > 0
    criterion(2, ok, f"{count} reports ({violated} with violations), {bad} disagreements, {elapsed:.2f}s (limit 5s)")
    assert ok


# ----------------------------------------------------------------------------
# 3. Atiyah-Bredon exactness for smooth complete fans


def test_criterion_3_full_exactness(criterion):
    start = time.perf_counter()
    verdicts = {}
    for name in ["P1", "P2", "P1xP1", "Hirzebruch:1", "Hirzebruch:2"]:
        for R in (QQ, ZZ, GF(2), GF(3)):
            verdicts[(name, str(R))] = AB.verify(S.catalog(name), R, AB.FULL, 20).verdict
    elapsed = time.perf_counter() - start
    failing = [k for k, v in verdicts.items() if v != "ExactUpToD"]
    ok = not failing and elapsed < 60
    criterion(3, ok, f"{len(verdicts)} runs ExactUpToD at D=20, failing={failing}, {elapsed:.1f}s (limit 60s)")
    assert ok


# ----------------------------------------------------------------------------
# 4. Chang-Skjelbred image comparison


def p2_rank_oracle(k):
    # monomials of degree k in x0, x1, x2 not divisible by x0*x1*x2
    return sum(1 for e in itertools.product(range(k + 1), repeat=3) if sum(e) == k and min(e) == 0)


def test_criterion_4_chang_skjelbred(criterion):
    start = time.perf_counter()
    results = {}
    for name in ["P2", "P1xP1"]:
        X = S.catalog(name)
        rep = AB.cs_compare(X, ZZ, 20)
        H = X.equivariant_cohomology(ZZ)
        results[name] = rep.equal and rep.image_ranks == grmod.hilbert_ranks(H, 20)
    p2 = AB.cs_compare(S.projective_plane(), ZZ, 6).image_ranks
    p2_ok = [p2[j] for j in (0, 2, 4, 6)] == [p2_rank_oracle(k) for k in range(4)] == [1, 3, 6, 9]
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and p2_ok and elapsed < 30
    criterion(4, ok, f"Equal and ranks match H_T(X): {results}; P2 ranks deg 0..6 = "
                     f"{[p2[j] for j in (0, 2, 4, 6)]}; {elapsed:.1f}s (limit 30s)")
    assert ok


# ----------------------------------------------------------------------------
# 5. speed-2 sphere: conditions matter


def test_criterion_5_negative(criterion):
    start = time.perf_counter()
    X = S.spinning_sphere(2)
    cond_f2 = check_conditions(X.strata(), GF(2), 0)
    flagged = [(v.i, v.p, v.condition) for v in cond_f2.violations] == [(0, 2, "X_{p,i} = X_i")]
    rep = AB.verify(X, GF(2), AB.truncated(0), 8)
    deg2 = [h for h in rep.homology if h["position"] == 0 and h["degree"] == 2]
    kernel_nonzero = rep.verdict == "FailsAt" and bool(deg2) and deg2[0]["rank"] > 0
    cond_z = check_conditions(X.strata(), ZZ, X.n).holds
    exact_z = AB.verify(X, ZZ, AB.FULL, 8).verdict == "ExactUpToD"
    elapsed = time.perf_counter() - start
    ok = flagged and kernel_nonzero and cond_z and exact_z and elapsed < 5
    criterion(5, ok, f"F2: violation at i=0 {flagged}, kernel in degree 2 {kernel_nonzero}; "
                     f"Z: conditions hold {cond_z}, exact {exact_z}; {elapsed:.2f}s (limit 5s)")
    assert ok


# ----------------------------------------------------------------------------
# 6. tail modules of P2


def test_criterion_6_profile(criterion):
    start = time.perf_counter()
    X = S.projective_plane()
    prof = AB.cm_profile(X, QQ, 20)
    rows_ok = all(
        (r.dim == float("-inf")) or (r.cohen_macaulay and r.dim == X.n - r.i - 1) for r in prof.rows
    ) and [r.i for r in prof.rows] == [0, 1]
    split_ok = all(r.split for r in prof.rows)
    depths = [grmod.depth(S.relative_term(X, i, QQ), 20).depth for i in range(X.n + 1)]
    depth_ok = all(d >= X.n - i for i, d in enumerate(depths))
    elapsed = time.perf_counter() - start
    ok = rows_ok and split_ok and depth_ok and elapsed < 30
    criterion(6, ok, f"rows {[(r.i, r.dim, r.depth, r.cohen_macaulay) for r in prof.rows]}, "
                     f"relative depths {depths}; {elapsed:.1f}s (limit 30s)")
    assert ok


# ----------------------------------------------------------------------------
# 7. fixed-point-free example


def test_criterion_7_free_circle(criterion):
    start = time.perf_counter()
    X = S.catalog("FreeCircleTimes:P1")
    verdicts = {str(R): AB.verify(X, R, AB.GT, 16).verdict for R in (ZZ, QQ)}
    k = S.min_orbit_dim(X)
    dim = grmod.krull_dim(X.equivariant_cohomology(QQ), 16).dim
    elapsed = time.perf_counter() - start
    ok = all(v == "ExactUpToD" for v in verdicts.values()) and k == 1 and dim == 0 + X.n - k and elapsed < 10
    criterion(7, ok, f"GT verdicts {verdicts}, k={k}, dim H_T(X) over Q = {dim}; {elapsed:.2f}s (limit 10s)")
    assert ok


# ----------------------------------------------------------------------------
# 8. engine soundness


def _monomials(n, k):
    out = []
    for combo in itertools.combinations_with_replacement(range(n), k):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def dense_matrix(entries, src_degs, tgt_degs, n, j):
    """Integer matrix of a map of free modules in source degree j, built with sympy polynomials."""
    ts = sympy.symbols(f"t1:{n + 1}")
    cols = [(g, m) for g, d in enumerate(src_degs) if d <= j and (j - d) % 2 == 0 for m in _monomials(n, (j - d) // 2)]
    rows = [(h, m) for h, d in enumerate(tgt_degs) if d <= j and (j - d) % 2 == 0 for m in _monomials(n, (j - d) // 2)]
    idx = {r: i for i, r in enumerate(rows)}
    A = sympy.zeros(len(rows), len(cols))
    for c, (g, m) in enumerate(cols):
        mono = sympy.Mul(*[t ** e for t, e in zip(ts, m)])
        for h in range(len(tgt_degs)):
            f = entries[h][g]
            if f == 0:
                continue
            prod = sympy.Poly(sympy.expand(f * mono), *ts)
            for exps, coef in prod.as_dict().items():
                A[idx[(h, tuple(exps))], c] += coef
    return A


def _sym(p, n):
    ts = sympy.symbols(f"t1:{n + 1}")
    return sum((c * sympy.Mul(*[t ** e for t, e in zip(ts, m)]) for m, c in p.items()), sympy.Integer(0))


def _random_poly(rng, n, deg):
    if deg < 0 or deg % 2:
        return {}
    mons = _monomials(n, deg // 2)
    return {m: rng.choice([-3, -2, -1, 1, 2, 3, 4]) for m in rng.sample(mons, min(len(mons), rng.randint(1, 2)))}


def random_free_complex(rng, n):
    """Three free modules F0 -> F1 -> F2 with g f = 0, as poly matrices and generator degrees."""
    degs = [[], [], []]
    f_entries = {}
    g_entries = {}
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(["mult_left", "mult_right", "koszul"] if n == 2 else ["mult_left", "mult_right"])
        a = rng.choice([0, 2])
        c = rng.choice([1, 2, 3, -2, 6])
        e = rng.choice([0, 1])
        mono = P.scale(P.power(P.var(rng.randrange(n), n), e, n), c)
        if kind == "mult_left":
            # A(-a-2e) --c t^e--> A(-a) --> 0
            i0, i1 = len(degs[0]), len(degs[1])
            degs[0].append(a + 2 * e)
            degs[1].append(a)
            f_entries[(i1, i0)] = mono
        elif kind == "mult_right":
            i1, i2 = len(degs[1]), len(degs[2])
            degs[1].append(a + 2 * e)
            degs[2].append(a)
            g_entries[(i2, i1)] = mono
        else:
            i0, i1, i2 = len(degs[0]), len(degs[1]), len(degs[2])
            degs[0].append(a + 4)
            degs[1] += [a + 2, a + 2]
            degs[2].append(a)
            t1, t2 = P.scale(P.var(0, n), c), P.var(1, n)
            f_entries[(i1, i0)] = t2
            f_entries[(i1 + 1, i0)] = P.scale(t1, -1)
            g_entries[(i2, i1)] = t1
            g_entries[(i2, i1 + 1)] = t2
    # unimodular change of basis on F1: e_b -> e_b + p e_a with deg p = deg_b - deg_a
    F = [[f_entries.get((h, g), {}) for g in range(len(degs[0]))] for h in range(len(degs[1]))]
    G = [[g_entries.get((h, g), {}) for g in range(len(degs[1]))] for h in range(len(degs[2]))]
    for _ in range(rng.randint(0, 3)):
        if len(degs[1]) < 2:
            break
        a, b = rng.sample(range(len(degs[1])), 2)
        p = _random_poly(rng, n, degs[1][b] - degs[1][a])
        if not p:
            continue
        # E = I + p E_{ab}: F <- E F, G <- G E^{-1}
        F[a] = [P.add(F[a][g], P.mul(p, F[b][g])) for g in range(len(degs[0]))]
        for h in range(len(degs[2])):
            G[h][b] = P.add(G[h][b], P.scale(P.mul(G[h][a], p), -1))
    return degs, F, G


def _graded_complex(n, degs, F, G):
    ctx = PolynomialRingContext(n, ZZ)
    mods = [grmod.free_module(ctx, d) for d in degs]
    f = grmod.poly_map(mods[0], mods[1], 0, {(h, g): F[h][g] for h in range(len(F)) for g in range(len(degs[0])) if F[h][g]})
    g = grmod.poly_map(mods[1], mods[2], 0, {(h, g): G[h][g] for h in range(len(G)) for g in range(len(degs[1])) if G[h][g]})
    return grmod.GradedComplex(mods, [f, g])


def _oracle_homology(Fd, Gd, N0, N1, N2):
    def tors(A):
        if A.rows == 0 or A.cols == 0:
            return []
        return sorted(abs(int(x)) for x in invariant_factors(A) if abs(int(x)) > 1)

    rf = Fd.rank() if Fd.rows and Fd.cols else 0
    rg = Gd.rank() if Gd.rows and Gd.cols else 0
    return [
        (N0 - rf, []),
        (N1 - rg - rf, tors(Fd)),
        (N2 - rg, tors(Gd)),
    ]


def _homology_agrees(rng, n, D):
    degs, F, G = random_free_complex(rng, n)
    C = _graded_complex(n, degs, F, G)
    C.check(D)
    Fs = [[_sym(F[h][g], n) for g in range(len(degs[0]))] for h in range(len(degs[1]))]
    Gs = [[_sym(G[h][g], n) for g in range(len(degs[1]))] for h in range(len(degs[2]))]
    ours = [grmod.homology_at(C, pos, D) for pos in range(3)]
    for j in range(D + 1):
        Fd = dense_matrix(Fs, degs[0], degs[1], n, j)
        Gd = dense_matrix(Gs, degs[1], degs[2], n, j)
        N0, N1, N2 = Fd.cols, Fd.rows, Gd.rows
        for pos, (rank, tors) in enumerate(_oracle_homology(Fd, Gd, N0, N1, N2)):
            h = ours[pos][j]
            got_tors = sorted(t for t in h.torsion)
            if h.free_rank != rank or _elementary(got_tors) != _elementary(tors):
                return False
    return True


def _elementary(factors):
    """Prime-power decomposition, so Z/6 and Z/2 + Z/3 compare equal."""
    out = []
    for d in factors:
        for p, e in sympy.factorint(d).items():
            out.append(p ** e)
    return sorted(out)


def random_module(rng, n, R):
    ctx = PolynomialRingContext(n, R)
    gens = sorted(rng.choice([0, 0, 2]) for _ in range(rng.randint(1, 2)))
    rels = []
    for _ in range(rng.randint(0, 3)):
        rel = {}
        target = rng.choice([2, 4])
        for g, d in enumerate(gens):
            p = _random_poly(rng, n, target - d)
            p = {m: c % R.p for m, c in p.items() if c % R.p} if R.p else p
            if p:
                rel[g] = p
        if rel:
            rels.append(rel)
    return grmod.PresentedModule(ctx, gens, rels)


def _depth_dim_properties(rng, R, D):
    n = rng.randint(1, 2)
    M = random_module(rng, n, R)
    if grmod.is_zero_up_to(M, D):
        return True, 0
    dm = grmod.krull_dim(M, D).dim
    dp = grmod.depth(M, D).depth
    checks = 0
    ok = dp <= dm  # depth <= dim
    checks += 1
    # submodule generated by one random element, and the quotient
    ctx = M.ctx
    d = rng.choice([0, 2])
    F = grmod.free_module(ctx, [d])
    entries = {}
    for g, gd in enumerate(M.generator_degrees):
        p = _random_poly(rng, n, d - gd)
        p = {m: c % R.p for m, c in p.items() if c % R.p} if R.p else p
        if p:
            entries[(g, 0)] = p
    phi = grmod.poly_map(F, M, 0, entries)
    U = grmod.image_module(phi)
    N = grmod.cokernel_module(phi)
    if not grmod.is_zero_up_to(U, D):
        du = grmod.depth(U, D).depth
        dn = grmod.depth(N, D).depth
        ok &= dn >= min(du - 1, dp)
        checks += 1
        if dp == dm:
            ok &= grmod.krull_dim(U, D).dim == dm
            checks += 1
    free, _ = grmod.is_free(M, D)
    ok &= free == (dp == dm == n)
    checks += 1
    return ok, checks


def test_criterion_8_engine_soundness(criterion):
    start = time.perf_counter()
    rng = random.Random(8)
    complexes = 0
    bad_complexes = 0
    for _ in range(110):
        n = rng.randint(1, 2)
        D = rng.choice([6, 8, 10])
        complexes += 1
        bad_complexes += not _homology_agrees(rng, n, D)
    checks = 0
    bad_props = 0
    for R in (QQ, GF(2)):
        for _ in range(60):
            ok, c = _depth_dim_properties(rng, R, 22)
            checks += c
            bad_props += not ok
    elapsed = time.perf_counter() - start
    ok = bad_complexes == 0 and bad_props == 0 and elapsed < 60
    criterion(8, ok, f"{complexes} complexes vs SNF oracle ({bad_complexes} bad); {checks} depth/dim/freeness "
                     f"checks ({bad_props} bad modules); {elapsed:.1f}s (limit 60s)")
    assert ok


# ----------------------------------------------------------------------------
# 9. determinism across --jobs


GOLDEN = [
    ["verify", "P1", "--ring", "Z"],
    ["verify", "P2", "--ring", "Z"],
    ["verify", "P1xP1", "--ring", "Fp:2"],
    ["verify", "Hirzebruch:1", "--ring", "Q"],
    ["verify", "Hirzebruch:2", "--ring", "Fp:3"],
    ["verify", "SpinningSphere:2", "--ring", "Fp:2", "--kind", "truncated:0", "--max-degree", "8"],
    ["verify", "SpinningSphere:2", "--ring", "Z", "--kind", "full", "--max-degree", "8"],
    ["verify", "FreeCircleTimes:P1", "--ring", "Z", "--kind", "gt", "--max-degree", "16"],
    ["cs-compare", "P2", "--ring", "Z"],
    ["profile", "P2", "--ring", "Q"],
    ["check-conditions", "TolmanWeitsman", "--ring", "Z", "--k", "1"],
]


def _run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_9_determinism(criterion):
    differing = []
    for cmd in GOLDEN:
        for fmt in ("json", "text"):
            outs = [_run(cmd + ["--format", fmt, "--jobs", str(j)]) for j in (1, 8, 1, 8)]
            if len(set(outs)) != 1:
                differing.append(" ".join(cmd) + f" [{fmt}]")
    ok = not differing
    criterion(9, ok, f"{len(GOLDEN) * 2} commands x 4 runs (--jobs 1/8), differing: {differing}")
    assert ok
