"""Command-line front end.

Exit codes: 0 exact/equal, 1 usage or input error, 2 sequence fails (some
hypothesis unmet), 3 inapplicable, 4 engine contradiction.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import abseq, grmod, lattice, spaces
from .ring import InvalidLocalizationSet, InvalidPrime, make_ring

DEFAULT_D = 20
DEFAULT_RING = "Z"
BUILTIN_STRATA = {"TolmanWeitsman": "tolman_weitsman.json"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_json(text_or_path: str):
    if os.path.exists(text_or_path):
        with open(text_or_path) as fh:
            return json.load(fh)
    return None


def load_space(name: str) -> spaces.SpaceModel:
    data = _load_json(name)
    if data is not None:
        return spaces.model_from_json(data)
    try:
        return spaces.catalog(name)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{name!r} is neither a readable file nor a catalog model") from exc


def load_strata(name: str):
    if name in BUILTIN_STRATA:
        text = resources.files("formalseq").joinpath("data", BUILTIN_STRATA[name]).read_text()
        return lattice.strata_from_json(json.loads(text))
    data = _load_json(name)
    if data is not None and "strata" in data:
        return lattice.strata_from_json(data)
    return load_space(name).strata()


def _parse_matrix(text: str):
    data = _load_json(text)
    if data is None:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse matrix {text!r}: {exc.msg}") from None
    if isinstance(data, dict):
        data = data.get("character_matrix", data.get("matrix"))
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError("matrix must be a list of integer rows")
    return [[int(x) for x in r] for r in data]


def _enc(x):
    if isinstance(x, float) and abs(x) == float("inf"):
        return "inf" if x > 0 else "-inf"
    return x


def _emit(args, payload: dict, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _config(args, **extra) -> dict:
    # the parallelism hint is left out so reports do not depend on it
    cfg = {"command": args.command, "ring": args.ring, "max_degree": args.max_degree}
    cfg.update(extra)
    return cfg


# ----------------------------------------------------------------------------
# Commands


def cmd_decompose(args) -> int:
    R = make_ring(args.ring)
    rows = _parse_matrix(args.matrix)
    n = args.n if args.n is not None else (len(rows[0]) if rows else None)
    if n is None:
        raise UsageError("--n is required with an empty matrix")
    T = lattice.ClosedSubgroup(n, tuple(tuple(r) for r in rows))
    ms, r = lattice.decompose_subgroup(T)
    s = sum(1 for m in ms if not R.is_unit(m))
    dim = lattice.dim_classifying(T, R)
    payload = {"config": _config(args, n=n, matrix=rows), "m": list(ms), "r": r, "s": s, "dim": dim}
    _emit(args, payload, [f"m = ({', '.join(map(str, ms))})", f"r = {r}", f"s = {s}", f"dim = {dim}"])
    return 0


def cmd_check_conditions(args) -> int:
    R = make_ring(args.ring)
    st = load_strata(args.input)
    n = st[0].isotropy.n if st else 0
    k = args.k if args.k is not None else n
    geo = lattice.check_conditions(st, R, k)
    alg = lattice.check_conditions_algebraic(st, R, k)
    agree = geo.holds == alg.holds and geo.index_set() == alg.index_set()
    payload = {"config": _config(args, input=args.input, k=k), "holds": geo.holds, "agree": agree,
               "geometric": geo.to_json(), "algebraic": alg.to_json()}
    lines = [f"conditions over {R} for i <= {k}: {'hold' if geo.holds else 'violated'}"]
    for v in geo.violations:
        lines.append(f"  violation: stratum {v.stratum}, i={v.i}, p={v.p} ({v.condition})")
    lines.append(f"algebraic criterion: {'holds' if alg.holds else 'violated'}; checkers agree: {agree}")
    _emit(args, payload, lines)
    return 0 if agree else 4


def _render_verify(rep: abseq.ExactnessReport):
    lines = [f"{rep.kind} sequence over {rep.ring}, degrees <= {rep.degree_bound}: {rep.verdict}"]
    if rep.reason:
        lines.append(f"  reason: {rep.reason}")
    if rep.labels:
        lines.append("  terms: " + " -> ".join(rep.labels))
    if rep.hypothesis:
        h = rep.hypothesis
        lines.append(f"  H_T(X) {h['property']}: {h['holds']} ({h['certificate']})")
    if rep.conditions is not None:
        lines.append(f"  skeleton conditions: {'hold' if rep.conditions.holds else 'violated'}")
        for v in rep.conditions.violations:
            lines.append(f"    stratum {v.stratum}, i={v.i}, p={v.p}")
    for h in rep.homology:
        tors = "".join(f" + Z/{t}" for t in h["torsion"])
        lines.append(f"  homology at {h['label']} degree {h['degree']}: rank {h['rank']}{tors}")
    return lines


def cmd_verify(args) -> int:
    R = make_ring(args.ring)
    X = load_space(args.input)
    kind = abseq.SequenceKind.parse(args.kind)
    try:
        rep = abseq.verify(X, R, kind, args.max_degree, jobs=args.jobs)
    except abseq.EngineContradiction as exc:
        print(f"engine contradiction: {exc}", file=sys.stderr)
        print(json.dumps(exc.report.to_json(), indent=2), file=sys.stderr)
        return 4
    payload = {"config": _config(args, input=args.input, kind=str(kind)), "report": rep.to_json()}
    _emit(args, payload, _render_verify(rep))
    return rep.exit_code


def cmd_cs_compare(args) -> int:
    R = make_ring(args.ring)
    X = load_space(args.input)
    rep = abseq.cs_compare(X, R, args.max_degree)
    payload = {"config": _config(args, input=args.input), "report": rep.to_json()}
    lines = [f"Chang-Skjelbred comparison over {R}, degrees <= {args.max_degree}: "
             + ("Equal" if rep.equal else f"differs in degree {rep.first_difference}"),
             "  image ranks: " + ", ".join(map(str, rep.image_ranks))]
    _emit(args, payload, lines)
    return 0 if rep.equal else 2


def cmd_profile(args) -> int:
    R = make_ring(args.ring)
    X = load_space(args.input)
    prof = abseq.cm_profile(X, R, args.max_degree)
    payload = {"config": _config(args, input=args.input), "profile": prof.to_json()}
    lines = [f"dim H_T(X) = {_enc(prof.total_dim)} (expected d+n-k = {prof.expected_total_dim})",
             "i  dim  depth  CM    expected  split"]
    for r in prof.rows:
        lines.append(f"{r.i}  {_enc(r.dim)}  {_enc(r.depth)}  {'CM' if r.cohen_macaulay else ('zero' if r.cohen_macaulay is None else 'no')}"
                     f"  {r.expected_dim}  {r.split}")
    _emit(args, payload, lines)
    return 0


def cmd_hilbert(args) -> int:
    R = make_ring(args.ring)
    X = load_space(args.input)
    M = X.equivariant_cohomology(R)
    hf = grmod.hilbert_function(M, args.max_degree)
    payload = {"config": _config(args, input=args.input),
               "hilbert": [{"degree": j, **h.to_json()} for j, h in enumerate(hf)]}
    _emit(args, payload, [f"{j}: {h.describe(R)}" for j, h in enumerate(hf)])
    return 0


def cmd_catalog(args) -> int:
    if args.name:
        X = load_space(args.name)
        payload = X.to_json()
        print(json.dumps(payload, indent=2))
        return 0
    payload = {"models": spaces.CATALOG_NAMES, "strata_files": sorted(BUILTIN_STRATA)}
    _emit(args, payload, spaces.CATALOG_NAMES + [f"{s} (strata only)" for s in sorted(BUILTIN_STRATA)])
    return 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", default=DEFAULT_RING, help="Q, Z, Fp:<p> or Z[1/p,...] (default Z)")
    common.add_argument("--max-degree", type=int, default=DEFAULT_D, help="degree bound D (default 20)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")

    parser = _Parser(prog="formalseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common], help="divisor-chain decomposition of a closed subgroup")
    p.add_argument("--n", type=int)
    p.add_argument("--matrix", required=True, help="character matrix as JSON or a file path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-conditions", parents=[common], help="skeleton conditions on isotropy data")
    p.add_argument("input", help="strata file, model file or catalog name")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("verify", parents=[common], help="check exactness of a sequence")
    p.add_argument("input")
    p.add_argument("--kind", default="full", help="cs, full, truncated:k or gt")
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (("cs-compare", cmd_cs_compare, "compare images in H_T(X_0)"),
                                 ("profile", cmd_profile, "depth/dimension of H_T(X, X_i)"),
                                 ("hilbert", cmd_hilbert, "Hilbert function of H_T(X)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)

    p = sub.add_parser("catalog", parents=[common], help="list built-in models or print one as JSON")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_degree < 0:
        parser.error("--max-degree must be nonnegative")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (spaces.UnsupportedModelRing, abseq.Inapplicable) as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return 3
    except (UsageError, InvalidPrime, InvalidLocalizationSet, ValueError, grmod.FieldRequired) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
