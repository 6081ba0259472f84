"""Command-line front end.

Every payload carries the orbit order so column/exponent meaning is explicit.
Exit status: 0 ok, 1 usage error, 2 infeasible size, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import goodmat, ldpc, oracle
from .errors import InfeasibleError, VerificationError
from .gf import FieldError, field_of_order
from .linalg import LinearCode, all_subspaces, format_support, make_rng, parse_support, random_subspace
from .macwilliams import build_k_matrix, transform
from .orbits import build_orbit_table
from .poly import Enumerator, complete_enumerator, format_fraction

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    p.add_argument("--decimal", type=int, metavar="D", help="add rounded float columns with D digits")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sowdist", description="Second-order weight distributions of codes over GF(q).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[common], help="orbits of F_q^* on F_q^2")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("kmatrix", parents=[common], help="MacWilliams transform matrix K")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("enumerator", parents=[common], help="enumerators of atomic codes")
    p.add_argument("kind", choices=("repetition", "check", "complete"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--param", type=int)
    p.add_argument("--n", type=int)

    p = sub.add_parser("transform", parents=[common], help="second-order MacWilliams transform")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--size-u", type=int, required=True)
    p.add_argument("--size-v", type=int, required=True)

    p = sub.add_parser("ldpc", parents=[common], help="expected distributions of regular LDPC ensembles")
    p.add_argument("kind", choices=("one", "two"))
    for name in ("q", "c", "d", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--moment", type=int, nargs=2, metavar=("J", "K"))

    p = sub.add_parser("goodmat", parents=[common], help="k-good random matrices")
    gsub = p.add_subparsers(dest="action", required=True)
    g = gsub.add_parser("verify", parents=[common])
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--support", required=True, metavar="FILE")
    g = gsub.add_parser("theorem4", parents=[common])
    g.add_argument("--side", choices=("gen", "par"), required=True)
    for name in ("q", "m", "n"):
        g.add_argument(f"--{name}", type=int, required=True)
    g = gsub.add_parser("mrd-demo", parents=[common])
    g.add_argument("--save-prefix", metavar="PREFIX", help="also write PREFIX_A1.txt and PREFIX_A2.txt")
    g = gsub.add_parser("corollary1", parents=[common])
    for name in ("q", "m", "n"):
        g.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("bounds", parents=[common], help="intersecting-code bounds")
    bsub = p.add_subparsers(dest="action", required=True)
    b = bsub.add_parser("intersecting", parents=[common])
    for name in ("q", "m", "n"):
        b.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("oracle", parents=[common], help="brute-force and Monte Carlo checks")
    osub = p.add_subparsers(dest="action", required=True)
    o = osub.add_parser("lemma4", parents=[common])
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--samples", type=int, default=5)
    for name in ("ldpc-exact", "ldpc-mc"):
        o = osub.add_parser(name, parents=[common])
        o.add_argument("--kind", choices=("one", "two"), required=True)
        for k in ("q", "c", "d", "n"):
            o.add_argument(f"--{k}", type=int, required=True)
        if name == "ldpc-mc":
            o.add_argument("--trials", type=int, default=10_000)
    o = osub.add_parser("characters", parents=[common])
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o = osub.add_parser("macwilliams", parents=[common])
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--pairs", type=int, default=50, help="random subspace pairs (0 = all pairs)")
    return parser


# rendering helpers


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _dec(x, digits):
    return round(float(x), digits)


def _enumerator_payload(W: Enumerator, table, args, **header):
    if args.format == "csv":
        head = table.labels() + ["coef"] + (["decimal"] if args.decimal is not None else [])
        rows = [head]
        for exp, c in W.terms.items():
            row = list(exp) + [format_fraction(c)]
            if args.decimal is not None:
                row.append(_dec(c, args.decimal))
            rows.append(row)
        return _csv(rows)
    obj = {"q": table.q, "orbit_order": table.labels(), **header, **W.to_json_obj()}
    if args.decimal is not None:
        for t in obj["terms"]:
            t["decimal"] = _dec(Fraction(t["coef"]), args.decimal)
    return obj


def _record_payload(rec: dict, args):
    if args.format == "csv":
        rows = [["key", "value"]]
        for k, v in rec.items():
            rows.append([k, json.dumps(_jsonable(v), separators=(",", ":")) if isinstance(v, (dict, list)) else _jsonable(v)])
        return _csv(rows)
    return _jsonable(rec)


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as e:
        raise UsageError(str(e)) from e


# command implementations


def cmd_orbits(args):
    table = build_orbit_table(_field(args.q))
    if args.format == "csv":
        rows = [["index", "label", "rep_u", "rep_v", "size"]]
        rows += [[s, lab, r[0], r[1], sz] for s, (lab, r, sz) in enumerate(zip(table.labels(), table.reps, table.sizes))]
        return _csv(rows), EXIT_OK
    orbits = [
        {"index": s, "label": lab, "rep": list(r), "size": sz, "members": [list(m) for m in mem]}
        for s, (lab, r, sz, mem) in enumerate(zip(table.labels(), table.reps, table.sizes, table.members))
    ]
    return {"q": table.q, "orbit_order": table.labels(), "orbits": orbits, "total": sum(table.sizes)}, EXIT_OK


def cmd_kmatrix(args):
    table = build_orbit_table(_field(args.q))
    K = build_k_matrix(table)
    if args.format == "csv":
        return _csv([[""] + table.labels()] + [[lab] + row for lab, row in zip(table.labels(), K.tolist())]), EXIT_OK
    return {"q": table.q, "orbit_order": table.labels(), "K": K.tolist()}, EXIT_OK


def cmd_enumerator(args):
    table = build_orbit_table(_field(args.q))
    if args.kind == "complete":
        n = args.n if args.n is not None else args.param
        if n is None or n < 0:
            raise UsageError("complete enumerator needs --n N")
        W = complete_enumerator(table, n)
        return _enumerator_payload(W, table, args, code="complete", n=n), EXIT_OK
    if args.param is None or args.param < 1:
        raise UsageError(f"{args.kind} enumerator needs --param P >= 1")
    if args.kind == "repetition":
        W = ldpc.repetition_enumerator(args.param, table)
    else:
        W = ldpc.check_enumerator(args.param, table)
    return _enumerator_payload(W, table, args, code=args.kind, param=args.param), EXIT_OK


def cmd_transform(args):
    table = build_orbit_table(_field(args.q))
    try:
        W = Enumerator.from_json(Path(args.infile).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read enumerator from {args.infile}: {e}") from e
    if W.nvars != table.nvars:
        raise UsageError(f"enumerator has {W.nvars} variables, GF({args.q}) needs {table.nvars}")
    if args.size_u < 1 or args.size_v < 1:
        raise UsageError("sizes must be positive")
    out = transform(W, args.size_u, args.size_v, build_k_matrix(table))
    return _enumerator_payload(out, table, args, size_u=args.size_u, size_v=args.size_v), EXIT_OK


def cmd_ldpc(args):
    F = _field(args.q)
    table = build_orbit_table(F)
    kind = "I" if args.kind == "one" else "II"
    try:
        spec = ldpc.EnsembleSpec(kind, F, args.c, args.d, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from e
    dist = ldpc.expected_distribution(spec, table)
    moment = None
    if args.moment:
        j, k = args.moment
        if not (0 <= j <= spec.n and 0 <= k <= spec.n):
            raise UsageError("moment weights must lie in 0..n")
        moment = ldpc.expected_second_moment(dist, j, k, table)
    if args.format == "csv":
        if moment is not None:
            return _csv([["j", "k", "value"], [j, k, format_fraction(moment)]]), EXIT_OK
        head = table.labels() + ["value"] + (["decimal"] if args.decimal is not None else [])
        rows = [head]
        for i, v in dist.items():
            row = list(i) + [format_fraction(v)]
            if args.decimal is not None:
                row.append(_dec(v, args.decimal))
            rows.append(row)
        return _csv(rows), EXIT_OK
    obj = dist.to_json_obj(table, args.decimal)
    if moment is not None:
        obj["moment"] = {"j": j, "k": k, "value": format_fraction(moment)}
    return obj, EXIT_OK


def cmd_goodmat(args):
    if args.action == "verify":
        try:
            mats = parse_support(Path(args.support).read_text())
            E = goodmat.MatrixEnsemble.from_matrices(mats)
        except (OSError, ValueError) as e:
            raise UsageError(f"bad support file: {e}") from e
        if not 1 <= args.k <= min(E.m, E.n):
            raise UsageError("k must satisfy 1 <= k <= min(m, n)")
        good = goodmat.is_k_good(E, args.k)
        return _record_payload({"q": E.field.q, "m": E.m, "n": E.n, "size": len(E), "k": args.k, "k_good": good}, args), EXIT_OK
    if args.action == "theorem4":
        F = _field(args.q)
        if not 0 < args.m < args.n:
            raise UsageError("need 0 < m < n")
        table = build_orbit_table(F)
        fn = goodmat.theorem4_generator if args.side == "gen" else goodmat.theorem4_parity
        W = fn(args.q, args.m, args.n, table)
        ones = W.evaluate([1] * table.nvars)
        return _enumerator_payload(W, table, args, side=args.side, m=args.m, n=args.n, all_ones=format_fraction(ones)), EXIT_OK
    if args.action == "mrd-demo":
        A1, A2 = goodmat.mrd_examples()
        if args.save_prefix:
            Path(f"{args.save_prefix}_A1.txt").write_text(format_support(A1.support))
            Path(f"{args.save_prefix}_A2.txt").write_text(format_support(A2.support))
        rec = {
            "A1": {"size": len(A1), "1-good": goodmat.is_k_good(A1, 1), "2-good": goodmat.is_k_good(A1, 2)},
            "A2": {"size": len(A2), "1-good": goodmat.is_k_good(A2, 1), "2-good": goodmat.is_k_good(A2, 2)},
            "A2_proper_subset": len(A2) < 2**9,
        }
        return _record_payload(rec, args), EXIT_OK
    if args.action == "corollary1":
        F = _field(args.q)
        if args.m < 1 or args.n < 1:
            raise UsageError("m and n must be positive")
        cases: dict[str, int] = {}
        mismatches = 0
        vecs = [tuple(v) for v in np.ndindex(*([F.q] * args.m))]
        for x in vecs:
            for xp in vecs:
                got = goodmat.corollary1_distribution(F, args.m, args.n, x, xp)
                want = goodmat.pair_law_table(F, args.n, x, xp)
                kind, _ = goodmat.classify_pair(F, x, xp)
                cases[kind] = cases.get(kind, 0) + 1
                mismatches += got != want
        t5 = goodmat.row_operation_uniformity(F, args.m, args.n)
        rec = {"q": F.q, "m": args.m, "n": args.n, "cases": cases, "mismatches": mismatches, "row_operation_uniform": t5,
               "status": "pass" if mismatches == 0 and t5 else "fail"}
        return _record_payload(rec, args), (EXIT_OK if rec["status"] == "pass" else EXIT_MISMATCH)
    raise UsageError(args.action)


def cmd_bounds(args):
    _field(args.q)
    if not 0 < args.m < args.n:
        raise UsageError("need 0 < m < n")
    rec = goodmat.intersecting_report(args.q, args.m, args.n)
    if args.decimal is not None:
        for key in ("union_bound", "expected_size", "variance", "chebyshev_bound"):
            rec[f"{key}_decimal"] = _dec(rec[key], args.decimal)
    return _record_payload(rec, args), EXIT_OK


def _random_code(F, n, rng):
    return random_subspace(F, n, rng)


def cmd_oracle(args):
    F = _field(args.q)
    table = build_orbit_table(F)
    if args.action == "lemma4":
        rng = make_rng(args.seed)
        worst, pairs = Fraction(0), 0
        for _ in range(args.samples):
            U, V = _random_code(F, args.n, rng), _random_code(F, args.n, rng)
            err, cnt = oracle.monomial_probability_scan(U, V, table)
            worst, pairs = max(worst, err), pairs + cnt
        rep = oracle.report("lemma4", {"q": F.q, "n": args.n, "samples": args.samples, "seed": args.seed}, worst, worst == 0, pairs=pairs)
    elif args.action in ("ldpc-exact", "ldpc-mc"):
        kind = "I" if args.kind == "one" else "II"
        try:
            spec = ldpc.EnsembleSpec(kind, F, args.c, args.d, args.n)
        except ValueError as e:
            raise UsageError(str(e)) from e
        dist = ldpc.expected_distribution(spec, table)
        params = {"kind": kind, "q": F.q, "c": spec.c, "d": spec.d, "n": spec.n}
        if args.action == "ldpc-exact":
            ex = oracle.ldpc_exact_expectation(spec, table=table)
            keys = set(ex.values) | set(dist.values)
            err = max((abs(ex[i] - dist[i]) for i in keys), default=Fraction(0))
            rep = oracle.report("ldpc-exact", params, err, err == 0, indices=len(keys))
        else:
            if args.trials < 1:
                raise UsageError("trials must be >= 1")
            mc = oracle.monte_carlo_ldpc(spec, args.trials, args.seed, threads=args.threads, table=table)
            cmp = oracle.compare_monte_carlo(mc, dist)
            params.update(trials=args.trials, seed=args.seed)
            worst_dev = max((abs(mc.mean(i) - float(dist[i])) for i in set(mc.sums) | set(dist.values)), default=0.0)
            rep = oracle.report("ldpc-mc", params, worst_dev, cmp["pass"], max_z=round(cmp["max_z"], 6),
                                indices=cmp["indices"], failures=cmp["failures"])
    elif args.action == "characters":
        rng = make_rng(args.seed)
        V = _random_code(F, args.n, rng)
        vp = rng.integers(0, F.q, size=args.n).tolist()
        r8, r9 = oracle.character_checks(F, V, vp, table=table)
        rep = oracle.report("characters", {"q": F.q, "n": args.n, "seed": args.seed}, max(r8, r9), max(r8, r9) < 1e-6,
                            indicator_residual=r8, expansion_residual=r9)
    elif args.action == "macwilliams":
        if args.pairs == 0:
            codes = list(all_subspaces(F, args.n))
            pairs = [(U, V) for U in codes for V in codes]
        else:
            rng = make_rng(args.seed)
            pairs = [(_random_code(F, args.n, rng), _random_code(F, args.n, rng)) for _ in range(args.pairs)]
        err = Fraction(0)
        for U, V in pairs:
            a, b = oracle.macwilliams_brute(U, V, table)
            err = max(err, oracle.max_abs_diff(a, b))
        rep = oracle.report("macwilliams", {"q": F.q, "n": args.n, "pairs": len(pairs), "seed": args.seed}, err, err == 0)
    else:
        raise UsageError(args.action)
    code = EXIT_OK if rep["status"] == "pass" else EXIT_MISMATCH
    return _record_payload(rep, args), code


COMMANDS = {
    "orbits": cmd_orbits,
    "kmatrix": cmd_kmatrix,
    "enumerator": cmd_enumerator,
    "transform": cmd_transform,
    "ldpc": cmd_ldpc,
    "goodmat": cmd_goodmat,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.threads < 1:
        print("sowdist: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        payload, code = COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"sowdist: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as e:
        print(f"sowdist: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except VerificationError as e:
        print(f"sowdist: mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
