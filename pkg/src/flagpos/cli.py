"""
Command-line front end.

Exit codes: 0 pass, 1 check failure, 2 input error, 3 resource bound,
4 K is not an interval, 5 flag is not Plücker positive.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import combinations

from flagpos.coxeter import Perm
from flagpos.errors import ArgumentError, ResourceError, StateError
from flagpos.exact import mat_to_json, to_rat
from flagpos.flags import (
    Flag, PluckerStatus, certify_not_tnn, classify_plucker, complete_flag,
    converse_counterexample, cyclic_counterexample, cyclic_shift, is_interval,
    is_lusztig_positive, plucker, tp_witness_complete,
)
from flagpos.positivity import is_totally_positive
from flagpos.strata import (
    CellIndex, bip_vertices, enumerate_cells, injectivity_experiment, max_n,
    minkowski_check, minkowski_terms, random_cells,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_NOT_INTERVAL, EXIT_NOT_POSITIVE = range(6)


class Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# -- parsing helpers ----------------------------------------------------------

def parse_K(text, n):
    """'1,3' -> (1, 3); 'all' -> (1, ..., n-1)."""
    if text is None:
        raise ArgumentError("--K is required")
    if text.strip() == "all":
        return tuple(range(1, n))
    try:
        K = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise ArgumentError("--K must be a comma-separated list of integers or 'all'") from None
    if not K or any(not 1 <= k <= n - 1 for k in K):
        raise ArgumentError("--K must be a nonempty subset of [1, %d]" % (n - 1))
    return K


def parse_t(text):
    try:
        return to_rat(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ArgumentError("--t must be a rational like 3/2, got %r" % text) from None


def parse_perm(text, n):
    try:
        w = Perm(int(x) for x in text.split(",")) if "," in text else Perm.from_string(text)
    except ValueError:
        raise ArgumentError("bad permutation %r" % text) from None
    if w.n != n:
        raise ArgumentError("permutation %s is not in S_%d" % (w, n))
    return w


def all_K(n):
    return [K for r in range(1, n) for K in combinations(range(1, n), r)]


def K_choices(args):
    """Every nonempty K when --K all is given to verify, else the single K."""
    if args.K is not None and args.K.strip() == "all" and args.command == "verify":
        return all_K(args.n)
    return [parse_K(args.K, args.n)]


def load_flag(path):
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path) as fh:
                obj = json.load(fh)
    except OSError as exc:
        raise ArgumentError("cannot read %s: %s" % (path, exc.strerror)) from None
    except json.JSONDecodeError as exc:
        raise ArgumentError("malformed JSON in %s: %s" % (path, exc)) from None
    return Flag.from_json(obj)


def require_n(args):
    if args.n is None or args.n < 1:
        raise ArgumentError("--n must be a positive integer")
    return args.n


# -- commands -------------------------------------------------------------------

def cmd_pluecker(args):
    V = load_flag(args.flag)
    return EXIT_OK, {
        "n": V.n,
        "K": list(V.K),
        "plucker": {str(k): plucker(V, k).to_json() for k in V.K},
        "class": classify_plucker(V).plucker.value,
    }


def cmd_classify(args):
    V = load_flag(args.flag)
    return EXIT_OK, is_lusztig_positive(V).to_json()


def _positive_complete(V):
    if V.n > 1 and classify_plucker(V).plucker is not PluckerStatus.PLUCKER_POSITIVE:
        raise Exit(EXIT_NOT_POSITIVE, "flag is not Plücker positive")
    if not is_interval(V.K) and V.n > 1:
        raise Exit(EXIT_NOT_INTERVAL, "K = %s is not an interval" % ",".join(map(str, V.K)))
    return complete_flag(V) if V.n > 1 else V


def cmd_complete(args):
    return EXIT_OK, _positive_complete(load_flag(args.flag)).to_json()


def cmd_witness(args):
    V = load_flag(args.flag)
    full = _positive_complete(V)
    t = parse_t(args.t) if args.t is not None else None
    g = tp_witness_complete(full, t) if V.n > 1 else tp_witness_complete(V)
    ok = is_totally_positive(g) and all(
        plucker(Flag(V.n, V.K, g), k) == plucker(V, k) for k in V.K)
    return (EXIT_OK if ok else EXIT_FAIL), {
        "witness": mat_to_json(g),
        "verified": ok,
    }


def cmd_shift(args):
    V = load_flag(args.flag)
    if args.eps is None:
        raise ArgumentError("--eps is required")
    return EXIT_OK, cyclic_shift(V, args.eps).to_json()


def _pair_args(args):
    if (args.k is None) != (args.l is None):
        raise ArgumentError("--k and --l go together")
    return args.k, args.l


def cmd_counterexample(args):
    n = require_n(args)
    K = parse_K(args.K, n)
    k, l = _pair_args(args)
    if args.kind == "converse":
        if k is None:
            pairs = [(a, b) for a, b in zip(K, K[1:]) if b - a >= 2]
            if not pairs:
                raise ArgumentError("K has no consecutive elements at distance >= 2")
            k, l = pairs[0]
        V, cert = converse_counterexample(n, K, k, l)
        return EXIT_OK, {"flag": V.to_json(), "certificate": cert.to_json()}
    if args.eps is None:
        raise ArgumentError("--eps is required for the cyclic family")
    W, X, cert = cyclic_counterexample(n, K, args.eps, k, l)
    return EXIT_OK, {"flag": W.to_json(), "shifted": X.to_json(), "certificate": cert.to_json()}


def _check(checks, name, ok, **detail):
    row = {"check": name, "result": "PASS" if ok else "FAIL"}
    row.update(detail)
    checks.append(row)


def verify_converse(args, K, checks):
    n = args.n
    k, l = _pair_args(args)
    pairs = [(k, l)] if k is not None else [(a, b) for a, b in zip(K, K[1:]) if b - a >= 2]
    if not pairs:
        raise ArgumentError("K = %r has no consecutive elements at distance >= 2" % (K,))
    for k, l in pairs:
        V, cert = converse_counterexample(n, K, k, l)
        tag = "K=%s k=%d l=%d" % (",".join(map(str, K)), k, l)
        cls = classify_plucker(V).plucker
        _check(checks, "plucker_nonneg_not_positive " + tag,
               cls is PluckerStatus.PLUCKER_NONNEG_NOT_POSITIVE, found=cls.value)
        neg = cert.negative_minor
        _check(checks, "negative_minor_order_%d " % (k + 1) + tag,
               neg is not None and len(neg[0]) == k + 1 and neg[1] < 0,
               rows=",".join(map(str, neg[0])) if neg else "")
        fresh = certify_not_tnn(V)
        _check(checks, "certificate " + tag, fresh is not None and fresh.validate(V),
               m=cert.m)


def verify_cyclic(args, K, checks):
    n = args.n
    k, l = _pair_args(args)
    for eps in ([args.eps] if args.eps is not None else [0, 1]):
        W, X, cert = cyclic_counterexample(n, K, eps, k, l)
        tag = "K=%s eps=%d" % (",".join(map(str, K)), eps % 2)
        full = Flag(n, range(1, n), W.rep)
        _check(checks, "complete_flag_nonneg " + tag,
               classify_plucker(full).plucker is not PluckerStatus.NOT_PLUCKER_NONNEG)
        shifted = cyclic_shift(W, eps)
        fresh = certify_not_tnn(shifted)
        _check(checks, "shift_certificate " + tag, fresh is not None and fresh.validate(shifted),
               m=cert.m)


def verify_decompositions(args, K, checks):
    rep = injectivity_experiment(args.n, K)
    tag = "K=%s" % ",".join(map(str, K))
    _check(checks, "injective_iff_interval " + tag, rep.injective == is_interval(K),
           injective=rep.injective, cells=rep.cell_count, strata=rep.stratum_count,
           collisions=[[a.to_json(), b.to_json()] for a, b in rep.collisions])


def verify_minkowski(args, K, checks):
    if args.n > max_n():
        raise ResourceError("n = %d exceeds the bound %d (set FLAGPOS_MAX_N)" % (args.n, max_n()))
    cells = enumerate_cells(args.n, K)
    failures = [c for c in cells if not minkowski_check(c)]
    _check(checks, "minkowski K=%s" % ",".join(map(str, K)), not failures,
           cells=len(cells), failures=[c.to_json() for c in failures])


def verify_minkowski_random(args, checks):
    if args.n > max_n():
        raise ResourceError("n = %d exceeds the bound %d (set FLAGPOS_MAX_N)" % (args.n, max_n()))
    cells = random_cells(args.n, args.trials, args.seed)
    failures = [c for c in cells if not minkowski_check(c)]
    _check(checks, "minkowski random n=%d trials=%d seed=%d" % (args.n, args.trials, args.seed),
           not failures, failures=[[c.to_json(), list(c.K)] for c in failures])


VERIFIERS = {
    "converse": verify_converse,
    "cyclic": verify_cyclic,
    "decompositions": verify_decompositions,
    "minkowski": verify_minkowski,
}


def cmd_verify(args):
    require_n(args)
    checks = []
    if args.target == "minkowski" and args.trials:
        verify_minkowski_random(args, checks)
    else:
        for K in K_choices(args):
            VERIFIERS[args.target](args, K, checks)
    ok = all(c["result"] == "PASS" for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), {
        "target": args.target, "n": args.n, "result": "PASS" if ok else "FAIL", "checks": checks,
    }


def cmd_strata(args):
    n = require_n(args)
    rep = injectivity_experiment(n, parse_K(args.K, n))
    return EXIT_OK, rep


def cmd_bip(args):
    n = require_n(args)
    K = parse_K(args.K, n)
    if args.v is None or args.w is None:
        raise ArgumentError("--v and --w are required")
    c = CellIndex(parse_perm(args.v, n), parse_perm(args.w, n), K)
    out = {"cell": c.to_json(), "K": list(K), "polytope": bip_vertices(c).to_json()}
    if len(K) > 1:
        out["minkowski_terms"] = [
            {"cell": t.to_json(), "K": list(t.K), "polytope": bip_vertices(t).to_json()}
            for t in minkowski_terms(c)]
        out["minkowski_check"] = minkowski_check(c)
    return EXIT_OK, out


COMMANDS = {
    "pluecker": cmd_pluecker,
    "classify": cmd_classify,
    "witness": cmd_witness,
    "complete": cmd_complete,
    "shift": cmd_shift,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
    "strata": cmd_strata,
    "bip": cmd_bip,
}


# -- output ----------------------------------------------------------------------

def render(result, fmt):
    if fmt == "json":
        obj = result.to_json() if hasattr(result, "to_json") else result
        return json.dumps(obj, indent=2) + "\n"
    if hasattr(result, "csv_rows"):
        rows = result.csv_rows()
    elif isinstance(result, dict) and "checks" in result:
        rows = [["check", "result"]] + [[c["check"], c["result"]] for c in result["checks"]]
    else:
        raise ArgumentError("csv output is only available for strata and verify")
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def build_parser():
    p = argparse.ArgumentParser(prog="flagpos", description=__doc__.strip().splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--K", help="comma list, or 'all'")
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--eps", type=int, choices=[0, 1])
    common.add_argument("--t", help="rational p/q")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=0,
                        help="random cells for verify minkowski (0: exhaustive)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("pluecker", "classify", "witness", "complete", "shift"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("flag", help="flag JSON file {n, K, rep}, or - for stdin")
    sp = sub.add_parser("counterexample", parents=[common])
    sp.add_argument("kind", choices=["converse", "cyclic"])
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("target", choices=sorted(VERIFIERS))
    sub.add_parser("strata", parents=[common])
    sp = sub.add_parser("bip", parents=[common])
    sp.add_argument("--v")
    sp.add_argument("--w")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, result = COMMANDS[args.command](args)
        text = render(result, args.format)
    except Exit as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.code
    except ArgumentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except StateError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
