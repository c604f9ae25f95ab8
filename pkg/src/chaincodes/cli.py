"""Command-line front end.

Every invocation prints exactly one JSON report document on standard
output, so constructions pipe into checks.  Exit codes: 0 when the
command succeeds (and any checked property holds), 1 when a checked
property fails, 2 on invalid input, violated preconditions, or exceeded
budgets.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import __version__
from .block import (BlockCode, is_mds, min_distance_block, nu_optimal_sets,
                    singleton_bound_block)
from .conv import (DISTANCES, MINORS, ConvCode, PolyMatrix, column_distance,
                   distance_bounds, embedding_preserves_L, field_L_index,
                   is_mdp, is_polynomial_gamma_basis, is_reverse_mdp, L_index,
                   optimal_cd_bound)
from .constructions import (EXHAUSTIVE, RANDOM, ROWS_EXAMPLE, ROWS_FORMULA,
                            ToeplitzSpec, binomial_encoder,
                            extract_mdp_blocks, is_gamma_superregular,
                            is_reverse_gamma_superregular,
                            lift_from_residue_field, search_superregular)
from .errors import ChainCodesError, InvalidParams, NuNotDividingK
from .fields import prime_power_split
from .linalg import (RingMatrix, gamma_dimension, parameters_of, shape_of,
                     standard_form)
from .rings import GaloisRing, TruncatedPolyRing, make_ring, zmod

SCHEMA = "chaincodes-report/1"

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INVALID = 2


# ---------------------------------------------------------------------------
# input plumbing

def parse_ring(text):
    """Ring from a short name (z121, gr(11,2,5), tp(4,2), f9), inline
    JSON descriptor, or a path to a JSON descriptor file."""
    text = text.strip()
    if text.startswith("{"):
        return make_ring(json.loads(text))
    m = re.fullmatch(r"[zZ](\d+)", text)
    if m:
        return zmod(int(m.group(1)))
    m = re.fullmatch(r"[gG][rR]\((\d+),(\d+),(\d+)\)", text)
    if m:
        return GaloisRing(*map(int, m.groups()))
    m = re.fullmatch(r"[tT][pP]\((\d+),(\d+)\)", text)
    if m:
        return TruncatedPolyRing(*map(int, m.groups()))
    m = re.fullmatch(r"[fF](\d+)", text)
    if m:
        p, s = prime_power_split(int(m.group(1)))
        return GaloisRing(p, 1, s)
    try:
        with open(text) as fh:
            return make_ring(json.load(fh))
    except OSError as exc:
        raise InvalidParams(f"cannot interpret ring {text!r}: {exc}")


def load_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def load_code(path, validate=True):
    """Code JSON, or a report document wrapping one under results.code."""
    obj = load_json(path)
    if "results" in obj and isinstance(obj["results"], dict) \
            and "code" in obj["results"]:
        obj = obj["results"]["code"]
    return ConvCode.from_json(obj, validate=validate)


def load_matrix(path):
    return RingMatrix.from_json(load_json(path))


def load_toeplitz(path):
    obj = load_json(path)
    if "first_row" in obj:
        return ToeplitzSpec.from_json(obj)
    A = RingMatrix.from_json(obj)
    if A.rows != A.cols:
        raise InvalidParams("Toeplitz matrix file must be square")
    spec = ToeplitzSpec(A.ring, tuple(A.row(0)))
    if spec.materialize() != A:
        raise InvalidParams("matrix is not upper-triangular Toeplitz")
    return spec


class Report:
    def __init__(self, argv):
        self.started = time.monotonic()
        self.doc = {"schema": SCHEMA, "version": __version__,
                    "command": argv, "results": {}, "warnings": []}

    def warn(self, msg):
        self.doc["warnings"].append(msg)

    def emit(self, exit_code):
        self.doc["timing_seconds"] = round(
            time.monotonic() - self.started, 3)
        json.dump(self.doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return exit_code


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_ring(args, report):
    ring = parse_ring(args.ring)
    res = report.doc["results"]
    res["ring"] = ring.descriptor()
    res["nu"] = ring.nu
    res["q"] = ring.q
    res["size"] = ring.size()
    res["gamma"] = ring.element_to_json(ring.gamma)
    if ring.q <= 64:
        res["transversal"] = [ring.element_to_json(t)
                              for t in sorted(ring.representatives())]
    return EXIT_HOLDS


def cmd_check(args, report):
    res = report.doc["results"]
    if args.property == "gamma-basis":
        code = load_code(args.code, validate=False)
        verdict = is_polynomial_gamma_basis(code.encoder)
        res["gamma-basis"] = verdict
        return EXIT_HOLDS if verdict else EXIT_FAILS
    code = load_code(args.code)
    if args.property == "delay-free":
        verdict = code.delay_free()
        res["delay-free"] = verdict
    elif args.property == "reduced":
        verdict = code.reduced()
        res["reduced"] = verdict
    else:
        pred = is_mdp if args.property == "mdp" else is_reverse_mdp
        if args.method == "both":
            via_minors = pred(code, method=MINORS, budget=args.budget)
            via_distances = pred(code, method=DISTANCES, budget=args.budget)
            if via_minors != via_distances:
                raise AssertionError(
                    f"minors verdict {via_minors} disagrees with "
                    f"distances verdict {via_distances}")
            res[args.property] = {"minors": via_minors,
                                  "distances": via_distances}
            verdict = via_minors
        else:
            method = MINORS if args.method == "minors" else DISTANCES
            verdict = pred(code, method=method, budget=args.budget)
            res[args.property] = {method: verdict}
    return EXIT_HOLDS if verdict else EXIT_FAILS


def cmd_construct(args, report):
    res = report.doc["results"]
    if args.kind == "binomial":
        encoder, warnings = binomial_encoder(args.n, args.k, args.delta,
                                             args.p)
        for w in warnings:
            report.warn(w)
        ring = encoder.ring
        code = ConvCode(ring, args.n, encoder)
        if args.ring is not None:
            target = parse_ring(args.ring)
            if target.nu > 1:
                code = lift_from_residue_field(encoder, target)
    elif args.kind == "lift":
        src = load_code(args.field_code)
        if src.ring.nu != 1:
            raise InvalidParams("lift input must live over a nu=1 ring")
        target = parse_ring(args.ring)
        code = lift_from_residue_field(src.encoder, target)
    elif args.kind == "superregular":
        spec = load_toeplitz(args.matrix)
        if spec.ring.nu != 1:
            raise InvalidParams(
                "block extraction expects a matrix over a nu=1 ring")
        rows = ROWS_FORMULA if args.rows == "formula" else ROWS_EXAMPLE
        encoder = extract_mdp_blocks(spec, n=args.n, k=args.k, L=args.L,
                                     rows=rows)
        code = ConvCode(spec.ring, args.n, encoder)
        if args.ring is not None:
            target = parse_ring(args.ring)
            if target.nu > 1:
                code = lift_from_residue_field(encoder, target)
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidParams(f"unknown construction {args.kind!r}")
    res["code"] = code.to_json()
    res["n"] = code.n
    res["k"] = code.k
    res["delta"] = code.delta
    return EXIT_HOLDS


def cmd_distances(args, report):
    res = report.doc["results"]
    code = load_code(args.code)
    ring = code.ring
    n, k = code.n, code.k
    profile = [column_distance(code, j, budget=args.budget)
               for j in range(args.max_j + 1)]
    res["profile"] = profile
    bounds = [optimal_cd_bound(j, n, k, ring.nu)
              for j in range(args.max_j + 1)]
    res["optimal_bounds"] = bounds
    res["saturated"] = [d == b for d, b in zip(profile, bounds)]
    try:
        res["L"] = L_index(n, k, code.delta, ring.nu)
    except NuNotDividingK as exc:
        report.warn(str(exc))
    return EXIT_HOLDS


def cmd_bounds(args, report):
    res = report.doc["results"]
    b = distance_bounds(args.n, args.k, args.delta, args.nu,
                        max_j=args.max_j)
    res["L"] = b.L
    res["N"] = b.N
    res["column_distance_bounds"] = list(b.per_j)
    res["generalized_singleton"] = b.generalized_singleton
    res["field_L"] = field_L_index(args.n, args.k, args.delta) \
        if args.n > args.k else None
    if args.n > args.k:
        res["embedding_preserves_L"] = embedding_preserves_L(
            args.n, args.k, args.delta)
    return EXIT_HOLDS


def cmd_blockcode(args, report):
    res = report.doc["results"]
    A = load_matrix(args.matrix)
    if args.what == "shape":
        res["shape"] = list(shape_of(A))
    elif args.what == "params":
        res["parameters"] = list(parameters_of(A))
        res["gamma_dimension"] = gamma_dimension(A)
        if gamma_dimension(A):
            res["nu_optimal_sets"] = [list(t) for t in nu_optimal_sets(
                gamma_dimension(A), A.ring.nu)]
    elif args.what == "standard-form":
        S, perm = standard_form(A)
        res["standard_form"] = S.to_json()
        res["column_permutation"] = list(perm)
    elif args.what == "mindist":
        code = BlockCode(A)
        d = min_distance_block(code, budget=args.budget)
        res["min_distance"] = d
        res["singleton_bound"] = singleton_bound_block(code.n, code.k,
                                                       code.ring.nu)
        res["is_mds"] = is_mds(code, budget=args.budget)
    return EXIT_HOLDS


def cmd_search(args, report):
    res = report.doc["results"]
    ring = parse_ring(args.ring)
    strategy = RANDOM if args.strategy == "random" else EXHAUSTIVE
    if strategy == RANDOM and args.seed is None:
        raise InvalidParams("random search requires an explicit --seed")
    hits = search_superregular(args.ell, ring, strategy=strategy,
                               seed=args.seed, budget=args.budget,
                               reverse=args.reverse)
    res["count"] = len(hits)
    res["hits"] = [h.to_json() for h in hits[:args.max_hits]]
    if len(hits) > args.max_hits:
        report.warn(f"only the first {args.max_hits} of {len(hits)} "
                    f"hits are listed")
    # re-verify the first hit with cross-checked determinant paths
    if hits:
        check = is_reverse_gamma_superregular if args.reverse \
            else is_gamma_superregular
        assert check(hits[0], cross_check=True)
    return EXIT_HOLDS


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    parser = argparse.ArgumentParser(
        prog="chaincodes",
        description="Construct and verify MDP and reverse-MDP "
                    "convolutional codes over finite chain rings.")
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; execution is single-threaded")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("ring", help="describe a chain ring")
    p.add_argument("--ring", required=True)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("check", help="verify a code property")
    p.add_argument("property", choices=["mdp", "reverse-mdp", "delay-free",
                                        "reduced", "gamma-basis"])
    p.add_argument("--code", required=True,
                   help="code JSON file, or - for standard input")
    p.add_argument("--method", choices=["minors", "distances", "both"],
                   default="minors")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build a code")
    p.add_argument("kind", choices=["lift", "binomial", "superregular"])
    p.add_argument("--field-code", help="code JSON over a nu=1 ring (lift)")
    p.add_argument("--matrix", help="Toeplitz matrix JSON (superregular)")
    p.add_argument("--ring", help="target ring for lifting")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--p", type=int, help="prime for the binomial encoder")
    p.add_argument("--L", type=int, help="block count minus one "
                                         "(superregular extraction)")
    p.add_argument("--rows", choices=["example", "formula"],
                   default="example")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("distances", help="column distance profile")
    p.add_argument("--code", required=True)
    p.add_argument("--max-j", type=int, required=True, dest="max_j")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("bounds", help="distance bounds from parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--max-j", type=int, default=None, dest="max_j")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("blockcode", help="block-code computations")
    p.add_argument("what", choices=["shape", "standard-form", "params",
                                    "mindist"])
    p.add_argument("--matrix", required=True)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_blockcode)

    p = sub.add_parser("search", help="search superregular matrices")
    p.add_argument("what", choices=["superregular"])
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--strategy", choices=["exhaustive", "random"],
                   default="exhaustive")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--max-hits", type=int, default=20, dest="max_hits")
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(argv)
    if args.threads != 1:
        report.warn("--threads is accepted for interface stability; "
                    "execution is single-threaded")
    try:
        code = args.func(args, report)
    except (ChainCodesError, AssertionError, OSError,
            json.JSONDecodeError, ValueError) as exc:
        report.doc["results"]["error"] = {
            "type": type(exc).__name__, "message": str(exc)}
        return report.emit(EXIT_INVALID)
    return report.emit(code)


if __name__ == "__main__":
    sys.exit(main())
