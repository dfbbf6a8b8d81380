"""Batch interface: one command per process, deterministic output.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 certificate failure, 5 solver bound exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import specfile
from .factorizations import (CONTRACTIBLE, fold_to_mf, dgmf_from_homotopy,
                             koszul_mf, support_check)
from .groups import is_invariant
from .jacobian import DEGENERATE, INCONCLUSIVE, nondegeneracy_check
from .complexes import homology_ranks
from .spincurve import (SpinDataError, check_equivariance, fundamental_mf,
                        twisted_diagonal_glue)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_CERTIFICATE = 4
EXIT_BOUND = 5


class CliFailure(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _read_input(args):
    if args.input:
        with open(args.input) as fh:
            return fh.read()
    return sys.stdin.read()


def _emit(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args):
    doc = specfile.parse_spec(_read_input(args))
    report = {}
    w, _ = doc.potential.weight()
    if w != doc.degree_d:
        raise CliFailure(EXIT_CERTIFICATE,
                         f"W is not quasihomogeneous of weight {doc.degree_d}")
    report["quasihomogeneous"] = True
    bad = [repr(g) for g in doc.generators if g.act(doc.potential) != doc.potential]
    if bad:
        raise CliFailure(EXIT_CERTIFICATE, f"W not invariant under {bad[0]}")
    report["invariant"] = True
    verdict, detail = nondegeneracy_check(doc.potential, args.degree_bound)
    report["nondegeneracy"] = verdict
    _emit(args, json.dumps(report, indent=2, sort_keys=True) + "\n")
    if verdict == DEGENERATE:
        raise CliFailure(EXIT_CERTIFICATE, f"degenerate: {detail}")
    if verdict == INCONCLUSIVE:
        raise CliFailure(EXIT_BOUND, "nondegeneracy inconclusive at this bound")
    return EXIT_OK


def cmd_koszul(args):
    ring, alpha, beta = specfile.parse_koszul(_read_input(args))
    mf = koszul_mf(ring, alpha, beta)
    _emit(args, specfile.write_mf(mf))
    return EXIT_OK


def cmd_fold(args):
    text = _read_input(args)
    try:
        scheme, f = specfile.parse_scheme(text)
        curved = dgmf_from_homotopy(scheme, f)
        mf = fold_to_mf(curved)
    except specfile.SpecParseError:
        raise
    except ValueError as e:
        raise CliFailure(EXIT_PRECONDITION, str(e))
    _emit(args, specfile.write_mf(mf))
    return EXIT_OK


def cmd_fundamental(args):
    doc = specfile.parse_spec(_read_input(args))
    try:
        spec = doc.spin_spec()
        result = fundamental_mf(spec)
    except (SpinDataError, ValueError) as e:
        raise CliFailure(EXIT_PRECONDITION, str(e))
    cert = result.certificate()
    cert["equivariance"] = check_equivariance(spec, result)
    _emit(args, specfile.write_mf(result.mf, certificate=cert))
    return EXIT_OK


def cmd_verify(args):
    mf, _cert = specfile.parse_mf(_read_input(args), check=False)
    try:
        mf.verify()
    except ValueError as e:
        raise CliFailure(EXIT_CERTIFICATE, str(e))
    _emit(args, "verified: delta^2 = W . id\n")
    return EXIT_OK


def cmd_homology(args):
    cx = specfile.parse_complex(_read_input(args))
    try:
        ranks = homology_ranks(cx)
    except ValueError as e:
        raise CliFailure(EXIT_PRECONDITION, str(e))
    _emit(args, json.dumps({str(n): r for n, r in sorted(ranks.items())},
                           indent=2) + "\n")
    return EXIT_OK


def cmd_glue(args):
    doc_disc = specfile.parse_spec(_read_input(args))
    if not args.glued:
        raise CliFailure(EXIT_PRECONDITION, "glue requires --glued SPECFILE")
    with open(args.glued) as fh:
        doc_glued = specfile.parse_spec(fh.read())
    try:
        report = twisted_diagonal_glue(doc_disc.spin_spec(), doc_glued.spin_spec())
    except (SpinDataError, ValueError) as e:
        raise CliFailure(EXIT_PRECONDITION, str(e))
    out = {
        "cartesian": report["cartesian"],
        "potentials_match": report["potentials_match"],
        "pulled_back_potential": str(report["pulled_back_potential"]),
        "glued_potential": str(report["glued_potential"]),
    }
    _emit(args, json.dumps(out, indent=2, sort_keys=True) + "\n")
    if not (report["cartesian"] and report["potentials_match"]):
        raise CliFailure(EXIT_CERTIFICATE, "gluing certificate failed")
    return EXIT_OK


def cmd_support(args):
    mf, _cert = specfile.parse_mf(_read_input(args), check=True)
    field = mf.ring.field
    rng = random.Random(args.seed)
    points = []
    attempts = 0
    while len(points) < args.points and attempts < 100 * args.points:
        attempts += 1
        p = tuple(field.scalar(rng.randint(-9, 9)) for _ in range(mf.ring.nvars))
        if any(p) and p not in points:
            points.append(p)
    report = support_check(mf, points, degree_bound=args.degree_bound,
                           with_certificates=False)
    out = [{"point": [str(c) for c in entry["point"]],
            "verdict": entry["verdict"]} for entry in report]
    _emit(args, json.dumps(out, indent=2) + "\n")
    if any(entry["verdict"] not in (CONTRACTIBLE, "noncontractible")
           for entry in report):
        raise CliFailure(EXIT_BOUND, "support verdict unknown at the bound")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "koszul": cmd_koszul,
    "fold": cmd_fold,
    "fundamental": cmd_fundamental,
    "verify": cmd_verify,
    "homology": cmd_homology,
    "glue": cmd_glue,
    "support": cmd_support,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dgmf",
        description="exact dg-matrix factorizations and the genus-0 pipeline")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", help="input file (default: stdin)")
    parser.add_argument("--output", help="output file (default: stdout)")
    parser.add_argument("--glued", help="glued spec file (glue command)")
    parser.add_argument("--degree-bound", type=int, default=4,
                        help="solver degree bound (default 4)")
    parser.add_argument("--points", type=int, default=10,
                        help="number of support sample points (default 10)")
    parser.add_argument("--seed", type=int, default=0,
                        help="sampling seed (default 0)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except specfile.SpecParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CliFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
