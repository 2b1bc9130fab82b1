"""``latgeo`` command-line front end.

Every command prints one JSON object on stdout.  Exit status is 0 on
success, 2 when a bounded search honestly found nothing, and 1 on errors
(with an error object on stderr).
"""

import argparse
import hashlib
import sys
import time

from . import constructions, flatness, gromov, spanning, width
from .errors import LatgeoError, NotFound, SchemaError
from .serialize import (
    SCHEMA,
    dumps,
    loads,
    parse_rat,
    polytope_from_json,
    polytope_to_json,
    rat,
    vec,
)
from . import verify as vf

NOT_FOUND = 2


class _Miss(Exception):
    """Bounded search came back empty; carries the payload to print."""

    def __init__(self, payload):
        super().__init__("not found")
        self.payload = payload


def _read_json(path, stdin):
    if path == "-":
        text = stdin.read()
        source = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {path}: {exc.strerror}", path=path) from None
        source = path
    return loads(text, source)


def _digest(*objs):
    h = hashlib.sha256()
    for obj in objs:
        h.update(dumps(obj).encode("utf-8"))
    return h.hexdigest()[:16]


def _load_polytope(args, stdin, allow_lower_dim=False, attr="file"):
    raw = _read_json(getattr(args, attr), stdin)
    return polytope_from_json(raw, allow_lower_dim)


# ------------------------------------------------------------------ commands


def cmd_width(args, P):
    cert = width.lattice_width(P, budget=args.budget or width.DEFAULT_CANDIDATE_BUDGET)
    out = {
        "width": rat(cert.value),
        "direction": list(cert.direction),
        "certified": cert.certified,
        "status": cert.status,
        "candidates_checked": cert.candidates_checked,
    }
    if cert.degenerate:
        out["degenerate"] = True
    if cert.certified and not cert.degenerate:
        out["certificate"] = vf.width_certificate(P, cert)
    return out


def cmd_facet_width(args, P):
    value, k = width.facet_width(P)
    u, phi = P.halfspaces[k]
    return {"facet_width": rat(value), "normal": list(u)}


def cmd_minima(args, P):
    mins = width.successive_minima_diffbody(P, budget=args.budget or width.DEFAULT_CANDIDATE_BUDGET)
    return {
        "lambdas": [rat(x) for x in mins.lambdas],
        "witnesses": [list(v) for v in mins.witness_vectors],
        "certificate": vf.minima_certificate(P, mins),
    }


def cmd_simplex_cert(args, P):
    try:
        cert = flatness.find_unimodular_simplex(P, args.mode)
    except NotFound as exc:
        raise _Miss({"found": False, "mode": args.mode, "reason": str(exc), **exc.details})
    return {
        "found": True,
        "mode": cert.mode,
        "points": [vec(p) for p in cert.points],
        "certificate": vf.simplex_certificate(P, cert),
    }


def cmd_contains_copy(args, K, stdin, inputs):
    X = _load_polytope(args, stdin, allow_lower_dim=True, attr="source")
    inputs.append(polytope_to_json(X))
    bound = args.bound if args.bound is not None else 3
    res = flatness.contains_unimodular_copy(K, X, args.mode, bound)
    if not res:
        raise _Miss({"found": False, "status": "unknown", "bound": res.bound, "matrices_checked": res.matrices_checked})
    return {
        "found": True,
        "matrix": [list(r) for r in res.matrix],
        "translation": vec(res.translation),
        "certificate": vf.map_certificate(K, X, res),
    }


def cmd_flt1(args):
    xs = [parse_rat(s.strip(), "point") for s in args.points.split(",") if s.strip()]
    if not xs:
        raise SchemaError("flt1 needs at least one rational")
    return {"points": [rat(x) for x in xs], "flt1": rat(flatness.flt1_exact(xs))}


def cmd_spanning(args, P):
    lat = spanning.affine_lattice_of_points(spanning.lattice_points(P))
    return {
        "spanning": spanning.is_spanning(P),
        "index": None if lat.index == float("inf") else lat.index,
    }


def cmd_genset(args, P):
    if args.exact:
        sr = spanning.spanning_rank(P, budget=args.budget or spanning.DEFAULT_SR_BUDGET)
        pts, method = sr.witness, "exhaustive" if sr.exact else "recursive"
    else:
        g = spanning.generating_subset_recursive(P)
        pts, method = g.points, g.method
    return {
        "points": [list(p) for p in pts],
        "size": len(pts),
        "method": method,
        "size_bound": rat(spanning.size_bound_C(P.dim)),
        "certificate": vf.genset_certificate(P, pts),
    }


def cmd_sr(args, P):
    sr = spanning.spanning_rank(P, budget=args.budget or spanning.DEFAULT_SR_BUDGET)
    return {
        "spanning_rank": sr.value,
        "flag": sr.flag,
        "witness": [list(p) for p in sr.witness],
        "certificate": vf.genset_certificate(P, sr.witness),
    }


def cmd_csr(args, P):
    res = spanning.caratheodory_spanning_rank(P, budget=args.budget or spanning.DEFAULT_CSR_BUDGET)
    return {
        "csr": res.value,
        "lower": res.lower,
        "upper": res.upper,
        "flag": res.flag,
        "quotient_size": res.quotient_size,
    }


def cmd_delzant(args, P):
    out = {"delzant": gromov.is_delzant(P)}
    if out["delzant"] and P.dim == 2 and P.is_lattice:
        out["classification"] = gromov.delzant_polygon_classify(P)
    return out


def cmd_lambda(args, P):
    lam = gromov.lu_lambda(P)
    cert = vf.relation_certificate("lambda", P, lam.value, lam.multiplicities)
    return {"lambda": rat(lam.value), "combination": cert["combination"], "certificate": cert}


def cmd_upsilon(args, P):
    ups = gromov.lu_upsilon(P)
    cert = vf.relation_certificate("upsilon", P, ups.value, ups.multiplicities)
    return {
        "upsilon": rat(ups.value),
        "combination": cert["combination"],
        "cross_checked_upto": ups.cross_checked_upto,
        "certificate": cert,
    }


def _diamond_payload(P, res):
    spec = res.diamond
    return {
        "a": rat(spec.a),
        "basis": [list(b) for b in spec.basis],
        "center": vec(spec.center),
        "bases_tried": res.bases_tried,
        "certificate": vf.diamond_certificate(P, spec),
    }


def cmd_diamond(args, P):
    bound = args.bound if args.bound is not None else 1
    return _diamond_payload(P, gromov.largest_diamond(P, bound))


def cmd_gromov(args, P):
    bound = args.bound if args.bound is not None else 1
    rep = gromov.gromov_bounds(P, bound)
    s = rep.simplex
    out = {
        "lower_bound": rat(rep.lower_bound),
        "lattice_width": rat(rep.lattice_width),
        "bracket": [rat(x) for x in rep.bracket],
        "delzant": rep.delzant,
        "lambda_upper": None if rep.lambda_upper is None else rat(rep.lambda_upper),
        "upsilon": None if rep.upsilon is None else rat(rep.upsilon),
        "simplex": {
            "R": rat(s.R),
            "guaranteed": rat(s.guaranteed),
            "points": [vec(p) for p in s.points],
            "certificate": vf.map_certificate(P, constructions.standard_simplex(P.dim, s.R), s.map),
        },
        "diamond": _diamond_payload(P, rep.diamond),
        "notes": list(rep.notes),
    }
    if rep.delzant:
        out["lambda_certificate"] = vf.relation_certificate("lambda", P, rep.lambda_upper, rep.lambda_witness)
    return out


def cmd_family(args):
    params = {}
    if args.params:
        for item in args.params.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise SchemaError(f"--params: expected key=value, got {item!r}")
            x = parse_rat(value.strip(), key)
            params[key.strip()] = int(x) if x.denominator == 1 else x
    P = constructions.build(args.name, **params)
    out = polytope_to_json(P)
    out["family"] = args.name
    out["params"] = {k: rat(v) for k, v in sorted(params.items())}
    return out


def cmd_idp_witness(args, P):
    rep = constructions.idp_witness_check(P, args.t, budget=args.budget or constructions.DEFAULT_DP_BUDGET)
    out = {
        "witness_found": rep.witness_found,
        "point": None if rep.point is None else list(rep.point),
        "t": rep.t,
        "in_tP": rep.in_tP,
        "dp_member": rep.dp_member,
        "reduction_member": rep.reduction_member,
        "level_sets_agree": rep.level_sets_agree,
        "method": rep.method,
    }
    if rep.halves and rep.witness_found:
        out["certificate"] = vf.idp_certificate(P, rep)
    if not rep.witness_found:
        raise _Miss(out)
    return out


def cmd_verify(args, stdin):
    cert = _read_json(args.file, stdin)
    against = None
    if args.against:
        against = polytope_from_json(_read_json(args.against, stdin))
    vf.verify_certificate(cert, against)
    inner = cert.get("certificate", cert) if "kind" not in cert else cert
    return {"verified": True, "kind": inner["kind"]}


POLYTOPE_COMMANDS = {
    "width": cmd_width,
    "facet-width": cmd_facet_width,
    "minima": cmd_minima,
    "simplex-cert": cmd_simplex_cert,
    "spanning": cmd_spanning,
    "genset": cmd_genset,
    "sr": cmd_sr,
    "csr": cmd_csr,
    "delzant": cmd_delzant,
    "lambda": cmd_lambda,
    "upsilon": cmd_upsilon,
    "diamond": cmd_diamond,
    "gromov": cmd_gromov,
    "idp-witness": cmd_idp_witness,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=True, help="JSON output (the default)")
    common.add_argument("--mode", choices=("z", "r"), default="z")
    common.add_argument("--bound", type=int, default=None, help="matrix entry bound for searches")
    common.add_argument("--budget", type=int, default=None, help="work budget for bounded searches")
    common.add_argument("--seed", type=int, default=None, help="seed echoed into the output")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="latgeo", description="Exact lattice-width invariants and certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in POLYTOPE_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file", help="polytope JSON file, or - for stdin")
        if name == "genset":
            p.add_argument("--exact", action="store_true", help="minimum-size set by exhaustive search")
        if name == "idp-witness":
            p.add_argument("--t", type=int, default=2)
    p = sub.add_parser("contains-copy", parents=[common])
    p.add_argument("file", help="body K")
    p.add_argument("source", help="set X (may be lower dimensional)")
    p = sub.add_parser("flt1", parents=[common])
    p.add_argument("points", help='comma separated rationals, e.g. "1/3,0"')
    p = sub.add_parser("family", parents=[common])
    p.add_argument("name", choices=sorted(constructions.FAMILIES))
    p.add_argument("--params", default="", help="k=5,d=3")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("file", help="certificate JSON (or command output containing one)")
    p.add_argument("--against", default=None, help="polytope to check against")
    return parser


def _dispatch(args, stdin, inputs):
    """Run the command, appending canonical inputs (for the digest) as they are read."""
    name = args.command
    if name in POLYTOPE_COMMANDS:
        P = _load_polytope(args, stdin)
        inputs.append(polytope_to_json(P))
        return POLYTOPE_COMMANDS[name](args, P)
    if name == "contains-copy":
        K = _load_polytope(args, stdin)
        inputs.append(polytope_to_json(K))
        return cmd_contains_copy(args, K, stdin, inputs)
    if name == "flt1":
        inputs.append(args.points)
        return cmd_flt1(args)
    if name == "family":
        inputs.extend([args.name, args.params])
        return cmd_family(args)
    if name == "verify":
        inputs.extend([args.file, args.against])
        return cmd_verify(args, stdin)
    raise SchemaError(f"unknown command {name}")  # pragma: no cover


def _envelope(args, inputs, payload):
    out = {"schema": SCHEMA, "command": args.command, "input_digest": _digest(*inputs)}
    if args.seed is not None:
        out["seed"] = args.seed
    out.update(payload)
    return out


def run(argv=None, stdin=None, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    start = time.perf_counter()
    status = 0
    inputs = [args.command]
    try:
        try:
            payload = _dispatch(args, stdin, inputs)
        except _Miss as miss:
            payload, status = miss.payload, NOT_FOUND
    except LatgeoError as exc:
        stderr.write(dumps(exc.to_json()) + "\n")
        return 1
    out = _envelope(args, inputs, payload)
    if args.timing:
        out["timing_seconds"] = round(time.perf_counter() - start, 6)
    stdout.write(dumps(out) + "\n")
    stdout.flush()
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
