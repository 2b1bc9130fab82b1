"""Certificate encoding and independent re-checking.

Each certificate is a JSON object with a ``kind`` and usually the polytope
it refers to.  :func:`verify_certificate` recomputes every claim from
scratch with exact arithmetic and never trusts derived fields.
"""

from fractions import Fraction

from . import linalg
from .constructions import tfold_member
from .errors import SchemaError, VerificationFailed
from .flatness import SimplexCertificate
from .gromov import DiamondSpec
from .linalg import det, dot
from .lp import solve_lp
from .polytope import contains_point, lattice_points
from .serialize import parse_int_vec, parse_rat, parse_vec, polytope_from_json, polytope_to_json, rat, vec
from .spanning import affine_lattice_of_points
from .width import directional_width, lattice_width

KINDS = (
    "width",
    "simplex",
    "unimodular-map",
    "minima",
    "diamond",
    "genset",
    "idp-witness",
    "lambda",
    "upsilon",
)


# ------------------------------------------------------------------ encoders


def width_certificate(P, cert):
    return {
        "kind": "width",
        "width": rat(cert.value),
        "direction": list(cert.direction),
        "polytope": polytope_to_json(P),
    }


def simplex_certificate(K, cert):
    return {
        "kind": "simplex",
        "mode": cert.mode,
        "points": [vec(p) for p in cert.points],
        "polytope": polytope_to_json(K),
    }


def map_certificate(K, X, T):
    return {
        "kind": "unimodular-map",
        "mode": T.mode,
        "matrix": [list(r) for r in T.matrix],
        "translation": vec(T.translation),
        "source": polytope_to_json(X),
        "polytope": polytope_to_json(K),
    }


def minima_certificate(P, mins):
    return {
        "kind": "minima",
        "lambdas": [rat(x) for x in mins.lambdas],
        "witnesses": [list(v) for v in mins.witness_vectors],
        "polytope": polytope_to_json(P),
    }


def diamond_certificate(P, spec):
    return {
        "kind": "diamond",
        "basis": [list(b) for b in spec.basis],
        "center": vec(spec.center),
        "k": vec(spec.k),
        "l": vec(spec.l),
        "a": rat(spec.a),
        "polytope": polytope_to_json(P),
    }


def genset_certificate(P, points):
    return {"kind": "genset", "points": [list(p) for p in points], "polytope": polytope_to_json(P)}


def idp_certificate(P, report):
    return {
        "kind": "idp-witness",
        "point": list(report.point),
        "t": report.t,
        "halves": [[list(q) for q in half] for half in report.halves],
        "polytope": polytope_to_json(P),
    }


def relation_certificate(kind, P, value, multiplicities):
    combo = [
        {"normal": list(P.halfspaces[k][0]), "multiplicity": a}
        for k, a in enumerate(multiplicities)
        if a
    ]
    return {"kind": kind, "value": rat(value), "combination": combo, "polytope": polytope_to_json(P)}


# ------------------------------------------------------------------ checks


def _in_scaled_difference_body(K, lam, v):
    """``v ∈ lam (K - K)`` via an LP over pairs of points of ``K``."""
    d = K.dim
    if lam <= 0:
        return False
    target = [Fraction(c) / lam for c in v]
    cons = []
    for u, phi in K.halfspaces:
        cons.append((list(u) + [0] * d, -phi, ">="))
        cons.append(([0] * d + list(u), -phi, ">="))
    for i in range(d):
        row = [0] * (2 * d)
        row[i] = 1
        row[d + i] = -1
        cons.append((row, target[i], "=="))
    return solve_lp([0] * (2 * d), cons).ok


def _check_width(cert, K):
    w = parse_rat(cert["width"], "width")
    u = parse_int_vec(cert["direction"], "direction")
    bad = []
    if not any(u):
        return ["direction is zero"]
    if linalg.primitive(u) != tuple(u) and linalg.primitive(u) != tuple(-c for c in u):
        bad.append("direction is not primitive")
    if directional_width(K, u) != w:
        bad.append("width along the direction differs from the claimed value")
    if lattice_width(K).value != w:
        bad.append("claimed width is not the lattice width")
    return bad


def _check_simplex(cert, K):
    pts = [parse_vec(p, f"points[{i}]") for i, p in enumerate(cert["points"])]
    mode = cert.get("mode", "z")
    if mode not in ("z", "r"):
        raise SchemaError("simplex: mode must be 'z' or 'r'")
    return SimplexCertificate(mode, pts).problems(K)


def _check_map(cert, K):
    a = [parse_int_vec(r, "matrix") for r in cert["matrix"]]
    b = parse_vec(cert["translation"], "translation")
    mode = cert.get("mode", "r")
    X = polytope_from_json(cert["source"], allow_lower_dim=True)
    bad = []
    if abs(det(a)) != 1:
        bad.append("determinant ≠ ±1")
    if mode == "z" and any(c.denominator != 1 for c in b):
        bad.append("translation is not integral in Z-mode")
    for x in X.vertices:
        y = [dot(row, x) + c for row, c in zip(a, b)]
        if not contains_point(K, y):
            bad.append(f"image of {[rat(c) for c in x]} lies outside the body")
    return bad


def _check_minima(cert, K):
    lams = [parse_rat(x, "lambdas") for x in cert["lambdas"]]
    ws = [parse_int_vec(v, "witnesses") for v in cert["witnesses"]]
    bad = []
    if len(ws) != K.dim or len(lams) != K.dim:
        return ["need d lambdas and d witnesses"]
    if any(a > b for a, b in zip(lams, lams[1:])):
        bad.append("lambdas are not nondecreasing")
    if linalg.rank([list(v) for v in ws]) != K.dim:
        bad.append("witness vectors are linearly dependent")
    for lam, v in zip(lams, ws):
        if not _in_scaled_difference_body(K, lam, v):
            bad.append(f"witness {list(v)} is not in {lam}(K-K)")
    return bad


def _check_diamond(cert, K):
    spec = DiamondSpec(
        tuple(parse_int_vec(b, "basis") for b in cert["basis"]),
        parse_vec(cert["center"], "center"),
        parse_vec(cert["k"], "k"),
        parse_vec(cert["l"], "l"),
        parse_rat(cert["a"], "a"),
    )
    return spec.problems(K)


def _check_genset(cert, K):
    pts = [parse_int_vec(p, "points") for p in cert["points"]]
    allp = lattice_points(K)
    bad = []
    aset = set(allp)
    if any(p not in aset for p in pts):
        bad.append("a point is not a lattice point of the polytope")
    if not pts:
        return ["empty generating set"]
    if not affine_lattice_of_points(pts).same_as(affine_lattice_of_points(allp)):
        bad.append("points do not generate the affine lattice of all lattice points")
    return bad


def _check_idp(cert, K):
    p = parse_int_vec(cert["point"], "point")
    t = cert["t"]
    halves = [[parse_int_vec(q, "halves") for q in h] for h in cert["halves"]]
    bad = []
    if len(halves) != 2 or any(len(h) != t for h in halves):
        return ["need two t-tuples of lattice points"]
    for h in halves:
        if any(not contains_point(K, q) for q in h):
            bad.append("a summand lies outside the polytope")
    sums = [[sum(c) for c in zip(*h)] for h in halves]
    if any(Fraction(a + b, 2) != c for a, b, c in zip(sums[0], sums[1], p)):
        bad.append("the two sums do not average to the point")
    if tfold_member(lattice_points(K), t, p):
        bad.append("the point is a sum of t lattice points")
    return bad


def _check_relation(cert, K, kind):
    phi_of = {u: phi for u, phi in K.halfspaces}
    total = Fraction(0)
    acc = [0] * K.dim
    count = 0
    bad = []
    for item in cert["combination"]:
        u = parse_int_vec(item["normal"], "normal")
        a = int(item["multiplicity"])
        if a <= 0:
            bad.append("multiplicities must be positive")
        if u not in phi_of:
            bad.append(f"{list(u)} is not a facet normal")
            continue
        total += a * phi_of[u]
        acc = [x + a * y for x, y in zip(acc, u)]
        count += a
    if any(acc):
        bad.append("normals do not sum to zero")
    if total != parse_rat(cert["value"], "value"):
        bad.append("value differs from the weighted offset sum")
    if kind == "lambda" and count > K.dim + 1:
        bad.append("more than d+1 summands")
    return bad


_CHECKS = {
    "width": _check_width,
    "simplex": _check_simplex,
    "unimodular-map": _check_map,
    "minima": _check_minima,
    "diamond": _check_diamond,
    "genset": _check_genset,
    "idp-witness": _check_idp,
    "lambda": lambda c, K: _check_relation(c, K, "lambda"),
    "upsilon": lambda c, K: _check_relation(c, K, "upsilon"),
}


def verify_certificate(cert, against=None):
    """Raise :class:`VerificationFailed` unless ``cert`` holds for its polytope.

    ``against`` overrides the polytope embedded in the certificate.
    """
    if isinstance(cert, dict) and "kind" not in cert and isinstance(cert.get("certificate"), dict):
        cert = cert["certificate"]
    if not isinstance(cert, dict) or cert.get("kind") not in _CHECKS:
        raise SchemaError(f"certificate kind must be one of {list(KINDS)}")
    K = against
    if K is None:
        if "polytope" not in cert:
            raise SchemaError("certificate has no polytope; pass one to check against")
        K = polytope_from_json(cert["polytope"])
    try:
        bad = _CHECKS[cert["kind"]](cert, K)
    except KeyError as exc:
        raise SchemaError(f"certificate is missing field {exc.args[0]!r}") from None
    if bad:
        raise VerificationFailed("; ".join(bad), kind=cert["kind"], reasons=bad)
    return True
