import json
from fractions import Fraction

import pytest

from latgeo import verify as vf
from latgeo.constructions import empty_simplex_vol2, hirzebruch, standard_simplex, wide_nonidp
from latgeo.errors import SchemaError, VerificationFailed
from latgeo.flatness import contains_unimodular_copy, find_unimodular_simplex
from latgeo.gromov import largest_diamond, lu_lambda, lu_upsilon
from latgeo.constructions import idp_witness_check
from latgeo.polytope import box, hull_from_points
from latgeo.serialize import dumps, loads, parse_rat, polytope_from_json, polytope_to_json
from latgeo.spanning import generating_subset_recursive
from latgeo.width import lattice_width, successive_minima_diffbody

H = hirzebruch(2, 7, 2)


def _round_trip(cert):
    return json.loads(dumps(cert))


def test_parse_rat():
    assert parse_rat("-3/6") == Fraction(-1, 2)
    assert parse_rat(4) == 4
    for bad in (0.5, True, "1/0", "x", None):
        with pytest.raises(SchemaError):
            parse_rat(bad)


def test_polytope_schema():
    P = hull_from_points([(Fraction(1, 2), 0), (1, 0), (0, 1)])
    obj = polytope_to_json(P)
    assert obj == {"dim": 2, "vertices": [["0", "1"], ["1/2", "0"], ["1", "0"]]}
    assert polytope_from_json(obj) == P
    assert polytope_from_json({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "extra": 1}).dim == 2
    with pytest.raises(SchemaError):
        polytope_from_json({"dim": 3, "vertices": [[0, 0]]})
    with pytest.raises(SchemaError):
        polytope_from_json({"vertices": []})


def test_malformed_json_has_position():
    with pytest.raises(SchemaError) as info:
        loads('{"dim": 2,\n "vertices": [', "f.json")
    assert info.value.details["line"] == 2


def test_all_certificate_kinds_verify():
    W = wide_nonidp(3, 3)
    certs = [
        vf.width_certificate(H, lattice_width(H)),
        vf.simplex_certificate(H, find_unimodular_simplex(H)),
        vf.minima_certificate(H, successive_minima_diffbody(H)),
        vf.diamond_certificate(H, largest_diamond(H).diamond),
        vf.genset_certificate(H, generating_subset_recursive(H).points),
        vf.idp_certificate(W, idp_witness_check(W, 2)),
    ]
    lam = lu_lambda(H)
    ups = lu_upsilon(H)
    certs.append(vf.relation_certificate("lambda", H, lam.value, lam.multiplicities))
    certs.append(vf.relation_certificate("upsilon", H, ups.value, ups.multiplicities))
    X = standard_simplex(2)
    certs.append(vf.map_certificate(box((0, 0), (1, 1)), X, contains_unimodular_copy(box((0, 0), (1, 1)), X)))
    assert {c["kind"] for c in certs} == set(vf.KINDS)
    for c in certs:
        assert vf.verify_certificate(_round_trip(c))


def test_tampered_simplex():
    cert = _round_trip(vf.simplex_certificate(H, find_unimodular_simplex(H)))
    cert["points"][2] = ["0", "2"]
    with pytest.raises(VerificationFailed) as info:
        vf.verify_certificate(cert)
    assert "determinant ≠ ±1" in info.value.details["reasons"]


@pytest.mark.parametrize(
    "field,value",
    [("width", "1"), ("direction", [1, 1])],
)
def test_tampered_width(field, value):
    cert = _round_trip(vf.width_certificate(H, lattice_width(H)))
    cert[field] = value
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)


def test_tampered_other_kinds():
    cert = _round_trip(vf.minima_certificate(H, successive_minima_diffbody(H)))
    cert["lambdas"] = ["1/8", "1/2"]
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)
    cert = _round_trip(vf.genset_certificate(H, [(0, 0), (1, 0)]))
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)
    E = empty_simplex_vol2()
    cert = _round_trip(vf.genset_certificate(E, [(0, 0, 0), (1, 0, 0), (0, 1, 0)]))
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)
    lam = lu_lambda(H)
    cert = _round_trip(vf.relation_certificate("lambda", H, lam.value + 1, lam.multiplicities))
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)
    cert = _round_trip(vf.diamond_certificate(H, largest_diamond(H).diamond))
    cert["a"] = "3"
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert)


def test_against_other_polytope():
    cert = vf.simplex_certificate(H, find_unimodular_simplex(H))
    with pytest.raises(VerificationFailed):
        vf.verify_certificate(cert, against=box((5, 5), (6, 6)))


def test_unknown_kind():
    with pytest.raises(SchemaError):
        vf.verify_certificate({"kind": "nope"})
