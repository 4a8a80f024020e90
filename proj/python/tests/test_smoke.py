import json

import pytest

import crsym


def test_heisenberg_dimension():
    r = crsym.analyze("Im w = |z1|^2")
    assert r.status == "complete"
    assert r.total_dimension == 8
    assert r.weights == ["1/2"]


def test_cubic_pairing_model():
    r = crsym.analyze("Re(z1*conj(z2)^3)")
    assert r.balanced == ["1", "1/3"]
    assert r.is_chain
    assert r.g1_dimension == 1
    assert r.nc_case == "M1Canonical"
    assert any(e.kind == "chain" and e.K == 5 and e.certified for e in r.embeddings)


def test_one_jet_verdict():
    r = crsym.analyze("|z1|^4 + Re(z1*conj(z1)^3)")
    assert r.one_jet_determined
    assert r.verdict == "automorphisms determined by 1-jets"


def test_degenerate():
    r = crsym.analyze("|z1*z2|^2")
    assert r.status == "degenerate"


def test_json_round_trip():
    r = crsym.analyze("|z1|^2 + |z2|^4")
    text = r.to_json()
    assert json.loads(text)["schema_version"] == crsym.SCHEMA_VERSION
    assert crsym.report_from_json(text) == r


def test_errors_carry_kind():
    with pytest.raises(crsym.CrsymError) as info:
        crsym.analyze("Re(z1^2)")
    assert info.value.args[1] == "HasPluriharmonicTerms"
    with pytest.raises(ValueError):
        crsym.analyze("z1 +")


def test_helpers():
    assert crsym.lemtub_coefficients(2) == ["-1/2", "3/2"]
    assert ["1/4", "1/4"] in crsym.infer_weights("Re(z1*conj(z2)^3)")
    assert crsym.parse_polynomial("|z1|^2") == "z1*conj(z1)"
    r = crsym.analyze("x1^2 + |z2|^4", strip_pluriharmonic=True, weights="1/2, 1/4")
    assert r.nc_case == "M2Balanced"
