import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdsconv.families import FamilyRequest, build
from mdsconv.galois import make_field
from mdsconv.linalg import PolyMat
from mdsconv.serialize import (
    cert_from_dict,
    cert_to_dict,
    conv_from_dict,
    conv_to_dict,
    dumps,
    matrix_from_text,
    matrix_to_text,
    record_to_dict,
    stabilizer_from_dict,
)


def test_matrix_text_format():
    F = make_field(2, 2)
    C = np.array([[[1, 0], [2, 3]], [[0, 0], [1, 0]]])
    text = matrix_to_text(PolyMat(F, C))
    assert text == "1, 0\n[2 1], 3"
    assert matrix_from_text(text, F) == PolyMat(F, C)


@given(st.sampled_from([(2, 1), (3, 1), (2, 3)]), st.integers(1, 3), st.integers(1, 4), st.integers(1, 5), st.data())
@settings(max_examples=60, deadline=None)
def test_matrix_text_round_trip(pt, L, k, n, data):
    F = make_field(*pt)
    vals = data.draw(st.lists(st.integers(0, F.q - 1), min_size=L * k * n, max_size=L * k * n))
    M = PolyMat(F, np.array(vals, dtype=np.int64).reshape(L, k, n))
    assert matrix_from_text(matrix_to_text(M), F) == M


def test_matrix_text_errors():
    F = make_field(2, 1)
    with pytest.raises(ValueError):
        matrix_from_text("1, 0\n1", F)
    with pytest.raises(ValueError):
        matrix_from_text("1, 2", F)
    with pytest.raises(ValueError):
        matrix_from_text("", F)


def test_dumps_layout():
    d = {"a": 1, "quantum": {"n": 65, "k": 57}}
    assert dumps(d) == '{"a": 1, "quantum": {"n":65,"k":57}}'
    assert json.loads(dumps(d)) == d


@pytest.fixture(scope="module")
def rec():
    return build(FamilyRequest("thm_main", 8, 2))


def test_record_json_round_trip(rec):
    d = record_to_dict(rec)
    back = json.loads(dumps(d))
    assert back == json.loads(json.dumps(d))
    F = rec.F
    V = conv_from_dict(back["V"], F)
    W = conv_from_dict(back["dual"], F)
    assert V.G == rec.V.G and W.G == rec.dual.G
    assert W.d_f.value == rec.dual.d_f.value and W.d_f.kind == rec.dual.d_f.kind
    assert np.array_equal(W.d_f.witness, rec.dual.d_f.witness)
    assert conv_to_dict(W) == back["dual"]
    assert back["row"] == rec.row()


def test_cert_round_trip(rec):
    c = rec.dual.d_f
    back = cert_from_dict(json.loads(dumps(cert_to_dict(c))), rec.F)
    assert (back.value, back.kind, back.lower, back.upper) == (c.value, c.kind, c.lower, c.upper)
    assert cert_from_dict(None, rec.F) is None


def test_stabilizer_round_trip():
    r = build(FamilyRequest("thm_main1", 8, 2), exact=False)
    d = json.loads(dumps(record_to_dict(r)))
    assert d["quantum"] == {"n": 65, "k": 57, "m": 1, "gamma": 2, "d_f": 7}
    S = stabilizer_from_dict(d["stabilizer"], r.emb.base)
    assert S.S == r.stabilizer.S and S.params() == r.stabilizer.params()


def test_error_record():
    from mdsconv.families import build_or_error
    d = record_to_dict(build_or_error(FamilyRequest("thm_main", 8, 7)))
    assert d["status"] == "error" and "IndexOutOfRange" in d["error"]
