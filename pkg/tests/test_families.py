import itertools

import pytest

from mdsconv.errors import IndexOutOfRange
from mdsconv.families import (
    FAMILIES,
    FamilyRequest,
    build,
    build_or_error,
    certify_block,
    enumerate_family,
    family_requests,
    index_bounds,
    validate_q,
)
from mdsconv.convolution import singleton_bound
from mdsconv.cyclic import bch_code, bch_parity_matrix
from mdsconv.galois import make_field

from oracles import Oracle


@pytest.mark.parametrize("family,q", [("thm_main", 6), ("thm_main", 4), ("thm_main", 9), ("thm_main1", 12),
                                      ("thm_mainI", 8), ("thm_mainI", 7), ("thm_mainII", 15), ("nope", 8)])
def test_invalid_q(family, q):
    with pytest.raises(IndexOutOfRange):
        validate_q(family, q)


def test_q_messages():
    with pytest.raises(IndexOutOfRange, match="q must be 2\\^t, t ≥ 3"):
        validate_q("thm_main", 6)
    with pytest.raises(IndexOutOfRange, match="odd prime"):
        validate_q("thm_mainI", 8)


def test_index_validation():
    with pytest.raises(IndexOutOfRange):
        FamilyRequest("thm_main", 8, 4).validate()
    with pytest.raises(IndexOutOfRange):
        FamilyRequest("thm_main", 8).validate()
    with pytest.raises(IndexOutOfRange):
        FamilyRequest("thm_mainIII", 9, r=1, m=1).validate()
    with pytest.raises(IndexOutOfRange):
        FamilyRequest("thm_mainIII", 9, r=2, m=3).validate()
    assert FamilyRequest("thm_mainIII", 9, r=1, m=2).validate().n == 10


def test_ranges():
    assert index_bounds("thm_main", 8) == (1, 3)
    assert index_bounds("thm_main1", 8) == (2, 2)
    assert index_bounds("thm_main1", 16) == (2, 6)
    assert index_bounds("thm_mainI", 9) == (2, 4)
    assert index_bounds("thm_mainII", 9) == (3, 4)
    assert [r.i for r in family_requests("thm_main", 8)] == [1, 2, 3]
    assert [r.i for r in family_requests("thm_mainI", 9)] == [2, 3, 4]
    assert [(r.r, r.m) for r in family_requests("thm_mainIII", 9)] == [(1, 2), (1, 3), (2, 2)]


def test_request_geometry():
    assert FamilyRequest("thm_main", 16, 2).a == 8
    assert FamilyRequest("thm_main1", 8, 2).n == 65
    assert FamilyRequest("thm_main1", 8, 2).a == 32
    assert FamilyRequest("thm_mainI", 9, 2).a == 5


def test_example_q16():
    rec = build(FamilyRequest("thm_main", 16, 2))
    assert rec.status == "ok"
    assert rec.dual.params() == (17, 13, 2, 1) and rec.dual.d_f.value == 7
    assert rec.V.params() == (17, 4, 2, 1)
    assert rec.verdicts["mds"] is True
    assert rec.row() == {"family": "thm_main", "q": 16, "n": 17, "k": 13, "gamma": 2, "memory": 1,
                         "d_f": 7, "certificate": "exact", "mds": "true"}
    assert {b: rec.blocks[b].distance.value for b in rec.blocks} == {"C2": 7, "C1": 5, "C": 3}
    # oracle for C: a 2-row parity matrix gives d = 3 iff no two columns are proportional
    H = rec.blocks["C"].H
    orc = Oracle(rec.F)
    for x, y in itertools.combinations(range(17), 2):
        assert orc.mul[H[0, x], H[1, y]] != orc.mul[H[0, y], H[1, x]]
    assert rec.verdicts["self_orthogonal"] is False


def test_main_iii_matches_main_ii():
    a = build(FamilyRequest("thm_mainII", 9, 3))
    b = build(FamilyRequest("thm_mainIII", 9, r=1, m=2))
    assert a.V.params() == b.V.params() == (10, 3, 4, 2)
    assert a.V.G == b.V.G
    assert a.V.d_f.value == b.V.d_f.value >= 4
    assert a.theorem_bound.value == b.theorem_bound.value == 4


@pytest.mark.parametrize("family,q,i,params", [
    ("thm_main", 8, 1, (9, 7, 2, 1)),
    ("thm_main", 8, 3, (9, 3, 2, 1)),
    ("thm_mainI", 9, 2, (10, 7, 2, 1)),
    ("thm_mainI", 9, 4, (10, 3, 2, 1)),
])
def test_mds_duals(family, q, i, params):
    rec = build(FamilyRequest(family, q, i))
    assert rec.dual.params() == params
    assert rec.dual.d_f.value == singleton_bound(*params[:3])
    assert rec.verdicts["mds"] is True


@pytest.mark.parametrize("i", [1, 2, 3])
def test_cor_c_lower_bounds(i):
    rec = build(FamilyRequest("cor_c", 8, i))
    assert rec.claimed == "V" and rec.V.k == 2 * i
    assert rec.V.d_f.kind == "exact-trellis" and rec.V.d_f.value >= 9 - 2 * i - 1
    assert rec.V.d_f.witness is not None


def test_no_search_keeps_sandwich():
    rec = build(FamilyRequest("thm_main", 8, 2), exact=False)
    assert rec.dual.d_f.kind == "sandwich" and rec.dual.d_f.value == 7
    rec = build(FamilyRequest("thm_mainII", 9, 4), exact=False)
    assert rec.V.d_f.kind == "lower-bound" and rec.row()["mds"] == "unknown"


def test_enumerate_counts():
    assert len(enumerate_family("thm_main", [8], exact=False)) == 3
    assert len(enumerate_family("thm_main1", [8], exact=False)) == 1
    recs = enumerate_family("thm_mainI", [9], exact=False)
    assert [r.request.i for r in recs] == [2, 3, 4] and all(r.status == "ok" for r in recs)


def test_enumerate_invalid_q_is_error_record():
    recs = enumerate_family("thm_main", [6, 8], exact=False)
    assert recs[0].status == "error" and "q must be" in recs[0].error
    assert all(r.status == "ok" for r in recs[1:])


def test_build_or_error():
    rec = build_or_error(FamilyRequest("thm_main", 8, 9))
    assert rec.status == "error" and rec.row()["certificate"] == "error"


def test_certify_block_kinds():
    F = make_field(2, 4)
    spec = bch_code(17, F, [8, 7, 6])
    H = bch_parity_matrix(spec).data
    assert certify_block(F, spec, H).kind == "mds-minors"
    assert certify_block(F, spec, H, minor_limit=1).kind == "bch-singleton"
    F9 = make_field(3, 2)
    spec = bch_code(10, F9, [4])
    H = bch_parity_matrix(spec).data
    c = certify_block(F9, spec, H)
    assert c.value == 2 and c.kind == "exhaustive"


def test_every_family_has_requests():
    qs = {"thm_main": 8, "cor_c": 8, "thm_main1": 8, "thm_mainI": 9, "thm_mainII": 9, "thm_mainIII": 9}
    for fam in FAMILIES:
        assert family_requests(fam, qs[fam])
