import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdsconv.certificates import DistanceCertificate, lower_bound
from mdsconv.convolution import ConvCode
from mdsconv.cyclic import all_cosets, bch_code, bch_parity_matrix, coset
from mdsconv.errors import NotCosetClosed, NotHermitianSelfOrthogonal, ParityViolation, UncertifiedDistance
from mdsconv.families import FamilyRequest, build
from mdsconv.galois import make_embedding, make_field
from mdsconv.linalg import PolyMat, rank
from mdsconv.quantum import (
    StabilizerCode,
    hermitian_dual_containing,
    is_quantum_mds,
    is_symplectic_self_orthogonal,
    quantum_singleton_bound,
    stabilizer_from_hermitian,
    stabilizer_matrix,
    symplectic_form,
)

from helpers import split_code


def _emb(q):
    t = q.bit_length() - 1
    return make_embedding(make_field(2, t), make_field(2, 2 * t))


def test_defining_set_examples():
    assert hermitian_dual_containing(set(), 65, 64)
    assert hermitian_dual_containing({30, 35, 31, 34, 32, 33}, 65, 64)
    assert not hermitian_dual_containing(set(range(1, 65)), 65, 64)
    with pytest.raises(NotCosetClosed):
        hermitian_dual_containing({30}, 65, 64)


@pytest.mark.parametrize("q", [4, 8, 16])
def test_family_defining_sets_dual_containing(q):
    n, a = q * q + 1, q * q // 2
    for i in range(q // 2):
        Z = set()
        for s in range(a - i, a + 1):
            Z |= set(coset(n, q * q, s).elements)
        assert hermitian_dual_containing(Z, n, q * q)


def _matrix_dual_containing(E, emb, n, reps):
    """C^{perp_h} inside C  iff  H conj(H)^T = 0 for the parity matrix H of C."""
    if not reps:
        return True
    H = bch_parity_matrix(bch_code(n, E, reps)).data
    return not E.matmul(H, emb.frobenius(H).T).any()


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_defining_set_matches_matrix_check(data):
    q, n = data.draw(st.sampled_from([(2, 5), (4, 17), (2, 3)]))
    emb = _emb(q)
    E = emb.ext
    reps = [c.s for c in all_cosets(n, q * q)]
    chosen = data.draw(st.lists(st.sampled_from(reps), unique=True, max_size=len(reps) - 1))
    Z = set()
    for s in chosen:
        Z |= set(coset(n, q * q, s).elements)
    assert hermitian_dual_containing(Z, n, q * q) == _matrix_dual_containing(E, emb, n, chosen)


def test_quantum_singleton_examples():
    assert quantum_singleton_bound(9, 5, 0) == 3
    assert quantum_singleton_bound(65, 57, 2) == 7 == 4 * (4 // 122 + 1) + 3
    assert quantum_singleton_bound(257, 249, 2) == 7
    with pytest.raises(ParityViolation):
        quantum_singleton_bound(9, 4, 1)


def _code(d, kind="sandwich"):
    S = PolyMat(make_field(2, 3), np.zeros((1, 8, 130), dtype=np.int64))
    return StabilizerCode(65, 57, 1, 2, 8, S, DistanceCertificate(d, kind, d, d))


def test_is_quantum_mds_examples():
    assert is_quantum_mds(_code(7))
    assert not is_quantum_mds(_code(6))
    code = _code(7)
    with pytest.raises(UncertifiedDistance):
        is_quantum_mds(StabilizerCode(65, 57, 1, 2, 8, code.S, lower_bound(7)))
    with pytest.raises(UncertifiedDistance):
        is_quantum_mds(StabilizerCode(65, 57, 1, 2, 8, code.S, None))


def test_zero_code_gives_trivial_stabilizer():
    emb = _emb(2)
    V = ConvCode(emb.ext, PolyMat(emb.ext, np.zeros((1, 0, 5), dtype=np.int64)))
    S = stabilizer_from_hermitian(V, emb)
    assert (S.n, S.k) == (5, 5) and S.S.rows == 0


def test_stabilizer_q8_family():
    emb = _emb(8)
    V = split_code(emb.ext, 65, [32, 31, 30], (4, 2))
    S = stabilizer_from_hermitian(V, emb)
    assert S.params() == (65, 57, 1, 2) and S.q == 8
    assert is_symplectic_self_orthogonal(S.S, 65)
    assert S.X.cols == S.Z.cols == 65 and S.S.rows == 8
    # X + w Z rebuilds g_j, the odd rows are w g_j
    coords = np.stack([S.X.coeffs, S.Z.coeffs], axis=-1)
    back = emb.from_coords(coords)
    assert np.array_equal(back[:, 0::2], V.G.coeffs)
    assert np.array_equal(back[:, 1::2], emb.ext.mul(V.G.coeffs, emb.basis[1]))


def test_stabilizer_requires_self_orthogonality():
    emb = _emb(2)
    E = emb.ext
    V = ConvCode(E, PolyMat.constant(E, np.array([[1, 0, 0]])))
    with pytest.raises(NotHermitianSelfOrthogonal):
        stabilizer_from_hermitian(V, emb)
    # the matrix itself is not symplectic self-orthogonal either
    assert symplectic_form(stabilizer_matrix(V, emb), 3).any()


def test_symplectic_detects_asymmetry():
    F = make_field(2, 1)
    # X = (1, 0), Z = (1, 0) and X = (1, 0), Z = (0, 0) do not commute with each other
    S = PolyMat.constant(F, np.array([[1, 0, 1, 0], [1, 0, 0, 0]]))
    assert not is_symplectic_self_orthogonal(S, 2)
    S = PolyMat.constant(F, np.array([[1, 1, 0, 0], [0, 0, 1, 1]]))
    assert is_symplectic_self_orthogonal(S, 2)


def test_q16_table_row():
    rec = build(FamilyRequest("thm_main1", 16, 3), exact=False)
    st_ = rec.stabilizer
    assert st_.params() == (257, 245, 1, 2) and st_.d_f.value == 9
    assert is_quantum_mds(st_)
    assert rank(st_.S.field, st_.S.coeffs[0]) == 2 * 6
