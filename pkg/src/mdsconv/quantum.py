"""Convolutional stabilizer codes from Hermitian self-orthogonal codes over GF(q^2)."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Optional

import numpy as np

from .certificates import DistanceCertificate
from .convolution import ConvCode, _check_quadratic, is_self_orthogonal
from .cyclic import coset
from .errors import (
    NotCosetClosed,
    NotHermitianSelfOrthogonal,
    ParityViolation,
    SymplecticCheckFailed,
    UncertifiedDistance,
)
from .galois import ExtensionEmbedding
from .linalg import PolyMat, full_row_rank, laurent_product


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    n: int
    k: int
    m: int
    gamma: int
    q: int
    S: PolyMat  # (n-k) x 2n over GF(q), columns (X | Z)
    d_f: Optional[DistanceCertificate] = None

    @property
    def X(self) -> PolyMat:
        return PolyMat(self.S.field, self.S.coeffs[:, :, : self.n])

    @property
    def Z(self) -> PolyMat:
        return PolyMat(self.S.field, self.S.coeffs[:, :, self.n:])

    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.m, self.gamma)

    def __repr__(self):
        d = "?" if self.d_f is None else self.d_f.value
        return f"[({self.n}, {self.k}, {self.m}; {self.gamma}, {d})]_{self.q}"


def hermitian_dual_containing(Z, n: int, q2: int) -> bool:
    """Defining-set test for C^{perp_h} inside C over GF(q^2): Z and -qZ are disjoint."""
    q = isqrt(q2)
    if q * q != q2:
        raise ValueError(f"{q2} is not a square")
    Z = {z % n for z in Z}
    for z in Z:
        if not set(coset(n, q2, z).elements) <= Z:
            raise NotCosetClosed(f"defining set is not closed under multiplication by {q2}")
    return not (Z & {(-q * z) % n for z in Z})


def symplectic_form(S: PolyMat, n: int) -> np.ndarray:
    """Coefficients of X(D) Z(D^-1)^T - Z(D) X(D^-1)^T."""
    F = S.field
    X = PolyMat(F, S.coeffs[:, :, :n])
    Z = PolyMat(F, S.coeffs[:, :, n:])
    _, a = laurent_product(X, Z)
    _, b = laurent_product(Z, X)
    return F.sub(a, b)


def is_symplectic_self_orthogonal(S: PolyMat, n: int) -> bool:
    return not symplectic_form(S, n).any()


def stabilizer_matrix(V: ConvCode, emb: ExtensionEmbedding) -> PolyMat:
    """Rows g_j and w*g_j for every row of G_V, split into basis coordinates (X | Z)."""
    _check_quadratic(V.field, emb)
    E = V.field
    w = emb.basis[1]
    C = V.G.coeffs  # L x k x n over GF(q^2)
    rows = np.concatenate([C, E.mul(C, w)], axis=1)
    # interleave so that g_j and w*g_j are adjacent
    order = np.ravel(np.column_stack([np.arange(V.k), V.k + np.arange(V.k)]))
    rows = rows[:, order, :]
    coords = emb.coords(rows)  # L x 2k x n x 2
    S = np.concatenate([coords[..., 0], coords[..., 1]], axis=2)
    return PolyMat(emb.base, S)


def stabilizer_from_hermitian(V: ConvCode, emb: ExtensionEmbedding,
                              d_f: DistanceCertificate | None = None) -> StabilizerCode:
    if not is_self_orthogonal(V, "hermitian", emb):
        raise NotHermitianSelfOrthogonal("V is not contained in its Hermitian dual")
    S = stabilizer_matrix(V, emb)
    if not is_symplectic_self_orthogonal(S, V.n):
        raise SymplecticCheckFailed("X Z^T - Z X^T does not vanish")
    if not full_row_rank(S):
        raise SymplecticCheckFailed("stabilizer matrix is rank deficient")
    return StabilizerCode(
        n=V.n,
        k=V.n - 2 * V.k,
        m=S.memory,
        gamma=V.gamma,
        q=emb.base.q,
        S=S,
        d_f=d_f,
    )


def quantum_singleton_bound(n: int, k: int, gamma: int) -> int:
    if (n - k) % 2:
        raise ParityViolation(f"n - k = {n - k} is odd")
    return (n - k) // 2 * ((2 * gamma) // (n + k) + 1) + gamma + 1


def is_quantum_mds(code: StabilizerCode) -> bool:
    if code.d_f is None or not code.d_f.exact:
        raise UncertifiedDistance("quantum MDS needs an exact free-distance certificate")
    return code.d_f.value == quantum_singleton_bound(code.n, code.k, code.gamma)
