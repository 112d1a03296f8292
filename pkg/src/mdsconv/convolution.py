"""Convolutional codes from split parity-check matrices, their duals and Singleton bounds."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .certificates import DistanceCertificate
from .errors import FieldMismatch, FieldNotQuadratic, NotReducedBasic, RankConditionViolated, UncertifiedDistance
from .galois import ExtensionEmbedding, FieldSpec
from .linalg import PolyMat, is_row_reduced, laurent_product, minor_gcd_is_unit, orthogonal, poly_kernel_basis, rank


@dataclass(frozen=True)
class SplitPlan:
    field: FieldSpec
    H: np.ndarray
    boundaries: tuple[int, ...]

    def blocks(self) -> list[np.ndarray]:
        H = np.asarray(self.H, dtype=np.int64)
        if sum(self.boundaries) != H.shape[0]:
            raise RankConditionViolated(f"boundaries {self.boundaries} do not partition {H.shape[0]} rows")
        out, start = [], 0
        for b in self.boundaries:
            out.append(H[start:start + b])
            start += b
        return out


@dataclass(frozen=True, eq=False)
class ConvCode:
    field: FieldSpec
    G: PolyMat
    d_f: Optional[DistanceCertificate] = None

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def gamma(self) -> int:
        return self.G.degree

    @property
    def memory(self) -> int:
        return self.G.memory

    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.gamma, self.memory)

    def with_distance(self, cert: DistanceCertificate) -> "ConvCode":
        return replace(self, d_f=cert)

    def __repr__(self):
        d = "?" if self.d_f is None else self.d_f.value
        return f"({self.n}, {self.k}, {self.gamma}; {self.memory}, {d})_{self.field.q}"


def split_and_lift(plan: SplitPlan, check: bool = True) -> ConvCode:
    """G(D) = H_0 + H_1 D + ... + H_m D^m with every block padded to rank(H_0) rows."""
    F = plan.field
    blocks = plan.blocks()
    kappa = blocks[0].shape[0]
    if rank(F, blocks[0]) != kappa:
        raise RankConditionViolated("H_0 has dependent rows")
    n = np.asarray(plan.H).shape[1]
    coeffs = np.zeros((len(blocks), kappa, n), dtype=np.int64)
    for i, B in enumerate(blocks):
        if B.shape[0] > kappa or rank(F, B) > kappa:
            raise RankConditionViolated(f"block {i} exceeds rank {kappa}")
        coeffs[i, : B.shape[0]] = B
    G = PolyMat(F, coeffs)
    if check and not (is_row_reduced(G) and minor_gcd_is_unit(G)):
        raise NotReducedBasic("split generator is not reduced basic")
    return ConvCode(F, G)


def euclidean_dual(C: ConvCode) -> ConvCode:
    H = poly_kernel_basis(C.G)
    if not orthogonal(C.G, H):
        raise AssertionError("orthogonality identity failed")
    return ConvCode(C.field, H)


def conjugate(G: PolyMat, emb: ExtensionEmbedding) -> PolyMat:
    _check_quadratic(G.field, emb)
    return PolyMat(G.field, emb.frobenius(G.coeffs))


def _check_quadratic(F: FieldSpec, emb: ExtensionEmbedding):
    if emb.l != 2:
        raise FieldNotQuadratic(f"{emb.ext} is not a quadratic extension of {emb.base}")
    if F != emb.ext:
        raise FieldNotQuadratic(f"code field {F} is not {emb.ext}")


def hermitian_dual(C: ConvCode, emb: ExtensionEmbedding) -> ConvCode:
    return euclidean_dual(ConvCode(C.field, conjugate(C.G, emb)))


def is_self_orthogonal(C: ConvCode, form: str = "euclidean", emb: ExtensionEmbedding | None = None) -> bool:
    if form == "euclidean":
        other = C.G
    elif form == "hermitian":
        if emb is None:
            raise FieldNotQuadratic("hermitian form needs a quadratic embedding")
        other = conjugate(C.G, emb)
    else:
        raise ValueError(f"unknown form {form!r}")
    return not laurent_product(C.G, other)[1].any()


def singleton_bound(n: int, k: int, gamma: int) -> int:
    if not 1 <= k <= n or gamma < 0:
        raise ValueError("need 1 <= k <= n and gamma >= 0")
    return (n - k) * (gamma // k + 1) + gamma + 1


def distance_sandwich(d_blocks, d: int) -> tuple[int, int]:
    d_blocks = list(d_blocks)
    if len(d_blocks) < 2:
        raise ValueError("need at least two block distances")
    return min(d_blocks[0] + d_blocks[-1], d), d


def is_mds(C: ConvCode) -> bool:
    if C.d_f is None or not C.d_f.exact:
        raise UncertifiedDistance("MDS needs an exact free-distance certificate")
    return C.d_f.value == singleton_bound(C.n, C.k, C.gamma)


def same_field(*codes: ConvCode) -> FieldSpec:
    F = codes[0].field
    if any(c.field != F for c in codes):
        raise FieldMismatch("codes over different fields")
    return F
