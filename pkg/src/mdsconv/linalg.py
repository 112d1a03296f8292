"""Dense linear algebra over GF(q) and polynomial matrices over GF(q)[D].

Constant matrices are int64 numpy arrays paired with a FieldSpec.  Polynomial
matrices are PolyMat objects holding a coefficient stack of shape (m+1, k, n).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import poly
from .errors import BudgetExceeded, FieldMismatch, NotBasic, RankDeficient
from .galois import ExtensionEmbedding, FieldSpec, make_embedding, make_field

MINOR_LIMIT = 10**7


# ---------------------------------------------------------------- constant matrices

def rref(F: FieldSpec, M) -> tuple[np.ndarray, int, list[int]]:
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r] = F.mul(R[r], F.inv(lead))
        col = R[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            R[others] = F.sub(R[others], F.mul(col[others, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: FieldSpec, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return rref(F, M)[1]


def nullspace(F: FieldSpec, M) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, r, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, pc in enumerate(piv):
            out[i, pc] = F.neg(int(R[j, f]))
    return out


def left_nullspace(F: FieldSpec, M) -> np.ndarray:
    return nullspace(F, np.asarray(M).T)


def solve(F: FieldSpec, A, b) -> np.ndarray | None:
    """One solution x of x A = b (row-vector convention), or None."""
    A = np.asarray(A, dtype=np.int64)
    aug = np.concatenate([A.T, np.asarray(b, dtype=np.int64).reshape(-1, 1)], axis=1)
    R, r, piv = rref(F, aug)
    if piv and piv[-1] == A.shape[0]:
        return None
    x = np.zeros(A.shape[0], dtype=np.int64)
    for j, pc in enumerate(piv):
        x[pc] = R[j, -1]
    return x


def det(F: FieldSpec, M) -> int:
    return int(batch_det(F, np.asarray(M, dtype=np.int64)[None])[0])


def batch_det(F: FieldSpec, mats) -> np.ndarray:
    """Determinants of a stack of square matrices, shape (B, r, r)."""
    M = np.array(mats, dtype=np.int64, copy=True)
    B, r, _ = M.shape
    out = np.ones(B, dtype=np.int64)
    alive = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(r):
        sub = M[:, c:, c] != 0
        has = sub.any(axis=1)
        alive &= has
        piv = c + np.argmax(sub, axis=1)
        swap = piv != c
        if np.any(swap):
            rows_c = M[idx, c].copy()
            M[idx, c] = M[idx, piv]
            M[idx, piv] = rows_c
            if F.p != 2:
                out = np.where(swap, F.neg(out), out)
        pv = M[:, c, c]
        out = F.mul(out, pv)
        if c + 1 < r:
            safe = np.where(pv == 0, 1, pv)
            factor = F.mul(M[:, c + 1:, c], F.inv(safe)[:, None])
            M[:, c + 1:, :] = F.sub(M[:, c + 1:, :], F.mul(factor[:, :, None], M[:, c, None, :]))
    return np.where(alive, out, 0)


def batch_nonsingular(F: FieldSpec, mats) -> np.ndarray:
    return batch_det(F, mats) != 0


def independent_rows(F: FieldSpec, M) -> list[int]:
    """Indices of rows kept when dependent rows are dropped scanning top-down."""
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return []
    return rref(F, M.T)[2]


# ---------------------------------------------------------------- basis expansion

@dataclass
class ExpandedMatrix:
    """Parity-check matrix over the base field after expansion and dependent-row removal."""

    field: FieldSpec
    data: np.ndarray
    labels: list[tuple[int, int]]  # (source row, basis coordinate) of every kept row
    dropped: list[tuple[int, int]]

    @property
    def rank(self) -> int:
        return self.data.shape[0]

    def rows_from(self, sources) -> np.ndarray:
        sources = set(sources)
        sel = [i for i, (s, _) in enumerate(self.labels) if s in sources]
        return self.data[sel]


def expand_over_basis(M, emb: ExtensionEmbedding, drop_dependent: bool = True) -> ExpandedMatrix:
    M = np.asarray(M, dtype=np.int64)
    if M.size and (M.min() < 0 or M.max() >= emb.ext.q):
        raise FieldMismatch("matrix entries are not elements of the extension field")
    coords = emb.coords(M)  # rows x cols x l
    rows, labels = [], []
    for i in range(M.shape[0]):
        for j in range(emb.l):
            rows.append(coords[i, :, j])
            labels.append((i, j))
    data = np.array(rows, dtype=np.int64).reshape(len(rows), M.shape[1])
    dropped: list[tuple[int, int]] = []
    if drop_dependent:
        keep = independent_rows(emb.base, data)
        dropped = [labels[i] for i in range(len(labels)) if i not in set(keep)]
        data = data[keep]
        labels = [labels[i] for i in keep]
    return ExpandedMatrix(emb.base, data, labels, dropped)


# ---------------------------------------------------------------- polynomial matrices

@dataclass(frozen=True, eq=False)
class PolyMat:
    field: FieldSpec
    coeffs: np.ndarray  # (m+1, rows, cols); coeffs[l] is the coefficient of D^l

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64)
        if c.ndim == 2:
            c = c[None]
        while c.shape[0] > 1 and not c[-1].any():
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, F: FieldSpec, M) -> "PolyMat":
        return cls(F, np.asarray(M, dtype=np.int64)[None])

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def row_degrees(self) -> list[int]:
        out = []
        for i in range(self.rows):
            nz = np.flatnonzero(self.coeffs[:, i, :].any(axis=1))
            out.append(int(nz[-1]) if nz.size else -1)
        return out

    @property
    def degree(self) -> int:
        return sum(max(d, 0) for d in self.row_degrees)

    @property
    def memory(self) -> int:
        return max([0] + self.row_degrees)

    def has_zero_row(self) -> bool:
        return any(d < 0 for d in self.row_degrees)

    def leading_matrix(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, d in enumerate(self.row_degrees):
            if d >= 0:
                out[i] = self.coeffs[d, i]
        return out

    def evaluate(self, x: int) -> np.ndarray:
        F = self.field
        acc = np.zeros((self.rows, self.cols), dtype=np.int64)
        for l in range(self.coeffs.shape[0] - 1, -1, -1):
            acc = F.add(F.mul(acc, x), self.coeffs[l])
        return acc

    def entry(self, i: int, j: int) -> list[int]:
        return poly.trim(self.coeffs[:, i, j])

    def map(self, fn) -> "PolyMat":
        return PolyMat(self.field, fn(self.coeffs))

    def rows_subset(self, idx) -> "PolyMat":
        return PolyMat(self.field, self.coeffs[:, list(idx), :])

    def __eq__(self, other):
        return (
            isinstance(other, PolyMat)
            and self.field == other.field
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        return f"PolyMat({self.rows}x{self.cols}, memory={self.memory}, over {self.field!r})"


def stack_polymats(F: FieldSpec, mats: list[PolyMat]) -> PolyMat:
    L = max(m.coeffs.shape[0] for m in mats)
    parts = []
    for m in mats:
        pad = np.zeros((L - m.coeffs.shape[0],) + m.coeffs.shape[1:], dtype=np.int64)
        parts.append(np.concatenate([m.coeffs, pad], axis=0))
    return PolyMat(F, np.concatenate(parts, axis=1))


def laurent_product(A: PolyMat, B: PolyMat) -> tuple[int, np.ndarray]:
    """A(D) B(D^-1)^T as (lowest exponent, coefficient stack)."""
    F = A.field
    if B.field != F:
        raise FieldMismatch("polynomial matrices over different fields")
    La, Lb = A.coeffs.shape[0], B.coeffs.shape[0]
    out = np.zeros((La + Lb - 1, A.rows, B.rows), dtype=np.int64)
    for l in range(La):
        for s in range(Lb):
            if A.coeffs[l].any() and B.coeffs[s].any():
                d = l - s + Lb - 1
                out[d] = F.add(out[d], F.matmul(A.coeffs[l], B.coeffs[s].T))
    return -(Lb - 1), out


def orthogonal(A: PolyMat, B: PolyMat) -> bool:
    return not laurent_product(A, B)[1].any()


def _evaluation_field(F: FieldSpec, degbound: int) -> tuple[FieldSpec, ExtensionEmbedding | None]:
    if F.q > degbound:
        return F, None
    e = 2
    while F.q**e <= degbound:
        e += 1
    ext = make_field(F.p, F.t * e)
    return ext, make_embedding(F, ext)


def _lift(G: PolyMat, emb: ExtensionEmbedding | None) -> np.ndarray:
    return G.coeffs if emb is None else emb.embed(G.coeffs)


def _evaluations(K: FieldSpec, coeffs: np.ndarray, npts: int) -> np.ndarray:
    pts = np.arange(npts, dtype=np.int64)
    out = np.zeros((npts,) + coeffs.shape[1:], dtype=np.int64)
    for l in range(coeffs.shape[0] - 1, -1, -1):
        out = K.add(K.mul(out, pts[:, None, None]), coeffs[l][None])
    return out


def _interpolation_matrix(K: FieldSpec, npts: int) -> np.ndarray:
    V = np.array([[K.pow(x, j) for j in range(npts)] for x in range(npts)], dtype=np.int64)
    aug = np.concatenate([V, np.eye(npts, dtype=np.int64)], axis=1)
    R, r, _ = rref(K, aug)
    assert r == npts
    return R[:, npts:]


def full_row_rank(G: PolyMat) -> bool:
    """Exact rank test over GF(q)(D): evaluate at more points than any minor's degree."""
    if G.rows == 0:
        return True
    if rank(G.field, G.leading_matrix()) == G.rows:
        return True
    degbound = G.degree
    K, emb = _evaluation_field(G.field, degbound)
    vals = _evaluations(K, _lift(G, emb), degbound + 1)
    return any(rank(K, v) == G.rows for v in vals)


def minor_polynomials(G: PolyMat, limit: int = MINOR_LIMIT, chunk: int = 512):
    """Yield (columns, det polynomial) for every k x k minor in lexicographic order."""
    k, n = G.rows, G.cols
    degbound = G.degree
    K, emb = _evaluation_field(G.field, degbound)
    npts = degbound + 1
    vals = _evaluations(K, _lift(G, emb), npts)  # npts x k x n
    Vinv = _interpolation_matrix(K, npts)
    it = itertools.combinations(range(n), k)
    seen, size = 0, 2
    while True:
        # small batches first: callers usually stop after a few minors
        cols = list(itertools.islice(it, size))
        size = min(chunk, 2 * size)
        if not cols:
            return
        seen += len(cols)
        if seen > limit + chunk:
            raise BudgetExceeded(f"more than {limit} minors needed")
        C = np.array(cols, dtype=np.int64)
        sub = vals[:, :, C]  # npts x k x B x k
        sub = np.moveaxis(sub, 2, 0).reshape(len(cols) * npts, k, k)
        dets = batch_det(K, sub).reshape(len(cols), npts)
        coeffs = K.matmul(dets, Vinv.T)
        if emb is not None:
            coeffs = emb.project(coeffs)
        for c, cf in zip(cols, coeffs):
            yield c, poly.trim(cf)


def minor_gcd_is_unit(G: PolyMat, limit: int = MINOR_LIMIT) -> bool:
    """True iff the gcd of all full-size minors is a nonzero constant (G is basic)."""
    if G.rows == 0:
        return True
    if G.rows > G.cols:
        raise RankDeficient("more rows than columns")
    F = G.field
    g: list[int] | None = None
    for _, d in minor_polynomials(G, limit=limit):
        if not d:
            continue
        g = poly.monic(F, d) if g is None else poly.gcd(F, g, d)
        if len(g) == 1:
            return True
    if g is None:
        raise RankDeficient("all full-size minors vanish")
    return False


def is_row_reduced(G: PolyMat) -> bool:
    if G.rows == 0:
        return True
    return rank(G.field, G.leading_matrix()) == G.rows


def _sylvester(G: PolyMat, delta: int) -> np.ndarray:
    k, n = G.rows, G.cols
    degs = G.row_degrees
    blocks = []
    for j in range(k):
        for d in range(-delta, degs[j] + 1):
            row = np.zeros((delta + 1, n), dtype=np.int64)
            for s in range(delta + 1):
                l = d + s
                if 0 <= l <= degs[j]:
                    row[s] = G.coeffs[l, j]
            blocks.append(row.reshape(-1))
    return np.array(blocks, dtype=np.int64).reshape(len(blocks), n * (delta + 1))


def poly_kernel_basis(G: PolyMat, max_degree: int | None = None) -> PolyMat:
    """Minimal polynomial basis of {h : G(D) h(D^-1)^T = 0}, built degree by degree.

    At degree delta every kernel vector of degree <= delta is computed from a block
    Toeplitz system; a new basis vector is accepted only if its top coefficient is
    independent of the top coefficients already chosen, which yields a row-reduced
    (hence minimal and basic) basis.
    """
    F = G.field
    k, n = G.rows, G.cols
    if G.has_zero_row():
        raise RankDeficient("generator has a zero row")
    if not full_row_rank(G):
        raise RankDeficient("generator is not of full row rank")
    target = n - k
    if target == 0:
        return PolyMat(F, np.zeros((1, 0, n), dtype=np.int64))
    if k == 0:
        return PolyMat.constant(F, np.eye(n, dtype=np.int64))
    if max_degree is None:
        max_degree = G.degree
    chosen: list[np.ndarray] = []
    tops = np.zeros((0, n), dtype=np.int64)
    for delta in range(max_degree + 1):
        N = nullspace(F, _sylvester(G, delta))
        if N.shape[0] == 0:
            continue
        cand = N.reshape(-1, delta + 1, n)
        new = _extend_rows(F, tops, cand[:, delta, :])
        for i in new:
            chosen.append(cand[i])
            tops = np.vstack([tops, cand[i, delta][None]])
            if len(chosen) == target:
                break
        if len(chosen) == target:
            break
    if len(chosen) < target:
        raise NotBasic("kernel basis not found within the degree bound; generator is not basic")
    L = max(c.shape[0] for c in chosen)
    coeffs = np.zeros((L, target, n), dtype=np.int64)
    for i, c in enumerate(chosen):
        coeffs[: c.shape[0], i] = c
    H = PolyMat(F, coeffs)
    if not orthogonal(G, H):
        raise AssertionError("kernel basis fails the orthogonality identity")
    if is_row_reduced(G) and H.degree != G.degree:
        raise NotBasic(f"dual degree {H.degree} differs from generator degree {G.degree}")
    return H


def _extend_rows(F: FieldSpec, base: np.ndarray, cand: np.ndarray) -> list[int]:
    """Indices of rows of cand that extend span(base), scanning top-down."""
    if base.shape[0]:
        R, r, piv = rref(F, base)
        cand = F.sub(cand, F.matmul(cand[:, piv], R[:r]))
    return independent_rows(F, cand)


def is_zero_polymat(G: PolyMat) -> bool:
    return not G.coeffs.any()


def max_minor_count(n: int, k: int) -> int:
    return comb(n, k)
