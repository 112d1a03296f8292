"""Minimum distances of block codes and free distances of convolutional codes.

Three independent routes to the free distance exist in this package:

* the generator trellis (states = past inputs of the encoder),
* the syndrome-former trellis (states = pending partial syndromes of a check matrix),
* bounded input enumeration, kept in the test oracles.

All searches are exhaustive inside explicit budgets and raise BudgetExceeded
rather than returning an unproven value.
"""
from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, replace
from math import comb

import numpy as np

from .certificates import DistanceCertificate
from .convolution import ConvCode
from .cyclic import is_cyclic_code
from .errors import BudgetExceeded, CatastrophicEncoder, InvalidCheckMatrix
from .galois import FieldSpec
from .linalg import (
    PolyMat,
    batch_det,
    full_row_rank,
    independent_rows,
    minor_gcd_is_unit,
    nullspace,
    orthogonal,
    rank,
    rref,
)

INF = 10**9


@dataclass(frozen=True)
class Budget:
    states: int = 10**6  # trellis states
    branches: int = 10**6  # merged branches per state (generator trellis)
    work: int = 2 * 10**10  # elementary comparisons in branch-metric tables
    enumeration: int = 10**8  # codewords enumerated for block distances
    minors: int = 10**7  # column subsets in MDS checks
    expansions: int = 10**6  # candidate frames generated by the syndrome trellis

    @classmethod
    def from_env(cls, override: int | None = None) -> "Budget":
        val = override
        if val is None and os.environ.get("MDSCONV_BUDGET"):
            val = int(os.environ["MDSCONV_BUDGET"])
        if val is None:
            return cls()
        s = val / 10**6
        d = cls()
        return cls(
            states=int(val),
            branches=max(1, int(d.branches * s)),
            work=max(1, int(d.work * s)),
            enumeration=max(1, int(d.enumeration * s)),
            minors=max(1, int(d.minors * s)),
            expansions=max(1, int(d.expansions * s)),
        )


DEFAULT_BUDGET = Budget()


def symbol_weight(v) -> int:
    """Number of nonzero symbols over all frames / coordinates."""
    return int(np.count_nonzero(np.asarray(v)))


# ---------------------------------------------------------------- block codes

def _digits(values: np.ndarray, q: int, width: int) -> np.ndarray:
    out = np.zeros((len(values), width), dtype=np.int64)
    v = values.copy()
    for i in range(width):
        out[:, i] = v % q
        v //= q
    return out


def iter_rowspace(F: FieldSpec, M: np.ndarray, normalized: bool = True, chunk: int = 1 << 16):
    """Yield chunks of nonzero codewords of rowspace(M) (rows independent).

    With normalized=True only words whose leading message symbol is 1 are produced,
    one per projective point.
    """
    r = M.shape[0]
    if normalized:
        for i in range(r):
            rest = M[i + 1:]
            total = F.q ** (r - 1 - i)
            for s in range(0, total, chunk):
                vals = np.arange(s, min(total, s + chunk), dtype=np.int64)
                msgs = _digits(vals, F.q, r - 1 - i)
                words = F.add(M[i][None, :], F.matmul(msgs, rest)) if rest.shape[0] else np.repeat(M[i][None], len(vals), 0)
                yield words
    else:
        total = F.q**r
        for s in range(0, total, chunk):
            vals = np.arange(s, min(total, s + chunk), dtype=np.int64)
            yield F.matmul(_digits(vals, F.q, r), M)


def weight_distribution(F: FieldSpec, M: np.ndarray) -> list[int]:
    """Weight distribution of rowspace(M) by enumeration."""
    M = M[independent_rows(F, M)]
    n = M.shape[1]
    counts = np.zeros(n + 1, dtype=np.int64)
    for words in iter_rowspace(F, M):
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    counts *= F.q - 1
    counts[0] += 1
    return [int(c) for c in counts]


def macwilliams(dual_weights: list[int], n: int, q: int) -> list[int]:
    size = sum(dual_weights)
    out = []
    for w in range(n + 1):
        acc = 0
        for j, Bj in enumerate(dual_weights):
            if Bj:
                k = sum((-1) ** s * (q - 1) ** (w - s) * comb(j, s) * comb(n - j, w - s) for s in range(w + 1))
                acc += Bj * k
        if acc % size:
            raise AssertionError("MacWilliams transform is not integral")
        out.append(acc // size)
    return out


def _cols_iter(n: int, r: int, cyclic: bool):
    if cyclic:
        return ((0,) + c for c in itertools.combinations(range(1, n), r - 1)), comb(n - 1, r - 1)
    return itertools.combinations(range(n), r), comb(n, r)


def mds_minor_check(F: FieldSpec, M, cyclic: bool | None = None, budget: Budget = DEFAULT_BUDGET,
                    chunk: int = 1 << 17) -> tuple[bool, tuple[int, ...] | None, int]:
    """Whether every rank(M)-subset of columns of M is independent.

    This holds iff ker(M) (equivalently rowspace(M)) is MDS.  For cyclic codes only
    subsets containing column 0 are needed.  Returns (ok, bad columns, subsets checked).
    """
    M = np.asarray(M, dtype=np.int64)
    M = M[independent_rows(F, M)]
    r, n = M.shape
    if r == 0 or r == n:
        return True, None, 0
    if n - r < r:
        M = nullspace(F, M)
        r = M.shape[0]
    if cyclic is None:
        cyclic = is_cyclic_code(F, M)
    it, total = _cols_iter(n, r, cyclic)
    if total > budget.minors:
        raise BudgetExceeded(f"{total} column subsets exceed the minor budget {budget.minors}")
    checked = 0
    step = max(1, chunk // (r * r))
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, step)), dtype=np.int64)
        if block.size == 0:
            break
        cols = block.reshape(-1, r)
        mats = np.moveaxis(M[:, cols], 1, 0)  # B x r x r
        dets = batch_det(F, mats)
        checked += len(cols)
        bad = np.flatnonzero(dets == 0)
        if bad.size:
            return False, tuple(int(c) for c in cols[bad[0]]), checked
    return True, None, checked


def _full_support_vector(F: FieldSpec, H: np.ndarray, S, limit: int = 1 << 16) -> np.ndarray | None:
    """A vector of ker(H) with support exactly S, if one exists."""
    N = nullspace(F, H[:, list(S)])
    if N.shape[0] == 0:
        return None
    if F.q ** N.shape[0] > limit:
        # random combinations almost surely have full support
        rng = np.random.default_rng(0)
        combos = rng.integers(0, F.q, size=(limit, N.shape[0]))
    else:
        combos = _digits(np.arange(F.q ** N.shape[0], dtype=np.int64), F.q, N.shape[0])
    vals = F.matmul(combos, N)
    ok = np.flatnonzero((vals != 0).all(axis=1))
    if ok.size == 0:
        return None
    v = np.zeros(H.shape[1], dtype=np.int64)
    v[list(S)] = vals[ok[0]]
    return v


def find_codeword_of_weight(F: FieldSpec, H, w: int, budget: Budget = DEFAULT_BUDGET) -> np.ndarray | None:
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[1]
    for count, S in enumerate(itertools.combinations(range(n), w)):
        if count > budget.minors:
            raise BudgetExceeded("witness search exceeded the budget")
        v = _full_support_vector(F, H, S)
        if v is not None:
            return v
    return None


def block_min_distance(F: FieldSpec, H, method: str = "auto", budget: Budget = DEFAULT_BUDGET,
                       cyclic: bool | None = None, want_witness: bool = True) -> DistanceCertificate:
    """Exact minimum distance of ker(H).

    method: "exhaustive" (enumerate the smaller of the code and its dual, using the
    MacWilliams identities on the dual side), "mds-minors" (all column subsets of the
    parity matrix), "support" (supports of growing size) or "auto".
    """
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[1]
    if H.shape[0]:
        H = H[independent_rows(F, H)]
    r = H.shape[0]
    k = n - r
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    enum_cost = lambda dim: (F.q**dim) // max(1, F.q - 1) * n  # noqa: E731
    cost_code, cost_dual = enum_cost(k), enum_cost(r)
    if method == "auto":
        if min(cost_code, cost_dual) <= budget.enumeration:
            method = "exhaustive"
        else:
            if cyclic is None:
                cyclic = is_cyclic_code(F, H)
            if _cols_iter(n, min(r, k), cyclic)[1] <= budget.minors:
                ok, _, _ = mds_minor_check(F, H, cyclic, budget)
                if ok:
                    return _mds_certificate(F, H, r, want_witness)
            method = "support"
    if method == "mds-minors":
        ok, bad, _ = mds_minor_check(F, H, cyclic, budget)
        if not ok:
            raise ValueError(f"code is not MDS: columns {bad} are dependent")
        return _mds_certificate(F, H, r, want_witness)
    if method == "exhaustive":
        if cost_code <= cost_dual:
            if cost_code > budget.enumeration:
                raise BudgetExceeded("code enumeration exceeds budget")
            G = nullspace(F, H)
            best, witness = INF, None
            for words in iter_rowspace(F, G):
                wts = np.count_nonzero(words, axis=1)
                i = int(np.argmin(wts))
                if wts[i] < best:
                    best, witness = int(wts[i]), words[i].copy()
            return DistanceCertificate(best, "exhaustive", best, best, witness, {"enumerated": "code"})
        if cost_dual > budget.enumeration:
            raise BudgetExceeded("dual enumeration exceeds budget")
        A = macwilliams(weight_distribution(F, H), n, F.q)
        d = next(w for w in range(1, n + 1) if A[w])
        witness = find_codeword_of_weight(F, H, d, budget) if want_witness else None
        return DistanceCertificate(d, "exhaustive", d, d, witness, {"enumerated": "dual", "A_d": A[d]})
    if method == "support":
        limit = max(1, budget.minors // 100)
        if sum(comb(n, w) for w in range(1, min(n, r + 1) + 1)) > limit:
            raise BudgetExceeded("support search exceeds budget")
        tried = 0
        for w in range(1, r + 2):
            for S in itertools.combinations(range(n), w):
                tried += 1
                if tried > limit:
                    raise BudgetExceeded("support search exceeds budget")
                if w <= r and rank(F, H[:, list(S)]) == w:
                    continue
                v = _full_support_vector(F, H, S)
                if v is not None:
                    return DistanceCertificate(w, "exhaustive", w, w, v, {"enumerated": "supports"})
        raise AssertionError("no codeword found up to the Singleton bound")
    raise ValueError(f"unknown method {method!r}")


def _mds_certificate(F, H, r, want_witness):
    n = H.shape[1]
    w = None
    if want_witness:
        w = _full_support_vector(F, H, range(r + 1))
    return DistanceCertificate(r + 1, "mds-minors", r + 1, n - (n - r) + 1, w, {})


def block_distance_or_inf(F: FieldSpec, H, budget: Budget, want_witness: bool = True) -> DistanceCertificate:
    H = np.asarray(H, dtype=np.int64)
    if rank(F, H) == H.shape[1]:
        return DistanceCertificate(INF, "exhaustive", INF, INF, None, {"zero_code": True})
    return block_min_distance(F, H, budget=budget, want_witness=want_witness)


# ---------------------------------------------------------------- generator trellis

def _check_encoder(C: ConvCode):
    if C.G.has_zero_row():
        raise CatastrophicEncoder("generator has a zero row")
    if not minor_gcd_is_unit(C.G):
        raise CatastrophicEncoder("generator is not basic")


def free_distance_generator_trellis(C: ConvCode, budget: Budget = DEFAULT_BUDGET,
                                    check_encoder: bool = True) -> DistanceCertificate:
    """Exact d_f by shortest paths on the encoder state graph.

    States hold the past inputs of rows of positive degree.  For each state and
    current input of those rows, the inputs of degree-0 rows are minimised out
    exactly, so each merged branch carries the minimum weight over a coset.
    """
    if check_encoder:
        _check_encoder(C)
    F, G = C.field, C.G
    q, n = F.q, C.n
    degs = G.row_degrees
    active = [j for j in range(C.k) if degs[j] >= 1]
    free = [j for j in range(C.k) if degs[j] == 0]
    gamma = sum(degs[j] for j in active)
    N = q**gamma
    Hn = q ** len(active)
    if N > budget.states:
        raise BudgetExceeded(f"{N} states exceed the state budget {budget.states}")
    if Hn > budget.branches:
        raise BudgetExceeded(f"{Hn} branches exceed the branch budget")
    G0 = G.coeffs[0]
    B = G0[free]
    if gamma == 0:
        cert = block_min_distance(F, nullspace(F, B), budget=budget)
        wit = None if cert.witness is None else cert.witness[None, :]
        return DistanceCertificate(cert.value, "exact-trellis", cert.value, cert.value, wit, {"states": 1})
    # state layout: for active row j, positions pos[j] .. pos[j]+degs[j]-1 hold u_{t-1} .. u_{t-deg}
    pos, p = {}, 0
    for j in active:
        pos[j] = p
        p += degs[j]
    Gs = np.zeros((gamma, n), dtype=np.int64)
    for j in active:
        for d in range(1, degs[j] + 1):
            Gs[pos[j] + d - 1] = G.coeffs[d, j]
    S = _digits(np.arange(N, dtype=np.int64), q, gamma)
    Hd = _digits(np.arange(Hn, dtype=np.int64), q, len(active))
    c_state = F.matmul(S, Gs)  # N x n
    c_head = F.matmul(Hd, G0[active])  # Hn x n
    weights = q ** np.arange(gamma, dtype=np.int64)
    shift_part = np.zeros(N, dtype=np.int64)
    head_part = np.zeros(Hn, dtype=np.int64)
    for a, j in enumerate(active):
        head_part += Hd[:, a] * weights[pos[j]]
        for d in range(2, degs[j] + 1):
            shift_part += S[:, pos[j] + d - 2] * weights[pos[j] + d - 1]
    nxt = shift_part[:, None] + head_part[None, :]  # N x Hn

    metric = _coset_metric(F, B, n, budget, N * Hn)
    W = metric.pair_weights(c_state, c_head)
    dzero = metric.nonzero_min()  # the branch 0 -> 0 driven by degree-0 rows only

    dist = np.full(N, INF, dtype=np.int64)
    dist[0] = 0
    for _ in range(N + 1):
        cand = (W + dist[nxt]).min(axis=1)
        cand[0] = 0
        new = np.minimum(dist, cand)
        if np.array_equal(new, dist):
            break
        dist = new
    start = W[0, 1:] + dist[nxt[0, 1:]]
    h0 = 1 + int(np.argmin(start))
    best = int(start[h0 - 1])
    if dzero < best:
        frames = metric.nonzero_min_word()[None, :]
        return DistanceCertificate(dzero, "exact-trellis", dzero, dzero, frames,
                                   {"states": N, "branches": Hn})
    frames = []
    s, h = 0, h0
    for _ in range(N + 2):
        x = F.add(c_state[s], c_head[h])
        frames.append(metric.best_word(x, int(W[s, h])))
        s = int(nxt[s, h])
        if s == 0:
            break
        h = int(np.argmin(W[s] + dist[nxt[s]]))
    frames = np.array(frames, dtype=np.int64)
    if symbol_weight(frames) != best:
        raise AssertionError("generator-trellis witness weight mismatch")
    return DistanceCertificate(best, "exact-trellis", best, best, frames, {"states": N, "branches": Hn})


class _CosetMetric:
    """min over b in rowspace(B) of wt(x + b), either by enumeration or by a syndrome table."""

    def __init__(self, F: FieldSpec, B: np.ndarray, n: int, budget: Budget, queries: int):
        self.F, self.n = F, n
        B = B[independent_rows(F, B)] if B.shape[0] else B.reshape(0, n)
        self.B = B
        kf = B.shape[0]
        q = F.q
        cost_enum = queries * q**kf * n
        r = n - kf
        cost_table = 10 * q**r * n * (q - 1) + queries * n * max(r, 1)
        if min(cost_enum, cost_table) > budget.work:
            raise BudgetExceeded("branch metric tables exceed the work budget")
        self.mode = "enum" if cost_enum <= cost_table else "table"
        if self.mode == "enum":
            words = np.zeros((q**kf, n), dtype=np.int64)
            if kf:
                words = F.matmul(_digits(np.arange(q**kf, dtype=np.int64), q, kf), B)
            self.words = words
            self.dtype = np.uint8 if q <= 256 else np.uint16 if q <= 65536 else np.int64
            self.neg = F.neg(words).astype(self.dtype)
        else:
            self.P = nullspace(F, B) if kf else np.eye(n, dtype=np.int64)  # B = ker P
            self.r = self.P.shape[0]
            self._build_table()

    # syndrome encoding
    def _encode(self, syn: np.ndarray) -> np.ndarray:
        return (syn * (self.F.q ** np.arange(syn.shape[-1], dtype=np.int64))).sum(axis=-1)

    def _syndromes(self, X: np.ndarray) -> np.ndarray:
        return self._encode(self.F.matmul(X, self.P.T))

    def _build_table(self):
        """Coset-leader weights over all syndromes, one column at a time.

        The table is a tensor with one axis per syndrome coordinate (last coordinate
        first), so translating by a fixed syndrome is a single gather.
        """
        F, q, r, n = self.F, self.F.q, self.r, self.n
        if r == 0:
            self.table = np.zeros(1, dtype=np.int16)
            return
        big = np.iinfo(np.int16).max // 2
        D = np.full((q,) * r, big, dtype=np.int16)
        D[(0,) * r] = 0
        ar = np.arange(q, dtype=np.int64)
        for j in range(n):
            col = self.P[:, j]
            if not col.any():
                continue
            best = D.copy()
            for c in range(1, q):
                g = F.mul(col, c)
                idx = np.ix_(*[F.sub(ar, int(g[r - 1 - a])) for a in range(r)])
                np.minimum(best, D[idx] + 1, out=best)
            D = best
        self.table = D.reshape(-1)

    def weights(self, X: np.ndarray) -> np.ndarray:
        if self.mode == "enum":
            out = np.empty(len(X), dtype=np.int64)
            wdt = np.uint8 if self.n < 255 else np.int64
            step = 1 << 20
            for s in range(0, len(X), step):
                xt = np.ascontiguousarray(X[s:s + step].T.astype(self.dtype))  # n x batch
                best = np.full(xt.shape[1], self.n, dtype=wdt)
                acc = np.empty_like(best)
                for w in self.neg:
                    acc[:] = 0
                    for j in range(self.n):
                        acc += xt[j] != w[j]
                    np.minimum(best, acc, out=best)
                out[s:s + step] = best
            return out
        return self.table[self._syndromes(X)].astype(np.int64)

    def pair_weights(self, A: np.ndarray, Bh: np.ndarray) -> np.ndarray:
        """weights(A[s] + Bh[h]) for every pair, as a len(A) x len(Bh) array."""
        F = self.F
        out = np.empty((len(A), len(Bh)), dtype=np.int64)
        if self.mode == "table" and self.r:
            # syndromes are linear, so combine per-row syndromes instead of the words
            SA, SB = F.matmul(A, self.P.T), F.matmul(Bh, self.P.T)
            pw = F.q ** np.arange(self.r, dtype=np.int64)
            step = max(1, (1 << 22) // max(1, len(Bh)))
            for s in range(0, len(A), step):
                enc = np.zeros((len(SA[s:s + step]), len(Bh)), dtype=np.int64)
                for a in range(self.r):
                    enc += F.add(SA[s:s + step, None, a], SB[None, :, a]) * pw[a]
                out[s:s + step] = self.table[enc]
            return out
        step = max(1, (1 << 20) // max(1, len(Bh)))
        for s in range(0, len(A), step):
            X = F.add(A[s:s + step, None, :], Bh[None, :, :]).reshape(-1, self.n)
            out[s:s + step] = self.weights(X).reshape(-1, len(Bh))
        return out

    def nonzero_min(self) -> int:
        if self.B.shape[0] == 0:
            return INF
        if self.mode == "enum":
            return int(np.count_nonzero(self.words[1:], axis=1).min())
        self._nz = block_min_distance(self.F, self.P, budget=DEFAULT_BUDGET)
        return self._nz.value

    def nonzero_min_word(self) -> np.ndarray:
        if self.mode == "enum":
            wts = np.count_nonzero(self.words, axis=1)
            wts[0] = INF
            return self.words[int(np.argmin(wts))]
        return self._nz.witness

    def best_word(self, x: np.ndarray, w: int) -> np.ndarray:
        """x + b of weight w with b in rowspace(B)."""
        F = self.F
        if self.mode == "enum":
            cand = F.add(x[None, :], self.words)
            return cand[int(np.argmin(np.count_nonzero(cand, axis=1)))]
        # coset leader with the syndrome of x, found by support enumeration
        target = F.matmul(x[None, :], self.P.T)[0]
        for S in itertools.combinations(range(self.n), w):
            A = self.P[:, list(S)]
            # solve A v = target with all v nonzero
            aug = np.concatenate([A, target[:, None]], axis=1)
            R, rk, piv = rref(F, aug)
            if piv and piv[-1] == len(S):
                continue
            N = nullspace(F, A)
            part = np.zeros(len(S), dtype=np.int64)
            for i, pc in enumerate(piv):
                part[pc] = R[i, -1]
            combos = _digits(np.arange(F.q ** N.shape[0], dtype=np.int64), F.q, N.shape[0])
            sols = F.add(part[None, :], F.matmul(combos, N)) if N.shape[0] else part[None, :]
            ok = np.flatnonzero((sols != 0).all(axis=1))
            if ok.size:
                e = np.zeros(self.n, dtype=np.int64)
                e[list(S)] = sols[ok[0]]
                return e
        raise AssertionError("coset leader not found")


def _coset_metric(F, B, n, budget, queries):
    return _CosetMetric(F, B, n, budget, queries)


# ---------------------------------------------------------------- syndrome-former trellis

class _FrameSolver:
    """All frames v of a given support size with v T = y, batched over supports."""

    def __init__(self, F: FieldSpec, T: np.ndarray, M: np.ndarray | None, budget: Budget):
        self.F, self.T, self.M, self.budget = F, T, M, budget
        self.n, self.c = T.shape
        self.cache: dict[int, list] = {}
        self.generated = 0

    def _prepare(self, w: int):
        F, c = self.F, self.c
        groups: dict[int, list] = {}
        if comb(self.n, w) > self.budget.minors:
            raise BudgetExceeded(f"{comb(self.n, w)} supports of size {w}")
        for S in itertools.combinations(range(self.n), w):
            TS = self.T[list(S)]  # w x c
            aug = np.concatenate([TS.T, np.eye(c, dtype=np.int64)], axis=1)
            R, _, piv = rref(F, aug)
            piv = [p for p in piv if p < w]
            rho = len(piv)
            E = R[:, w:]
            place = np.zeros((w, c), dtype=np.int64)
            for i, pc in enumerate(piv):
                place[pc, i] = 1
            free = [f for f in range(w) if f not in piv]
            N = np.zeros((len(free), w), dtype=np.int64)
            for a, f in enumerate(free):
                N[a, f] = 1
                for i, pc in enumerate(piv):
                    N[a, pc] = F.neg(int(R[i, f]))
            groups.setdefault(len(free), []).append((S, E, place, rho, N))
        packed = []
        for nu, items in groups.items():
            packed.append((
                nu,
                np.array([it[0] for it in items], dtype=np.int64).reshape(len(items), w),
                np.array([it[1] for it in items], dtype=np.int64),
                np.array([it[2] for it in items], dtype=np.int64),
                np.array([it[3] for it in items], dtype=np.int64),
                np.array([it[4] for it in items], dtype=np.int64).reshape(len(items), nu, w),
            ))
        self.cache[w] = packed

    def solve(self, y: np.ndarray, w: int):
        """(supports, values, M-images) of all full-support solutions of size w."""
        F = self.F
        if w == 0:
            if y.any():
                return []
            return [(np.zeros((1, 0), dtype=np.int64), np.zeros((1, 0), dtype=np.int64))]
        if w not in self.cache:
            self._prepare(w)
        out = []
        for nu, S, E, place, rho, N in self.cache[w]:
            z = F.sum(F.mul(E, y[None, None, :]), axis=2)  # B x c
            rows = np.arange(self.c)[None, :] >= rho[:, None]
            ok = ~((z != 0) & rows).any(axis=1)
            if not ok.any():
                continue
            z, Sk, Pk, Nk = z[ok], S[ok], place[ok], N[ok]
            part = F.sum(F.mul(Pk, z[:, None, :]), axis=2)  # B x w
            if nu:
                count = F.q**nu
                self.generated += len(Sk) * count
                if self.generated > self.budget.expansions * 100:
                    raise BudgetExceeded("syndrome trellis candidate budget exceeded")
                combos = _digits(np.arange(count, dtype=np.int64), F.q, nu)  # C x nu
                add = F.sum(F.mul(combos[None, :, :, None], Nk[:, None, :, :]), axis=2)  # B x C x w
                vals = F.add(part[:, None, :], add)
            else:
                self.generated += len(Sk)
                vals = part[:, None, :]
            good = (vals != 0).all(axis=2)
            bi, ci = np.nonzero(good)
            if bi.size:
                out.append((Sk[bi], vals[bi, ci]))
        return out


@dataclass
class _SyndromeLayout:
    F: FieldSpec
    nu: list[int]
    Fcols: np.ndarray  # n x r, finalize constraints
    Mcols: np.ndarray  # n x gamma, contributions to the next state
    gamma: int

    def finalize_target(self, P: np.ndarray) -> np.ndarray:
        F = self.F
        y = np.zeros(len(self.nu), dtype=np.int64)
        p = 0
        for j, v in enumerate(self.nu):
            if v:
                y[j] = F.neg(int(P[p + v - 1]))
                p += v
        return y

    def shifted(self, P: np.ndarray) -> np.ndarray:
        out = np.zeros(self.gamma, dtype=np.int64)
        p = 0
        for v in self.nu:
            if v:
                out[p + 1:p + v] = P[p:p + v - 1]
                p += v
        return out


def _layout(check: PolyMat) -> _SyndromeLayout:
    F = check.field
    nu = check.row_degrees
    Fc, Mc = [], []
    for j, v in enumerate(nu):
        Fc.append(check.coeffs[v, j])
        for d in range(1, v + 1):
            Mc.append(check.coeffs[d - 1, j])
    n = check.cols
    Fm = np.array(Fc, dtype=np.int64).reshape(len(Fc), n).T
    Mm = np.array(Mc, dtype=np.int64).reshape(len(Mc), n).T
    return _SyndromeLayout(F, nu, Fm, Mm, sum(nu))


def free_distance_syndrome_trellis(C: ConvCode, check: PolyMat, budget: Budget = DEFAULT_BUDGET,
                                   check_encoder: bool = True) -> DistanceCertificate:
    """Exact d_f by best-first search over pending partial syndromes of check.

    The code is {v : v(D) check(D^-1)^T = 0}.  A state is the vector of partial
    syndromes that are still open; a frame is admissible when it closes the oldest
    one of every row.  Weights of whole frames are enumerated by support.
    """
    F, n = C.field, C.n
    if check.field != F or check.cols != n or check.rows != n - C.k:
        raise InvalidCheckMatrix("check matrix has the wrong shape or field")
    if check.has_zero_row() or not full_row_rank(check):
        raise InvalidCheckMatrix("check matrix is rank deficient")
    if not orthogonal(C.G, check):
        raise InvalidCheckMatrix("G(D) check(D^-1)^T is not zero")
    if check_encoder:
        _check_encoder(C)
    lay = _layout(check)
    q = F.q
    if q**lay.gamma > budget.states:
        raise BudgetExceeded(f"{q ** lay.gamma} syndrome states exceed the state budget")
    T = np.concatenate([lay.Fcols, lay.Mcols], axis=1)  # all coefficient rows of check
    single = block_distance_or_inf(F, T.T, budget, want_witness=False)
    first = block_distance_or_inf(F, lay.Fcols.T, budget, want_witness=False).value
    last = block_distance_or_inf(F, check.coeffs[0], budget, want_witness=False).value
    notes = {"states": q**lay.gamma, "single_frame": single.value, "first_frame": first, "last_frame": last}
    if lay.gamma == 0 or last >= INF:
        d = single.value
        return _single_frame_cert(F, T, d, notes, budget)
    lb = min(single.value, first + last)
    if single.value <= first + last:
        return _single_frame_cert(F, T, single.value, notes, budget)
    term = _FrameSolver(F, T, None, budget)
    step = _FrameSolver(F, lay.Fcols, lay.Mcols, budget)
    bound = lb
    while True:
        found = _bounded_search(F, lay, term, step, bound, first, last, budget)
        if found is not None:
            d, frames = found
            if single.value < d:
                return _single_frame_cert(F, T, single.value, notes, budget)
            notes["bound_reached"] = bound
            return DistanceCertificate(d, "exact-trellis", d, d, frames, notes)
        if single.value <= bound + 1:
            return _single_frame_cert(F, T, single.value, notes, budget)
        bound += 1
        if bound > n * (lay.gamma + 1) + n:
            raise AssertionError("syndrome trellis search did not terminate")


def _single_frame_cert(F, T, d, notes, budget):
    w = find_codeword_of_weight(F, T.T, d, budget)
    if w is None:
        raise AssertionError("single-frame witness not found")
    return DistanceCertificate(d, "exact-trellis", d, d, w[None, :], notes)


def _bounded_search(F, lay, term, step, bound, first, last, budget):
    """Minimum multi-frame codeword weight if it is <= bound, else None."""
    q = F.q
    enc = q ** np.arange(lay.gamma, dtype=np.int64)
    key = lambda P: int((P * enc).sum())  # noqa: E731
    zero = np.zeros(lay.gamma, dtype=np.int64)
    best_g: dict[int, int] = {}
    parent: dict[int, tuple] = {}
    states: dict[int, np.ndarray] = {}
    heap: list = []
    counter = itertools.count()
    expansions = 0

    def successors(P, g, allow_zero_frame, wmin):
        y = lay.finalize_target(P)
        base = lay.shifted(P)
        cap = bound - g - last
        for w in range(wmin, cap + 1):
            for S, vals in step.solve(y, w):
                for s_idx, v in zip(S, vals):
                    nxt = base.copy()
                    if w:
                        contrib = F.sum(F.mul(v[:, None], lay.Mcols[s_idx]), axis=0)
                        nxt = F.add(nxt, contrib)
                    if not nxt.any():
                        continue
                    frame = np.zeros(lay.Fcols.shape[0], dtype=np.int64)
                    frame[s_idx] = v
                    yield g + w, nxt, frame

    # start: first frame is nonzero
    for g2, nxt, frame in successors(zero, 0, False, max(1, first)):
        k2 = key(nxt)
        if g2 < best_g.get(k2, INF):
            best_g[k2] = g2
            parent[k2] = (None, frame)
            states[k2] = nxt
            heapq.heappush(heap, (g2 + last, g2, next(counter), k2))
    done: set[int] = set()
    terminal_info = None
    while heap:
        f, g, _, k = heapq.heappop(heap)
        if f > bound:
            return None
        if k == -1:
            return g, _trace(parent, terminal_info[0], terminal_info[1])
        if k in done or g > best_g.get(k, INF):
            continue
        done.add(k)
        expansions += 1
        if expansions > budget.expansions:
            raise BudgetExceeded("syndrome trellis expansions exceeded")
        P = states[k]
        # terminal frames close every open syndrome
        y = np.concatenate([lay.finalize_target(P), F.neg(lay.shifted(P))])
        for w in range(max(1, last), bound - g + 1):
            sols = term.solve(y, w)
            if sols:
                S, vals = sols[0]
                frame = np.zeros(len(lay.Fcols), dtype=np.int64)
                frame[S[0]] = vals[0]
                tot = g + w
                if tot < best_g.get(-1, INF):
                    best_g[-1] = tot
                    terminal_info = (k, frame)
                    heapq.heappush(heap, (tot, tot, next(counter), -1))
                break
        for g2, nxt, frame in successors(P, g, True, 0):
            k2 = key(nxt)
            if k2 in done or g2 >= best_g.get(k2, INF):
                continue
            best_g[k2] = g2
            parent[k2] = (k, frame)
            states[k2] = nxt
            heapq.heappush(heap, (g2 + last, g2, next(counter), k2))
    return None


def _trace(parent, k, last_frame):
    frames = [last_frame]
    while k is not None:
        prev, frame = parent[k]
        frames.append(frame)
        k = prev
    return np.array(frames[::-1], dtype=np.int64)


# ---------------------------------------------------------------- convenience

def frame_weight_floor(C: ConvCode, budget: Budget = DEFAULT_BUDGET) -> DistanceCertificate:
    """Lower bound on every nonzero codeword weight: each output frame lies in the
    row space of the stacked coefficient matrices, and some frame is nonzero."""
    F = C.field
    stacked = C.G.coeffs.reshape(-1, C.n)
    stacked = stacked[independent_rows(F, stacked)]
    parity = nullspace(F, stacked)
    ok, _, _ = mds_minor_check(F, stacked, None, budget)
    if ok:
        d = C.n - stacked.shape[0] + 1
        return DistanceCertificate(d, "mds-minors", d, d, None, {"rowspace_dim": stacked.shape[0]})
    return block_min_distance(F, parity, budget=budget, want_witness=False)


def verify_witness(C: ConvCode, check: PolyMat, frames) -> int:
    """Weight of a claimed codeword after confirming membership; raises on failure."""
    frames = np.asarray(frames, dtype=np.int64)
    if frames.ndim == 1:
        frames = frames[None, :]
    if not frames.any():
        raise ValueError("witness is the zero sequence")
    v = PolyMat(C.field, frames[:, None, :])
    if not orthogonal(v, check):
        raise ValueError("witness is not a codeword")
    return symbol_weight(frames)


def with_cert(C: ConvCode, cert: DistanceCertificate) -> ConvCode:
    return replace(C, d_f=cert)
