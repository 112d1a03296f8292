"""Cyclotomic cosets, minimal polynomials and BCH codes given by their defining sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import poly
from .errors import NotCoprime
from .galois import ExtensionEmbedding, FieldSpec, make_embedding, make_field, primitive_nth_root
from .linalg import ExpandedMatrix, expand_over_basis, nullspace, rank


@dataclass(frozen=True)
class CyclotomicCoset:
    n: int
    q: int
    s: int
    elements: tuple[int, ...]

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return len(self.elements)


def _require_coprime(n: int, q: int):
    if n < 1 or gcd(n, q) != 1:
        raise NotCoprime(f"gcd({n}, {q}) != 1")


def coset(n: int, q: int, s: int) -> CyclotomicCoset:
    _require_coprime(n, q)
    s %= n
    orbit, x = set(), s
    while x not in orbit:
        orbit.add(x)
        x = (x * q) % n
    els = tuple(sorted(orbit))
    return CyclotomicCoset(n, q, els[0], els)


def all_cosets(n: int, q: int) -> list[CyclotomicCoset]:
    _require_coprime(n, q)
    seen, out = set(), []
    for s in range(n):
        if s not in seen:
            c = coset(n, q, s)
            seen.update(c.elements)
            out.append(c)
    return out


def mult_order(n: int, q: int) -> int:
    _require_coprime(n, q)
    if n == 1:
        return 1
    l, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        l += 1
    return l


@dataclass(frozen=True, eq=False)
class CyclicContext:
    """Splitting field data for length-n cyclic codes over a fixed base field."""

    n: int
    base: FieldSpec
    emb: ExtensionEmbedding
    alpha: int  # primitive n-th root of unity in emb.ext


@lru_cache(maxsize=None)
def cyclic_context(n: int, base: FieldSpec) -> CyclicContext:
    l = mult_order(n, base.q)
    ext = make_field(base.p, base.t * l)
    emb = make_embedding(base, ext)
    return CyclicContext(n, base, emb, primitive_nth_root(n, ext).value)


def minimal_polynomial(s: int, n: int, field: FieldSpec, emb: ExtensionEmbedding | None = None) -> list[int]:
    """Minimal polynomial of alpha^s over the base field, ascending coefficients."""
    ctx = cyclic_context(n, field)
    if emb is not None and emb.ext != ctx.emb.ext:
        ctx = CyclicContext(n, field, emb, primitive_nth_root(n, emb.ext).value)
    E = ctx.emb.ext
    acc = [1]
    for j in coset(n, field.q, s).elements:
        root = E.pow(ctx.alpha, j)
        acc = poly.mul(E, acc, [E.neg(root), 1])
    return [int(c) for c in ctx.emb.project(np.array(acc, dtype=np.int64))]


def longest_cyclic_run(Z, n: int) -> tuple[int, int]:
    """(start, length) of the longest run of consecutive residues mod n inside Z."""
    Z = set(z % n for z in Z)
    if not Z:
        return 0, 0
    if len(Z) == n:
        return 0, n
    best = (0, 0)
    for s in sorted(Z):
        if (s - 1) % n in Z:
            continue
        length = 0
        while (s + length) % n in Z:
            length += 1
        if length > best[1]:
            best = (s, length)
    return best


@dataclass(frozen=True, eq=False)
class BchSpec:
    n: int
    field: FieldSpec
    b: int
    delta: int
    Z: tuple[int, ...]
    g: tuple[int, ...]
    reps: tuple[int, ...]  # coset representatives in parity-row order

    @property
    def k(self) -> int:
        return self.n - len(self.Z)

    @property
    def q(self) -> int:
        return self.field.q

    def to_dict(self) -> dict:
        return {"n": self.n, "q": self.q, "b": self.b, "delta": self.delta, "Z": list(self.Z), "k": self.k}


def bch_code(n: int, field: FieldSpec, coset_reps) -> BchSpec:
    _require_coprime(n, field.q)
    reps, seen = [], set()
    Z: set[int] = set()
    for r in coset_reps:
        c = coset(n, field.q, r)
        if c.s in seen:
            continue
        seen.add(c.s)
        reps.append(r % n)
        Z.update(c.elements)
    g = [1]
    for r in reps:
        g = poly.mul(field, g, minimal_polynomial(r, n, field))
    start, length = longest_cyclic_run(Z, n)
    return BchSpec(n, field, start, length + 1, tuple(sorted(Z)), tuple(g), tuple(reps))


def bch_bound(spec: BchSpec) -> int:
    return spec.delta


def parity_rows(spec: BchSpec) -> np.ndarray:
    """Rows (alpha^(r j))_j over the splitting field, one per representative."""
    ctx = cyclic_context(spec.n, spec.field)
    E = ctx.emb.ext
    j = np.arange(spec.n)
    la = E.log(ctx.alpha)
    rows = [E.exp((la * r * j) % (E.q - 1)) for r in spec.reps]
    return np.array(rows, dtype=np.int64).reshape(len(spec.reps), spec.n)


def bch_parity_matrix(spec: BchSpec) -> ExpandedMatrix:
    ctx = cyclic_context(spec.n, spec.field)
    H = expand_over_basis(parity_rows(spec), ctx.emb, drop_dependent=True)
    if H.rank != spec.n - spec.k:
        raise AssertionError(f"parity matrix rank {H.rank} != {spec.n - spec.k}")
    return H


def generator_from_poly(spec: BchSpec) -> np.ndarray:
    """k x n generator matrix made of the shifts of g(x)."""
    G = np.zeros((spec.k, spec.n), dtype=np.int64)
    for i in range(spec.k):
        G[i, i:i + len(spec.g)] = spec.g
    return G


def is_cyclic_code(F: FieldSpec, H) -> bool:
    """True iff ker(H) is invariant under the cyclic shift."""
    G = nullspace(F, H)
    if G.shape[0] == 0:
        return True
    shifted = np.roll(G, 1, axis=1)
    return rank(F, np.vstack([G, shifted])) == G.shape[0]
