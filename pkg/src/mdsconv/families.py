"""Constructors for the code families: block BCH codes, split lifts, duals and certificates."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from .certificates import DistanceCertificate, lower_bound, sandwich
from .convolution import (
    ConvCode,
    SplitPlan,
    conjugate,
    distance_sandwich,
    euclidean_dual,
    hermitian_dual,
    is_mds,
    is_self_orthogonal,
    singleton_bound,
    split_and_lift,
)
from .cyclic import BchSpec, bch_code, bch_parity_matrix
from .distance import (
    DEFAULT_BUDGET,
    Budget,
    block_min_distance,
    free_distance_generator_trellis,
    free_distance_syndrome_trellis,
    frame_weight_floor,
    mds_minor_check,
)
from .errors import BudgetExceeded, IndexOutOfRange, MdsConvError, ParityMismatch
from .galois import ExtensionEmbedding, FieldSpec, make_embedding, make_field, prime_factors
from .quantum import (
    StabilizerCode,
    hermitian_dual_containing,
    is_quantum_mds,
    quantum_singleton_bound,
    stabilizer_from_hermitian,
)

log = logging.getLogger(__name__)

FAMILIES = ("thm_main", "cor_c", "thm_mainI", "thm_mainII", "thm_mainIII", "thm_main1")
EVEN_FAMILIES = ("thm_main", "cor_c", "thm_main1")


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(ps) != 1:
        return None
    p, t, x = ps[0], 0, q
    while x > 1:
        x //= p
        t += 1
    return p, t


@dataclass(frozen=True)
class FamilyRequest:
    family: str
    q: int
    i: Optional[int] = None
    r: Optional[int] = None
    m: Optional[int] = None

    @property
    def n(self) -> int:
        return self.q * self.q + 1 if self.family == "thm_main1" else self.q + 1

    @property
    def a(self) -> int:
        if self.family in ("thm_main", "cor_c"):
            return self.q // 2
        if self.family == "thm_main1":
            return self.q * self.q // 2
        return self.n // 2

    def index(self) -> dict:
        if self.family == "thm_mainIII":
            return {"r": self.r, "m": self.m}
        return {"i": self.i}

    def validate(self) -> "FamilyRequest":
        validate_q(self.family, self.q)
        lo, hi = index_bounds(self.family, self.q)
        if self.family == "thm_mainIII":
            if self.r is None or self.m is None:
                raise IndexOutOfRange("thm_mainIII needs r and m")
            if self.r < 1 or self.m < 2 or not lo <= self.r + self.m <= hi:
                raise IndexOutOfRange(f"need r ≥ 1, m ≥ 2 and {lo} ≤ r+m ≤ {hi}")
        else:
            if self.i is None:
                raise IndexOutOfRange(f"{self.family} needs i")
            if not lo <= self.i <= hi:
                raise IndexOutOfRange(f"i must satisfy {lo} ≤ i ≤ {hi}")
        return self


def validate_q(family: str, q: int):
    if family not in FAMILIES:
        raise IndexOutOfRange(f"unknown family {family!r}")
    pt = _prime_power(q)
    if family in EVEN_FAMILIES:
        if pt is None or pt[0] != 2 or pt[1] < 3:
            raise IndexOutOfRange("q must be 2^t, t ≥ 3")
    elif pt is None or pt[0] == 2 or pt[1] < 2:
        raise IndexOutOfRange("q must be p^t with p an odd prime, t ≥ 2")


def index_bounds(family: str, q: int) -> tuple[int, int]:
    """Inclusive range of i (or of r+m for thm_mainIII)."""
    if family in ("thm_main", "cor_c"):
        return 1, q // 2 - 1
    if family == "thm_main1":
        return 2, q // 2 - 2
    a = (q + 1) // 2
    if family == "thm_mainI":
        return 2, a - 1
    return 3, a - 1


def family_requests(family: str, q: int) -> list[FamilyRequest]:
    lo, hi = index_bounds(family, q)
    if family == "thm_mainIII":
        return [FamilyRequest(family, q, r=r, m=s - r) for s in range(lo, hi + 1) for r in range(1, s - 1)]
    return [FamilyRequest(family, q, i=i) for i in range(lo, hi + 1)]


@dataclass(frozen=True)
class Claims:
    n: int
    k: int
    gamma: int
    memory: int
    d_f: int
    d_f_is_lower_bound: bool
    mds: Optional[bool]  # None: the family makes no MDS claim

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "gamma": self.gamma, "memory": self.memory,
                "d_f": self.d_f, "d_f_is_lower_bound": self.d_f_is_lower_bound, "mds": self.mds}


@dataclass(eq=False)
class BlockRecord:
    name: str
    spec: BchSpec
    H: np.ndarray
    distance: DistanceCertificate


@dataclass(eq=False)
class CodeRecord:
    request: FamilyRequest
    F: Optional[FieldSpec] = None  # field of the classical codes
    blocks: dict = field(default_factory=dict)
    boundaries: tuple = ()
    V: Optional[ConvCode] = None
    dual: Optional[ConvCode] = None
    dual_form: str = "euclidean"
    claimed: str = "dual"  # "dual", "V" or "quantum"
    claims: Optional[Claims] = None
    emb: Optional[ExtensionEmbedding] = None
    stabilizer: Optional[StabilizerCode] = None
    theorem_bound: Optional[DistanceCertificate] = None
    verdicts: dict = field(default_factory=dict)
    status: str = "ok"
    error: Optional[str] = None

    @property
    def code(self):
        return {"dual": self.dual, "V": self.V, "quantum": self.stabilizer}[self.claimed]

    def row(self) -> dict:
        """Flat projection: family, q, n, k, gamma, memory, d_f, certificate, mds."""
        req = self.request
        out = {"family": req.family, "q": req.q}
        if self.status != "ok":
            out.update(n="", k="", gamma="", memory="", d_f="", certificate="error", mds="")
            return out
        c = self.code
        gamma, memory = c.gamma, c.m if self.claimed == "quantum" else c.memory
        cert = c.d_f
        kind = {"exact-trellis": "exact", "sandwich": "exact"}.get(cert.kind, cert.kind)
        mds = self.verdicts.get("mds")
        out.update(n=c.n, k=c.k, gamma=gamma, memory=memory, d_f=cert.value, certificate=kind,
                   mds="unknown" if mds is None else str(bool(mds)).lower())
        return out


# ---------------------------------------------------------------- recipes

def _groups(req: FamilyRequest) -> tuple[list[list[int]], list[str], str]:
    """Coset representatives per split block (descending from a), block names, full-code name."""
    a = req.a
    if req.family in ("thm_main", "cor_c", "thm_mainI", "thm_main1"):
        i = req.i
        return [list(range(a, a - i, -1)), [a - i]], ["C1", "C"], "C2"
    if req.family == "thm_mainII":
        i = req.i
        return [list(range(a, a - i + 1, -1)), [a - i + 1], [a - i]], ["C2", "C1", "C"], "C3"
    r, m = req.r, req.m
    groups = [list(range(a, a - r - 1, -1))] + [[a - r - j] for j in range(1, m + 1)]
    return groups, ["C0"] + [f"C{j}" for j in range(1, m + 1)], "C"


def _claims(req: FamilyRequest) -> tuple[Claims, str]:
    n, fam = req.n, req.family
    if fam == "thm_main":
        i = req.i
        return Claims(n, n - 2 * i, 2, 1, 2 * i + 3, False, True), "dual"
    if fam == "cor_c":
        i = req.i
        return Claims(n, 2 * i, 2, 1, n - 2 * i - 1, True, None), "V"
    if fam == "thm_mainI":
        i = req.i
        return Claims(n, n - 2 * i + 1, 2, 1, 2 * i + 2, False, True), "dual"
    if fam == "thm_mainII":
        i = req.i
        return Claims(n, 2 * i - 3, 4, 2, n - 2 * i, True, None), "V"
    if fam == "thm_mainIII":
        r, m = req.r, req.m
        return Claims(n, 2 * r + 1, 2 * m, m, n - 2 * (r + m), True, None), "V"
    i = req.i
    return Claims(n, n - 4 * i, 2, 1, 2 * i + 3, False, True), "quantum"


def certify_block(F: FieldSpec, spec: BchSpec, H: np.ndarray, budget: Budget = DEFAULT_BUDGET,
                  minor_limit: int | None = None) -> DistanceCertificate:
    """Exact minimum distance of a BCH block code, cheapest rigorous route first.

    When the BCH bound meets the Singleton bound the value is pinned; the column-minor
    check is still run when it is affordable.
    """
    n, r = spec.n, spec.n - spec.k
    if minor_limit is None:
        minor_limit = budget.minors // 10
    if r == 0:
        raise ValueError("the full space has no parity rows")
    if spec.delta == r + 1:
        subsets = comb(n - 1, min(r, n - r) - 1)
        if subsets <= minor_limit:
            ok, bad, checked = mds_minor_check(F, H, True, budget)
            if not ok:
                raise ParityMismatch(f"{spec.delta=} meets Singleton but columns {bad} are dependent")
            return DistanceCertificate(r + 1, "mds-minors", r + 1, r + 1, None, {"subsets": checked})
        return DistanceCertificate(r + 1, "bch-singleton", r + 1, r + 1, None, {"bch_bound": spec.delta})
    try:
        return block_min_distance(F, H, budget=budget, cyclic=True, want_witness=False)
    except BudgetExceeded:
        return lower_bound(spec.delta, bch_bound=spec.delta)


def _split(F: FieldSpec, req: FamilyRequest, budget: Budget):
    groups, names, full_name = _groups(req)
    n = req.n
    reps = [x for g in groups for x in g]
    full = bch_code(n, F, reps)
    if list(full.reps) != reps:
        raise ParityMismatch(f"cosets of {reps} are not distinct")
    Hx = bch_parity_matrix(full)
    # rows of the expanded matrix keep their source representative, so block sizes follow
    sizes = []
    start = 0
    for g in groups:
        src = set(range(start, start + len(g)))
        sizes.append(sum(1 for s, _ in Hx.labels if s in src))
        start += len(g)
    blocks = {}
    H_full = Hx.data
    blocks[full_name] = BlockRecord(full_name, full, H_full, certify_block(F, full, H_full, budget))
    for name, g in zip(names, groups):
        spec = bch_code(n, F, g)
        H = bch_parity_matrix(spec).data
        blocks[name] = BlockRecord(name, spec, H, certify_block(F, spec, H, budget))
    return H_full, tuple(sizes), blocks, names, full_name


def _check_params(code, claims: Claims, label: str):
    got = (code.n, code.k, code.gamma, code.m if isinstance(code, StabilizerCode) else code.memory)
    want = (claims.n, claims.k, claims.gamma, claims.memory)
    if got != want:
        raise ParityMismatch(f"{label}: computed (n, k, gamma, m) = {got}, claimed {want}")


def _check_distance(cert: DistanceCertificate, claims: Claims, label: str):
    if not cert.exact:
        if cert.lower < claims.d_f:
            raise ParityMismatch(f"{label}: certified lower bound {cert.lower} < claimed {claims.d_f}")
        return
    if claims.d_f_is_lower_bound:
        if cert.value < claims.d_f:
            raise ParityMismatch(f"{label}: d_f = {cert.value} below the claimed bound {claims.d_f}")
    elif cert.value != claims.d_f:
        raise ParityMismatch(f"{label}: d_f = {cert.value}, claimed {claims.d_f}")


def _sandwich_for_dual(rec: CodeRecord, names: list[str], full_name: str) -> DistanceCertificate:
    """min(d_0 + d_m, d) <= d_f <= d for the dual of the split code."""
    d_full = rec.blocks[full_name].distance
    d_blocks = [rec.blocks[nm].distance.lower for nm in (names[0], names[-1])]
    lo, _ = distance_sandwich(d_blocks, d_full.lower)
    hi = d_full.upper if d_full.upper is not None else d_full.value
    return sandwich(lo, hi, d_0=d_blocks[0], d_last=d_blocks[1], d=d_full.value)


def _try(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except BudgetExceeded as exc:
        log.info("out of budget: %s", exc)
        return None


def build(req: FamilyRequest, budget: Budget | None = None, exact: bool = True) -> CodeRecord:
    """Run a family's recipe and certify it against the claimed parameters."""
    req.validate()
    budget = budget or Budget.from_env()
    p, t = _prime_power(req.q)
    quantum = req.family == "thm_main1"
    F = make_field(p, 2 * t) if quantum else make_field(p, t)
    claims, claimed = _claims(req)
    rec = CodeRecord(req, F, claims=claims, claimed=claimed)
    H, sizes, rec.blocks, names, full_name = _split(F, req, budget)
    rec.boundaries = sizes
    V = split_and_lift(SplitPlan(F, H, sizes))
    if quantum:
        rec.emb = make_embedding(make_field(p, t), F)
        dual = hermitian_dual(V, rec.emb)
        rec.dual_form = "hermitian"
    else:
        dual = euclidean_dual(V)
    if dual.gamma != V.gamma or dual.k != V.n - V.k:
        raise ParityMismatch(f"dual has (k, gamma) = ({dual.k}, {dual.gamma}), expected ({V.n - V.k}, {V.gamma})")
    v = rec.verdicts
    v["self_orthogonal"] = is_self_orthogonal(V, "hermitian" if quantum else "euclidean", rec.emb)

    # distances of the dual: sandwich always, exact search where affordable
    sw = _sandwich_for_dual(rec, names, full_name)
    dual_cert = sw
    if exact:
        check = conjugate(V.G, rec.emb) if quantum else V.G
        tr = _try(free_distance_syndrome_trellis, dual, check, budget)
        if tr is not None:
            if not sw.lower <= tr.value <= (sw.upper if sw.upper is not None else tr.value):
                raise ParityMismatch(f"trellis d_f {tr.value} outside sandwich [{sw.lower}, {sw.upper}]")
            notes = dict(tr.notes, sandwich=[sw.lower, sw.upper])
            dual_cert = DistanceCertificate(tr.value, tr.kind, tr.value, tr.value, tr.witness, notes)
    rec.dual = dual.with_distance(dual_cert)

    # distances of V: the block dual distance bounds it below
    d_perp = rec.blocks[full_name].distance
    r_full = H.shape[0]
    v_lower = V.n - r_full + 1 if d_perp.exact and d_perp.value == r_full + 1 else 1
    v_cert = lower_bound(v_lower, source="dual of the full block code")
    if exact and claimed == "V":
        tr = _try(free_distance_generator_trellis, V, budget)
        if tr is not None:
            if tr.value < v_lower:
                raise ParityMismatch(f"trellis d_f {tr.value} below the proven bound {v_lower}")
            v_cert = DistanceCertificate(tr.value, tr.kind, tr.value, tr.value, tr.witness,
                                         dict(tr.notes, theorem_lower=v_lower))
    rec.V = V.with_distance(v_cert)
    rec.theorem_bound = lower_bound(v_lower if claimed == "V" else sw.lower)

    if quantum:
        Z = tuple(rec.blocks[full_name].spec.Z)
        v["hermitian_dual_containing"] = hermitian_dual_containing(Z, V.n, F.q)
        if v["hermitian_dual_containing"] != v["self_orthogonal"]:
            raise ParityMismatch("defining-set criterion disagrees with the matrix-level check")
        purity = None
        if exact and rec.dual.d_f.kind == "exact-trellis":
            floor = _try(frame_weight_floor, V, budget)
            if floor is not None:
                if floor.value < rec.dual.d_f.value:
                    raise ParityMismatch(f"stabilizer has weight {floor.value} < d_f")
                purity = floor.value
        d = rec.dual.d_f
        qcert = DistanceCertificate(
            d.value, "pure-assumed", d.lower, d.upper, d.witness,
            {"classical": d.kind, "purity": "verified" if purity is not None else "assumed",
             **({"stabilizer_weight_floor": purity} if purity is not None else {})},
        )
        S = stabilizer_from_hermitian(V, rec.emb, qcert)
        rec.stabilizer = S
        v["symplectic"] = True
        v["quantum_singleton"] = quantum_singleton_bound(S.n, S.k, S.gamma)
        v["mds"] = is_quantum_mds(S)
        _check_params(S, claims, "stabilizer")
        _check_distance(qcert, claims, "stabilizer")
    else:
        code = rec.code
        _check_params(code, claims, claimed)
        _check_distance(code.d_f, claims, claimed)
        v["singleton"] = singleton_bound(code.n, code.k, code.gamma)
        v["mds"] = is_mds(code) if code.d_f.exact else None
    if claims.mds is not None and v["mds"] is not claims.mds:
        raise ParityMismatch(f"MDS verdict {v['mds']} but the family claims {claims.mds}")
    v["dual_sandwich"] = [sw.lower, sw.upper]
    return rec


def build_or_error(req: FamilyRequest, budget: Budget | None = None, exact: bool = True) -> CodeRecord:
    try:
        return build(req, budget, exact)
    except (MdsConvError, AssertionError, ValueError) as exc:
        return CodeRecord(req, status="error", error=f"{type(exc).__name__}: {exc}")


def enumerate_family(family: str, q_values, budget: Budget | None = None, exact: bool = True) -> list[CodeRecord]:
    """Every valid index for every q, ascending; failures are kept as error records."""
    out = []
    for q in sorted(q_values):
        try:
            validate_q(family, q)
            reqs = family_requests(family, q)
        except IndexOutOfRange as exc:
            out.append(CodeRecord(FamilyRequest(family, q), status="error", error=f"IndexOutOfRange: {exc}"))
            continue
        out.extend(build_or_error(r, budget, exact) for r in reqs)
    return out
