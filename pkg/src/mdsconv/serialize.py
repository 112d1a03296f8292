"""Text and JSON forms of matrices, codes and family records.

Matrix text: one row per line, entries separated by ", ".  A polynomial entry is
written as [c0 c1 ... cm] (ascending powers of D); a constant is a bare integer.
Field elements use the integer encoding sum c_i p^i.
"""
from __future__ import annotations

import json
import re

import numpy as np

from .certificates import DistanceCertificate
from .convolution import ConvCode
from .galois import FieldSpec, field_from_dict
from .linalg import PolyMat
from .quantum import StabilizerCode

_ENTRY = re.compile(r"\[([^\]]*)\]|(-?\d+)")


def matrix_to_text(M) -> str:
    if isinstance(M, PolyMat):
        C = M.coeffs
    else:
        C = np.asarray(M, dtype=np.int64)
        C = C[None] if C.ndim == 2 else C
    L, k, n = C.shape
    lines = []
    for i in range(k):
        cells = []
        for j in range(n):
            c = [int(x) for x in C[:, i, j]]
            while len(c) > 1 and c[-1] == 0:
                c.pop()
            cells.append(str(c[0]) if len(c) == 1 else "[" + " ".join(map(str, c)) + "]")
        lines.append(", ".join(cells))
    return "\n".join(lines)


def matrix_from_text(text: str, F: FieldSpec) -> PolyMat:
    rows = []
    for line in text.strip().splitlines():
        if not line.strip():
            continue
        row = []
        for m in _ENTRY.finditer(line):
            if m.group(1) is not None:
                row.append([int(x) for x in m.group(1).split()] or [0])
            else:
                row.append([int(m.group(2))])
        rows.append(row)
    if not rows or len({len(r) for r in rows}) != 1:
        raise ValueError("matrix text has ragged or empty rows")
    L = max(len(c) for r in rows for c in r)
    C = np.zeros((L, len(rows), len(rows[0])), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, c in enumerate(r):
            C[: len(c), i, j] = c
    if (C < 0).any() or (C >= F.q).any():
        raise ValueError(f"matrix entries outside GF({F.q})")
    return PolyMat(F, C)


def _plain(x):
    """Recursively convert numpy scalars and arrays to JSON-native values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def cert_to_dict(cert: DistanceCertificate | None) -> dict | None:
    if cert is None:
        return None
    out = cert.summary()
    if cert.witness is not None:
        w = np.asarray(cert.witness, dtype=np.int64)
        out["witness"] = matrix_to_text(w[:, None, :] if w.ndim == 2 else w[None, None, :])
    out["notes"] = _plain(cert.notes)
    return out


def cert_from_dict(d: dict | None, F: FieldSpec) -> DistanceCertificate | None:
    if d is None:
        return None
    w = None
    if d.get("witness"):
        w = matrix_from_text(d["witness"], F).coeffs[:, 0, :]
    return DistanceCertificate(int(d["value"]), d["certificate"], int(d["lower"]),
                               None if d.get("upper") is None else int(d["upper"]), w, d.get("notes", {}))


def conv_to_dict(C: ConvCode) -> dict:
    return {"n": C.n, "k": C.k, "gamma": C.gamma, "memory": C.memory,
            "d_f": cert_to_dict(C.d_f), "G": matrix_to_text(C.G)}


def conv_from_dict(d: dict, F: FieldSpec) -> ConvCode:
    return ConvCode(F, matrix_from_text(d["G"], F), cert_from_dict(d.get("d_f"), F))


def stabilizer_to_dict(S: StabilizerCode) -> dict:
    return {"n": S.n, "k": S.k, "m": S.m, "gamma": S.gamma, "q": S.q, "d_f": cert_to_dict(S.d_f),
            "X": matrix_to_text(S.X), "Z": matrix_to_text(S.Z)}


def stabilizer_from_dict(d: dict, base: FieldSpec) -> StabilizerCode:
    X = matrix_from_text(d["X"], base)
    Z = matrix_from_text(d["Z"], base)
    L = max(X.coeffs.shape[0], Z.coeffs.shape[0])
    S = np.zeros((L, X.rows, 2 * X.cols), dtype=np.int64)
    S[: X.coeffs.shape[0], :, : X.cols] = X.coeffs
    S[: Z.coeffs.shape[0], :, X.cols:] = Z.coeffs
    return StabilizerCode(int(d["n"]), int(d["k"]), int(d["m"]), int(d["gamma"]), int(d["q"]),
                          PolyMat(base, S), cert_from_dict(d.get("d_f"), base))


def record_to_dict(rec) -> dict:
    req = rec.request
    out = {"family": req.family, "q": req.q, "index": req.index(), "status": rec.status}
    if rec.status != "ok":
        out["error"] = rec.error
        return out
    out["field"] = rec.F.to_dict()
    if rec.emb is not None:
        out["base_field"] = rec.emb.base.to_dict()
    out["claimed"] = rec.claimed
    out["claims"] = rec.claims.to_dict()
    out["block_codes"] = {
        name: dict(b.spec.to_dict(), reps=list(b.spec.reps), distance=cert_to_dict(b.distance),
                   H=matrix_to_text(b.H))
        for name, b in rec.blocks.items()
    }
    out["split"] = list(rec.boundaries)
    out["V"] = conv_to_dict(rec.V)
    out["dual"] = conv_to_dict(rec.dual)
    out["dual_form"] = rec.dual_form
    out["theorem_bound"] = cert_to_dict(rec.theorem_bound)
    out["verdicts"] = _plain(rec.verdicts)
    if rec.stabilizer is not None:
        S = rec.stabilizer
        out["quantum"] = {"n": S.n, "k": S.k, "m": S.m, "gamma": S.gamma, "d_f": S.d_f.value}
        out["stabilizer"] = stabilizer_to_dict(S)
    out["row"] = rec.row()
    return out


def dumps(obj) -> str:
    """Deterministic one-line JSON: spaced top-level keys, compact nested values."""
    if not isinstance(obj, dict):
        return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)
    items = (f"{json.dumps(str(k), ensure_ascii=False)}: {json.dumps(v, separators=(',', ':'), ensure_ascii=False)}"
             for k, v in obj.items())
    return "{" + ", ".join(items) + "}"


def field_of(d: dict) -> FieldSpec:
    return field_from_dict(d["field"])
