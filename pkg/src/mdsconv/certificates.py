"""Typed distance certificates shared by the convolution, distance and quantum modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# kinds that certify an exact value
EXACT_KINDS = ("exact-trellis", "sandwich", "exhaustive", "mds-minors", "bch-singleton", "pure-assumed")
CONV_KINDS = ("exact-trellis", "sandwich", "lower-bound", "pure-assumed")


@dataclass(frozen=True, eq=False)
class DistanceCertificate:
    value: int
    kind: str
    lower: int
    upper: Optional[int]
    witness: Optional[np.ndarray] = None  # frames x n for convolutional codes, n for block codes
    notes: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.kind in EXACT_KINDS

    def summary(self) -> dict:
        out = {"value": int(self.value), "certificate": self.kind, "lower": int(self.lower)}
        out["upper"] = None if self.upper is None else int(self.upper)
        return out


def lower_bound(value: int, **notes) -> DistanceCertificate:
    return DistanceCertificate(int(value), "lower-bound", int(value), None, None, dict(notes))


def sandwich(lower: int, upper: int, **notes) -> DistanceCertificate:
    if lower != upper:
        return DistanceCertificate(int(lower), "lower-bound", int(lower), int(upper), None, dict(notes))
    return DistanceCertificate(int(lower), "sandwich", int(lower), int(upper), None, dict(notes))
