"""Convolutional BCH codes, their MDS certificates and derived quantum convolutional codes."""
from .certificates import DistanceCertificate
from .convolution import ConvCode, SplitPlan, euclidean_dual, hermitian_dual, singleton_bound, split_and_lift
from .cyclic import BchSpec, bch_code, bch_parity_matrix, coset
from .distance import Budget, free_distance_generator_trellis, free_distance_syndrome_trellis
from .errors import MdsConvError
from .families import CodeRecord, FamilyRequest, build, enumerate_family
from .galois import FieldSpec, make_field
from .linalg import PolyMat
from .quantum import StabilizerCode, quantum_singleton_bound

__all__ = [
    "BchSpec", "Budget", "CodeRecord", "ConvCode", "DistanceCertificate", "FamilyRequest", "FieldSpec",
    "MdsConvError", "PolyMat", "SplitPlan", "StabilizerCode", "bch_code", "bch_parity_matrix", "build",
    "coset", "enumerate_family", "euclidean_dual", "free_distance_generator_trellis",
    "free_distance_syndrome_trellis", "hermitian_dual", "make_field", "quantum_singleton_bound",
    "singleton_bound", "split_and_lift",
]
