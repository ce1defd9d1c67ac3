"""Two-color partition families with difference conditions, their bijections
onto classical partition classes, and a truncated q-series engine to check
the matching generating functions."""

from .partitions import (
    ConstraintSet,
    DomainError,
    Partition,
    TripleDecomposition,
    conjugate,
    durfee_side,
    enumerate_partitions,
    from_triple,
    to_triple,
)
from .families import (
    Color,
    LdRules,
    ProfileWord,
    TwoColorPartition,
    classify_z,
    enumerate_A,
    enumerate_B,
    enumerate_D,
    enumerate_Ld,
    enumerate_W,
    is_basis,
    is_in_A,
    is_in_Ld,
    is_in_W,
    word_weight,
)
from .bijections import (
    PartitionPair,
    eta,
    eta_inverse,
    phi,
    phi_inverse,
    psi,
    psi_inverse,
    theta,
    theta_inverse,
    two_indent,
)

__version__ = "0.1.0"
