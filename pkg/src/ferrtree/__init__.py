"""Ternary-tree fermion-qubit encodings with topology-preserving optimization."""

from .pauli import PauliString, Phase
from .hamiltonians import (
    MajoranaHamiltonian,
    QubitHamiltonian,
    FermionicIntegrals,
    from_fermionic,
    encode,
    lambda_norm,
    weight_metrics,
)
from .trees import TernaryTree, DeviceGraph, build_standard, build_bonsai, naive_tree
from .encodings import (
    Encoding,
    EnumerationScheme,
    strings_from_tree,
    apply_enumeration,
    validate,
    nto_matrix,
    build_maxnto,
)

__version__ = "0.1.0"
