"""Molecular fixture generation and figure rendering for ferrtree outputs."""

from .generate import MoleculeSpec, generate_hamiltonian, spin_orbital_hamiltonian
from .scf import run_rhf

__version__ = "0.1.0"
