import json
import subprocess
import sys
from pathlib import Path

import pytest

from chem_ingest.generate import (BUILTIN_MOLECULES, MoleculeSpec,
                                  generate_hamiltonian, water_geometry)

REPO_FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"

TABLE5 = {"h2": (4, 36), "lih": (12, 1860), "h2o": (14, 5774)}


def ferrtree_metrics(path: Path) -> dict:
    """Term counts as reported by the primary CLI (external interface)."""
    out = subprocess.run(
        [sys.executable, "-m", "ferrtree.cli", "metrics",
         "--hamiltonian", str(path)],
        capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


class TestFixtureCounts:
    @pytest.mark.parametrize("key", ["h2", "lih", "h2o"])
    def test_generated_counts_match_reference_table(self, key, tmp_path):
        spec = BUILTIN_MOLECULES[key]()
        out = tmp_path / f"{key}.json"
        info = generate_hamiltonian(spec, out)
        modes, terms = TABLE5[key]
        assert info["n_modes"] == modes
        assert info["n_terms"] == terms
        # round-trip through the primary loader, no warnings/errors
        doc = ferrtree_metrics(out)
        assert doc["n_modes"] == modes
        assert doc["n_terms_fermionic"] == terms

    @pytest.mark.parametrize("key", ["h2", "lih", "h2o"])
    def test_committed_fixture_matches_generator(self, key, tmp_path):
        out = tmp_path / f"{key}.json"
        generate_hamiltonian(BUILTIN_MOLECULES[key](), out)
        committed = json.loads((REPO_FIXTURES / f"{key}_sto3g.json").read_text())
        fresh = json.loads(out.read_text())
        assert fresh == committed


class TestManifest:
    def test_round_trip(self, tmp_path):
        spec = MoleculeSpec("H2", [("H", 0.0, 0.0, 0.0), ("H", 0.0, 0.0, 0.74)])
        path = tmp_path / "h2_manifest.json"
        spec.save(path)
        back = MoleculeSpec.load(path)
        assert back.name == "H2" and back.geometry == spec.geometry

    def test_empty_geometry_rejected(self):
        with pytest.raises(ValueError):
            MoleculeSpec("empty", [])

    def test_unknown_basis_rejected(self):
        with pytest.raises(ValueError):
            MoleculeSpec("H2", [("H", 0, 0, 0)], basis="6-31G*")

    def test_geometry_recorded_in_fixture_metadata(self, tmp_path):
        out = tmp_path / "h2.json"
        generate_hamiltonian(BUILTIN_MOLECULES["h2"](), out)
        doc = json.loads(out.read_text())
        assert doc["metadata"]["molecule"] == "H2"
        assert len(doc["metadata"]["geometry_angstrom"]) == 2
        assert "scf_energy_hartree" in doc["metadata"]


class TestScf:
    def test_known_energies(self):
        from chem_ingest.scf import run_rhf
        assert run_rhf(BUILTIN_MOLECULES["h2"]().geometry).energy == \
            pytest.approx(-1.116684, abs=2e-5)
        assert run_rhf(water_geometry(1.0)).energy == \
            pytest.approx(-74.962928, abs=2e-5)

    def test_open_shell_rejected(self):
        from chem_ingest.scf import SCFError, run_rhf
        with pytest.raises(SCFError):
            run_rhf([("H", 0.0, 0.0, 0.0)])
