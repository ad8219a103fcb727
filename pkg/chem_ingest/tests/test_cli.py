import json
import subprocess
import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def chem_ingest(*argv):
    return subprocess.run([sys.executable, "-m", "chem_ingest.cli", *argv],
                          capture_output=True, text=True)


def ferrtree(*argv):
    subprocess.run([sys.executable, "-m", "ferrtree.cli", *argv],
                   capture_output=True, text=True, check=True)


def test_generate_builtin(tmp_path):
    out = tmp_path / "h2.json"
    res = chem_ingest("generate", "h2", str(out))
    assert res.returncode == 0, res.stderr
    assert "4 modes, 36 terms" in res.stdout
    assert json.loads(out.read_text())["format"] == "fermionic-1"


def test_generate_from_manifest(tmp_path):
    manifest = tmp_path / "mol.json"
    manifest.write_text(json.dumps({
        "name": "H2-stretched", "basis": "STO-3G",
        "geometry": [["H", 0.0, 0.0, 0.0], ["H", 0.0, 0.0, 1.1]]}))
    out = tmp_path / "h2s.json"
    res = chem_ingest("generate", str(manifest), str(out))
    assert res.returncode == 0, res.stderr
    assert out.exists()


def test_generate_error_reporting(tmp_path):
    res = chem_ingest("generate", str(tmp_path / "missing.json"),
                      str(tmp_path / "out.json"))
    assert res.returncode == 1
    assert "error:" in res.stderr


def test_render_commands(tmp_path):
    scatter_csv = tmp_path / "s.csv"
    ferrtree("scatter", "--tree", "jw",
             "--hamiltonian", str(FIXTURES / "h2_sto3g.json"),
             "--samples", "20", "--seed", "3", "--sa-steps", "20",
             "--out", str(scatter_csv))
    out_png = tmp_path / "s.png"
    res = chem_ingest("render-scatter", str(scatter_csv), str(out_png))
    assert res.returncode == 0, res.stderr
    assert out_png.exists()

    depth_csv = tmp_path / "d.csv"
    ferrtree("qdrift", "--hamiltonian", str(FIXTURES / "h2_sto3g.json"),
             "--encodings", "jw", "--t", "0.02", "--t-max", "0.1",
             "--t-steps", "5", "--shots", "10", "--seed", "3",
             "--out", str(depth_csv))
    for cmd, name in (("render-depth-curve", "curve.png"),
                      ("render-depth-dist", "dist.png")):
        out = tmp_path / name
        res = chem_ingest(cmd, str(depth_csv), str(out))
        assert res.returncode == 0, res.stderr
        assert out.exists()
