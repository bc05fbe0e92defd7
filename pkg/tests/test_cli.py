import csv
import json
import math

import numpy as np
import pytest

from sectoria import cli, sweep
from sectoria.matrix_io import read_matrix, write_matrix
from sectoria.sector import is_sector

from conftest import random_pd


@pytest.fixture
def mat(tmp_path):
    def make(name, A):
        path = tmp_path / f"{name}.json"
        write_matrix(path, np.asarray(A, dtype=complex))
        return str(path)
    return make


def test_verify_all_zero_angle(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["verify", "--results", "all", "--n", "4", "--trials", "20",
                     "--alpha", "0.0", "--v", "0.5", "--seed", "7", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["total"]["count"] == report["total"]["passed"] > 0
    assert set(report["results"]) >= {"hm_le_gm", "gm_le_am", "theorem26_i", "det20", "lemma32", "bakherad"}


def test_verify_theorem_at_quarter_pi(capsys):
    code = cli.main(["verify", "--results", "theorem26", "--n", "3", "--trials", "10",
                     "--alpha", "0.785398", "--maps", "identity,pinching", "--seed", "1"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["theorem26_i"]["count"] == 20


@pytest.mark.parametrize("flags", [
    ["--trials", "0"],
    ["--alpha", "1.6"],
    ["--v", "1.5"],
    ["--maps", "shear"],
    ["--results", "tan_xie,bogus"],
    ["--n", "0"],
])
def test_verify_bad_flags(flags):
    assert cli.main(["verify", *flags]) == 2


def test_verify_malformed_flag_values():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--seed", "-3"])
    assert exc.value.code == 2


def test_verify_csv_and_plot(tmp_path):
    out = tmp_path / "r.csv"
    code = cli.main(["verify", "--results", "tan_xie,det_corollary", "--n", "3",
                     "--trials", "4", "--alpha", "0.5", "--out", str(out), "--plot"])
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert tuple(rows[0]) == sweep.CSV_COLUMNS
    assert len(rows) == 4 * 4
    assert all(r["pass"] == "true" for r in rows)
    assert (tmp_path / "r.margins.png").stat().st_size > 0


def test_mean_scalar_geom(mat, tmp_path):
    out = tmp_path / "g.json"
    code = cli.main(["mean", "--kind", "geom", "--v", "0.5", "--a", mat("a", [[2]]),
                     "--b", mat("b", [[8]]), "--out", str(out)])
    assert code == 0
    assert read_matrix(out)[0, 0] == pytest.approx(4.0, rel=1e-10)
    meta = json.loads(out.read_text())
    assert meta["converged"] is True and meta["method"] == "integral_accretive"


def test_mean_pd_matches_closed_form(mat, tmp_path, rng):
    A, B = random_pd(3, rng), random_pd(3, rng)
    w, U = np.linalg.eigh(A)
    ah, amh = (U * w ** 0.5) @ U.conj().T, (U * w ** -0.5) @ U.conj().T
    wc, Uc = np.linalg.eigh(amh @ B @ amh)
    expected = ah @ ((Uc * wc ** 0.3) @ Uc.conj().T) @ ah
    out = tmp_path / "g.json"
    assert cli.main(["mean", "--kind", "geom", "--v", "0.3", "--a", mat("a", A),
                     "--b", mat("b", B), "--out", str(out)]) == 0
    got = read_matrix(out)
    assert np.linalg.norm(got - expected) <= 1e-8 * np.linalg.norm(expected)


def test_mean_endpoint_and_errors(mat, tmp_path, capsys):
    A = [[1 + 1j, 0.2], [0.1, 2]]
    a = mat("a", A)
    b = mat("b", np.eye(2))
    out = tmp_path / "h.json"
    assert cli.main(["mean", "--kind", "harm", "--v", "0", "--a", a, "--b", b,
                     "--out", str(out)]) == 0
    assert np.allclose(read_matrix(out), A, atol=1e-14)
    assert cli.main(["mean", "--kind", "arith", "--v", "0.5", "--a", a, "--b", b]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 2
    assert cli.main(["mean", "--kind", "geom", "--v", "0.5", "--a", a,
                     "--b", mat("bad", [[-1, 0], [0, 1]])]) == 1
    assert cli.main(["mean", "--kind", "geom", "--v", "0.5", "--a", a,
                     "--b", mat("one", [[1]])]) == 2
    assert cli.main(["mean", "--kind", "geom", "--v", "2", "--a", a, "--b", b]) == 2
    missing = str(tmp_path / "nope.json")
    assert cli.main(["mean", "--kind", "geom", "--v", "0.5", "--a", missing, "--b", b]) == 2


def test_angle(mat, capsys):
    assert cli.main(["angle", "--a", mat("i", np.eye(3))]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert cli.main(["angle", "--a", mat("z", [[1 + 1j]])]) == 0
    assert capsys.readouterr().out.strip() == "0.785398163397"
    assert cli.main(["angle", "--a", mat("n", [[1, 0], [0, -1]])]) == 1
    assert capsys.readouterr().out.strip() == "not accretive"


def test_angle_bad_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["angle", "--a", str(bad)]) == 2


def test_range_identity(mat, tmp_path):
    out = tmp_path / "w.csv"
    assert cli.main(["range", "--a", mat("i", np.eye(2)), "--points", "12",
                     "--out", str(out), "--plot"]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 12
    assert all(float(r["re"]) == pytest.approx(1.0) and abs(float(r["im"])) < 1e-12 for r in rows)
    assert (tmp_path / "w.png").stat().st_size > 0


def test_range_points_in_sector(mat, capsys):
    A = np.array([[2 + 0.5j, 0.3], [0.1j, 1 - 0.2j]])
    assert cli.main(["range", "--a", mat("a", A), "--points", "90"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    cli.main(["angle", "--a", mat("a2", A)])
    alpha = float(capsys.readouterr().out)
    for r in rows:
        z = complex(float(r["re"]), float(r["im"]))
        assert abs(math.atan2(z.imag, z.real)) <= alpha + 1e-9
    assert is_sector(A, alpha)


def test_range_too_few_points(mat):
    assert cli.main(["range", "--a", mat("i", np.eye(2)), "--points", "2"]) == 2
