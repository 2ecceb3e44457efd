import csv
import io
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from golden import GIES1_ROWS
from gieseking.cli import main

JSON_KEYS = ["branch", "k", "z_re", "z_im", "alpha1", "alpha2", "alpha3",
             "v_re", "v_im", "phi", "volume", "classification", "cone_angle"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "--branch", "gies1", "--k", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert list(data) == JSON_KEYS
    assert abs(data["volume"] - 0.696701139104) <= 1e-9
    assert data["classification"] == "orbifold"


def test_solve_gies4_matches_gies3_volume(capsys):
    _, out, _ = run(capsys, "solve", "--branch", "gies4", "--k", "3", "--format", "json")
    assert abs(json.loads(out)["volume"] - 0.865129197896) <= 1e-9


def test_solve_text(capsys):
    code, out, _ = run(capsys, "solve", "--branch", "gies3", "--k", "9")
    assert code == 0
    assert "Gies.3" in out and "0.997471628531" in out


def test_solve_k1_is_usage_error(capsys):
    code, _, err = run(capsys, "solve", "--branch", "gies1", "--k", "1")
    assert code == 2
    assert "k=1 splitting" in err


@pytest.mark.parametrize("argv", [
    ["solve", "--branch", "gies9", "--k", "2"],
    ["solve", "--branch", "gies1", "--k", "two"],
    ["solve", "--branch", "gies1"],
    ["lobachevsky", "--theta", "abc"],
    ["lobachevsky", "--theta", "nan"],
    ["verify", "--branch", "gies1", "--k", "2", "--tol", "-1"],
    ["frobnicate"],
    [],
])
def test_bad_arguments_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_table_preset_csv(capsys):
    code, out, _ = run(capsys, "table", "--branch", "gies1", "--paper", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert rows[0]["k"] == "1/2 i.e. k=2"
    assert rows[-1]["k"] == "k->inf"
    for row, gold in zip(rows, GIES1_ROWS):
        assert abs(float(row["z_re"]) - gold.z.real) <= 1e-9
        assert abs(float(row["z_im"]) - gold.z.imag) <= 1e-9
        assert abs(float(row["volume"]) - gold.volume) <= 1e-9
        for key in ("z_re", "z_im", "alpha1", "volume"):
            assert len(row[key].split(".")[1]) == 12
    assert float(rows[-1]["z_re"]) == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-12)
    assert float(rows[-1]["volume"]) == 0


def test_table_k_list(capsys):
    _, out, _ = run(capsys, "table", "--branch", "gies2", "--k-list", "3", "--format", "json")
    rows = json.loads(out)
    assert len(rows) == 1 and rows[0]["volume"] == "0.486617604149"
    _, out, _ = run(capsys, "table", "--branch", "gies3", "--k-list", "50", "--format", "json")
    assert json.loads(out)[0]["volume"] == "1.014371909442"


def test_table_markdown_and_check_limit(capsys):
    code, out, err = run(capsys, "table", "--branch", "gies3", "--paper", "--check-limit")
    assert code == 0
    assert out.startswith("| k |")
    assert out.count("\n") == 2 + 6
    assert "limit check k=10000" in err


def test_table_without_k_is_usage_error(capsys):
    code, _, _ = run(capsys, "table", "--branch", "gies1")
    assert code == 2
    code, _, _ = run(capsys, "table", "--branch", "gies1", "--k-list", "3", "1")
    assert code == 2


@pytest.mark.parametrize("b,k", [("gies1", 2), ("gies3", 9)])
def test_verify_passes(capsys, b, k):
    code, out, _ = run(capsys, "verify", "--branch", b, "--k", str(k))
    assert code == 0
    assert "all relators hold" in out


def test_verify_perturbed_fails(capsys):
    code, out, _ = run(capsys, "verify", "--branch", "gies3", "--k", "9", "--perturb", "1e-3")
    assert code == 1
    assert "VERIFICATION FAILED" in out


def test_render_writes_svg(tmp_path, capsys):
    out = tmp_path / "t.svg"
    assert main(["render", "--branch", "gies1", "--k", "3", "--depth", "6", "--out", str(out)]) == 0
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")
    again = tmp_path / "t2.svg"
    main(["render", "--branch", "gies1", "--k", "3", "--depth", "6", "--out", str(again)])
    assert out.read_bytes() == again.read_bytes()


def test_render_depth_zero(tmp_path):
    out = tmp_path / "t.svg"
    assert main(["render", "--branch", "gies2", "--k", "4", "--depth", "0", "--out", str(out)]) == 0
    assert out.read_bytes().count(b"<path") == 1


def test_render_bad_depth(capsys):
    code, _, _ = run(capsys, "render", "--branch", "gies1", "--k", "3", "--depth", "13")
    assert code == 2


def test_render_unwritable_path(tmp_path, capsys):
    target = tmp_path / "missing" / "t.svg"
    code, _, err = run(capsys, "render", "--branch", "gies1", "--k", "3", "--depth", "1",
                       "--out", str(target))
    assert code == 1
    assert "error" in err


def test_limit_json(capsys):
    _, out, _ = run(capsys, "limit", "--branch", "gies3")
    data = json.loads(out)
    assert data["v_re"] == "inf"
    assert abs(data["volume"] - 1.014941606409) <= 1e-9


def test_lobachevsky_outputs(capsys):
    total = 0.0
    for _ in range(3):
        _, out, _ = run(capsys, "lobachevsky", "--theta", "1.0471975511965976")
        total += float(out)
    assert abs(total - 1.014941606409) <= 1e-9
    assert run(capsys, "lobachevsky", "--theta", "0")[1] == "0.000000000000\n"
    assert run(capsys, "lobachevsky", "--theta", str(math.pi))[1] == "0.000000000000\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gieseking", "solve", "--branch", "gies1",
                           "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 2
