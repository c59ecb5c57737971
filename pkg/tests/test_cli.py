import csv
import io

import pytest

from shiftdrift.cli import fmt, main
from shiftdrift.specfile import gallery_spec_text
from fractions import Fraction

BAD = """drift-spec 1
space S = sunny-side-up
space F = full-shift(0,1)
family fF on F = pairs
automorphism flip on S = blockmap
  forward 0
    0 -> 1
    1 -> 0
  inverse 0
    0 -> 1
    1 -> 0
run full
  space = F
  family = fF
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt():
    assert fmt(Fraction(3)) == "3"
    assert fmt(Fraction(1, 3)) == "0.333333"
    assert fmt(None) == "n/a"


def test_complexity(capsys):
    code, out, _ = run(capsys, "complexity", "--space", "S", "--n-max", "6")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.split("\n", 1)[1])))
    assert [r[1] for r in rows[1:7]] == ["2", "3", "4", "5", "6", "7"]
    assert out.rstrip().endswith("# PASS")


def test_validate_gallery(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert "fail" not in out.replace("# PASS", "")


def test_validate_bad_spec(tmp_path, capsys):
    path = tmp_path / "bad.spec"
    path.write_text(BAD)
    code, out, _ = run(capsys, "validate", "--spec", str(path), "--format", "text")
    assert code == 1
    assert "flip" in out and "FAIL" in out


def test_drift_refuses_full_shift(tmp_path, capsys):
    path = tmp_path / "bad.spec"
    path.write_text(BAD)
    code, out, err = run(capsys, "drift", "--spec", str(path))
    assert code == 1


def test_cocycle_and_measure(capsys):
    code, out, _ = run(capsys, "cocycle", "--run", "sunny")
    assert code == 0 and "sigma," in out
    code, out, _ = run(capsys, "measure", "--run", "sunny")
    assert code == 0 and "1,10,22," in out


def test_drift_sunny(capsys):
    code, out, _ = run(capsys, "drift", "--run", "sunny", "--format", "text")
    assert code == 0
    assert out.rstrip().endswith("PASS")


def test_drift_writes_out_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "drift", "--run", "sunny", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "drift.csv").read_text().startswith("#")


def test_gallery_export_and_list(capsys):
    code, out, _ = run(capsys, "gallery", "export")
    assert code == 0 and out == gallery_spec_text()
    code, out, _ = run(capsys, "gallery", "list")
    assert code == 0 and "sunny" in out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["drift", "--run", "missing"], 2),
        (["drift", "--run", "sunny", "--n-max", "70"], 3),
        (["drift", "--stages", "0"], 2),
        (["complexity", "--space", "Q"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:")


def test_spec_error_exit_code(tmp_path, capsys):
    path = tmp_path / "x.spec"
    path.write_text("drift-spec 1\nautomorphism a on X = shift(1)\n")
    code, _, err = run(capsys, "validate", "--spec", str(path))
    assert code == 2
    assert "line 2, column 19" in err


def test_drift_is_deterministic(capsys):
    first = run(capsys, "drift", "--run", "s-squared")
    second = run(capsys, "drift", "--run", "s-squared")
    assert first == second
