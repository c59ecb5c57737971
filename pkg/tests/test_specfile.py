import pytest

from shiftdrift.automorphisms import apply_to_point, shift_map
from shiftdrift.cli import shipped_spec_text
from shiftdrift.errors import SpecError
from shiftdrift.gallery import MARKER, flip_cocycle, sunny_side_up
from shiftdrift.specfile import format_spec, gallery_spec, gallery_spec_text, load_spec, parse_spec
from shiftdrift.symbolic import Point, shift_point

HEAD = "drift-spec 1\nspace S = sunny-side-up\n"


def test_gallery_round_trip():
    text = gallery_spec_text()
    spec = parse_spec(text)
    assert format_spec(spec) == text
    g = gallery_spec()
    assert spec.spaces == g.spaces
    assert spec.families == g.families
    assert spec.cocycles == g.cocycles
    assert spec.runs == g.runs
    assert set(spec.automorphisms) == set(g.automorphisms)
    for name, (on, a) in spec.automorphisms.items():
        assert g.automorphisms[name][0] == on
        assert a.forward == g.automorphisms[name][1].forward


def test_shipped_spec_is_current_export():
    assert shipped_spec_text() == gallery_spec_text()


def test_load_from_file(tmp_path):
    path = tmp_path / "g.spec"
    path.write_text(gallery_spec_text())
    assert load_spec(path).runs == gallery_spec().runs


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("nope", 1, 1),
        ("drift-spec 1\nspace S = bogus", 2, 11),
        ("drift-spec 1\nautomorphism a on X = shift(1)", 2, 19),
        (HEAD + "automorphism a on S = shift(1", 3, 30),
        (HEAD + "space S = sunny-side-up", 3, 1),
        (HEAD + "run r\n  space = S\n  stages = x", 5, 12),
        (HEAD + "run r\n  space = S\n  max-ratio = 0", 5, 15),
    ],
)
def test_errors_carry_position(text, line, column):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert f"line {line}, column {column}" in str(info.value)
    assert info.value.exit_code == 2


def test_expressions():
    spec = parse_spec(
        HEAD
        + "automorphism a on S = compose(shift(2), inverse(shift(1)))\n"
        + "automorphism b on S = power(a, 3)\n"
    )
    _, a = spec.automorphisms["a"]
    _, b = spec.automorphisms["b"]
    assert apply_to_point(a, MARKER) == shift_point(MARKER, 1)
    assert apply_to_point(b, MARKER) == shift_point(MARKER, 3)


def test_blockmap_and_table_cocycle():
    spec = parse_spec(
        "drift-spec 1\nspace F = full-shift(0,1)\n"
        "automorphism flip on F = blockmap\n  forward 0\n    0 -> 1\n    1 -> 0\n"
        "  inverse 0\n    0 -> 1\n    1 -> 0\n"
        "cocycle f radius 0\n  0 -> 1\n  1 -> -1\n"
    )
    _, flip = spec.automorphisms["flip"]
    assert apply_to_point(flip, Point.constant("0")) == Point.constant("1")
    assert spec.cocycles["f"] == flip_cocycle()


def test_pairs_and_measure_stanzas():
    spec = parse_spec(
        HEAD
        + "pairs p on S\n  |0^omega <1@0> |0^omega ; |0^omega <0@0> |0^omega\n"
        + "space P = orbit-closure(0,1)\n  |01^omega <1@0> |01^omega\n"
        + "measure mu on P\n  1/2 |10^omega <0@0> |10^omega\n  1/2 |01^omega <1@0> |01^omega\n"
    )
    _, pairs = spec.pair_lists["p"]
    assert len(pairs) == 1
    _, mu = spec.measures["mu"]
    assert len(mu.support) == 2


def test_bad_pair_is_reported():
    with pytest.raises(SpecError):
        parse_spec(HEAD + "pairs p on S\n  |0^omega <1@0> |0^omega ; |0^omega <1@0> |0^omega\n")


def test_run_must_reference_defined_objects():
    with pytest.raises(SpecError):
        parse_spec(HEAD + "run r\n  space = T\n")
    with pytest.raises(SpecError):
        parse_spec(HEAD + "run r\n  space = S\n  colour = red\n")
