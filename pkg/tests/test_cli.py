import io
import json
import pathlib
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obinv.cli import (
    DocumentSyntaxError,
    InputDocument,
    SchemaError,
    main,
    parse_input,
    render_input,
)
from obinv.page_model import DehnTwist, KnotOnPage, OpenBookSpec
from curves import random_page, random_simple_curve

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


GOLDEN_CASES = [
    ("four_twist_book.invariants.json", ["invariants", "four_twist_book.json", "--both-levels"]),
    ("four_twist_book.contact.json", ["contact", "four_twist_book.json"]),
    ("four_twist_book.presentation.json", ["presentation", "four_twist_book.json"]),
    ("planar_stabilized.invariants.json", ["invariants", "planar_stabilized.json"]),
    ("torus_empty.invariants.json", ["invariants", "torus_empty.json"]),
    ("torus_empty.homology.json", ["homology", "torus_empty.json"]),
    ("lens_power.invariants.json", ["invariants", "lens_power.json", "--rational"]),
]


@pytest.mark.parametrize("golden,argv", GOLDEN_CASES, ids=[g for g, _ in GOLDEN_CASES])
def test_golden_outputs(capsys, golden, argv):
    argv = [argv[0], str(DATA / argv[1]), *argv[2:], "--format", "json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / golden).read_text())


def test_golden_word_rot(capsys):
    code, out, _ = run(capsys, "word-rot", "a1", "b2", "a2", "B4", "A3", "b2", "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / "word_rot.json").read_text())


def test_four_twist_book_values(capsys):
    code, out, _ = run(capsys, "invariants", str(DATA / "four_twist_book.json"), "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert (rep["tb"], rep["rot"], rep["sl_plus"], rep["sl_minus"], rep["d3"]) == (-3, 0, -3, -3, "-1/2")


def test_word_rot_text(capsys):
    code, out, _ = run(capsys, "word-rot", "a1 b2 a2 B4 A3 b2")
    assert code == 0
    fields = dict(line.split(" : ", 1) for line in out.splitlines())
    assert {k.strip(): v for k, v in fields.items()}["r"] == "1"


def test_homology_torus(capsys):
    code, out, _ = run(capsys, "homology", str(DATA / "torus_empty.json"))
    assert code == 0
    assert "Z^2" in out


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((DATA / "four_twist_book.json").read_text()))
    code, out, _ = run(capsys, "contact", "-", "--format", "json")
    assert code == 0 and json.loads(out)["d3"] == "-1/2"


def test_not_nullhomologous_is_success(capsys):
    code, out, _ = run(capsys, "invariants", str(DATA / "torus_empty.json"), "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "not_rationally_nullhomologous"


def test_level_flag(capsys):
    code, out, _ = run(capsys, "invariants", str(DATA / "four_twist_book.json"), "--level", "low", "--format", "json")
    assert code == 0 and json.loads(out)["level"] == "low"


def test_expanded_flag_matches(capsys):
    _, a, _ = run(capsys, "invariants", str(DATA / "lens_power.json"), "--rational", "--format", "json")
    _, b, _ = run(capsys, "invariants", str(DATA / "lens_power.json"), "--rational", "--expanded", "--format", "json")
    a, b = json.loads(a), json.loads(b)
    for key in ("verdict", "tb", "rot", "h1", "euler_zero", "euler_torsion", "d3"):
        assert a[key] == b[key]


def test_text_and_json_agree(capsys):
    path = str(DATA / "four_twist_book.json")
    _, js, _ = run(capsys, "invariants", path, "--both-levels", "--format", "json")
    _, text, _ = run(capsys, "invariants", path, "--both-levels")
    rep = json.loads(js)
    lines = {line.split(" : ", 1)[0].strip(): line.split(" : ", 1)[1] for line in text.splitlines() if " : " in line}
    for key in ("tb", "rot", "sl_plus", "sl_minus", "d3", "signature", "h1", "rot_indeterminacy"):
        assert lines[key] == str(rep[key])
    assert lines["solution"] == "[" + ", ".join(str(v) for v in rep["solution"]) + "]"


def test_bad_token_schema_error():
    doc = '{"page": {"genus": 1, "holes": 0}, "monodromy": [{"word": ["c3"]}]}'
    with pytest.raises(SchemaError) as exc:
        parse_input(doc)
    assert "c3" in str(exc.value)
    assert exc.value.path == "monodromy[0].word[0]"


def test_power_zero_schema_error():
    doc = '{"page": {"genus": 1, "holes": 0}, "monodromy": [{"word": ["a1"], "power": 0}]}'
    with pytest.raises(SchemaError) as exc:
        parse_input(doc)
    assert exc.value.path == "monodromy[0].power"


def test_unknown_field_rejected():
    doc = '{"page": {"genus": 1, "holes": 0}, "monodromy": [], "colour": "red"}'
    with pytest.raises(SchemaError):
        parse_input(doc)


def test_index_out_of_range_is_schema_error():
    doc = '{"page": {"genus": 0, "holes": 2}, "monodromy": [], "knot": {"word": ["a1"]}}'
    with pytest.raises(SchemaError) as exc:
        parse_input(doc)
    assert exc.value.path == "knot.word"


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as exc:
        parse_input('{"page": {"genus": 1,\n  }')
    assert exc.value.line == 2


def test_error_exit_status(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"page": {"genus": 1, "holes": 0}, "monodromy": [{"word": ["c3"]}]}')
    code, out, err = run(capsys, "contact", str(bad))
    assert code == 1 and out == "" and "c3" in err
    code, _, err = run(capsys, "invariants", str(tmp_path / "missing.json"))
    assert code == 1


def test_invariants_needs_knot(capsys, tmp_path):
    doc = tmp_path / "noknot.json"
    doc.write_text('{"page": {"genus": 1, "holes": 0}, "monodromy": []}')
    code, _, err = run(capsys, "invariants", str(doc))
    assert code == 1 and "knot" in err


def test_unknown_subcommand_and_flag():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit) as exc:
        main(["contact", "--no-such-flag"])
    assert exc.value.code != 0


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "obinv.cli", "word-rot", "a1", "b2", "a2", "A3", "b3", "b2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "rho_plus" in proc.stdout


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip(seed):
    rng = random.Random(seed)
    page = random_page(rng)
    twists = tuple(
        DehnTwist(random_simple_curve(page, rng), rng.choice([1, -1]), rng.randint(1, 3))
        for _ in range(rng.randint(0, 3))
    )
    knot = KnotOnPage(random_simple_curve(page, rng), rng.choice(["high", "low"])) if rng.random() < 0.8 else None
    doc = InputDocument(OpenBookSpec(page, twists), knot)
    assert parse_input(render_input(doc)) == doc
