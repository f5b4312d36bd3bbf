import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz import algebra as alg
from leibniz import extensions as ext
from leibniz import families as fam
from leibniz import tensorfile as tf
from leibniz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    rep = json.loads(out)
    assert rep["exit_code"] == code
    return code, rep


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


# -- file format -----------------------------------------------------------------


def test_tensor_roundtrip_families():
    for L in [fam.l_n(4), fam.s2(), fam.kronecker(2), fam.dieudonne(2), fam.heisenberg([[Fraction(1, 3)]]),
              fam.abelian(0), fam.paper_presentation(4, [Fraction(-2, 7), 1], [0, 5])]:
        text = tf.dumps_tensor(L)
        assert tf.loads_tensor(text) == L
        assert tf.dumps_tensor(tf.loads_tensor(text)) == text


@given(st.lists(st.fractions(max_denominator=9), min_size=2, max_size=2),
       st.lists(st.fractions(max_denominator=9), min_size=2, max_size=2))
@settings(max_examples=40, deadline=None)
def test_extension_roundtrip(a, b):
    E = ext.paper_family_extension(4, a, b)
    text = tf.dumps_extension(E)
    assert tf.loads_extension(text) == E
    assert tf.dumps_extension(tf.loads_extension(text)) == text


def test_ln_file_layout():
    obj = json.loads(tf.dumps_tensor(fam.l_n(4)))
    assert obj["brackets"] == [{"left": 1, "right": 0, "result": {"0": "1"}}]
    assert obj["basis"] == ["e1", "e2", "f3", "f4"]


@pytest.mark.parametrize("value", ["2/4", "1/1", "01", "1.5", "-0", "1/-2", 3, "", "+1"])
def test_rational_strings_rejected(value):
    with pytest.raises(tf.FormatError):
        tf.parse_rational(value)


def test_rational_strings_accepted():
    assert tf.parse_rational("-3/7") == Fraction(-3, 7)
    assert tf.parse_rational("0") == 0


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"format": "other", "dim": 1, "brackets": []},
        {"format": tf.TENSOR_FORMAT, "dim": -1, "brackets": []},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "brackets": [{"left": 2, "right": 0, "result": {}}]},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "brackets": [{"left": 0, "right": 0, "result": {"5": "1"}}]},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "brackets": [{"left": 0, "right": 0}]},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "brackets": [{"left": 0, "right": 0, "result": {}}] * 2},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "basis": ["a"], "brackets": []},
        {"format": tf.TENSOR_FORMAT, "dim": 2, "brackets": [{"left": True, "right": 0, "result": {}}]},
    ],
)
def test_bad_tensor_objects(obj):
    with pytest.raises(tf.FormatError):
        tf.tensor_from_obj(obj)


def test_matrix_files():
    assert tf.loads_matrix("[[\"1\", \"0\"], [\"0\", \"1\"]]") == ((1, 0), (0, 1))
    M = ((Fraction(1, 2), 0), (3, -1))
    assert tf.loads_matrix(tf.dumps_matrix(M)) == M
    with pytest.raises(tf.FormatError):
        tf.loads_matrix("[[\"1\"], [\"0\", \"1\"]]")


# -- subcommands -------------------------------------------------------------------


def test_family_outputs(capsys):
    code, out, _ = run(capsys, "family", "ln", "--n", "4")
    assert code == 0
    assert json.loads(out)["brackets"] == [{"left": 1, "right": 0, "result": {"0": "1"}}]
    code, out, _ = run(capsys, "family", "abelian", "--n", "3")
    assert json.loads(out)["brackets"] == []
    code, out, _ = run(capsys, "family", "paper-presentation", "--n", "3", "--alpha", "1", "--beta", "2")
    assert len(json.loads(out)["brackets"]) == 4
    code, out, _ = run(capsys, "family", "heisenberg", "--poly=-1,1", "--k", "2")
    assert tf.loads_tensor(out) == fam.heisenberg([[0, -1], [1, 2]])


@pytest.mark.parametrize("argv", [
    ["family", "ln"],
    ["family", "ln", "--n", "1"],
    ["family", "paper-presentation", "--n", "4", "--alpha", "1,x"],
    ["family", "paper-presentation", "--n", "4", "--alpha", "1"],
    ["rack-check", "--variant", "conj", "--dim", "3"],
    ["rack-check", "--variant", "corrected", "--dim", "2", "--h", "0"],
    ["ext-family", "--n", "4", "--alpha", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["family", "nonsense"])
    assert info.value.code == 2


def test_analyze(capsys, write):
    f = write("l4.json", tf.dumps_tensor(fam.l_n(4)))
    code, rep = report(capsys, "analyze", f)
    r = rep["results"]
    assert code == 0 and rep["status"] == "pass"
    assert r["solvability_step"] == 2 and r["nilpotency_step"] is None
    assert r["leibniz_kernel"]["dim"] == 1 and r["left_center"]["dim"] == 3
    assert rep["input_digest"].startswith("sha256:")
    f = write("k2.json", tf.dumps_tensor(fam.kronecker(2)))
    code, rep = report(capsys, "analyze", f)
    assert rep["results"]["nilpotency_step"] == 2 and rep["results"]["is_symmetric"]


def test_analyze_non_leibniz_exit_1(capsys, write):
    L = alg.from_brackets(2, {(0, 0): {1: 1}, (1, 0): {1: 1}})
    code, rep = report(capsys, "analyze", write("bad.json", tf.dumps_tensor(L)))
    assert code == 1 and rep["results"]["left_leibniz_witness"] is not None


@pytest.mark.parametrize("text", ["{", "[]", '{"format": "leibniz-tensor/1", "dim": 2, "brackets": [{"left": 0, "right": 0, "result": {"0": "2/4"}}]}'])
def test_corrupted_file_exit_2(capsys, write, text):
    code, out, err = run(capsys, "analyze", write("c.json", text))
    assert code == 2 and out == ""


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "der", str(tmp_path / "nope.json"))[0] == 2


def test_map_spaces(capsys, write):
    code, rep = report(capsys, "der", write("l5.json", tf.dumps_tensor(fam.l_n(5))))
    assert code == 0 and rep["results"]["dim"] == 13
    code, rep = report(capsys, "bider", write("s2.json", tf.dumps_tensor(fam.s2())))
    assert rep["results"]["dim"] == 2
    code, rep = report(capsys, "ader", write("a2.json", tf.dumps_tensor(fam.abelian(2))))
    assert rep["results"]["dim"] == 4


def test_aut_check(capsys, write):
    f = write("l3.json", tf.dumps_tensor(fam.l_n(3)))
    ident = write("id.json", tf.dumps_matrix(((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    assert report(capsys, "aut-check", f, ident)[0] == 0
    bad = write("bad.json", json.dumps([["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]))
    code, rep = report(capsys, "aut-check", f, bad)
    assert code == 1 and rep["results"]["witness"]["pair"] == [1, 0]
    wrong = write("w.json", tf.dumps_matrix(((1, 0), (0, 1))))
    assert run(capsys, "aut-check", f, wrong)[0] == 2


def test_extension_commands(capsys, write, tmp_path):
    out = str(tmp_path / "e.json")
    assert run(capsys, "ext-family", "--n", "4", "--alpha", "1,2", "--beta", "3,0", "-o", out)[0] == 0
    code, rep = report(capsys, "ext-check", out)
    assert code == 0 and rep["results"]["failed"] == []
    code, rep = report(capsys, "ext-build", out)
    assert code == 0
    built = tf.tensor_from_obj(rep["results"]["tensor"])
    assert alg.transport(built, ext.presentation_order(2)).table == fam.paper_presentation(4, [1, 2], [3, 0]).table

    obj = json.loads(open(out).read())
    obj["omega"][0][0] = ["0", "5"]
    bad = write("bad.json", json.dumps(obj))
    code, rep = report(capsys, "ext-build", bad)
    assert code == 1 and "tensor" not in rep["results"] and rep["results"]["failed"]
    code, rep = report(capsys, "ext-build", bad, "--unchecked")
    assert code == 1 and rep["results"]["left_leibniz"] is False


def test_lie_extension_command(capsys, tmp_path):
    out = str(tmp_path / "lie.json")
    assert run(capsys, "ext-family", "--lie", "--alpha", "1,2", "--beta", "0,1/2", "-o", out)[0] == 0
    code, rep = report(capsys, "ext-build", out)
    assert code == 0
    assert alg.is_lie(tf.tensor_from_obj(rep["results"]["tensor"]))


def test_normalize_byte_identical(capsys, tmp_path):
    src, dst = str(tmp_path / "p.json"), str(tmp_path / "n.json")
    run(capsys, "family", "paper-presentation", "--n", "3", "--alpha", "1", "--beta", "1", "-o", src)
    code, rep = report(capsys, "normalize", src, "-o", dst)
    assert code == 0 and rep["results"]["equals_ln"]
    _, ln_text, _ = run(capsys, "family", "ln", "--n", "3")
    assert open(dst).read() == ln_text


def test_normalize_out_of_scope(capsys, write):
    code, rep = report(capsys, "normalize", write("k.json", tf.dumps_tensor(fam.kronecker(2))))
    assert code == 1 and rep["results"]["in_scope"] is False


def test_rack_check(capsys):
    code, rep = report(capsys, "rack-check", "--variant", "corrected", "--dim", "3", "--samples", "200")
    assert code == 0 and rep["results"]["pointed"] and rep["results"]["comparison"]["passed"]
    code, rep = report(capsys, "rack-check", "--variant", "paper", "--dim", "2", "--samples", "200")
    assert code == 1
    assert rep["results"]["axioms"]["unit_left"]["witness"] == {"x": [0.0, 1.0], "image": [0.0, 2.0]}
    assert rep["results"]["comparison"]["passed"]
    code, rep = report(capsys, "rack-check", "--variant", "conj", "--dim", "4", "--samples", "200")
    assert code == 0 and rep["results"]["quandle"]


def test_reports_deterministic(capsys, write):
    f = write("l4.json", tf.dumps_tensor(fam.paper_presentation(4, [1, 2], [3, 4])))
    for argv in (["normalize", f], ["bider", f], ["rack-check", "--variant", "paper", "--dim", "3", "--samples", "50", "--seed", "9"]):
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "leibniz", "family", "s2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert tf.loads_tensor(proc.stdout) == fam.s2()
