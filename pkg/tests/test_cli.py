import io

import pytest

from extform import instances
from extform.cli import run_command
from extform.textio import format_model


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue()


def report(text):
    return dict(line.split(": ", 1) for line in text.split("\n\n")[0].splitlines() if ": " in line)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, model in [("P", instances.indep_p()), ("Q", instances.indep_q()),
                        ("Pl", instances.indep_p_lifted()), ("Ql", instances.indep_q_lifted()),
                        ("A", instances.collapse_map()), ("P1", instances.pair_p1()),
                        ("P2", instances.pair_p2()), ("S", instances.pair_spec())]:
        path = tmp_path / f"{name}.txt"
        path.write_text(format_model(model, name))
        paths[name] = str(path)
    return paths


def test_def1_rejects_with_full_space(files):
    code, out = run("check-ef", "--def", "1", "--target", files["P"], "--candidate", files["Ql"])
    assert code == 1
    assert report(out)["projection"] == "FullSpace(2)"


def test_def2_accepts_with_map(files):
    code, out = run("check-ef", "--def", "2", "--target", files["P"], "--candidate", files["Q"],
                    "--map", files["A"])
    assert code == 0 and report(out)["holds"] == "true"
    assert "sha256=" in report(out)["input.map"]


def test_def2_without_map_is_usage_error(files):
    code, _ = run("check-ef", "--def", "2", "--target", files["P"], "--candidate", files["Q"])
    assert code == 2


def test_classify_and_independence(files):
    code, out = run("classify", files["P"], files["Q"], "--map", files["A"])
    assert code == 0 and report(out)["class"] == "IllDefined"
    code, _ = run("check-independent", files["P"], files["Q"])
    assert code == 0


def test_vertices_and_unbounded(files):
    code, out = run("vertices", files["Q"])
    assert code == 0 and report(out)["vertex_count"] == "2"
    code, out = run("vertices", files["P2"])
    assert code == 1 and report(out)["bounded"] == "false"


def test_augment_pair_and_augmentation_check(files, tmp_path):
    w = tmp_path / "W.txt"
    code, out = run("--out", str(w), "augment-pair", files["P1"], files["P2"], "--spec", files["S"])
    assert code == 0 and report(out)["verified"] == "true"
    code, _ = run("check-augmentation", "--base", files["P1"], "--candidate", str(w))
    assert code == 0
    code, out = run("project", str(w), "--keep", "x")
    assert code == 0 and report(out)["projection"].startswith("Polyhedron")


def test_lp_commands(files, tmp_path):
    code, out = run("minimize", files["Q"], "--objective", "1 0")
    assert code == 0 and report(out)["optimum"] == "3/2"
    lp = tmp_path / "mst.txt"
    code, _ = run("--out", str(lp), "gen", "mst-martin-reduced", "--n", "3")
    assert code == 0
    code, out = run("solve-lp", str(lp))
    assert code == 0 and report(out)["optimum"] == "2"


def test_pushforward(files):
    code, out = run("pushforward", "--alpha", "1 2", "--map", files["A"])
    assert code == 0 and report(out)["coefficients"] == "(1, 1)"


def test_bad_input_is_exit_two(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("hpoly B\nvars x:1\n1 <=\nend\n")
    code, out = run("vertices", str(bad))
    assert code == 2 and "line 3" in report(out)["error"]
    assert run("vertices", str(tmp_path / "missing"))[0] == 2
    assert run("gen", "tsp-standard", "--n", "9")[0] == 2
    assert run("no-such-command")[0] == 2


def test_verify_paper_is_deterministic():
    a = run("verify-paper", "--filter", "independent-pair")
    b = run("verify-paper", "--filter", "independent-pair")
    assert a == b and a[0] == 0
    assert report(a[1])["seed"] == "0"
