import json
import subprocess
import sys

import pytest

from geomconn.cli import (
    EXIT_INPUT,
    EXIT_LIMIT,
    InputError,
    ProblemSpec,
    main,
    parse_problem_file,
    run_oracle,
    run_pipeline,
)

CONJUGATE_LINES = """\
char: 3            # prime p
ext: 1             # optional, extension degree e (default 1)
vars: x y u v
weights: 1 1 1 1   # optional, default all 1
ideal:
  u^2 - 2*x^2
  v^2 - 2*y^2
  u*v - 2*x*y
  v*x - u*y
"""


def _write(tmp_path, text, name="problem.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_problem_file():
    spec = parse_problem_file(CONJUGATE_LINES)
    assert spec.char == 3 and spec.ext == 1
    assert spec.variables == ("x", "y", "u", "v")
    assert spec.weights == (1, 1, 1, 1)
    assert spec.generators == ("u^2 - 2*x^2", "v^2 - 2*y^2", "u*v - 2*x*y", "v*x - u*y")


@pytest.mark.parametrize(
    "text",
    [
        "vars: x\nideal:\n x\n",
        "char: 3\nideal:\n x\n",
        "char: 3\nvars: x\n",
        "char: three\nvars: x\nideal:\n x\n",
        "char: 3\nchar: 5\nvars: x\nideal:\n",
        "char: 3\nvars: x\nbogus line\nideal:\n",
    ],
)
def test_parse_problem_errors(text):
    with pytest.raises(InputError):
        parse_problem_file(text)


@pytest.mark.parametrize(
    "spec",
    [
        ProblemSpec(4, ("x",), ("x",)),
        ProblemSpec(3, ("x", "y"), ("x^2 + y",)),
        ProblemSpec(3, ("x", "y"), ("x + w",)),
        ProblemSpec(3, ("x", "y"), ("x",), weights=(1,)),
    ],
)
def test_pipeline_input_errors(spec):
    with pytest.raises(InputError):
        run_pipeline(spec)


def test_pipeline_conjugate_lines():
    r = run_pipeline(parse_problem_file(CONJUGATE_LINES))
    assert (r.components, r.ell, r.connected_geom, r.dim_r) == (2, 1, False, 2)
    assert r.f_matrix == [[2]] and r.certified


def test_pipeline_examples():
    r = run_pipeline(ProblemSpec(5, ("x", "y", "z"), ()))
    assert (r.components, r.ell) == (1, 0)
    assert run_pipeline(ProblemSpec(3, ("x", "y"), ("x^2 + y^2",))).components == 2
    empty = run_pipeline(ProblemSpec(3, ("x", "y"), ("x", "y")))
    assert (empty.components, empty.connected_geom) == (0, False)


def test_report_deterministic_and_complete():
    spec = parse_problem_file(CONJUGATE_LINES)
    a = run_pipeline(spec).to_json(timings=False)
    b = run_pipeline(spec).to_json(timings=False)
    assert a == b
    keys = set(json.loads(run_pipeline(spec).to_json()))
    assert {"components", "connected_geom", "dim_r", "ell", "stab_n", "hsop", "chain", "strategy",
            "certified", "timings_ms"} <= keys


def test_strategies_agree():
    for spec in [parse_problem_file(CONJUGATE_LINES), ProblemSpec(5, ("x", "y"), ("x^2*y + x*y^2",))]:
        ext = run_pipeline(spec)
        spec.strategy = "heuristic"
        heur = run_pipeline(spec)
        assert heur.components == ext.components and not heur.certified


def test_run_oracle():
    spec = ProblemSpec(3, ("x", "y", "u", "v"), ("x*u", "x*v", "y*u", "y*v"))
    assert run_oracle(spec).components == 2
    with pytest.raises(InputError):
        run_oracle(ProblemSpec(3, ("x", "y"), ("x^2",)))


def test_main_exit_codes(tmp_path, capsys):
    good = _write(tmp_path, CONJUGATE_LINES)
    assert main(["count", good, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["components"] == 2 and out["chain"] == [1]
    assert main(["count", good]) == 0
    assert "components: 2" in capsys.readouterr().out
    assert main(["info", good]) == 0
    assert json.loads(capsys.readouterr().out) == {"dim_r": 2, "ell": 1, "hsop": ["x", "y"]}
    lines = _write(tmp_path, "char: 2\nvars: x y u v\nideal:\n x*u\n x*v\n y*u\n y*v\n", "lines.txt")
    assert main(["oracle", lines, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["components"] == 2
    bad = _write(tmp_path, "char: 3\nvars: x y\nideal:\n x^2 + y\n", "bad.txt")
    assert main(["count", bad]) == EXIT_INPUT
    assert main(["count", str(tmp_path / "missing.txt")]) == EXIT_INPUT
    points = _write(tmp_path, "char: 5\nvars: x y\nideal:\n x^2*y + x*y^2\n", "points.txt")
    assert main(["count", points, "--t-max", "1"]) == EXIT_LIMIT
    assert "dimensions so far: [1]" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, CONJUGATE_LINES)
    proc = subprocess.run([sys.executable, "-m", "geomconn", "count", path, "--json", "--verbose"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["components"] == 2
    assert "stage saturate" in proc.stderr
