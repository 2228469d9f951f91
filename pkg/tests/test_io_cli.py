import io
import json
import logging
import math

import numpy as np
import pytest

from curveballs import __version__
from curveballs.cli import run_command
from curveballs.io import (
    DataError,
    dumps_curve,
    generate_synthetic,
    load_dataset,
    parse_curves,
    save_dataset,
    write_atomic,
)
from curveballs.vclab import circle_construction


def write_lines(path, *objs):
    path.write_text("".join((o if isinstance(o, str) else json.dumps(o)) + "\n" for o in objs))
    return path


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(map(str, argv)), stdout=out, stderr=err)
    records = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, records, err.getvalue()


@pytest.fixture
def parallel(tmp_path):
    a = write_lines(tmp_path / "a.jsonl", {"id": "s", "points": [[0, 0], [1, 0]]})
    b = write_lines(tmp_path / "b.jsonl", {"id": "q", "points": [[0, 1], [1, 1]]})
    return a, b


# ---------------------------------------------------------------------------
# loading


def test_load_two_curves(tmp_path):
    p = write_lines(tmp_path / "c.jsonl", {"id": "a", "points": [[0, 0], [1, 1]]}, {"id": "b", "points": [[2, 2]]})
    ds = load_dataset(p)
    assert (len(ds), ds.dim) == (2, 2)


@pytest.mark.parametrize(
    "lines, match",
    [
        (['{"id": "a", "points": [[0, 0]]}', '{"id": "b", "points": [[0, 0, 0]]}'], r"line 2.*'b'.*dimension"),
        (['{"id": "a", "points": [[0, 0]]}', '{"id": "a", "points": [[1, 1]]}'], r"line 2.*duplicate id 'a'"),
        (['{"id": "a", "points": [[0, 0]]}', "{oops"], r"line 2: malformed"),
        (['{"id": "a", "points": [[0, NaN]]}'], r"line 1"),
        (['{"id": "a", "points": [[0, Infinity]]}'], r"line 1"),
        (['{"id": "a", "points": []}'], r"line 1.*non-empty"),
        (['{"id": "a", "points": [[0, 0], [1]]}'], r"line 1.*mixes"),
        (['{"id": 3, "points": [[0]]}'], r"id must be a string"),
        (['{"id": "a", "points": [[true]]}'], r"finite numbers"),
        (["", "   "], r"no curves"),
    ],
)
def test_load_errors(tmp_path, lines, match):
    p = tmp_path / "bad.jsonl"
    p.write_text("\n".join(lines) + "\n")
    with pytest.raises(DataError, match=match):
        load_dataset(p)


def test_missing_file(tmp_path):
    with pytest.raises(DataError, match="cannot read"):
        load_dataset(tmp_path / "nope.jsonl")


def test_round_trip_large_file(tmp_path):
    ds = generate_synthetic("random_walk", {"n": 10_000, "m": 10, "d": 2}, seed=3)
    first, second = tmp_path / "one.jsonl", tmp_path / "two.jsonl"
    save_dataset(ds, first)
    again = load_dataset(first)
    save_dataset(again, second)
    assert first.read_bytes() == second.read_bytes()
    assert again.ids == ds.ids
    for a, b in zip(ds, again):
        np.testing.assert_array_equal(a.vertices, b.vertices)


def test_shortest_float_representation():
    line = dumps_curve(parse_curves(['{"id": "x", "points": [[0.1, 1e-300, 2]]}'])[0])
    assert line == '{"id":"x","points":[[0.1,1e-300,2.0]]}'


def test_write_atomic_leaves_no_partial_file(tmp_path):
    target = tmp_path / "out.jsonl"
    target.write_text("old\n")

    def lines():
        yield "first"
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        write_atomic(target, lines())
    assert target.read_text() == "old\n"
    assert list(tmp_path.iterdir()) == [target]


# ---------------------------------------------------------------------------
# synthetic data


def test_random_walk_deterministic():
    a = generate_synthetic("random_walk", {"n": 5, "m": 4, "d": 2}, seed=7)
    b = generate_synthetic("random_walk", {"n": 5, "m": 4, "d": 2}, seed=7)
    assert len(a) == 5 and all(c.m == 4 and c.dim == 2 for c in a)
    assert [dumps_curve(c) for c in a] == [dumps_curve(c) for c in b]
    steps = np.diff(np.stack([c.vertices for c in a]), axis=1)
    assert np.all(np.abs(steps) <= 1)


def test_perturbed_template_noise_zero():
    template = [[0, 0], [1, 2], [3, 1]]
    ds = generate_synthetic("perturbed_template", {"n": 4, "template": template, "noise": 0}, seed=1)
    assert len(ds) == 4
    for c in ds:
        np.testing.assert_array_equal(c.vertices, template)


def test_circle_points_matches_construction():
    ds = generate_synthetic("circle_points", {"k": 6}, seed=0)
    np.testing.assert_array_equal(np.stack([c.first for c in ds]), circle_construction(6).points)


@pytest.mark.parametrize("kind, params", [("random_walk", {"n": 0}), ("perturbed_template", {"noise": -1}), ("spiral", {})])
def test_generate_rejects(kind, params):
    with pytest.raises(ValueError):
        generate_synthetic(kind, params)


# ---------------------------------------------------------------------------
# command line


def test_cli_dist_decide(parallel):
    code, recs, _ = run("dist", "--measure", "frechet", "--decide", "--r", "1.0", *parallel)
    assert code == 0
    assert recs[0]["decision"] is True
    assert recs[0]["version"] == __version__
    assert recs[0]["config"]["radius"] == 1.0


def test_cli_dist_value(parallel):
    code, recs, _ = run("dist", "--measure", "hausdorff", "--tol", "1e-8", *parallel)
    assert code == 0 and abs(recs[0]["distance"] - 1.0) <= 1e-8


def test_cli_sample_size():
    code, recs, _ = run("sample-size", "--eps", "0.1", "--delta", "0.05", "--nu", "10")
    assert code == 0 and recs[0]["n"] == 650
    code, recs, _ = run("sample-size", "--kind", "separator", "--eps", "0.1", "--delta", "0.05", "--nu", "10")
    assert recs[0]["n"] == 381


def test_cli_shatter_circle():
    code, recs, _ = run("shatter", "--construction", "circle", "--k", "6")
    assert code == 0
    assert recs[0]["largest_shattered"] == 6 and recs[0]["distinct_subsets"] == 64


def test_cli_shatter_random_points():
    code, recs, _ = run("shatter", "--construction", "random-points", "--t", "8", "--seed", "2")
    assert code == 0 and recs[0]["largest_shattered"] <= 3


def test_cli_query_and_approx(tmp_path):
    data = tmp_path / "data.jsonl"
    assert run("gen", "--kind", "random_walk", "--n", "300", "--m", "5", "--d", "2", "--seed", "4", "-o", data)[0] == 0
    center = write_lines(tmp_path / "c.jsonl", {"id": "c", "points": [[0, 0], [1, 1], [2, 0]]})
    code, exact, _ = run("query", "--measure", "discrete-frechet", "--r", "2.5", "--center", center, data)
    assert code == 0 and exact[0]["count"] == len(exact[0]["ids"])
    args = ("approx-query", "--measure", "discrete-frechet", "--r", "2.5", "--eps", "0.3", "--delta", "0.1",
            "--nu", "2", "--seed", "9", "--center", center, data)
    code, a1, _ = run(*args)
    _, a2, _ = run(*args)
    assert code == 0 and a1 == a2
    assert a1[0]["sample_size"] < 300 and a1[0]["rng"].startswith("numpy")


def test_cli_kde(tmp_path):
    data = write_lines(tmp_path / "d.jsonl", {"id": "p", "points": [[0, 0]]})
    probes = write_lines(tmp_path / "x.jsonl", {"id": "x", "points": [[3, 4]]})
    code, recs, _ = run("kde", "--measure", "discrete-frechet", data, probes)
    assert code == 0 and recs[0]["kde"] == pytest.approx(np.exp(-25))


def test_cli_gen_loadable(tmp_path):
    out = tmp_path / "g.jsonl"
    assert run("gen", "--kind", "circle_points", "--k", "5", "-o", out)[0] == 0
    assert len(load_dataset(out)) == 5


def test_cli_output_reproducible(tmp_path, parallel):
    out = tmp_path / "o.jsonl"
    runs = []
    for _ in range(2):
        assert run("dist", "--measure", "weak-frechet", *parallel, "-o", out)[0] == 0
        runs.append(out.read_bytes())
    assert runs[0] == runs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["dist", "--bogus", "a", "b"],
        ["sample-size", "--eps", "2"],
        ["dist", "--measure", "dtw", "a", "b"],
    ],
)
def test_cli_usage_errors(argv, tmp_path, parallel):
    argv = [str(parallel[0]) if a == "a" else str(parallel[1]) if a == "b" else a for a in argv]
    code, recs, err = run(*argv)
    assert code == 1 and not recs and err


def test_cli_missing_radius_is_usage_error(parallel):
    assert run("dist", "--decide", *parallel)[0] == 1


def test_cli_data_error_writes_nothing(tmp_path, parallel):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "x", "points": [[0, 0, 0]]}\n')
    out = tmp_path / "out.jsonl"
    code, _, err = run("dist", "--decide", "--r", "1", parallel[0], bad, "-o", out)
    assert code == 2 and "dimension" in err
    assert not out.exists()
    assert run("query", "--r", "1", "--center", tmp_path / "missing.jsonl", parallel[0])[0] == 2


def test_cli_help_and_version():
    assert run("--help")[0] == 0
    assert run("--version")[0] == 0


def test_config_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"epsilon": 0.2, "delta": 0.05, "nu": 10}))
    _, recs, _ = run("sample-size", "--config", cfg)
    assert recs[0]["n"] == sample(0.2, 0.05, 10)
    _, recs, _ = run("sample-size", "--config", cfg, "--eps", "0.1")
    assert recs[0]["n"] == 650
    assert recs[0]["config"]["epsilon"] == 0.1 and recs[0]["config"]["delta"] == 0.05
    _, recs, _ = run("sample-size")
    assert recs[0]["config"]["epsilon"] == 0.1 and recs[0]["config"]["nu"] == 10.0


def sample(eps, delta, nu, C=0.5):
    return math.ceil(C / eps**2 * (nu + math.log(1 / delta)))


def test_config_errors(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run("sample-size", "--config", cfg)[0] == 1
    cfg.write_text("{not json")
    assert run("sample-size", "--config", cfg)[0] == 2


def test_log_env_var(monkeypatch, parallel):
    monkeypatch.setenv("CURVEBALLS_LOG", "info")
    root = logging.getLogger()
    saved = root.handlers[:], root.level
    root.handlers.clear()
    try:
        code, _, err = run("dist", *parallel)
        assert code == 0 and "running dist" in err
    finally:
        root.handlers[:] = saved[0]
        root.setLevel(saved[1])
