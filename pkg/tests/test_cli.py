import json

import pytest

from railyard.cli import main
from railyard.graphs import CoveringState, validate, load_graph_config

GRAPH_TOML = """
l = 0
r = 1
a = "LR"
b = "+-"
x = ["1/2", "2/5"]
u = "1/10"
v = "1/10"
"""

DIVERGENT_TOML = """
l = 0
r = 1
a = "LL"
b = "+-"
x = ["3", "2"]
u = "49/50"
v = "49/50"
"""

PARAMS_TOML = """
n = 4
m = 1
V = [0.0, 1.0]
tau = [1.0, 0.3, 0.3, 1.0]
a_pattern = "LLRR"
b_patterns = ["-++-"]
u = 0.1
v = 0.1
beta = 1.0
K = 6
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "g.toml").write_text(GRAPH_TOML)
    (tmp_path / "bad.toml").write_text(DIVERGENT_TOML)
    (tmp_path / "p.toml").write_text(PARAMS_TOML)
    return tmp_path


def test_sample_command(workdir):
    out = workdir / "samples.jsonl"
    man = workdir / "manifest.json"
    args = [
        "sample", "--config", str(workdir / "g.toml"), "--K", "3",
        "--n", "10", "--seed", "1", "--out", str(out), "--manifest", str(man),
    ]
    assert main(args) == 0
    g = load_graph_config(str(workdir / "g.toml"))
    lines = out.read_text().splitlines()
    assert len(lines) == 10
    for line in lines:
        assert validate(g, CoveringState.from_json(line))
    first = out.read_text()
    assert main(args) == 0
    assert out.read_text() == first  # byte-identical on replay
    manifest = json.loads(man.read_text())
    assert manifest["seed"] == 1 and str(out) in manifest["outputs"]


def test_sample_pure_boundaries_empty(workdir, tmp_path):
    cfg = tmp_path / "pure.toml"
    cfg.write_text(GRAPH_TOML.replace('u = "1/10"', 'u = "0"').replace('v = "1/10"', 'v = "0"'))
    out = tmp_path / "pure.jsonl"
    assert main(["sample", "--config", str(cfg), "--K", "2", "--n", "25",
                 "--seed", "3", "--out", str(out)]) == 0
    for line in out.read_text().splitlines():
        s = CoveringState.from_json(line)
        assert s.seq[0] == () and s.seq[-1] == ()


def test_partition_function_modes(workdir):
    out = workdir / "z.json"
    assert main(["partition-function", "--config", str(workdir / "g.toml"),
                 "--mode", "pure", "--out", str(out)]) == 0
    z = json.loads(out.read_text())
    assert z["exact"] == "6/5"  # 1 + 1/2 * 2/5
    assert main(["partition-function", "--config", str(workdir / "g.toml"),
                 "--mode", "free-free", "--n-terms", "25", "--out", str(out)]) == 0
    zf = json.loads(out.read_text())
    assert main(["partition-function", "--config", str(workdir / "g.toml"),
                 "--mode", "oracle", "--max-part", "7", "--max-len", "7",
                 "--out", str(out)]) == 0
    zo = json.loads(out.read_text())
    assert 0 <= zf["value"] - zo["value"] < zf["tail_bound"] + 1e-6
    assert zo["configs"] > 2


def test_divergence_exit_code(workdir):
    out = workdir / "z.json"
    code = main(["partition-function", "--config", str(workdir / "bad.toml"),
                 "--mode", "free-free", "--out", str(out)])
    assert code == 3


def test_config_error_exit_code(workdir):
    assert main(["sample", "--config", str(workdir / "nope.toml"), "--K", "2",
                 "--n", "1", "--seed", "0", "--out", str(workdir / "x.jsonl")]) == 2


def test_density_command(workdir):
    out = workdir / "density.csv"
    assert main(["density", "--params", str(workdir / "p.toml"),
                 "--chi-grid", "0.3:0.7:3", "--kappa-grid=-1.5:1.5:7",
                 "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "chi,kappa,value"
    assert len(rows) == 1 + 3 * 7
    for row in rows[1:]:
        chi, kap, val = map(float, row.split(","))
        assert 0.0 <= val <= 2.0


def test_frozen_boundary_command(workdir):
    out = workdir / "boundary.csv"
    svg = workdir / "boundary.svg"
    assert main(["frozen-boundary", "--params", str(workdir / "p.toml"),
                 "--w-points", "80", "--out", str(out), "--svg", str(svg)]) == 0
    rows = out.read_text().splitlines()[1:]
    assert len(rows) > 40
    chis = [float(r.split(",")[0]) for r in rows]
    assert all(0 < c < 1 for c in chis)
    assert svg.read_text().startswith("<svg")


def test_laplace_check_command(workdir):
    out = workdir / "laplace.json"
    assert main(["laplace-check", "--params", str(workdir / "p.toml"),
                 "--chi", "0.5", "--alpha", "1.0", "--out", str(out)]) == 0
    res = json.loads(out.read_text())
    assert res["relative_gap"] < 1e-3


def test_compare_command(workdir):
    # samples from a small instance of the four-periodic family
    from railyard.presets import four_periodic_graph

    g = four_periodic_graph(12)
    gpath = workdir / "fam.toml"
    gpath.write_text(
        "l = {}\nr = {}\na = \"{}\"\nb = \"{}\"\nx = [{}]\nu = \"1/10\"\nv = \"1/10\"\n".format(
            g.l, g.r, g.a, g.b, ", ".join(f'"{x}"' for x in g.x)
        )
    )
    samples = workdir / "s.jsonl"
    assert main(["sample", "--config", str(gpath), "--K", "2", "--n", "40",
                 "--seed", "2", "--out", str(samples)]) == 0
    out = workdir / "cmp.csv"
    code = main(["compare", "--samples", str(samples), "--graph", str(gpath),
                 "--params", str(workdir / "p.toml"),
                 "--chi-grid", "0.25:0.75:3", "--kappa-grid=-1:1:5",
                 "--band", "0.3", "--out", str(out)])
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "chi,kappa,empirical,limit"
    assert len(rows) == 1 + 15
    summary = json.loads((workdir / "cmp.csv.summary.json").read_text())
    assert "max_abs_deviation_off_boundary" in summary


def test_compare_requires_samples(workdir):
    empty = workdir / "empty.jsonl"
    empty.write_text("")
    assert main(["compare", "--samples", str(empty), "--graph", str(workdir / "g.toml"),
                 "--params", str(workdir / "p.toml"), "--chi-grid", "0.4:0.6:2",
                 "--kappa-grid", "0:1:2", "--out", str(workdir / "c.csv")]) == 2
