import json

import pytest

from cglforge.cli import main

from conftest import get_preset


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("forge")
    for name in ("b2-w1212", "a2tw-01010", "lastex"):
        assert main(["preset", name, "-o", str(d / name)]) == 0
    return d


def read(path):
    return json.loads(path.read_text())


def test_preset_files(workdir):
    assert sorted(p.name for p in (workdir / "b2-w1212").iterdir()) == [
        "cartan.json", "presentation.json", "seed.json", "word.txt"]
    assert not (workdir / "lastex" / "cartan.json").exists()
    assert (workdir / "b2-w1212" / "word.txt").read_text() == "1,2,1,2\n"


def test_analyze_b2_passes(workdir, tmp_path):
    out = tmp_path / "r.json"
    rc = main(["analyze", str(workdir / "b2-w1212" / "presentation.json"), "--check", "cgl,cond", "-o", str(out)])
    rep = read(out)
    assert rc == 0
    assert rep["checks"] == {"cgl": True, "cond": True}
    assert rep["ybar"][2] == "x1*x3 - q^(-2)*x2^2"


def test_analyze_lastex_reports_cond_failure(workdir, tmp_path):
    out = tmp_path / "r.json"
    rc = main(["analyze", str(workdir / "lastex" / "presentation.json"), "--check", "cond,dform", "-o", str(out)])
    rep = read(out)
    assert rc == 1
    assert rep["checks"]["dform"] and not rep["checks"]["cond"]
    assert "cond: fails at i=1" in rep["violations"]


def test_analyze_in_char_3(workdir, tmp_path):
    out = tmp_path / "r.json"
    rc = main(["analyze", str(workdir / "lastex" / "presentation.json"), "--char", "3", "-o", str(out)])
    assert rc == 0 and read(out)["eta"] == [1, 2, 1, 2, 2, 1]


def test_blueprint_a2tw(workdir, tmp_path, a2tw):
    out = tmp_path / "bp.json"
    rc = main(["blueprint", "--cartan", str(workdir / "a2tw-01010" / "cartan.json"),
               "--word", "0,1,0,1,0", "-o", str(out)])
    bp = read(out)
    assert rc == 0 and bp["compat"]["ok"]
    printed = a2tw.fixtures["btilde_printed"].value
    assert bp["entries"] == [[printed[c][r] for c in (1, 2, 3)] for r in range(5)]


def test_quiver_lastex(workdir, tmp_path, lastex):
    out = tmp_path / "q.dot"
    assert main(["quiver", str(workdir / "lastex" / "seed.json"), "-o", str(out)]) == 0
    edges = sorted(tuple(int(x) for x in line.strip().rstrip(";").split(" -> "))
                   for line in out.read_text().splitlines() if "->" in line)
    assert edges == lastex.fixtures["quiver_edges"].value


def test_quiver_non_skew_exits_1(workdir, tmp_path):
    bp = tmp_path / "bp.json"
    main(["blueprint", "--cartan", str(workdir / "a2tw-01010" / "cartan.json"), "--word", "0,1,0,1,0", "-o", str(bp)])
    assert main(["quiver", str(bp)]) == 1


def test_seed_all_gamma_and_sigma(workdir, tmp_path):
    pres = str(workdir / "b2-w1212" / "presentation.json")
    out = tmp_path / "s.json"
    assert main(["seed", pres, "--all-gamma", "-o", str(out)]) == 0
    assert len(read(out)["seeds"]) == 7
    assert main(["seed", pres, "--sigma", "2,1,3,4", "-o", str(out)]) == 0
    assert read(out)["sigma"] == [2, 1, 3, 4]


def test_mutate_script(workdir, tmp_path):
    seed = str(workdir / "b2-w1212" / "seed.json")
    once, twice = tmp_path / "m1.json", tmp_path / "m2.json"
    assert main(["mutate", seed, "--script", "mu:1", "-o", str(once)]) == 0
    assert main(["mutate", str(once), "--script", "mu:1", "--eps", "-1", "-o", str(twice)]) == 0
    orig = read(workdir / "b2-w1212" / "seed.json")
    back = read(twice)
    assert back["variables"] == orig["variables"] and back["entries"] == orig["entries"]
    assert main(["mutate", seed, "--script", "perm:2,1,3,4", "-o", str(once)]) == 0
    assert read(once)["labels"][:2] == orig["labels"][1::-1]


def test_mutate_non_divisible_exits_1(workdir):
    assert main(["mutate", str(workdir / "lastex" / "seed.json"), "--script", "mu:1"]) == 1


def test_verify_b2_parallel_matches_serial(workdir, tmp_path):
    pres = str(workdir / "b2-w1212" / "presentation.json")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", pres, "-o", str(a)]) == 0
    assert main(["verify", pres, "--jobs", "2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read(a)["checks"] == {"chains": True, "laurent": True}


def test_deterministic_preset(tmp_path):
    main(["preset", "lastex", "-o", str(tmp_path / "a")])
    main(["preset", "lastex", "-o", str(tmp_path / "b")])
    for f in ("presentation.json", "seed.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["analyze"],
    ["analyze", "/nonexistent.json"],
    ["preset", "nope", "-o", "x"],
    ["analyze", "{pres}", "--check", "cgl,frobnicate"],
    ["analyze", "{pres}", "--char", "4"],
    ["seed", "{pres}", "--sigma", "1,3,2,4"],
    ["seed", "{pres}", "--sigma", "1,x"],
    ["seed", "{pres}", "--sigma", "1,2", "--all-gamma"],
    ["verify", "{pres}", "--bounds", "3"],
    ["mutate", "{seed}", "--script", "mu:3"],
    ["mutate", "{seed}", "--script", "flip:1"],
    ["blueprint", "--cartan", "{cartan}", "--word", "0,0"],
])
def test_usage_errors_exit_2(workdir, argv, capsys):
    d = workdir / "b2-w1212"
    subst = {"{pres}": str(d / "presentation.json"), "{seed}": str(d / "seed.json"),
             "{cartan}": str(workdir / "a2tw-01010" / "cartan.json")}
    assert main([subst.get(a, a) for a in argv]) == 2
    assert "Traceback" not in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"N": 2, "lambda_exp2": [[0, 1], [1, 0]]}')
    assert main(["analyze", str(bad)]) == 2
    bad.write_text("[1,")
    assert main(["seed", str(bad)]) == 2
    assert "Traceback" not in capsys.readouterr().err
