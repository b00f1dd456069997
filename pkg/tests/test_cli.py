import json
import time
from fractions import Fraction

import pytest

from starkit import cli, instances, suites
from starkit.formulas import parse_solver_text
from starkit.starshape import SmoothnessViolation, annulus, disk, l_shape

CROSS = [[1, 0], [-1, 0], [0, 1], [0, -1]]
TRIANGLE = [[0, 0], [1, 0], [0, 1]]


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="inst.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_cross_polytope_origin_is_interior(capsys, write):
    path = write({"kind": "query", "points": CROSS, "query": [0, 0]})
    code, doc = run(capsys, "hull-member", path, "--interior")
    assert code == 0 and doc["verdict"] == "interior"
    assert sorted(doc["certificate"]["indices"]) == [0, 1, 2, 3]


def test_triangle_far_point(capsys, write):
    path = write({"kind": "point_set", "points": TRIANGLE})
    code, doc = run(capsys, "hull-member", path, "--query", "2,0")
    assert code == 1 and doc["verdict"] == "not_member" and "halfspace" in doc["certificate"]


def test_positive_hull(capsys, write):
    path = write({"kind": "query", "points": [[1, 0], [0, 1]], "query": [2, 2]})
    assert run(capsys, "hull-member", path, "--positive")[0] == 0


def test_garbage_file(capsys, write):
    assert run(capsys, "hull-member", write("{{{ nonsense"))[0] == 2


def test_missing_query(capsys, write):
    assert run(capsys, "hull-member", write({"kind": "point_set", "points": TRIANGLE}))[0] == 2


def test_bad_arguments_exit_2(capsys):
    assert cli.main(["no-such-command"]) == 2
    assert cli.main([]) == 2


def test_separate_singletons(capsys, write):
    path = write({"kind": "point_pair_sets", "A": [[0, 0]], "B": [[1, 0]]})
    code, doc = run(capsys, "separate", path)
    assert code == 0 and doc["certificate"]["kind"] == "strict" and doc["certificate"]["margin"] == "1/2"


def test_separate_overlapping(capsys, write):
    path = write({"kind": "point_pair_sets", "A": [[0, 0], [2, 2]], "B": [[0, 2], [2, 0]]})
    code, doc = run(capsys, "separate", path, "--kirchberger")
    assert code == 1 and doc["kirchberger"]["equivalent"]
    code, doc = run(capsys, "separate", path, "--weak")
    assert code == 1 and len(doc["certificate"]["certificates"]) == 4


def test_separate_cap(capsys, write):
    path = write({"kind": "point_pair_sets", "A": [[i, 0] for i in range(5)], "B": [[i, 1] for i in range(5)]})
    assert run(capsys, "separate", path, "--kirchberger", "--cap", "8")[0] == 2


def test_kirchberger_violation_exit_3(capsys, write, monkeypatch):
    real = cli.kirchberger_check

    def broken(*args, **kwargs):
        rep = real(*args, **kwargs)
        return type(rep)(rep.mode, rep.direct, not rep.subset, rep.subset_size, rep.checked)

    monkeypatch.setattr(cli, "kirchberger_check", broken)
    path = write({"kind": "point_pair_sets", "A": [[0, 0]], "B": [[1, 0]]})
    assert run(capsys, "separate", path, "--kirchberger")[0] == 3


def test_star_l_shape(capsys, write):
    code, doc = run(capsys, "star", write(instances.dumps(l_shape())))
    assert code == 0 and doc["verdict"] == "star_shaped"
    assert all(0 <= Fraction(c) <= 1 for c in doc["witness"])


def test_star_annulus(capsys, write):
    code, doc = run(capsys, "star", write(instances.dumps(annulus())), "--seed", 0)
    assert code == 1 and len(doc["certificate"]["halfspaces"]) == 3


def test_star_zero_samples(capsys, write):
    assert run(capsys, "star", write(instances.dumps(disk())), "--samples", 0)[0] == 4


def test_smoothness_violation_reports_point(capsys, write, monkeypatch):
    def singular(*args, **kwargs):
        raise SmoothnessViolation("gradient vanishes at (0, 0)")

    monkeypatch.setattr(cli, "smooth_star_check", singular)
    assert cli.main(["star", write(instances.dumps(disk()))]) == 2
    assert "(0, 0)" in capsys.readouterr().err


def test_certificate_failure_exit_5(capsys, write, monkeypatch):
    monkeypatch.setattr(type(l_shape()), "contains", lambda self, p: False)
    assert cli.main(["star", write(instances.dumps(l_shape()))]) == 5
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("r_sq, code", [("1", 0), ("98/100", 1), ("-1", 2)])
def test_radius(capsys, write, r_sq, code):
    path = write({"kind": "point_set", "points": [[0, 0], [2, 0], [1, 1]]})
    got, doc = run(capsys, "radius", path, "--r-sq", r_sq, "--mode", "both")
    assert got == code
    if code < 2:
        assert doc["min_ball"] == {"center": ["1", "0"], "radius_sq": "1"}


def test_radius_singleton(capsys, write):
    assert run(capsys, "radius", write({"kind": "point_set", "points": [[3, 3]]}), "--r-sq", "0")[0] == 0


def test_emit_star_naive_to_file(capsys, write, tmp_path):
    out = tmp_path / "disk.smt2"
    code, doc = run(capsys, "emit", write(instances.dumps(disk())), "--encoding", "StarNaive", "--out", out)
    assert code == 0 and doc["prefix"] == "EA"
    assert parse_solver_text(out.read_text())


@pytest.mark.parametrize(
    "doc, encoding, prefix",
    [
        (instances.to_document(disk()), "StarUniversal", "A"),
        ({"kind": "query", "points": CROSS, "query": [0, 0]}, "InteriorExistential", "E"),
    ],
)
def test_emit_prefixes(capsys, write, doc, encoding, prefix):
    code, out = run(capsys, "emit", write(doc), "--encoding", encoding)
    assert code == 0 and out["prefix"] == prefix and out["solver_text"].startswith("(set-logic NRA)")


def test_emit_mismatch(capsys, write):
    assert run(capsys, "emit", write(instances.dumps(disk())), "--encoding", "ConvMembership")[0] == 2
    assert run(capsys, "emit", write(instances.dumps(disk())), "--encoding", "Nope")[0] == 2


def test_emit_with_grid(capsys, write):
    path = write({"kind": "query", "points": TRIANGLE, "query": ["1/4", "1/4"]})
    code, doc = run(capsys, "emit", path, "--encoding", "ConvMembership", "--eval", "0,1,5")
    assert code == 0 and doc["grid"]["value"] is True
    path = write({"kind": "query", "points": TRIANGLE, "query": [1, 1]})
    assert run(capsys, "emit", path, "--encoding", "ConvMembership", "--eval", "0,1,5")[0] == 1


def test_timing_is_opt_in(capsys, write):
    path = write({"kind": "point_set", "points": [[0, 0]]})
    assert "timing" not in run(capsys, "radius", path, "--r-sq", "0")[1]
    assert "timing" in run(capsys, "--timing", "radius", path, "--r-sq", "0")[1]


def test_selftest_kirchberger_seed_7(capsys):
    start = time.perf_counter()
    code, doc = run(capsys, "selftest", "--suite", "kirchberger", "--seed", 7)
    assert code == 0 and doc["seed"] == 7 and time.perf_counter() - start < 60


def test_selftest_unknown_suite(capsys):
    assert run(capsys, "selftest", "--suite", "nonsense")[0] == 2


def test_selftest_all_runs_every_suite(capsys, monkeypatch):
    small = {"hare-kenelly": suites.hare_kenelly_suite, "smooth": suites.smooth_suite}
    monkeypatch.setattr(suites, "SUITES", small)
    monkeypatch.setattr(cli, "SUITES", small)
    code, doc = run(capsys, "selftest", "--suite", "all")
    assert code == 0 and [s["suite"] for s in doc["suites"]] == list(small)


def test_seed_from_environment(capsys, write, monkeypatch):
    monkeypatch.setenv("STARKIT_SEED", "11")
    assert run(capsys, "star", write(instances.dumps(disk())))[1]["seed"] == 11
