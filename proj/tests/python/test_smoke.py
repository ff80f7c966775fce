import itertools
import json
import math
import os
import subprocess

import numpy as np
import pytest

import bkdpp


def kernel(frame):
    z = np.asarray(frame.columns)
    return z @ z.T


def numpy_inclusion(frame, points):
    idx = [p - 1 for p in points]
    k = kernel(frame)
    return float(np.linalg.det(k[np.ix_(idx, idx)])) if idx else 1.0


def test_uniform_rank_one_frame():
    frame = bkdpp.Frame(np.full((3, 1), 1 / math.sqrt(3)))
    assert frame.n_points == 3 and frame.rank == 1
    for i in (1, 2, 3):
        assert bkdpp.inclusion_probability(frame, [i]) == pytest.approx(1 / 3, abs=1e-12)
    assert bkdpp.exact_law(frame) == pytest.approx({(1,): 1 / 3, (2,): 1 / 3, (3,): 1 / 3}, abs=1e-12)


def test_probabilities_match_kernel_minors():
    frame = bkdpp.Frame.random(6, 3, seed=5)
    law = bkdpp.exact_law(frame)
    assert sum(law.values()) == pytest.approx(1.0, abs=1e-12)
    for r in range(1, 4):
        for j in itertools.combinations(range(1, 7), r):
            expected = numpy_inclusion(frame, j)
            assert bkdpp.inclusion_probability(frame, list(j)) == pytest.approx(expected, abs=1e-10)
            from_law = sum(p for s, p in law.items() if set(j) <= set(s))
            assert from_law == pytest.approx(expected, abs=1e-10)
    idx = [0, 2]
    avoid = float(np.linalg.det(np.eye(2) - kernel(frame)[np.ix_(idx, idx)]))
    assert bkdpp.exclusion_probability(frame, [1, 3]) == pytest.approx(avoid, abs=1e-10)


def test_invalid_frame_raises_with_code():
    with pytest.raises(bkdpp.Error) as info:
        bkdpp.Frame(np.array([[1.0], [1.0]]))
    assert info.value.code == "InvalidFrame"


def test_cs_angles_reproduce_probabilities():
    frame = bkdpp.Frame.random(7, 3, seed=11)
    cs = bkdpp.compute_cs(frame, [2, 5])
    assert cs.case == "I"
    assert len(cs.angles) == 2
    cos_sq, sin_sq = cs.products()
    assert cos_sq == pytest.approx(bkdpp.inclusion_probability(frame, [2, 5]), abs=1e-9)
    assert sin_sq == pytest.approx(bkdpp.exclusion_probability(frame, [2, 5]), abs=1e-9)
    assert cs.u.shape == (2, 2)
    assert cs.w.shape[1] == 5


def test_conditioning_matches_brute_force():
    frame = bkdpp.Frame.random(6, 3, seed=2)
    law = bkdpp.exact_law(frame)
    cond = bkdpp.condition_on_exclusion(frame, [4])
    assert cond.kind == "exclude" and cond.labels == [1, 2, 3, 5, 6]
    mass = sum(p for s, p in law.items() if 4 not in s)
    expected = {s: p / mass for s, p in law.items() if 4 not in s}
    got = cond.law_in_base_labels()
    for s, p in expected.items():
        assert got.get(s, 0.0) == pytest.approx(p, abs=1e-9)


def test_bk_checks_pass():
    frame = bkdpp.Frame.random(6, 3, seed=3)
    report = bkdpp.check_bk(frame, [[1], [2]], [[3], [4]])
    assert report.passed and report.slack >= -1e-10
    assert all(r.passed for r in bkdpp.check_theorem1(frame, [1, 2, 3]))
    assert all(r.passed for r in bkdpp.check_theorem2(frame, [1, 2], [2, 5]))
    assert bkdpp.check_lemma2(0.25, 3).passed
    d = report.to_dict()
    assert d["name"] == report.name and d["pass"] is True


def test_sampling_is_seeded_and_has_rank_size():
    frame = bkdpp.Frame.random(5, 2, seed=9)
    a = bkdpp.sample(frame, count=50, seed=4)
    assert a == bkdpp.sample(frame, count=50, seed=4)
    assert all(len(s) == 2 and s == sorted(s) for s in a)


def test_sampling_agrees_with_cli(tmp_path):
    cli = os.environ.get("BKDPP_CLI_PATH")
    if not cli:
        pytest.skip("command line tool not available")
    frame = bkdpp.Frame.random(5, 2, seed=9)
    path = tmp_path / "frame.json"
    path.write_text(frame.to_json())
    out = subprocess.run([cli, "sample", str(path), "--count", "20", "--seed", "4"],
                         check=True, capture_output=True, text=True).stdout
    lines = [list(map(int, line.split())) for line in out.splitlines()]
    assert lines == bkdpp.sample(frame, count=20, seed=4)


def test_fuzz_summary():
    summary = bkdpp.fuzz(seed=7, trials=20, max_points=6)
    assert summary.trials == 20
    assert summary.passed and summary.failures == 0
    assert set(summary.suites) == set(bkdpp.SUITES)
    assert all(r.witness.startswith("trial=") for r in summary.reports)
    again = bkdpp.fuzz(seed=7, trials=20, max_points=6)
    assert [r.lhs for r in again.reports] == [r.lhs for r in summary.reports]
    with pytest.raises(bkdpp.Error):
        bkdpp.fuzz(max_points=40)
