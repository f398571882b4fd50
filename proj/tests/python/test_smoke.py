import json
import math

import pytest

import equivlab as eq


def test_perm_basics():
    assert eq.cycle_type([1, 2, 0]) == [3]
    assert eq.compose([1, 0, 2], [0, 2, 1]) == [1, 2, 0]
    assert eq.class_size([2, 1]) == 3


def test_characters():
    assert eq.sn_character([3], [1, 1, 1]) == 1
    assert eq.sn_character([2, 1], [3]) == -1
    i2 = [[1, 0], [0, 1]]
    assert abs(eq.gl_character([2], i2) - 3) < 1e-12


def test_ck():
    ev = eq.build_ck(2, 2)
    assert sorted(z.real for z in ev) == [-1.0, 1.0]
    assert max(eq.verify_ck_residuals(2, 6)) <= 1e-8
    with pytest.raises(ValueError):
        eq.build_ck(3, 2)


def test_oracle_matches_closed_form():
    p = [[2, 0, 0], [0, 1, 1], [0, 0, 1]]
    q = [[1, 1, 0], [0, 2, 0], [1, 0, 1]]
    sigma = [1, 0]  # transposition in S_2
    lhs = eq.cm_expect(sigma, p, q)
    rhs = eq.dual_weight_sum(sigma, p, q)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
    jet = eq.hm_expect(sigma, p, q)
    assert abs(jet - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_tensor_oracle():
    eye = [[1, 0], [0, 1]]
    c2 = [[1, 0], [0, -1]]
    bubble = [[1, 0], [0, 1], [0, 1]]  # transposition in color 0
    lhs = eq.ct_expect(bubble, [c2, eye, eye], 0.5)
    rhs = eq.tensor_dual_weight_sum(bubble, [c2, eye, eye], 0.5)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_closed_forms():
    assert abs(eq.quartic_cm_logz(0.1, 2) + 2 * math.log(1.1)) < 1e-12
    for n in (2, 3):
        want = eq.pillow_logz(0.05, n)
        assert abs(eq.pillow_det(0.05, n) - want) <= 1e-12 * abs(want)
        want_st = eq.st_logz(0.1, n)
        assert abs(eq.st_det(0.1, n) - want_st) <= 1e-12 * abs(want_st)
    assert eq.catalan(3) == 5


def test_convergence():
    assert eq.convergence_check([[1, 0], [0, 1]], [[1, 0], [0, 1]])["convergent"]
    bad = eq.convergence_check([[1, 0], [0, 1]], [[-1, 0], [0, 1]])
    assert not bad["convergent"]
    assert bad["witness_q"] == -1


def test_run_job_and_suites():
    names = {s["name"] for s in eq.list_suites()}
    assert "prop41" in names and len(names) >= 15
    report = json.loads(eq.run_job(json.dumps({"suite": "prop41", "N": 2, "n_max": 2})))
    assert report["overall"] is True
    assert report["suite"] == "prop41"
