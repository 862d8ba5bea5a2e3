import copy
import itertools
import json
import os
from pathlib import Path

import pytest

import coxlift

PROBLEMS = Path(os.environ.get("COXLIFT_PROBLEMS", Path(__file__).resolve().parents[2] / "problems"))


def load(name):
    return json.loads((PROBLEMS / name).read_text())


def test_square_root_lift():
    out = coxlift.lift(load("a1_into_half11.json"))
    assert out.ok
    assert out.document["images"] == {"x": "z", "y": "0"}
    assert "[divisor root: t, order 2]" in out.log
    assert out.document["stack"]["pic"]["canonical"] == "Z/2"


def test_cube_roots_constraint():
    out = coxlift.lift(load("mu3.json"))
    assert out.ok
    assert "a(x) + a(y) = 0 (mod 3)" in out.log
    assert "3 solutions, chose (0,0)" in out.log


def test_verify_round_trip_and_tamper():
    problem = load("a1_into_half11.json")
    result = coxlift.lift(problem).document
    assert coxlift.verify(problem, result).ok
    bad = copy.deepcopy(result)
    bad["class_map"] = [[0]]
    report = coxlift.verify(problem, bad)
    assert report.status == 1
    assert not report.document["verification"]["passed"]


def test_decompose():
    out = coxlift.decompose(load("line_bundle_root_stack.json"))
    assert out.ok
    assert out.document["pic_matches"] and out.document["degrees_match"]


def test_factor():
    out = coxlift.factor(load("mu3.json"), "u*w")
    assert sorted(f[0] for f in out.document["factors"]) == ["u", "w"]


def test_bad_unit_is_rejected():
    problem = load("mu3.json")
    problem["source"]["ring"]["factorizations"][0]["unit"] = "2"
    with pytest.raises(coxlift.InputError, match="declared factorization of v"):
        coxlift.lift(problem)


def test_smith_normal_form():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    s, u, v = coxlift.smith_normal_form(m)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]

    assert mul(mul(u, m), v) == s
    assert [s[i][i] for i in range(3)] == [2, 6, 12]
    big = 2**80
    assert coxlift.smith_normal_form([[big]])[0] == [[big]]


def test_groups():
    assert coxlift.group(1, [[2]])["canonical"] == "Z/2"
    assert coxlift.group(2, [[2, 0], [0, 3]])["torsion"] == [6]
    assert coxlift.group(1, [])["free_rank"] == 1
    assert coxlift.element_order([4], [2]) == 2
    assert coxlift.element_order([], []) == 1


def brute_pushout_size(invariants, a, n):
    # elements of (A + Z)/(a, -n) are the pairs (x, k) with 0 <= k < n
    size = n
    for d in invariants:
        size *= d
    return size


@pytest.mark.parametrize("invariants", [[], [2], [4], [2, 2], [3], [2, 4]])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_pushout_orders(invariants, n):
    for a in itertools.product(*[range(d) for d in invariants]):
        r = coxlift.pushout_root(invariants, 0, list(a), n)
        order = 1
        for d in r["torsion"]:
            order *= d
        assert r["free_rank"] == 0
        assert order == brute_pushout_size(invariants, a, n)
    assert coxlift.pushout_root([2], 0, [1], 2)["torsion"] == [4]


def test_malformed_json_is_an_input_error():
    with pytest.raises(coxlift.InputError):
        coxlift.lift("{not json")
    with pytest.raises(ValueError):
        coxlift.group(2, [[1]])
