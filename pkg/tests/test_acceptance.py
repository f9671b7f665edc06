"""The twelve acceptance criteria, one test each.  Every test prints a single
PASS/FAIL line (tolerance: exact equality throughout)."""

import json
import subprocess
import sys
from functools import lru_cache
from pathlib import Path

import pytest

from twisted_zhu import verify
from twisted_zhu.bimodule import Bimodule, bimodule_axiom_checks, closure_checks
from twisted_zhu.fock import ID, THETA, TWISTED, VACUUM
from twisted_zhu.fusion import fusion_sequence
from twisted_zhu.intertwiner import module_as_intertwiner
from twisted_zhu.products import specialize_check

ROOT = Path(__file__).resolve().parents[1]
N = 6
SCENARIOS = {"1,theta": (ID, THETA, VACUUM), "theta,theta": (THETA, THETA, TWISTED), "1,1": (ID, ID, VACUUM)}


@lru_cache(maxsize=None)
def bimodule(name):
    return Bimodule(*SCENARIOS[name], N)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print("\n[%s] criterion %2d: %s (exact)" % ("PASS" if ok else "FAIL", number, detail))
        return ok
    return emit


def test_01_commutator_formula(report):
    res = [verify.commutator_check(m, count=100, max_weight=6, seed=0) for m in (VACUUM, TWISTED)]
    ok = all(r["passed"] and r["instances"] >= 100 for r in res)
    detail = ", ".join("%s %d/%d nonzero" % (r["check"], r["nonzero_instances"], r["instances"]) for r in res)
    assert report(1, ok, "commutator formula on seeded triples: " + detail), res


def test_02_odd_states_in_O(report):
    r = verify.odd_states_vanish(N)
    assert report(2, r["passed"], "%d odd states of weight <= %d reduce to 0 in A_theta(V)" % (r["instances"], N - 1)), r


def test_03_algebra_axioms(report):
    res = verify.algebra_axioms(ID, N) + verify.algebra_axioms(THETA, N)
    ok = all(r["passed"] for r in res)
    total = sum(r["instances"] for r in res)
    assert report(3, ok, "unit, omega central, associativity for g in {1, theta}: %d instances" % total), \
        [r for r in res if not r["passed"]]


def test_04_bottom_representation(report):
    res = verify.bottom_representation(ID, N) + verify.bottom_representation(THETA, N)
    ok = all(r["passed"] for r in res)
    total = sum(r["instances"] for r in res)
    assert report(4, ok, "o(u)o(v) = o(u*v) on bottoms and o kills O rows: %d instances" % total), \
        [r for r in res if not r["passed"]]


def test_05_bimodule_closure(report):
    bad, total = [], 0
    for name in SCENARIOS:
        for r in closure_checks(bimodule(name)):
            total += r.instances
            if not r.ok:
                bad.append((name, r.as_dict()))
    assert report(5, not bad, "shifted-exponent family and product/ideal closure, 3 scenarios: %d instances" % total), bad


def test_06_bimodule_axioms(report):
    bad, total = [], 0
    for name in SCENARIOS:
        for r in bimodule_axiom_checks(bimodule(name)):
            total += r.instances
            if not r.ok:
                bad.append((name, r.as_dict()))
    assert report(6, not bad, "bimodule unit/associativity/compatibility, 3 scenarios: %d triples" % total), bad


def test_07_specializations(report):
    runs = [("FZ", THETA), ("DLM", THETA), ("DLM", ID)]
    res = [(k, g, specialize_check(k, N, g2=g)) for k, g in runs]
    ok = all(r[0] for _, _, r in res)
    detail = ", ".join("%s[g2=%s] %d coefficients" % (k, g, r[2]) for k, g, r in res)
    assert report(7, ok, "coefficientwise specializations: " + detail), [r[1] for _, _, r in res if not r[0]]


def test_08_zero_mode_map(report):
    bim = bimodule("1,theta")
    I = module_as_intertwiner(TWISTED)
    res = [verify.zero_mode_identities(I, bim), verify.zero_mode_kills_bimodule_O(I, bim),
           verify.image_map_check(I, bim, expected_rank=1)]
    ok = all(r["passed"] for r in res)
    detail = "identities %d pairs, %d O rows killed, image rank %d" % (
        res[0]["instances"], res[1]["instances"], res[2]["rank"])
    assert report(8, ok, "zero modes of Y_M(theta): " + detail), [r for r in res if not r["passed"]]


def test_09_straighten(report):
    I = module_as_intertwiner(TWISTED)
    r = verify.straighten_sample(I, count=60, seed=0)
    ok = r["passed"] and r["instances"] >= 50 and r["nonzero_instances"] > 0 and r["weight_zero_instances"] > 0
    assert report(9, ok, "straightening re-evaluates exactly on %d instances (%d nonzero, %d weight zero)" % (
        r["instances"], r["nonzero_instances"], r["weight_zero_instances"])), r


def test_10_fusion_bound(report):
    caps = (2, 4, 6, 8)
    canon = fusion_sequence(ID, THETA, VACUUM, TWISTED, TWISTED, caps=caps,
                            intertwiner=module_as_intertwiner(TWISTED))
    pair = fusion_sequence(THETA, THETA, TWISTED, TWISTED, VACUUM, caps=caps)
    dims = [s["hom_dim"] for s in canon["sequence"]]
    ok = (dims == [1, 1, 1, 1] and canon["stabilized"] and canon["lower_bound"] == 1
          and all(p["in_span"] and p["balanced"] for p in canon["pi"]) and pair["stabilized"])
    detail = "canonical %s (lower bound %s); theta-theta %s stabilized=%s" % (
        dims, canon["lower_bound"], [s["hom_dim"] for s in pair["sequence"]], pair["stabilized"])
    assert report(10, ok, "fusion bound over N in {2,4,6,8}: " + detail), (canon, pair)


def test_11_bottom_weight(report):
    r = verify.bottom_weight_check(2 * 8)
    ok = r["passed"] and r["matches"] and r["h"] == "1/16"
    assert report(11, ok, "h = %s from the recursion, %s from the normal-ordered oracle, L(0) on %d states" % (
        r["h"], r["oracle_h"], r["instances"])), r


def _run(path, extra):
    cmd = [sys.executable, "-m", "twisted_zhu", "run", "--scenario", str(path)] + extra
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert proc.returncode in (0, 1), proc.stderr
    report = json.loads(proc.stdout)
    report.pop("timing")
    return json.dumps(report, sort_keys=True)


def test_12_determinism(report):
    paths = sorted((ROOT / "scenarios").glob("*.txt"))
    same = []
    for path in paths:
        extra = ["--weight-cap", "3"] if "verify" in path.read_text() else []
        same.append(_run(path, extra) == _run(path, extra))
    ok = bool(paths) and all(same)
    assert report(12, ok, "%d scenario files, two fresh processes each, identical reports" % len(paths)), same
