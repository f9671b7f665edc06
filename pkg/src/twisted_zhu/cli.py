"""
Command line: build truncated Zhu algebras and bimodules, compute the fusion
bound, and run the verification sweeps for a scenario file.

    twisted-zhu run --scenario s.txt
    twisted-zhu fusion-bound --scenario s.txt --weight-cap 8 --out report.json

Exit status: 0 all checks passed, 1 some check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import fock
from .bimodule import Bimodule, bimodule_axiom_checks, generator_checks, closure_checks
from .fusion import MARGIN, fusion_sequence
from .intertwiner import module_as_intertwiner
from .products import specialize_check
from .scalar import CycScalar, to_pairs
from .scenario import TASKS, ScenarioError, parse_scenario, validate
from .zhu import ZhuAlgebra, stabilization
from . import verify

SCHEMA = "twisted-zhu-report/1"


def jsonable(obj):
    """Plain JSON data; tuples become lists and non-string keys become pair lists."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, CycScalar):
        return {"cyclotomic": jsonable(to_pairs(obj, fock.T))}
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: jsonable(v) for k, v in obj.items()}
        return [[jsonable(k), jsonable(v)] for k, v in obj.items()]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    return str(obj)


def _states(states):
    return [fock.state_to_json(s) for s in states]


def _dims(pairs):
    return [[str(k), d] for k, d in pairs]


def _vec_json(vec):
    return [[fock.state_to_json(s), str(c)] for s, c in sorted(vec.items(), key=lambda kv: fock.sort_key(kv[0]))]


class Runner:
    def __init__(self, sc, dump_tables=False):
        self.sc = sc
        self.N = sc.weight_cap
        self.dump_tables = dump_tables
        self.checks = []
        self.tables = {}
        self.timing = {}
        self._zhu = {}
        self._bim = None

    def zhu(self, g):
        if g not in self._zhu:
            self._zhu[g] = ZhuAlgebra(g, self.N)
        return self._zhu[g]

    def bimodule(self):
        if self._bim is None:
            sc = self.sc
            self._bim = Bimodule(sc.g1, sc.g2, sc.module("M1"), self.N,
                                 algebras={sc.g3: self.zhu(sc.g3), sc.g2: self.zhu(sc.g2)})
        return self._bim

    def add(self, task, results):
        for r in results if isinstance(results, list) else [results]:
            r = dict(r)
            r["task"] = task
            self.checks.append(r)

    # -- tasks
    def build_zhu(self):
        out = {}
        for g in sorted({self.sc.g2, self.sc.g3}):
            alg = self.zhu(g)
            stable, rows = stabilization(g, self.N) if self.N >= 2 else (True, [])
            out[g] = {
                "layer_dims": _dims(alg.layer_dims()),
                "representatives": _states(alg.reps),
                "relation_rank": alg.quotient.rank,
                "stable_below_top": stable,
                "stability_rows": [[str(k), a, b] for k, a, b in rows],
            }
            if self.dump_tables:
                reps, table = alg.product_table()
                self.tables["A_%s" % g] = {
                    "representatives": _states(reps),
                    "products": [[i, j, _vec_json(v)] for i, j, v in table],
                }
        return out

    def build_bimodule(self):
        bim = self.bimodule()
        enlarged, r1, r = bim.enlargement()
        out = {
            "layer_dims_O": _dims(bim.layer_dims("O")),
            "layer_dims_Oprime": _dims(bim.layer_dims("O1")),
            "rank_Oprime": r1, "rank_O": r,
            "Odoubleprime_enlarges_Oprime": enlarged,
            "representatives": _states(bim.reps),
        }
        if self.dump_tables:
            one = Fraction(1)
            left, right = [], []
            for i, x in enumerate(bim.reps):
                for a in bim.left_alg.reps:
                    if sum(a) + sum(x) <= bim.cap:
                        left.append([fock.state_to_json(a), i, _vec_json(bim.act_left({a: one}, {x: one}))])
                for b in bim.right_alg.reps:
                    if sum(b) + sum(x) <= bim.cap:
                        right.append([i, fock.state_to_json(b), _vec_json(bim.act_right({x: one}, {b: one}))])
            self.tables["bimodule"] = {"representatives": _states(bim.reps), "left": left, "right": right}
        return out

    def _intertwiner(self):
        sc = self.sc
        if sc.M1 == "vacuum" and sc.M2 == sc.M3:
            return module_as_intertwiner(sc.module("M2"))
        return None

    def fusion(self):
        sc = self.sc
        caps = list(range(2, self.N + 1, 2)) or [self.N]
        I = self._intertwiner()
        res = fusion_sequence(sc.g1, sc.g2, sc.module("M1"), sc.module("M2"), sc.module("M3"),
                              caps=caps, intertwiner=I)
        self.add("fusion-bound", {"check": "fusion_stabilized", "passed": res["stabilized"],
                                  "instances": len(caps), "failures": []})
        if I is not None:
            ok = all(p["nonzero"] and p["solves"] and p["in_span"] and p["balanced"] for p in res["pi"])
            self.add("fusion-bound", {"check": "pi_of_module_operator_is_equivariant", "passed": ok,
                                      "instances": len(res["pi"]), "failures": []})
        res["caps"] = caps
        res["projection_margin"] = MARGIN
        res["assumption"] = "M3 irreducible (not verified)"
        return res

    def verify(self):
        sc, N = self.sc, self.N
        seed = sc.seed
        self.add("verify", [self._spec("FZ"), self._spec("DLM")])
        mods = []
        for key in ("M1", "M2", "M3"):
            m = sc.module(key)
            if m not in mods:
                mods.append(m)
        for m in mods:
            self.add("verify", verify.commutator_check(m, count=100, max_weight=min(6, max(N, 1)), seed=seed))
        if fock.TWISTED in mods:
            self.add("verify", verify.bottom_weight_check(2 * N))
        gs = sorted({sc.g2, sc.g3})
        if fock.THETA in gs and N >= 1:
            self.add("verify", verify.odd_states_vanish(N))
        for g in gs:
            self.add("verify", verify.algebra_axioms(g, N))
            self.add("verify", verify.bottom_representation(g, N))
        bim = self.bimodule()
        self.add("verify", generator_checks(bim).as_dict())
        self.add("verify", [r.as_dict() for r in closure_checks(bim)])
        self.add("verify", [r.as_dict() for r in bimodule_axiom_checks(bim)])
        I = self._intertwiner()
        if I is not None:
            self.add("verify", [
                verify.zero_mode_identities(I, bim),
                verify.zero_mode_kills_bimodule_O(I, bim),
                verify.image_map_check(I, bim),
                verify.associativity_sample(I, count=20, seed=seed),
                verify.straighten_sample(I, count=50, seed=seed),
            ])
        enlarged, r1, r = bim.enlargement()
        return {"Odoubleprime_enlarges_Oprime": enlarged, "rank_Oprime": r1, "rank_O": r,
                "intertwiner_checks": I is not None}

    def _spec(self, kind):
        ok, diff, count = specialize_check(kind, self.N, g2=self.sc.g2)
        fails = [] if ok else [{"product": diff["product"], "u": diff["u"], "w": diff["w"]}]
        return {"check": "specialization[%s]" % kind, "passed": ok, "instances": count, "failures": fails}

    def run(self):
        results = {}
        handlers = {"build-zhu": self.build_zhu, "build-bimodule": self.build_bimodule,
                    "fusion-bound": self.fusion, "verify": self.verify}
        for task in self.sc.tasks:
            t0 = time.perf_counter()
            results[task] = handlers[task]()
            self.timing[task] = round(time.perf_counter() - t0, 3)
        report = {
            "schema": SCHEMA,
            "scenario": self.sc.as_dict(),
            "results": results,
            "checks": self.checks,
            "all_passed": all(c["passed"] for c in self.checks),
            "timing": self.timing,
        }
        return jsonable(report)


def run_scenario(sc, dump_tables=False):
    """(report, tables, exit code) for a validated scenario."""
    runner = Runner(sc, dump_tables)
    report = runner.run()
    return report, jsonable(runner.tables), 0 if report["all_passed"] else 1


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2)


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def build_parser():
    p = argparse.ArgumentParser(prog="twisted-zhu", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("run",) + TASKS:
        s = sub.add_parser(name, help="run the scenario's task list" if name == "run" else "run only " + name)
        s.add_argument("--scenario", required=True, help="scenario file (key = value lines)")
        s.add_argument("--weight-cap", type=int, help="override weight_cap")
        s.add_argument("--out", help="write the JSON report here instead of stdout")
        s.add_argument("--dump-tables", action="store_true", help="also write product tables")
        s.add_argument("--seed", type=int, help="override the seed of randomized sweeps")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        sc = parse_scenario(args.scenario)
        if args.weight_cap is not None:
            sc.weight_cap = args.weight_cap
        if args.seed is not None:
            sc.seed = args.seed
        if args.command != "run":
            sc.tasks = [args.command]
        validate(sc)
    except (OSError, ScenarioError) as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    report, tables, code = run_scenario(sc, args.dump_tables)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
        if args.dump_tables:
            Path(args.out).with_suffix(".tables.json").write_text(dumps(tables) + "\n")
    else:
        if args.dump_tables:
            report = dict(report, tables=tables)
            text = dumps(report)
        print(text)
    failed = [c["check"] for c in report["checks"] if not c["passed"]]
    if failed:
        print("failed checks: %s" % ", ".join(failed), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
