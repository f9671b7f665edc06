"""
Scenario files: flat ``key = value`` lines, ``#`` comments, lists comma-separated.

    T = 2
    backend = heisenberg
    g1 = id
    g2 = theta
    M1 = vacuum
    M2 = theta-twisted
    M3 = theta-twisted
    weight_cap = 6
    tasks = build-zhu, fusion-bound
    seed = 0
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from . import fock

TASKS = ("build-zhu", "build-bimodule", "fusion-bound", "verify")
TASK_ORDER = {t: i for i, t in enumerate(TASKS)}
BACKENDS = ("heisenberg",)
KEYS = ("T", "backend", "g1", "g2", "M1", "M2", "M3", "weight_cap", "tasks", "seed")
MODULE_LABELS = {"vacuum": fock.ID, "theta-twisted": fock.THETA}


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario."""


@dataclass
class Scenario:
    T: int = 2
    backend: str = "heisenberg"
    g1: str = fock.ID
    g2: str = fock.ID
    M1: str | None = None
    M2: str | None = None
    M3: str | None = None
    weight_cap: int = 4
    tasks: list = field(default_factory=list)
    seed: int = 0

    @property
    def g3(self):
        from .bimodule import compose
        return compose(self.g1, self.g2)

    def module(self, which):
        label = getattr(self, which)
        return None if label is None else fock.module_by_label(label)

    def as_dict(self):
        d = asdict(self)
        d["g3"] = self.g3
        return d


def _int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ScenarioError("%s: expected an integer, got %r" % (key, text)) from None


def parse_text(text):
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError("line %d: expected key = value" % lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ScenarioError("line %d: unknown key %r" % (lineno, key))
        if key in raw:
            raise ScenarioError("line %d: duplicate key %r" % (lineno, key))
        raw[key] = value
    sc = Scenario()
    if "T" in raw:
        sc.T = _int("T", raw["T"])
    if "backend" in raw:
        sc.backend = raw["backend"]
    for key in ("g1", "g2"):
        if key in raw:
            setattr(sc, key, raw[key])
    for key in ("M1", "M2", "M3"):
        if key in raw and raw[key]:
            setattr(sc, key, raw[key])
    if "weight_cap" in raw:
        sc.weight_cap = _int("weight_cap", raw["weight_cap"])
    if "seed" in raw:
        sc.seed = _int("seed", raw["seed"])
    if "tasks" in raw:
        sc.tasks = [t.strip() for t in raw["tasks"].split(",") if t.strip()]
    validate(sc)
    return sc


def parse_scenario(path):
    with open(path) as fh:
        return parse_text(fh.read())


def validate(sc):
    if sc.backend not in BACKENDS:
        raise ScenarioError("unknown backend %r (available: %s)" % (sc.backend, ", ".join(BACKENDS)))
    if sc.T != fock.T:
        raise ScenarioError("the heisenberg backend has T = %d, got T = %d" % (fock.T, sc.T))
    for key in ("g1", "g2"):
        if getattr(sc, key) not in fock.TWISTS:
            raise ScenarioError("%s: unknown automorphism %r" % (key, getattr(sc, key)))
    if sc.weight_cap < 0:
        raise ScenarioError("weight_cap must be >= 0")
    for t in sc.tasks:
        if t not in TASKS:
            raise ScenarioError("unknown task %r" % t)
    sc.tasks = sorted(dict.fromkeys(sc.tasks), key=TASK_ORDER.get)
    want = {"M1": sc.g1, "M2": sc.g2, "M3": sc.g3}
    for key, g in want.items():
        label = getattr(sc, key)
        if label is None:
            continue
        if label not in MODULE_LABELS:
            raise ScenarioError("%s: unknown module %r" % (key, label))
        if MODULE_LABELS[label] != g:
            raise ScenarioError("%s = %s is %s-twisted but must be %s-twisted" % (key, label, MODULE_LABELS[label], g))
    mods = [sc.M1, sc.M2, sc.M3]
    if "verify" in sc.tasks and not any(mods):
        raise ScenarioError("task verify needs modules M1, M2, M3")
    if "verify" in sc.tasks and not all(mods):
        raise ScenarioError("task verify needs all of M1, M2, M3")
    if "fusion-bound" in sc.tasks and not all(mods):
        raise ScenarioError("task fusion-bound needs M1, M2 and M3")
    if "build-bimodule" in sc.tasks and sc.M1 is None:
        raise ScenarioError("task build-bimodule needs M1")
    return sc
