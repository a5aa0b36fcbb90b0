"""JSON experiment configuration: systems, contexts, joinings and tasks.

Example::

    {
      "seed": 1,
      "systems": {
        "B": {"parts": [{"type": "shift", "family": "s", "step": 1}]},
        "Id": {"parts": [{"type": "fixed", "family": "F", "members": ["h", "k"]}]}
      },
      "contexts": {"BB": ["B", "B"], "II": ["Id", "Id"]},
      "joinings": {
        "mu": {"kind": "trivial", "context": "BB"},
        "omega": {"kind": "vector", "context": "II",
                  "eta": [{"word": "e", "amp": "1"}, {"word": "1:h 2:k", "amp": "1"}]}
      },
      "tasks": [{"type": "eval", "joining": "omega", "elements": ["1:h 2:k"]}]
    }

Every word or element string is parsed when the configuration is loaded, so a
malformed token is reported with its path and character position before
anything runs.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from .errors import ConfigError, FreeJoinError, WordSyntaxError
from .freegroup import FiniteCycles, Fixed, Part, Shift, SymbolBijection, Word, parse_word
from .freeproduct import FreeProductContext, GroupSystem, Monomial
from .groupalg import AlgebraElement, FinVector, parse_element
from .joinings import DiagonalJoining, FactorMap, Joining, TrivialJoining, VectorStateJoining
from .scalars import ComplexRational, parse_scalar

TASK_TYPES = ("eval", "verify", "split-check", "ergodic", "correlate", "kmixing", "folner", "gns-check")


@dataclass
class Task:
    type: str
    name: str
    params: dict[str, Any]


@dataclass
class ExperimentConfig:
    seed: int | None = None
    systems: dict[str, GroupSystem] = field(default_factory=dict)
    contexts: dict[str, FreeProductContext] = field(default_factory=dict)
    joinings: dict[str, Joining] = field(default_factory=dict)
    tasks: list[Task] = field(default_factory=list)
    # normalized source, kept for serialization
    raw: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return _plain(self.raw)

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _plain(v: Any) -> Any:
    if isinstance(v, (Word, AlgebraElement, FinVector, ComplexRational)):
        return str(v)
    if isinstance(v, Monomial):
        return [[i, str(w)] for i, w in zip(v.indices, v.words)]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


class _Loader:
    def __init__(self, doc: Any):
        self.doc = doc
        self.cfg = ExperimentConfig()

    # -- small validators -------------------------------------------------

    def require(self, obj: dict, key: str, path: str, kind: type | tuple[type, ...] = object) -> Any:
        if not isinstance(obj, dict):
            raise ConfigError(path, "expected an object")
        if key not in obj:
            raise ConfigError(f"{path}.{key}", "missing required field")
        value = obj[key]
        if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
            raise ConfigError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {value!r}")
        return value

    def parse_text(self, fn: Callable[[str], Any], text: Any, path: str) -> Any:
        if not isinstance(text, str):
            raise ConfigError(path, f"expected a string, got {text!r}")
        try:
            return fn(text)
        except WordSyntaxError as e:
            raise ConfigError(path, str(e), e.position) from None

    def ref(self, table: dict, name: Any, path: str, what: str) -> Any:
        if name not in table:
            raise ConfigError(path, f"unresolved {what} reference {name!r}")
        return table[name]

    def guard(self, path: str, fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except ConfigError:
            raise
        except (FreeJoinError, ValueError, TypeError) as e:
            raise ConfigError(path, str(e)) from None

    # -- sections ----------------------------------------------------------

    def load(self) -> ExperimentConfig:
        doc = self.doc
        if not isinstance(doc, dict):
            raise ConfigError("$", "top level must be an object")
        unknown = set(doc) - {"seed", "systems", "contexts", "joinings", "tasks"}
        if unknown:
            raise ConfigError(f"$.{sorted(unknown)[0]}", "unknown top-level field")
        raw: dict[str, Any] = {}
        if doc.get("seed") is not None:
            seed = self.require(doc, "seed", "$", int)
            if seed < 0:
                raise ConfigError("$.seed", "seed must be a nonnegative integer")
            self.cfg.seed = raw["seed"] = seed
        raw["systems"] = {n: self.system(n, s, f"$.systems.{n}") for n, s in doc.get("systems", {}).items()}
        raw["contexts"] = {n: self.context(n, c, f"$.contexts.{n}") for n, c in doc.get("contexts", {}).items()}
        raw["joinings"] = {n: self.joining(n, j, f"$.joinings.{n}") for n, j in doc.get("joinings", {}).items()}
        tasks = doc.get("tasks", [])
        if not isinstance(tasks, list):
            raise ConfigError("$.tasks", "expected a list")
        raw["tasks"] = [self.task(i, t, f"$.tasks[{i}]") for i, t in enumerate(tasks)]
        self.cfg.raw = raw
        return self.cfg

    def system(self, name: str, spec: Any, path: str) -> dict:
        parts_spec = self.require(spec, "parts", path, list)
        parts: list[Part] = []
        norm = []
        for i, p in enumerate(parts_spec):
            ppath = f"{path}.parts[{i}]"
            kind = self.require(p, "type", ppath, str)
            family = self.require(p, "family", ppath, str)
            if kind == "shift":
                step = self.require(p, "step", ppath, int)
                parts.append(Shift(family, step))
                norm.append({"type": "shift", "family": family, "step": step})
            elif kind == "fixed":
                members = p.get("members")
                if members is not None and not (isinstance(members, list) and all(isinstance(m, str) for m in members)):
                    raise ConfigError(f"{ppath}.members", "expected a list of symbol names")
                parts.append(Fixed(family, None if members is None else tuple(members)))
                norm.append({"type": "fixed", "family": family, **({"members": members} if members is not None else {})})
            elif kind == "cycles":
                cycles = self.require(p, "cycles", ppath, list)
                if not all(isinstance(c, list) and all(isinstance(m, str) for m in c) for c in cycles):
                    raise ConfigError(f"{ppath}.cycles", "expected a list of lists of symbol names")
                parts.append(FiniteCycles(family, tuple(tuple(c) for c in cycles)))
                norm.append({"type": "cycles", "family": family, "cycles": cycles})
            else:
                raise ConfigError(f"{ppath}.type", f"unknown part type {kind!r}")
        T = self.guard(path, lambda: SymbolBijection(parts))
        self.cfg.systems[name] = GroupSystem(name, T)
        return {"parts": norm}

    def context(self, name: str, spec: Any, path: str) -> list:
        if not isinstance(spec, list) or not spec:
            raise ConfigError(path, "a context is a nonempty list of system names")
        factors = [self.ref(self.cfg.systems, s, f"{path}[{i}]", "system") for i, s in enumerate(spec)]
        self.cfg.contexts[name] = FreeProductContext(factors)
        return list(spec)

    def joining(self, name: str, spec: Any, path: str) -> dict:
        kind = self.require(spec, "kind", path, str)
        ctx_name = self.require(spec, "context", path, str)
        ctx = self.ref(self.cfg.contexts, ctx_name, f"{path}.context", "context")
        norm: dict[str, Any] = {"kind": kind, "context": ctx_name}
        if kind == "trivial":
            J: Joining = TrivialJoining(ctx)
        elif kind == "diagonal":
            target_name = self.require(spec, "target", path, str)
            target = self.ref(self.cfg.systems, target_name, f"{path}.target", "system")
            maps_spec = spec.get("maps", "identity")
            if maps_spec == "identity":
                maps = [FactorMap.identity(i) for i in range(1, ctx.k + 1)]
            else:
                if not isinstance(maps_spec, list):
                    raise ConfigError(f"{path}.maps", "expected \"identity\" or a list of factor maps")
                maps = []
                for i, m in enumerate(maps_spec, 1):
                    mpath = f"{path}.maps[{i - 1}]"
                    if not isinstance(m, dict):
                        raise ConfigError(mpath, "expected an object")
                    maps.append(
                        FactorMap(i, dict(m.get("symbol_map", {})), dict(m.get("index_shift", {})), int(m.get("offset", 0)))
                    )
            offsets = spec.get("offsets")
            if offsets is not None and not (isinstance(offsets, list) and all(isinstance(x, int) for x in offsets)):
                raise ConfigError(f"{path}.offsets", "expected a list of integers")
            J = self.guard(path, lambda: DiagonalJoining(ctx, target, maps, offsets))
            norm.update({"target": target_name, "maps": maps_spec, "offsets": list(J.offsets)})
        elif kind == "vector":
            eta_spec = self.require(spec, "eta", path, list)
            pairs = []
            for i, entry in enumerate(eta_spec):
                epath = f"{path}.eta[{i}]"
                w = self.parse_text(parse_word, self.require(entry, "word", epath), f"{epath}.word")
                amp = self.parse_text(parse_scalar, str(self.require(entry, "amp", epath)), f"{epath}.amp")
                pairs.append((w, amp))
            eta = FinVector(pairs)
            J = self.guard(path, lambda: VectorStateJoining(ctx, eta))
            norm["eta"] = [{"word": str(w), "amp": str(c)} for w, c in sorted(eta.items(), key=lambda p: p[0])]
        else:
            raise ConfigError(f"{path}.kind", f"unknown joining kind {kind!r}")
        self.cfg.joinings[name] = J
        return norm

    # -- tasks -------------------------------------------------------------

    def elements(self, spec: Any, path: str, check: Callable[[AlgebraElement], None] | None) -> list:
        if not isinstance(spec, list):
            raise ConfigError(path, "expected a list of element strings")
        out = []
        for i, text in enumerate(spec):
            a = self.parse_text(parse_element, text, f"{path}[{i}]")
            if check is not None:
                self.guard(f"{path}[{i}]", lambda: check(a))
            out.append(a)
        return out

    def monomial(self, spec: Any, path: str, system: GroupSystem, k: int) -> Monomial:
        if isinstance(spec, str):
            ctx = FreeProductContext([system] * k)
            w = self.parse_text(parse_word, spec, path)
            return self.guard(path, lambda: ctx.split(w))
        if not isinstance(spec, list):
            raise ConfigError(path, "expected a tagged word or a list of [copy, word] pairs")
        idx, words = [], []
        for i, pair in enumerate(spec):
            if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)):
                raise ConfigError(f"{path}[{i}]", "expected [copy index, word]")
            w = self.parse_text(parse_word, pair[1], f"{path}[{i}][1]")
            if not 1 <= pair[0] <= k:
                raise ConfigError(f"{path}[{i}][0]", f"copy index {pair[0]} outside 1..{k}")
            self.guard(f"{path}[{i}][1]", lambda: system.check_word(w))
            idx.append(pair[0])
            words.append(w)
        return Monomial(tuple(idx), tuple(words))

    def int_range(self, spec: Any, path: str) -> list[int]:
        if not (isinstance(spec, list) and len(spec) == 2 and all(isinstance(x, int) for x in spec)):
            raise ConfigError(path, "expected [lo, hi]")
        return list(spec)

    def task(self, i: int, spec: Any, path: str) -> dict:
        kind = self.require(spec, "type", path, str)
        if kind not in TASK_TYPES:
            raise ConfigError(f"{path}.type", f"unknown task type {kind!r}; expected one of {', '.join(TASK_TYPES)}")
        name = spec.get("name", f"task{i:02d}-{kind}")
        params: dict[str, Any] = {}
        J = None
        if "joining" in spec or kind in ("eval", "verify", "split-check", "gns-check"):
            jname = self.require(spec, "joining", path, str)
            J = self.ref(self.cfg.joinings, jname, f"{path}.joining", "joining")
            params["joining"] = jname
        if "system" in spec or kind in ("ergodic", "correlate", "kmixing", "folner"):
            sname = self.require(spec, "system", path, str)
            system = self.ref(self.cfg.systems, sname, f"{path}.system", "system")
            params["system"] = sname
        if kind in ("correlate", "kmixing", "folner"):
            k = self.require(spec, "k", path, int)
            if k < 1:
                raise ConfigError(f"{path}.k", "k must be at least 1")
            params["k"] = k
            fctx = FreeProductContext([system] * k)

        def opt(key, default=None):
            if key in spec:
                params[key] = spec[key]
            elif default is not None:
                params[key] = default

        if kind == "eval":
            params["elements"] = self.elements(self.require(spec, "elements", path), f"{path}.elements", J.ctx.check_element)
            if "expected" in spec:
                exp = spec["expected"]
                if not isinstance(exp, list) or len(exp) != len(params["elements"]):
                    raise ConfigError(f"{path}.expected", "expected one value per element")
                params["expected"] = [self.parse_text(parse_scalar, str(v), f"{path}.expected[{j}]") for j, v in enumerate(exp)]
        elif kind == "verify":
            self.samples(spec, path, params, J.ctx)
            params["n_range"] = self.int_range(spec.get("n_range", [-3, 3]), f"{path}.n_range")
        elif kind == "split-check":
            ctx = J.ctx
            if ctx.k != 2:
                raise ConfigError(f"{path}.joining", "split-check needs a two-factor context")
            params["a1"] = self.elements(self.require(spec, "a1", path), f"{path}.a1", ctx.factor(1).check_element)
            params["a2"] = self.elements(self.require(spec, "a2", path), f"{path}.a2", ctx.factor(2).check_element)
            expect = spec.get("expect", "split")
            if expect not in ("split", "violation"):
                raise ConfigError(f"{path}.expect", "expected \"split\" or \"violation\"")
            params["expect"] = expect
        elif kind == "ergodic":
            pairs = spec.get("pairs", [])
            norm_pairs = []
            for j, pair in enumerate(pairs):
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise ConfigError(f"{path}.pairs[{j}]", "expected [g, h]")
                g = self.parse_text(parse_word, pair[0], f"{path}.pairs[{j}][0]")
                h = self.parse_text(parse_word, pair[1], f"{path}.pairs[{j}][1]")
                self.guard(f"{path}.pairs[{j}]", lambda: (system.check_word(g), system.check_word(h)))
                norm_pairs.append([g, h])
            params["pairs"] = norm_pairs
            if "expected" in spec:
                if not isinstance(spec["expected"], bool):
                    raise ConfigError(f"{path}.expected", "expected a boolean")
                params["expected"] = spec["expected"]
        elif kind in ("correlate", "kmixing"):
            params["monomial"] = self.monomial(self.require(spec, "monomial", path), f"{path}.monomial", system, k)
            if kind == "correlate":
                box = self.require(spec, "box", path, list)
                if len(box) != k:
                    raise ConfigError(f"{path}.box", f"expected {k} [lo, hi] ranges")
                params["box"] = [self.int_range(b, f"{path}.box[{j}]") for j, b in enumerate(box)]
            else:
                size = spec.get("size", 5)
                if not isinstance(size, int) or size < 1:
                    raise ConfigError(f"{path}.size", "expected a positive integer")
                params["size"] = size
        elif kind == "folner":
            boxes = spec.get("boxes", "shifted")
            if not (boxes in ("shifted", "plain") or (isinstance(boxes, list) and len(boxes) == k and all(isinstance(c, int) for c in boxes))):
                raise ConfigError(f"{path}.boxes", f"expected \"shifted\", \"plain\" or {k} integer offsets")
            params["boxes"] = boxes
            if "monomials" in spec:
                mons = self.require(spec, "monomials", path, list)
                params["monomials"] = [self.monomial(m, f"{path}.monomials[{j}]", system, k) for j, m in enumerate(mons)]
            if "elements" in spec:
                params["elements"] = self.elements(spec["elements"], f"{path}.elements", fctx.check_element)
            if not params.get("monomials") and not params.get("elements"):
                raise ConfigError(path, "folner needs \"monomials\" or \"elements\"")
            N_max = self.require(spec, "N_max", path, int)
            window = spec.get("window", 2)
            if not (isinstance(window, int) and N_max >= window >= 2):
                raise ConfigError(f"{path}.window", "need N_max >= window >= 2")
            params["N_max"], params["window"] = N_max, window
            if "shift" in spec:
                m = spec["shift"]
                if not (isinstance(m, list) and len(m) == k and all(isinstance(x, int) for x in m)):
                    raise ConfigError(f"{path}.shift", f"expected {k} integers")
                params["shift"] = m
            if "verify_axioms" in spec:
                va = spec["verify_axioms"]
                if not isinstance(va, dict):
                    raise ConfigError(f"{path}.verify_axioms", "expected an object")
                sub: dict[str, Any] = {}
                self.samples(va, f"{path}.verify_axioms", sub, fctx)
                sub["n_range"] = self.int_range(va.get("n_range", [-2, 2]), f"{path}.verify_axioms.n_range")
                params["verify_axioms"] = sub
        elif kind == "gns-check":
            from .gns import gns_model

            self.guard(f"{path}.joining", lambda: gns_model(J))
            for key in ("iota", "kappa"):
                v = self.require(spec, key, path, int)
                if not 1 <= v <= J.ctx.k:
                    raise ConfigError(f"{path}.{key}", f"factor index {v} outside 1..{J.ctx.k}")
                params[key] = v
            params["n_range"] = self.int_range(spec.get("n_range", [-3, 3]), f"{path}.n_range")
            vecs = spec.get("vectors", {"count": 20})
            if not isinstance(vecs, dict) or not isinstance(vecs.get("count", 20), int):
                raise ConfigError(f"{path}.vectors", "expected {\"count\": n, ...}")
            params["vectors"] = {k_: vecs[k_] for k_ in ("count", "terms", "max_length", "index_radius") if k_ in vecs}
            params["vectors"].setdefault("count", 20)
            opt("fixed_projection")
        task = Task(kind, name, params)
        self.cfg.tasks.append(task)
        return {"type": kind, "name": name, **params}

    def samples(self, spec: dict, path: str, params: dict, ctx: FreeProductContext) -> None:
        """Either explicit ``factor_words``/``elements`` or random ``count``-based sampling."""
        if "factor_words" in spec:
            fw = spec["factor_words"]
            if not isinstance(fw, dict):
                raise ConfigError(f"{path}.factor_words", "expected {\"1\": [words], ...}")
            out = {}
            for key, words in fw.items():
                if not (str(key).isdigit() and 1 <= int(key) <= ctx.k):
                    raise ConfigError(f"{path}.factor_words.{key}", "not a factor index")
                parsed = []
                for j, t in enumerate(words):
                    w = self.parse_text(parse_word, t, f"{path}.factor_words.{key}[{j}]")
                    self.guard(f"{path}.factor_words.{key}[{j}]", lambda: ctx.factor(int(key)).check_word(w))
                    parsed.append(w)
                out[str(key)] = parsed
            params["factor_words"] = out
        if "elements" in spec:
            params["elements"] = self.elements(spec["elements"], f"{path}.elements", ctx.check_element)
        sampling = spec.get("sampling")
        if sampling is not None:
            if not isinstance(sampling, dict) or not all(isinstance(v, int) for v in sampling.values()):
                raise ConfigError(f"{path}.sampling", "expected integer sampling parameters")
            params["sampling"] = dict(sampling)
        if "factor_words" not in params and "elements" not in params and "sampling" not in params:
            params["sampling"] = {"count": 20}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate configuration text; raise ``ConfigError`` on the first problem."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"line {e.lineno} column {e.colno}", e.msg, e.pos) from None
    return _Loader(doc).load()


def load_config(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
