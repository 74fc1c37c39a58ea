"""Line-oriented text format for systems.

::

    # single edge, minority at v1
    n 2
    e 1 2
    l 2                 # loop at vertex 2
    rule 1 anti 1       # thr r | anti r | count {a,b} | subsets [{},{2}] | majority | minority
    init ++             # zero or more initial states, vertex order 1..n
    param budget 1000   # free-form command parameters

Vertices without a ``rule`` line follow the majority rule for their degree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .engine import EngineError, State
from .graph import Graph, GraphError
from .rules import (
    AntiThreshold,
    CountSet,
    Rule,
    RuleError,
    SubsetSystem,
    SystemConfig,
    Threshold,
    majority_rule,
    minority_rule,
    validate_rule,
)


class SystemFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class SystemDocument:
    config: SystemConfig
    inits: list[State] = field(default_factory=list)
    params: dict[str, str] = field(default_factory=dict)

    @property
    def init(self) -> Optional[State]:
        return self.inits[0] if self.inits else None


_SET_RE = re.compile(r"\{([^{}]*)\}")


def _int_set(body: str, line: int) -> list[int]:
    body = body.strip()
    if not body:
        return []
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
    except ValueError:
        raise SystemFormatError(f"bad integer in {{{body}}}", line) from None


def parse_rule(spec: str, deg: int, line: Optional[int] = None) -> Rule:
    spec = spec.strip()
    head, _, rest = spec.partition(" ")
    rest = rest.strip()
    try:
        if head == "thr":
            return Threshold(int(rest))
        if head == "anti":
            return AntiThreshold(int(rest))
    except ValueError:
        raise SystemFormatError(f"threshold must be an integer, got {rest!r}", line) from None
    if head == "majority" and not rest:
        return majority_rule(deg)
    if head == "minority" and not rest:
        return minority_rule(deg)
    if head == "count":
        m = re.fullmatch(r"\{([^{}]*)\}", rest)
        if not m:
            raise SystemFormatError(f"count rule needs a set like {{0,2}}, got {rest!r}", line)
        return CountSet(_int_set(m.group(1), line))
    if head == "subsets":
        if not (rest.startswith("[") and rest.endswith("]")):
            raise SystemFormatError(f"subsets rule needs a list like [{{}},{{2}}], got {rest!r}", line)
        inner = rest[1:-1]
        leftover = _SET_RE.sub("", inner).replace(",", "").strip()
        if leftover:
            raise SystemFormatError(f"unexpected text {leftover!r} in subset list", line)
        return SubsetSystem(_int_set(m.group(1), line) for m in _SET_RE.finditer(inner))
    raise SystemFormatError(f"unknown rule {spec!r}", line)


def render_rule(rule: Rule) -> str:
    if isinstance(rule, Threshold):
        return f"thr {rule.r}"
    if isinstance(rule, AntiThreshold):
        return f"anti {rule.r}"
    if isinstance(rule, CountSet):
        return "count {" + ",".join(str(c) for c in sorted(rule.accepted)) + "}"
    if isinstance(rule, SubsetSystem):
        sets = sorted((sorted(a) for a in rule.accepted), key=lambda a: (len(a), a))
        return "subsets [" + ",".join("{" + ",".join(map(str, a)) + "}" for a in sets) + "]"
    raise RuleError(f"not a rule: {rule!r}")


def parse_system(text: str) -> SystemDocument:
    n = None
    masks: list[int] = []
    edges: dict[tuple[int, int], int] = {}
    rule_lines: dict[int, tuple[str, int]] = {}
    init_lines: list[tuple[str, int]] = []
    params: dict[str, str] = {}

    def vertex(tok: str, ln: int) -> int:
        if n is None:
            raise SystemFormatError("'n' must come before edges, loops and rules", ln)
        try:
            v = int(tok)
        except ValueError:
            raise SystemFormatError(f"bad vertex {tok!r}", ln) from None
        if not 1 <= v <= n:
            raise SystemFormatError(f"vertex {v} out of range 1..{n}", ln)
        return v

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "n":
            if n is not None:
                raise SystemFormatError("'n' given twice", ln)
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise SystemFormatError("expected 'n <count>' with count >= 1", ln)
            n = int(toks[1])
            masks = [0] * n
        elif kw == "e":
            if len(toks) != 3:
                raise SystemFormatError("expected 'e <i> <j>'", ln)
            a, b = vertex(toks[1], ln), vertex(toks[2], ln)
            if a == b:
                raise SystemFormatError(f"edge {a} {b} is a loop; use 'l {a}'", ln)
            key = (min(a, b), max(a, b))
            if key in edges:
                raise SystemFormatError(f"duplicate edge {key[0]} {key[1]} (first on line {edges[key]})", ln)
            edges[key] = ln
            masks[a - 1] |= 1 << (b - 1)
            masks[b - 1] |= 1 << (a - 1)
        elif kw == "l":
            if len(toks) != 2:
                raise SystemFormatError("expected 'l <i>'", ln)
            v = vertex(toks[1], ln)
            if masks[v - 1] >> (v - 1) & 1:
                raise SystemFormatError(f"duplicate loop at {v}", ln)
            masks[v - 1] |= 1 << (v - 1)
        elif kw == "rule":
            if len(toks) < 3:
                raise SystemFormatError("expected 'rule <i> <spec>'", ln)
            v = vertex(toks[1], ln)
            if v in rule_lines:
                raise SystemFormatError(f"vertex {v} has two rules", ln)
            rule_lines[v] = (line.split(None, 2)[2], ln)
        elif kw == "init":
            if len(toks) != 2:
                raise SystemFormatError("expected 'init <+-string>'", ln)
            init_lines.append((toks[1], ln))
        elif kw == "param":
            if len(toks) < 3:
                raise SystemFormatError("expected 'param <key> <value>'", ln)
            params[toks[1]] = line.split(None, 2)[2]
        else:
            raise SystemFormatError(f"unknown directive {kw!r}", ln)
    if n is None:
        raise SystemFormatError("missing 'n <count>'")

    try:
        graph = Graph(n, tuple(masks))
    except GraphError as exc:
        raise SystemFormatError(str(exc)) from None
    rules = []
    for v in range(1, n + 1):
        if v in rule_lines:
            spec, ln = rule_lines[v]
            rule = parse_rule(spec, graph.degree(v), ln)
            try:
                validate_rule(rule, graph.neighbors(v), v)
            except RuleError as exc:
                raise SystemFormatError(str(exc), ln) from None
        else:
            rule = majority_rule(graph.degree(v))
        rules.append(rule)
    config = SystemConfig(graph, tuple(rules))
    inits = []
    for s, ln in init_lines:
        try:
            st = State.from_string(s)
        except EngineError as exc:
            raise SystemFormatError(str(exc), ln) from None
        if st.n != n:
            raise SystemFormatError(f"initial state has {st.n} opinions, expected {n}", ln)
        inits.append(st)
    return SystemDocument(config, inits, params)


def render_system(config: SystemConfig, inits=(), params: Optional[dict] = None, comment: str = "") -> str:
    g = config.graph
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"n {g.n}")
    lines += [f"e {i} {j}" for i, j in g.edges]
    lines += [f"l {i}" for i in g.loops]
    lines += [f"rule {i} {render_rule(r)}" for i, r in enumerate(config.rules, start=1)]
    lines += [f"init {s}" for s in inits]
    lines += [f"param {k} {v}" for k, v in (params or {}).items()]
    return "\n".join(lines) + "\n"
