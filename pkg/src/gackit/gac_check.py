"""Mechanical propagation-strength checking.

The operational criterion: enumerate knowledge states K over the source
variables; propagate K on the source side (domain-consistency enforcement)
and, translated through the channel, on the target side; map the target
deduction back; the translation passes if the mapped-back deduction is at
least as strong (a restriction of) the source deduction for every K, with
the inconsistent state as the unique strongest deduction.

Soundness is the guard in the other direction: the target must not refute
values that still extend to source solutions. Equiconsistency compares
satisfiability over complete source assignments.

Knowledge states are independent work items; results aggregate in
enumeration order, so any evaluation schedule yields the same verdict.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .model import (
    ChannelMap, Constraint, DomainBox, Network, ResourceError, UsageError,
    Variable,
)
from .propagation import (
    PropagationResult, UnitPropagator, gac_closure, gac_filter, sat_solve,
    solve_brute_force,
)
from .encoders import Encoding

FULL_SUBDOMAINS = "full-subdomains"
ASSIGNMENT_STYLE = "assignment-style"
RANDOM_SAMPLE = "random-sample"
EXHAUSTIVE_ASSIGNMENTS = "exhaustive-assignments"

COMPLETENESS_GAP = "completeness-gap"
SOUNDNESS_VIOLATION = "soundness-violation"
CONSISTENCY_MISMATCH = "consistency-mismatch"

DEFAULT_STATE_BUDGET = 1_000_000
DEFAULT_SAMPLE_COUNT = 10_000
DEFAULT_SEED = 42


@dataclass
class EnumerationPolicy:
    """How to walk the space of source knowledge states."""
    mode: str = FULL_SUBDOMAINS
    sample_count: int = DEFAULT_SAMPLE_COUNT
    seed: int = DEFAULT_SEED
    max_states: int = DEFAULT_STATE_BUDGET
    max_domain_size: int = 20

    def __post_init__(self):
        if self.mode not in (FULL_SUBDOMAINS, ASSIGNMENT_STYLE, RANDOM_SAMPLE):
            raise UsageError(f"unknown enumeration mode {self.mode!r}")


def count_states(variables, policy: EnumerationPolicy) -> int:
    """Number of knowledge states the policy will enumerate."""
    if policy.mode == RANDOM_SAMPLE:
        return policy.sample_count
    total = 1
    for var in variables:
        m = len(var.domain)
        total *= (2 ** m - 1) if policy.mode == FULL_SUBDOMAINS else (m + 1)
    return total


def auto_policy(variables) -> EnumerationPolicy:
    """Exhaustive where affordable, deterministic everywhere: full subdomain
    enumeration up to the state budget, then assignment-style, then seeded
    random sampling."""
    full = EnumerationPolicy(FULL_SUBDOMAINS)
    if count_states(variables, full) <= full.max_states:
        return full
    assign = EnumerationPolicy(ASSIGNMENT_STYLE)
    if count_states(variables, assign) <= assign.max_states:
        return assign
    return EnumerationPolicy(RANDOM_SAMPLE)


def enumerate_knowledge_states(variables, policy: EnumerationPolicy | None = None):
    """Deterministically ordered stream of DomainBox knowledge states."""
    if policy is None:
        policy = auto_policy(variables)
    for var in variables:
        if len(var.domain) > policy.max_domain_size:
            raise ResourceError(
                f"domain of {var.name!r} exceeds the per-variable cap "
                f"({len(var.domain)} > {policy.max_domain_size})")
    if policy.mode != RANDOM_SAMPLE and count_states(variables, policy) > policy.max_states:
        raise ResourceError(
            f"{count_states(variables, policy)} knowledge states exceed the "
            f"budget of {policy.max_states}")
    vids = [v.id for v in variables]
    if policy.mode == RANDOM_SAMPLE:
        rng = random.Random(policy.seed)
        doms = [v.domain for v in variables]
        for _ in range(policy.sample_count):
            state = {}
            for vid, dom in zip(vids, doms):
                mask = rng.randrange(1, 2 ** len(dom))
                state[vid] = frozenset(
                    val for i, val in enumerate(dom) if (mask >> i) & 1)
            yield DomainBox._raw(state)
        return
    options = []
    for var in variables:
        dom = var.domain
        if policy.mode == FULL_SUBDOMAINS:
            subs = [frozenset(val for i, val in enumerate(dom) if (mask >> i) & 1)
                    for mask in range(1, 2 ** len(dom))]
        else:  # assignment-style: unrestricted, or assigned to one value
            subs = [frozenset(dom)] + [frozenset((val,)) for val in dom]
        options.append(subs)
    for combo in itertools.product(*options):
        yield DomainBox._raw(dict(zip(vids, combo)))


@dataclass
class Counterexample:
    kind: str
    knowledge: DomainBox
    deduced_source: DomainBox
    deduced_back: DomainBox


@dataclass
class Verdict:
    """Pass(states_checked) or Fail(counterexamples), plus the policy used."""
    states_checked: int
    counterexamples: list[Counterexample] = field(default_factory=list)
    policy_mode: str = FULL_SUBDOMAINS
    check: str = "gac-reduction"
    source_vars: tuple[Variable, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def _box_json(self, box: DomainBox):
        if box.inconsistent:
            return {"inconsistent": True}
        return {var.name: [var.label(v) for v in sorted(box.domain(var.id))]
                for var in self.source_vars}

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "outcome": "pass" if self.passed else "fail",
            "states_checked": self.states_checked,
            "policy": self.policy_mode,
            "counterexamples": [
                {
                    "kind": ce.kind,
                    "knowledge": self._box_json(ce.knowledge),
                    "source_deduction": self._box_json(ce.deduced_source),
                    "target_deduction_mapped_back": self._box_json(ce.deduced_back),
                }
                for ce in self.counterexamples
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def digest(self) -> str:
        """Short human-readable summary."""
        lines = [f"{self.check}: {'PASS' if self.passed else 'FAIL'} "
                 f"({self.states_checked} states, {self.policy_mode})"]
        for ce in self.counterexamples[:10]:
            lines.append(f"  {ce.kind} at K: "
                         f"{ce.knowledge.pretty(self.source_vars)}")
            lines.append(f"    source deduces: {ce.deduced_source.pretty(self.source_vars)}")
            lines.append(f"    target gives:   {ce.deduced_back.pretty(self.source_vars)}")
        extra = len(self.counterexamples) - 10
        if extra > 0:
            lines.append(f"  ... and {extra} more counterexamples")
        return "\n".join(lines)


def _source_propagator(source):
    if isinstance(source, Network):
        return lambda box: gac_closure(source, box)
    if isinstance(source, Constraint):
        return lambda box: gac_filter(source, box)
    raise UsageError(f"source must be a Constraint or Network, got {type(source)}")


def map_knowledge(channel: ChannelMap, knowledge: DomainBox):
    """Express source knowledge on the target side.

    Removed source values assert the negation of their image; assigned
    values assert the image itself. Auxiliary target variables stay
    unrestricted. Returns assumption literals for CNF channels and a
    restricted target DomainBox for network channels.
    """
    if channel.kind == ChannelMap.CNF:
        assumptions = []
        for var in channel.source_vars:
            kdom = knowledge.domain(var.id)
            for value in var.domain:
                if value not in kdom:
                    assumptions.append(-channel.forward[(var.id, value)])
            if len(kdom) == 1:
                assumptions.append(channel.forward[(var.id, next(iter(kdom)))])
        return assumptions
    removals: dict[int, set] = {}
    pins: dict[int, set] = {}
    for var in channel.source_vars:
        kdom = knowledge.domain(var.id)
        for value in var.domain:
            tvid, tval = channel.forward[(var.id, value)]
            if value not in kdom:
                removals.setdefault(tvid, set()).add(tval)
            elif len(kdom) == 1:
                pins.setdefault(tvid, set()).add(tval)
    return removals, pins


def _target_box(target: Network, mapped) -> DomainBox:
    removals, pins = mapped
    domains = {}
    for var in target.variables:
        dom = set(var.domain)
        dom -= removals.get(var.id, set())
        if var.id in pins:
            dom &= pins[var.id]
        if not dom:
            return DomainBox.bottom()
        domains[var.id] = frozenset(dom)
    return DomainBox._raw(domains)


def map_back(channel: ChannelMap, target_result, base: DomainBox | None = None) -> DomainBox:
    """Project a target deduction back to the source variables.

    A source value survives unless its image is refuted in the target
    deduction; auxiliary variables are ignored; a target inconsistency maps
    to the source inconsistent state. When `base` is given the result is
    additionally intersected with it (deduction from that knowledge).
    """
    if isinstance(target_result, PropagationResult):
        if target_result.inconsistent:
            return DomainBox.bottom()
        payload = target_result.assignment if channel.kind == ChannelMap.CNF \
            else target_result.box
    else:
        payload = target_result
    if payload is None:
        return DomainBox.bottom()
    domains = {}
    for var in channel.source_vars:
        candidates = var.domain if base is None else sorted(base.domain(var.id))
        keep = set()
        for value in candidates:
            image = channel.forward[(var.id, value)]
            if channel.kind == ChannelMap.CNF:
                iv = payload[image] if image > 0 else payload[-image]
                refuted = iv is not None and iv != (image > 0)
            else:
                tvid, tval = image
                refuted = tval not in payload.domain(tvid)
            if not refuted:
                keep.add(value)
        if not keep:
            return DomainBox.bottom()
        domains[var.id] = frozenset(keep)
    return DomainBox._raw(domains)


class _CnfTarget:
    def __init__(self, enc: Encoding, custom=None):
        self.channel = enc.channel
        self.custom = custom
        self.prop = None if custom else UnitPropagator(enc.target)
        self.formula = enc.target

    def deduce_back(self, knowledge: DomainBox) -> DomainBox:
        assumptions = map_knowledge(self.channel, knowledge)
        if self.custom is not None:
            result = self.custom(self.formula, assumptions)
            if result.inconsistent:
                return DomainBox.bottom()
            values = {v: result.assignment.get(v) for v in range(self.formula.num_vars + 1)}
        else:
            raw = self.prop.propagate(assumptions)
            if raw is None:
                return DomainBox.bottom()
            values = raw
        # inline map_back against the raw value table, restricted to K
        domains = {}
        forward = self.channel.forward
        for var in self.channel.source_vars:
            keep = set()
            for value in knowledge.domain(var.id):
                image = forward[(var.id, value)]
                iv = values[image] if image > 0 else values[-image]
                if iv is None or iv == (image > 0):
                    keep.add(value)
            if not keep:
                return DomainBox.bottom()
            domains[var.id] = frozenset(keep)
        return DomainBox._raw(domains)

    def satisfiable(self, assignment: DomainBox) -> bool:
        return sat_solve(self.formula, map_knowledge(self.channel, assignment)).sat


class _NetworkTarget:
    def __init__(self, enc: Encoding, custom=None):
        self.channel = enc.channel
        self.network = enc.target
        self.custom = custom or (lambda net, box: gac_closure(net, box))

    def deduce_back(self, knowledge: DomainBox) -> DomainBox:
        start = _target_box(self.network, map_knowledge(self.channel, knowledge))
        result = self.custom(self.network, start)
        if result.inconsistent:
            return DomainBox.bottom()
        return map_back(self.channel, result.box, base=knowledge)

    def satisfiable(self, assignment: DomainBox) -> bool:
        start = _target_box(self.network, map_knowledge(self.channel, assignment))
        return solve_brute_force(self.network, start).sat


def _target_engine(enc: Encoding, target_propagator=None):
    if isinstance(enc.target, Network):
        return _NetworkTarget(enc, target_propagator)
    return _CnfTarget(enc, target_propagator)


def check_gac_reduction(source, enc: Encoding, target_propagator=None,
                        policy: EnumerationPolicy | None = None,
                        first_failure_only: bool = False) -> Verdict:
    """Completeness check: for every knowledge state, the mapped-back target
    deduction must be a restriction of (at least as strong as) the source
    deduction. Records a completeness gap per offending state."""
    svars = enc.channel.source_vars
    if policy is None:
        policy = auto_policy(svars)
    deduce_source = _source_propagator(source)
    engine = _target_engine(enc, target_propagator)
    counterexamples = []
    states = 0
    for knowledge in enumerate_knowledge_states(svars, policy):
        states += 1
        src = deduce_source(knowledge)
        back = engine.deduce_back(knowledge)
        if back.inconsistent:
            continue  # bottom is the strongest deduction
        if src.inconsistent or not _weaker_or_equal(back, src.box, svars):
            counterexamples.append(Counterexample(
                COMPLETENESS_GAP, knowledge,
                DomainBox.bottom() if src.inconsistent else src.box, back))
            if first_failure_only:
                break
    return Verdict(states, counterexamples, policy.mode, "gac-reduction", svars)


def _weaker_or_equal(back: DomainBox, src: DomainBox, svars) -> bool:
    for var in svars:
        if not back.domain(var.id) <= src.domain(var.id):
            return False
    return True


def check_soundness(source, enc: Encoding, target_propagator=None,
                    policy: EnumerationPolicy | None = None,
                    first_failure_only: bool = False) -> Verdict:
    """Guard against over-pruning: the target may not refute a value that
    still extends to a full source solution inside the knowledge state."""
    svars = enc.channel.source_vars
    if policy is None:
        policy = auto_policy(svars)
    deduce_source = _source_propagator(source)
    engine = _target_engine(enc, target_propagator)
    is_network = isinstance(source, Network)
    counterexamples = []
    states = 0
    for knowledge in enumerate_knowledge_states(svars, policy):
        states += 1
        src = deduce_source(knowledge)
        if src.inconsistent:
            continue  # nothing extends to a solution; no over-pruning possible
        back = engine.deduce_back(knowledge)
        violated = False
        if back.inconsistent:
            violated = (not is_network) or solve_brute_force(source, knowledge).sat
        else:
            for var in svars:
                over = src.box.domain(var.id) - back.domain(var.id)
                for value in sorted(over):
                    if not is_network or solve_brute_force(
                            source, knowledge.assign(var.id, value)).sat:
                        violated = True
                        break
                if violated:
                    break
        if violated:
            counterexamples.append(Counterexample(
                SOUNDNESS_VIOLATION, knowledge, src.box, back))
            if first_failure_only:
                break
    return Verdict(states, counterexamples, policy.mode, "soundness", svars)


def check_equiconsistency(source, enc: Encoding, sampler=None,
                          budget: int = 1 << 20) -> Verdict:
    """Source and target must be satisfiable on exactly the same complete
    source assignments. Exhaustive by default; pass an EnumerationPolicy in
    random-sample mode to spot-check instead."""
    svars = enc.channel.source_vars
    engine = _target_engine(enc)
    if isinstance(source, Network):
        source_sat = lambda box: solve_brute_force(source, box).sat
    else:
        net = Network(list(svars), [source])
        source_sat = lambda box: solve_brute_force(net, box).sat

    if sampler is None:
        total = 1
        for var in svars:
            total *= len(var.domain)
        if total > budget:
            raise ResourceError(
                f"{total} complete assignments exceed the budget of {budget}")
        assignments = itertools.product(*(var.domain for var in svars))
        mode = EXHAUSTIVE_ASSIGNMENTS
    else:
        rng = random.Random(sampler.seed)
        assignments = (
            tuple(rng.choice(var.domain) for var in svars)
            for _ in range(sampler.sample_count))
        mode = RANDOM_SAMPLE

    vids = [v.id for v in svars]
    counterexamples = []
    states = 0
    for values in assignments:
        states += 1
        box = DomainBox._raw({vid: frozenset((val,)) for vid, val in zip(vids, values)})
        s = source_sat(box)
        t = engine.satisfiable(box)
        if s != t:
            counterexamples.append(Counterexample(
                CONSISTENCY_MISMATCH, box,
                box if s else DomainBox.bottom(),
                box if t else DomainBox.bottom()))
    return Verdict(states, counterexamples, mode, "equiconsistency", svars)


def replay(source, enc: Encoding, knowledge: DomainBox,
           target_propagator=None) -> tuple[DomainBox, DomainBox]:
    """Re-run both pipelines on one knowledge state; returns (D_source, D_back).

    Counterexamples are replayable: feeding a recorded K back through here
    reproduces the recorded deductions exactly.
    """
    src = _source_propagator(source)(knowledge)
    back = _target_engine(enc, target_propagator).deduce_back(knowledge)
    src_box = DomainBox.bottom() if src.inconsistent else src.box
    return src_box, back
