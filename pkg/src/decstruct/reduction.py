"""Order-reduction engine: admissible steps, path trees, choice distributions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Optional, Union

from .classification import cancel_and_reduce, classify_ranks, superiority
from .compensatory import expected_value
from .core import (
    DecisionMatrix,
    Dimension,
    DomainError,
    Label,
    Option,
    Order,
    Outcome,
    Pair,
    ReductionTrace,
    Step,
    StepKind,
    StructureClass,
    SubstitutionScheme,
    Token,
    zero_order,
)
from .substitution import build_matrices, pair_tokens


class SplitRule(str, Enum):
    LARGER_RELATIVE_GAP = "LARGER_RELATIVE_GAP"
    ENUMERATE_BOTH = "ENUMERATE_BOTH"


@dataclass(frozen=True)
class TimeParams:
    t0: float = 1.0
    t1: float = 1.0
    t2: float = 1.0
    t_cal: float = 1.0

    def __post_init__(self):
        if min(self.t0, self.t1, self.t2, self.t_cal) < 0:
            raise DomainError("time parameters must be nonnegative")


@dataclass(frozen=True)
class ReductionPolicy:
    """How the engine weighs and expands reduction paths.

    ``path_weights`` is ``"uniform"`` or a mapping from step label to a
    nonnegative weight; unlabeled steps and labels absent from the mapping
    weigh 1.
    """

    path_weights: Union[str, dict] = "uniform"
    parallel_split_rule: SplitRule = SplitRule.LARGER_RELATIVE_GAP
    calc_fallback: bool = False
    time_params: TimeParams = field(default_factory=TimeParams)

    def __post_init__(self):
        if isinstance(self.path_weights, str):
            if self.path_weights != "uniform":
                raise DomainError(f"unknown path weighting {self.path_weights!r}")
        else:
            weights = {Label(k): float(v) for k, v in dict(self.path_weights).items()}
            if any(w < 0 for w in weights.values()):
                raise DomainError("path weights must be nonnegative")
            object.__setattr__(self, "path_weights", weights)
        object.__setattr__(self, "parallel_split_rule", SplitRule(self.parallel_split_rule))

    @classmethod
    def from_dict(cls, data: dict) -> "ReductionPolicy":
        kwargs = {}
        if "path_weights" in data:
            kwargs["path_weights"] = data["path_weights"]
        if "parallel_split_rule" in data:
            kwargs["parallel_split_rule"] = SplitRule(data["parallel_split_rule"])
        if "calc_fallback" in data:
            kwargs["calc_fallback"] = bool(data["calc_fallback"])
        if "time_params" in data:
            kwargs["time_params"] = TimeParams(*data["time_params"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        weights = self.path_weights
        if not isinstance(weights, str):
            weights = {k.value: v for k, v in sorted(weights.items(), key=lambda kv: kv[0].value)}
        tp = self.time_params
        return {
            "path_weights": weights,
            "parallel_split_rule": self.parallel_split_rule.value,
            "calc_fallback": self.calc_fallback,
            "time_params": [tp.t0, tp.t1, tp.t2, tp.t_cal],
        }

    def weights(self, labels: list[Optional[Label]]) -> list[float]:
        if not labels:
            return []
        if self.path_weights == "uniform":
            raw = [1.0] * len(labels)
        else:
            raw = [self.path_weights.get(lab, 1.0) if lab else 1.0 for lab in labels]
        total = sum(raw)
        if total <= 0:
            raise DomainError(f"path weights for {labels} are not normalizable")
        return [w / total for w in raw]


DEFAULT_POLICY = ReductionPolicy()


@dataclass(frozen=True)
class PairState:
    """The four tokens of a single-branch pair at some point of reduction."""

    x_prob: Token
    x_val: Token
    y_prob: Token
    y_val: Token

    @classmethod
    def from_pair(cls, pair: Pair, scheme: SubstitutionScheme) -> "PairState":
        live = {}
        for option in Option:
            idx = [i for i, b in enumerate(pair.gamble(option).explicit) if b in pair.gamble(option).live]
            if len(idx) != 1:
                raise ValueError(f"option {option.value} is not single-branch")
            live[option] = idx[0]
        found = {(t.option, t.dimension): t for t in pair_tokens(pair, scheme) if t.branch == live[t.option]}
        return cls(
            found[(Option.X, Dimension.PROB)],
            found[(Option.X, Dimension.VALUE)],
            found[(Option.Y, Dimension.PROB)],
            found[(Option.Y, Dimension.VALUE)],
        )

    def token(self, option: Option, dim: Dimension) -> Token:
        return getattr(self, f"{option.value.lower()}_{'prob' if dim is Dimension.PROB else 'val'}")

    def rebin(self, option: Option, dim: Dimension, r: int) -> "PairState":
        name = f"{option.value.lower()}_{'prob' if dim is Dimension.PROB else 'val'}"
        return replace(self, **{name: self.token(option, dim).rebinned(dim.category(r))})

    def rank(self, option: Option, dim: Dimension) -> int:
        return int(self.token(option, dim).category)

    @property
    def structure(self) -> StructureClass:
        return classify_ranks(
            self.rank(Option.X, Dimension.PROB),
            self.rank(Option.X, Dimension.VALUE),
            self.rank(Option.Y, Dimension.PROB),
            self.rank(Option.Y, Dimension.VALUE),
        )

    def matrix(self) -> DecisionMatrix:
        return DecisionMatrix.from_tokens((self.x_prob, self.x_val, self.y_prob, self.y_val))


def _relative_gap(a: float, b: float) -> float:
    top = max(abs(a), abs(b))
    return abs(a - b) / top if top > 0 else 0.0


def _separate(state: PairState, dim: Dimension, ahead: Option) -> tuple[Label, PairState]:
    r = state.rank(ahead, dim)
    if r < 3:
        return Label.for_move(dim, True), state.rebin(ahead, dim, r + 1)
    return Label.for_move(dim, False), state.rebin(ahead.other, dim, r - 1)


def _parallel_steps(state: PairState, policy: ReductionPolicy) -> list[tuple[Label, PairState]]:
    gaps = {}
    for dim in Dimension:
        nx = state.token(Option.X, dim).numeric
        ny = state.token(Option.Y, dim).numeric
        if nx != ny:
            gaps[dim] = (_relative_gap(nx, ny), Option.X if nx > ny else Option.Y)
    if not gaps:
        return []
    dims = list(gaps)
    if policy.parallel_split_rule is SplitRule.LARGER_RELATIVE_GAP:
        widest = max(g for g, _ in gaps.values())
        dims = [d for d in dims if gaps[d][0] == widest]
    return [_separate(state, d, gaps[d][1]) for d in dims]


def _crossing_steps(state: PairState) -> list[tuple[Label, PairState]]:
    steps = []
    for dim in Dimension:
        for option in Option:
            mine, theirs = state.rank(option, dim), state.rank(option.other, dim)
            steps.append((Label.for_move(dim, theirs > mine), state.rebin(option, dim, theirs)))
    return steps


def _first_order_step(state: PairState, tied: Dimension) -> tuple[None, PairState]:
    # each option's tied token takes the rank of its own differentiating token
    out = state
    for option in Option:
        target = state.rank(option, tied.other)
        if state.rank(option, tied) != target:
            out = out.rebin(option, tied, target)
    return None, out


def admissible_steps(
    structure: StructureClass, state: PairState, policy: ReductionPolicy = DEFAULT_POLICY
) -> list[tuple[Optional[Label], PairState]]:
    if structure.order is Order.CROSSING:
        return _crossing_steps(state)
    if structure.order is Order.PARALLEL:
        return _parallel_steps(state, policy)
    if structure.order is Order.FIRST:
        return [_first_order_step(state, structure.tied)]
    return []


def _step_kind(structure: StructureClass) -> StepKind:
    return StepKind.DTAU2 if structure.order.degree == 2 else StepKind.DTAU1


def _calc(pair: Pair) -> Outcome:
    ex, ey = expected_value(pair.x), expected_value(pair.y)
    if ex > ey:
        return Outcome.X
    if ey > ex:
        return Outcome.Y
    return Outcome.INDIFFERENT


@dataclass
class Node:
    step: Step
    state: Optional[PairState] = None
    weight: float = 1.0
    outcome: Optional[Outcome] = None
    children: list["Node"] = field(default_factory=list)

    @property
    def structure(self) -> Optional[StructureClass]:
        return self.step.result

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class ReductionTree:
    root: Node
    pair: Pair

    def paths(self) -> Iterator[tuple[ReductionTrace, float]]:
        def walk(node, steps, w):
            steps = steps + (node.step,)
            w *= node.weight
            if node.is_leaf:
                yield ReductionTrace(steps, node.outcome), w
            for child in node.children:
                yield from walk(child, steps, w)

        yield from walk(self.root, (), 1.0)

    def leaves(self) -> list[ReductionTrace]:
        return [trace for trace, _ in self.paths()]

    def distribution(self) -> dict[Outcome, float]:
        dist = {o: 0.0 for o in Outcome}
        for trace, w in self.paths():
            dist[trace.outcome] += w
        return {o: w for o, w in dist.items() if w > 0}

    def sample(self, rng: random.Random) -> ReductionTrace:
        node, steps = self.root, [self.root.step]
        while node.children:
            node = rng.choices(node.children, weights=[c.weight for c in node.children])[0]
            steps.append(node.step)
        return ReductionTrace(tuple(steps), node.outcome)

    @property
    def depth(self) -> int:
        def d(node):
            return 1 + max((d(c) for c in node.children), default=0)

        return d(self.root) - 1

    def to_dict(self) -> dict:
        def enc(node: Node) -> dict:
            return {
                "kind": node.step.kind.value,
                "label": node.step.label.value if node.step.label else None,
                "structure": str(node.structure) if node.structure else None,
                "note": node.step.note,
                "weight": node.weight,
                "matrix": node.state.matrix().symbols() if node.state else None,
                "outcome": node.outcome.value if node.outcome else None,
                "children": [enc(c) for c in node.children],
            }

        return enc(self.root)


def _expand(node: Node, pair: Pair, policy: ReductionPolicy, depth: int, max_depth: int) -> None:
    structure = node.structure
    if structure is not None and structure.order is Order.ZERO:
        node.outcome = Outcome.of(structure.favored)
        return
    if depth >= max_depth:
        node.outcome = Outcome.INDIFFERENT
        return
    moves = admissible_steps(structure, node.state, policy) if node.state is not None else []
    if not moves:
        if policy.calc_fallback:
            verdict = _calc(pair)
            result = zero_order(Option(verdict.value)) if verdict is not Outcome.INDIFFERENT else None
            node.children.append(Node(Step(StepKind.CALC, result, note="expected value"), outcome=verdict))
        else:
            node.outcome = Outcome.INDIFFERENT
        return
    kind = _step_kind(structure)
    weights = policy.weights([label for label, _ in moves])
    for (label, succ), w in zip(moves, weights):
        child = Node(Step(kind, succ.structure, label), succ, w)
        node.children.append(child)
        _expand(child, pair, policy, depth + 1, max_depth)


def reduction_tree(
    pair: Pair,
    scheme: SubstitutionScheme,
    policy: ReductionPolicy = DEFAULT_POLICY,
    max_depth: int = 4,
) -> ReductionTree:
    """Every reduction path from the substituted pair down to a choice."""
    if pair.x.is_single_branch and pair.y.is_single_branch:
        state = PairState.from_pair(pair, scheme)
        root = Node(Step(StepKind.SUBSTITUTE, state.structure), state)
        _expand(root, pair, policy, 0, max_depth)
        return ReductionTree(root, pair)

    g_p, g_v = build_matrices(pair, scheme)
    top = superiority(g_p, g_v)
    if top is not None:
        root = Node(Step(StepKind.SUBSTITUTE, zero_order(top), note="superiority"))
        root.outcome = Outcome.of(top)
        return ReductionTree(root, pair)

    root = Node(Step(StepKind.SUBSTITUTE, None, note="multi-branch"))
    res = cancel_and_reduce(pair, scheme)
    note = "cancelled " + ",".join(f"{i}:{j}" for i, j in res.cancelled) if res.cancelled else "collapsed"
    if res.pair is None:
        child = Node(Step(StepKind.SUBSTITUTE, None, note=note))
        root.children.append(child)
        _expand(child, pair, policy, 1, max_depth)
        return ReductionTree(root, pair)
    state = PairState.from_pair(res.pair, scheme)
    child = Node(Step(StepKind.SUBSTITUTE, state.structure, note=note), state)
    root.children.append(child)
    _expand(child, pair, policy, 1, max_depth)
    return ReductionTree(root, pair)


def _dist_from(state: Optional[PairState], pair: Pair, policy: ReductionPolicy) -> dict[Outcome, float]:
    if state is None:
        return {_calc(pair) if policy.calc_fallback else Outcome.INDIFFERENT: 1.0}
    structure = state.structure
    if structure.order is Order.ZERO:
        return {Outcome.of(structure.favored): 1.0}
    moves = admissible_steps(structure, state, policy)
    if not moves:
        return _dist_from(None, pair, policy)
    out: dict[Outcome, float] = {}
    for (_, succ), w in zip(moves, policy.weights([lab for lab, _ in moves])):
        for o, p in _dist_from(succ, pair, policy).items():
            out[o] = out.get(o, 0.0) + w * p
    return out


def choice_distribution(
    pair: Pair, scheme: SubstitutionScheme, policy: ReductionPolicy = DEFAULT_POLICY
) -> dict[Outcome, float]:
    """Probability of each final choice when paths are drawn by ``policy``."""
    if pair.x.is_single_branch and pair.y.is_single_branch:
        dist = _dist_from(PairState.from_pair(pair, scheme), pair, policy)
    else:
        res = cancel_and_reduce(pair, scheme)
        if res.verdict is not None and res.verdict is not Outcome.INDIFFERENT:
            dist = {res.verdict: 1.0}
        elif res.pair is None:
            dist = _dist_from(None, pair, policy)
        else:
            dist = _dist_from(PairState.from_pair(res.pair, scheme), pair, policy)
    return {o: w for o, w in sorted(dist.items(), key=lambda kv: list(Outcome).index(kv[0])) if w > 0}


def sample_path(
    pair: Pair, scheme: SubstitutionScheme, policy: ReductionPolicy = DEFAULT_POLICY, seed: int = 0
) -> ReductionTrace:
    return reduction_tree(pair, scheme, policy).sample(random.Random(seed))


def deliberation_time(trace: ReductionTrace, params: TimeParams, substitution_rounds: int = 1) -> float:
    if substitution_rounds < 0:
        raise DomainError("substitution_rounds must be nonnegative")
    calc = 1 if trace.count(StepKind.CALC) else 0
    return (
        params.t0 * substitution_rounds
        + params.t1 * trace.count(StepKind.DTAU2)
        + params.t2 * trace.count(StepKind.DTAU1)
        + params.t_cal * calc
    )


def winner(dist: dict[Outcome, float]) -> Optional[Outcome]:
    """Outcome holding a strict majority of the path weight, if any."""
    for o, w in dist.items():
        if w > 0.5:
            return o
    return None
