"""Shared domain types: ordinal categories, gambles, tokens and matrices."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, NamedTuple, Optional, Union

PROB_TOL = 1e-9
MAX_BRANCHES = 8


class DomainError(ValueError):
    """Raised for inputs outside an operation's domain."""


class ProbCategory(IntEnum):
    ZERO = 0
    A = 1
    B = 2
    C = 3
    ONE = 4

    @property
    def symbol(self) -> str:
        return {0: "0", 1: "a", 2: "b", 3: "c", 4: "1"}[int(self)]


class ValCategory(IntEnum):
    ZERO = 0
    A = 1
    B = 2
    C = 3
    INF = 4

    @property
    def symbol(self) -> str:
        return {0: "0", 1: "a'", 2: "b'", 3: "c'", 4: "inf"}[int(self)]


Category = Union[ProbCategory, ValCategory]


def rank(category: Category) -> int:
    return int(category)


class Dimension(str, Enum):
    PROB = "PROB"
    VALUE = "VALUE"

    def category(self, r: int) -> Category:
        return ProbCategory(r) if self is Dimension.PROB else ValCategory(r)

    @property
    def other(self) -> "Dimension":
        return Dimension.VALUE if self is Dimension.PROB else Dimension.PROB


class Option(str, Enum):
    X = "X"
    Y = "Y"

    @property
    def other(self) -> "Option":
        return Option.Y if self is Option.X else Option.X


class Outcome(str, Enum):
    X = "X"
    Y = "Y"
    INDIFFERENT = "Indifferent"

    @classmethod
    def of(cls, option: Option) -> "Outcome":
        return cls(option.value)


@dataclass(frozen=True)
class SubstitutionScheme:
    """Cutoffs binning probabilities into {0,a,b,c,1} and rewards into {0,a',b',c',inf}.

    Intervals are half-open and closed on the left: ``A=(0,p_ab)``,
    ``B=[p_ab,p_bc)``, ``C=[p_bc,1)``; the value side is analogous with
    ``C'=[v_bc, inf)``.  Representative values are the point each category
    stands for; they feed coefficient derivation and the weighting verdicts.
    """

    value_cutoffs: tuple[float, float]
    prob_cutoffs: tuple[float, float] = (0.35, 0.7)
    prob_representatives: tuple[float, float, float] = (0.3, 0.5, 0.7)
    value_representatives: Optional[tuple[float, float, float]] = None
    ambiguity_law: bool = True

    def __post_init__(self):
        p_ab, p_bc = self.prob_cutoffs
        v_ab, v_bc = self.value_cutoffs
        if not 0 < p_ab < p_bc < 1:
            raise DomainError(f"probability cutoffs must satisfy 0 < p_ab < p_bc < 1, got {self.prob_cutoffs}")
        if not (0 < v_ab < v_bc and math.isfinite(v_bc)):
            raise DomainError(f"value cutoffs must satisfy 0 < v_ab < v_bc, got {self.value_cutoffs}")
        a, b, c = self.prob_representatives
        if not 0 < a < b < c < 1:
            raise DomainError("probability representatives must be increasing inside (0,1)")
        if self.value_representatives is None:
            # midpoints of the bounded cells; the open top cell mirrors the width of B'
            reps = (v_ab / 2, (v_ab + v_bc) / 2, v_bc + (v_bc - v_ab) / 2)
            object.__setattr__(self, "value_representatives", reps)
        object.__setattr__(self, "prob_cutoffs", tuple(float(x) for x in self.prob_cutoffs))
        object.__setattr__(self, "value_cutoffs", tuple(float(x) for x in self.value_cutoffs))

    @classmethod
    def from_dict(cls, data: dict) -> "SubstitutionScheme":
        if "value_cutoffs" not in data:
            raise DomainError("scheme needs 'value_cutoffs'; there is no default value binning")
        kwargs = {"value_cutoffs": tuple(data["value_cutoffs"])}
        if "prob_cutoffs" in data:
            kwargs["prob_cutoffs"] = tuple(data["prob_cutoffs"])
        if "prob_representatives" in data:
            kwargs["prob_representatives"] = tuple(data["prob_representatives"])
        if data.get("value_representatives") is not None:
            kwargs["value_representatives"] = tuple(data["value_representatives"])
        if "ambiguity_law" in data:
            kwargs["ambiguity_law"] = bool(data["ambiguity_law"])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "prob_cutoffs": list(self.prob_cutoffs),
            "value_cutoffs": list(self.value_cutoffs),
            "prob_representatives": list(self.prob_representatives),
            "value_representatives": list(self.value_representatives),
            "ambiguity_law": self.ambiguity_law,
        }

    def prob_interval(self, category: ProbCategory) -> tuple[float, float]:
        p_ab, p_bc = self.prob_cutoffs
        return {
            ProbCategory.ZERO: (0.0, 0.0),
            ProbCategory.A: (0.0, p_ab),
            ProbCategory.B: (p_ab, p_bc),
            ProbCategory.C: (p_bc, 1.0),
            ProbCategory.ONE: (1.0, 1.0),
        }[category]

    def representative(self, category: Category) -> float:
        """Point value a category stands for (0 and 1 for the constants)."""
        if isinstance(category, ProbCategory):
            if category is ProbCategory.ZERO:
                return 0.0
            if category is ProbCategory.ONE:
                return 1.0
            return self.prob_representatives[int(category) - 1]
        if category is ValCategory.ZERO:
            return 0.0
        if category is ValCategory.INF:
            return math.inf
        return self.value_representatives[int(category) - 1]


class Branch(NamedTuple):
    p: float
    v: float
    interval: Optional[tuple[float, float]] = None
    implicit: bool = False


@dataclass(frozen=True)
class Gamble:
    """A finite gain-domain lottery.

    Probabilities short of 1 are completed by an implicit zero-reward branch.
    Ambiguous branches carry a credal interval alongside a nominal probability.
    """

    branches: tuple[Branch, ...]

    def __post_init__(self):
        raw = tuple(b if isinstance(b, Branch) else Branch(*b) for b in self.branches)
        if not raw:
            raise DomainError("a gamble needs at least one branch")
        if sum(1 for b in raw if not b.implicit) > MAX_BRANCHES:
            raise DomainError(f"at most {MAX_BRANCHES} branches per option are supported")
        for b in raw:
            if not (0 <= b.p <= 1) or math.isnan(b.p):
                raise DomainError(f"probability {b.p} outside [0, 1]")
            if not math.isfinite(b.v) or b.v < 0:
                raise DomainError(f"reward {b.v} must be finite and >= 0")
            if b.interval is not None:
                lo, hi = b.interval
                if not 0 <= lo <= hi <= 1:
                    raise DomainError(f"ambiguity interval {b.interval} must satisfy 0 <= lo <= hi <= 1")
        explicit = tuple(b for b in raw if not b.implicit)
        total = math.fsum(b.p for b in explicit)
        if total > 1 + PROB_TOL:
            raise DomainError(f"probabilities sum to {total} > 1")
        if total < 1 - PROB_TOL:
            explicit = explicit + (Branch(1.0 - total, 0.0, None, True),)
        object.__setattr__(self, "branches", explicit)

    @classmethod
    def of(cls, *pairs, intervals=None) -> "Gamble":
        intervals = intervals or [None] * len(pairs)
        return cls(tuple(Branch(float(p), float(v), iv) for (p, v), iv in zip(pairs, intervals)))

    @property
    def explicit(self) -> tuple[Branch, ...]:
        return tuple(b for b in self.branches if not b.implicit)

    @property
    def live(self) -> tuple[Branch, ...]:
        """Explicit branches that can occur."""
        return tuple(b for b in self.explicit if b.p > 0 or (b.interval is not None and b.interval[1] > 0))

    @property
    def is_single_branch(self) -> bool:
        return len(self.live) == 1


@dataclass(frozen=True)
class Pair:
    x: Gamble
    y: Gamble
    id: str = ""
    x_name: str = "X"
    y_name: str = "Y"

    def gamble(self, option: Option) -> Gamble:
        return self.x if option is Option.X else self.y

    def name(self, outcome: Union[Option, Outcome]) -> str:
        if outcome.value == "X":
            return self.x_name
        if outcome.value == "Y":
            return self.y_name
        return Outcome.INDIFFERENT.value


@dataclass(frozen=True, order=True)
class Token:
    """One categorized branch element.

    ``numeric`` is the number the category came from.  For ambiguous
    probabilities it is the pessimistic point of the credal interval inside
    the assigned category, and ``interval`` keeps the original range.
    """

    option: Option
    branch: int
    dimension: Dimension
    category: Category
    numeric: float
    interval: Optional[tuple[float, float]] = None

    @property
    def symbol(self) -> str:
        return f"{self.category.symbol}_{self.option.value}"

    def shape(self) -> tuple[str, str, int]:
        return (self.option.value, self.dimension.value, int(self.category))

    def rebinned(self, category: Category) -> "Token":
        return Token(self.option, self.branch, self.dimension, category, self.numeric, self.interval)


CELLS = ("a", "b", "c", "anchor")


def _sort_key(t: Token):
    return (t.dimension.value, t.option.value, t.branch, int(t.category))


@dataclass(frozen=True)
class DecisionMatrix:
    """Four ordered cells a < b < c < anchor, each a multiset of tokens.

    ZERO-category tokens are kept in ``excluded``; they never occupy a cell.
    """

    cells: tuple[tuple[Token, ...], tuple[Token, ...], tuple[Token, ...], tuple[Token, ...]] = ((), (), (), ())
    excluded: tuple[Token, ...] = ()

    @classmethod
    def from_tokens(cls, tokens: Iterable[Token]) -> "DecisionMatrix":
        cells: list[list[Token]] = [[], [], [], []]
        excluded = []
        for t in tokens:
            r = int(t.category)
            if r == 0:
                excluded.append(t)
            else:
                cells[r - 1].append(t)
        return cls(
            tuple(tuple(sorted(c, key=_sort_key)) for c in cells),
            tuple(sorted(excluded, key=_sort_key)),
        )

    @property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(t for cell in self.cells for t in cell)

    @property
    def all_tokens(self) -> tuple[Token, ...]:
        return self.tokens + self.excluded

    def cell(self, name: str) -> tuple[Token, ...]:
        return self.cells[CELLS.index(name)]

    def __len__(self) -> int:
        return len(self.tokens)

    def product(self, other: "DecisionMatrix") -> "DecisionMatrix":
        return DecisionMatrix.from_tokens(self.all_tokens + other.all_tokens)

    __matmul__ = product

    def shape(self) -> tuple[tuple, ...]:
        """Cell contents with branch identity and numerics dropped."""
        return tuple(tuple(sorted(Counter(t.shape() for t in cell).items())) for cell in self.cells)

    def symbols(self) -> dict[str, list[str]]:
        return {name: [t.symbol for t in cell] for name, cell in zip(CELLS, self.cells)}

    def render(self) -> str:
        def fmt(cell):
            return " ".join(t.symbol for t in cell) or "."

        a, b, c, anchor = (fmt(cell) for cell in self.cells)
        w = max(len(a), len(anchor))
        return f"( {a:<{w}} | {b} )\n( {anchor:<{w}} | {c} )"


class Order(str, Enum):
    ZERO = "ZeroOrder"
    FIRST = "FirstOrder"
    PARALLEL = "SecondOrderParallel"
    CROSSING = "SecondOrderCrossing"

    @property
    def degree(self) -> int:
        return {"ZeroOrder": 0, "FirstOrder": 1}.get(self.value, 2)


@dataclass(frozen=True)
class StructureClass:
    order: Order
    favored: Optional[Option] = None
    tied: Optional[Dimension] = None

    def __str__(self) -> str:
        if self.order is Order.ZERO:
            return f"ZeroOrder({self.favored.value})"
        if self.order is Order.FIRST:
            return f"FirstOrder({self.tied.value},{self.favored.value})"
        return self.order.value

    @classmethod
    def parse(cls, text: str) -> "StructureClass":
        name, _, rest = text.partition("(")
        args = [s for s in rest.rstrip(")").split(",") if s]
        if name == "ZeroOrder":
            return cls(Order.ZERO, Option(args[0]))
        if name == "FirstOrder":
            return cls(Order.FIRST, Option(args[1]), Dimension(args[0]))
        return cls(Order(name))


def zero_order(favored: Option) -> StructureClass:
    return StructureClass(Order.ZERO, favored)


def first_order(tied: Dimension, favored: Option) -> StructureClass:
    return StructureClass(Order.FIRST, favored, tied)


SECOND_PARALLEL = StructureClass(Order.PARALLEL)
SECOND_CROSSING = StructureClass(Order.CROSSING)


class StepKind(str, Enum):
    SUBSTITUTE = "SUBSTITUTE"
    DTAU2 = "DTAU2"
    DTAU1 = "DTAU1"
    CALC = "CALC"


class Label(str, Enum):
    RISK_SEEKING = "RiskSeeking"
    RISK_AVERSION = "RiskAversion"
    VALUE_SEEKING = "ValueSeeking"
    VALUE_AVERSION = "ValueAversion"

    @classmethod
    def for_move(cls, dimension: Dimension, upward: bool) -> "Label":
        if dimension is Dimension.PROB:
            return cls.RISK_SEEKING if upward else cls.RISK_AVERSION
        return cls.VALUE_SEEKING if upward else cls.VALUE_AVERSION


@dataclass(frozen=True)
class Step:
    kind: StepKind
    result: Optional[StructureClass]
    label: Optional[Label] = None
    note: str = ""


_SEVERITY = {StepKind.SUBSTITUTE: 3, StepKind.DTAU2: 2, StepKind.DTAU1: 1, StepKind.CALC: 0}


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Step, ...]
    outcome: Outcome

    def __post_init__(self):
        sev = [_SEVERITY[s.kind] for s in self.steps]
        if any(b > a for a, b in zip(sev, sev[1:])):
            raise ValueError("trace steps must not increase in severity")

    def count(self, kind: StepKind) -> int:
        return sum(1 for s in self.steps if s.kind is kind)

    @property
    def reductions(self) -> tuple[Step, ...]:
        return tuple(s for s in self.steps if s.kind in (StepKind.DTAU2, StepKind.DTAU1))

    def to_dict(self) -> dict:
        return {
            "steps": [
                {
                    "kind": s.kind.value,
                    "label": s.label.value if s.label else None,
                    "structure": str(s.result) if s.result else None,
                    "note": s.note,
                }
                for s in self.steps
            ],
            "outcome": self.outcome.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReductionTrace":
        steps = tuple(
            Step(
                StepKind(s["kind"]),
                StructureClass.parse(s["structure"]) if s["structure"] else None,
                Label(s["label"]) if s["label"] else None,
                s.get("note", ""),
            )
            for s in data["steps"]
        )
        return cls(steps, Outcome(data["outcome"]))


def tokens_of(matrix: DecisionMatrix, option: Option, dimension: Dimension) -> list[Token]:
    return [t for t in matrix.all_tokens if t.option is option and t.dimension is dimension]

