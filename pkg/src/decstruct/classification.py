"""Zero/first/second-order taxonomy, superiority, and multi-branch cancellation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    SECOND_CROSSING,
    SECOND_PARALLEL,
    Branch,
    DecisionMatrix,
    Dimension,
    Gamble,
    Option,
    Outcome,
    Pair,
    SubstitutionScheme,
    StructureClass,
    first_order,
    tokens_of,
    zero_order,
)
from .substitution import branch_tokens, build_matrices


class ContractViolation(ValueError):
    pass


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def classify_ranks(px: int, vx: int, py: int, vy: int) -> StructureClass:
    dp = _sign(int(px) - int(py))
    dv = _sign(int(vx) - int(vy))
    if dp == 0 and dv == 0:
        return SECOND_PARALLEL
    if dp == 0:
        return first_order(Dimension.PROB, Option.X if dv > 0 else Option.Y)
    if dv == 0:
        return first_order(Dimension.VALUE, Option.X if dp > 0 else Option.Y)
    if dp == dv:
        return zero_order(Option.X if dp > 0 else Option.Y)
    return SECOND_CROSSING


def single_ranks(g_p: DecisionMatrix, g_v: DecisionMatrix) -> tuple[int, int, int, int]:
    ranks = []
    for option in Option:
        for matrix, dim in ((g_p, Dimension.PROB), (g_v, Dimension.VALUE)):
            toks = tokens_of(matrix, option, dim)
            if len(toks) != 1:
                raise ContractViolation(
                    f"classify needs one {dim.value} token per option, option {option.value} has {len(toks)}; "
                    "run cancel_and_reduce first"
                )
            ranks.append(int(toks[0].category))
    px, vx, py, vy = ranks
    return px, vx, py, vy


def classify(g_p: DecisionMatrix, g_v: DecisionMatrix) -> StructureClass:
    return classify_ranks(*single_ranks(g_p, g_v))


def _dominates(g_p, g_v, hi: Option) -> bool:
    strict = False
    for matrix, dim in ((g_p, Dimension.PROB), (g_v, Dimension.VALUE)):
        mine = [int(t.category) for t in tokens_of(matrix, hi, dim)]
        theirs = [int(t.category) for t in tokens_of(matrix, hi.other, dim)]
        if not theirs:
            continue
        if not mine or max(mine) < max(theirs):
            return False
        strict = strict or max(mine) > max(theirs)
    return strict


def superiority(g_p: DecisionMatrix, g_v: DecisionMatrix) -> Optional[Option]:
    """Option holding the superiority position, if any.

    An option is superior when every opposing token is matched by one of
    its own tokens of weakly higher rank on the same dimension, and its
    best token is strictly higher on at least one dimension.  Zero-reward
    tokens take part at rank 0.
    """
    for option in Option:
        if _dominates(g_p, g_v, option):
            return option
    return None


@dataclass(frozen=True)
class CancelResult:
    verdict: Optional[Outcome] = None
    pair: Optional[Pair] = None
    cancelled: tuple[tuple[int, int], ...] = field(default=())
    by_superiority: bool = False


def _live(b: Branch) -> bool:
    return b.p > 0 or (b.interval is not None and b.interval[1] > 0)


def _categories(option, index, branch, scheme):
    p_tok, v_tok = branch_tokens(option, index, branch, scheme)
    return p_tok.category, v_tok.category


def cancel_and_reduce(pair: Pair, scheme: SubstitutionScheme) -> CancelResult:
    """Reduce a multi-branch pair to a single-branch pair or a verdict.

    Branches common to both options cancel one-for-one: a pair of branches
    cancels when their categories agree on both dimensions and they share
    the same consequence (identical numbers, or both reward nothing).  Each
    option then keeps its highest-reward surviving branch.
    """

    g_p, g_v = build_matrices(pair, scheme)
    top = superiority(g_p, g_v)
    if top is not None:
        return CancelResult(verdict=Outcome.of(top), by_superiority=True)

    xs = [(i, b) for i, b in enumerate(pair.x.explicit) if _live(b)]
    ys = [(j, b) for j, b in enumerate(pair.y.explicit) if _live(b)]
    cancelled = []
    for i, bx in list(xs):
        cx = _categories(Option.X, i, bx, scheme)
        for j, by in ys:
            if cx != _categories(Option.Y, j, by, scheme):
                continue
            same = (bx.p, bx.v, bx.interval) == (by.p, by.v, by.interval)
            if same or (bx.v == 0 and by.v == 0):
                cancelled.append((i, j))
                xs.remove((i, bx))
                ys.remove((j, by))
                break
    if not xs or not ys:
        return CancelResult(verdict=Outcome.INDIFFERENT, cancelled=tuple(cancelled))

    def best(branches: list[tuple[int, Branch]]) -> Gamble:
        _, b = max(branches, key=lambda ib: (ib[1].v, ib[1].p, -ib[0]))
        return Gamble((b,))

    reduced = Pair(best(xs), best(ys), pair.id, pair.x_name, pair.y_name)
    return CancelResult(pair=reduced, cancelled=tuple(cancelled))
