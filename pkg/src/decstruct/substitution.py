"""Numeric gambles to category tokens and decision matrices."""

from __future__ import annotations

import math

from .core import (
    Branch,
    DecisionMatrix,
    Dimension,
    DomainError,
    Option,
    Pair,
    ProbCategory,
    SubstitutionScheme,
    Token,
    ValCategory,
)

_INTERIOR = (ProbCategory.A, ProbCategory.B, ProbCategory.C)


def substitute_probability(p: float, scheme: SubstitutionScheme) -> ProbCategory:
    if math.isnan(p) or not 0 <= p <= 1:
        raise DomainError(f"probability {p} outside [0, 1]")
    if p == 0:
        return ProbCategory.ZERO
    if p == 1:
        return ProbCategory.ONE
    p_ab, p_bc = scheme.prob_cutoffs
    if p < p_ab:
        return ProbCategory.A
    if p < p_bc:
        return ProbCategory.B
    return ProbCategory.C


def substitute_value(v: float, scheme: SubstitutionScheme) -> ValCategory:
    if not math.isfinite(v) or v < 0:
        raise DomainError(f"reward {v} must be finite and >= 0")
    if v == 0:
        return ValCategory.ZERO
    v_ab, v_bc = scheme.value_cutoffs
    if v < v_ab:
        return ValCategory.A
    if v < v_bc:
        return ValCategory.B
    return ValCategory.C


def attainable_categories(lo: float, hi: float, scheme: SubstitutionScheme) -> list[ProbCategory]:
    """Interior categories met by some p in the open interval (lo, hi)."""
    return [
        cat
        for cat in _INTERIOR
        if max(lo, scheme.prob_interval(cat)[0]) < min(hi, scheme.prob_interval(cat)[1])
    ]


def substitute_uncertain_probability(lo: float, hi: float, scheme: SubstitutionScheme) -> ProbCategory:
    """Bin an ambiguous probability known only to lie in (lo, hi).

    The result is the lowest attainable category.  The known bound ``lo``
    is itself perceived, so "strictly more than lo" ranks above lo's own
    category whenever the interval reaches past it: (1/3, 1) with the
    default cutoffs gives b, not a.
    """
    if math.isnan(lo) or math.isnan(hi) or not 0 <= lo <= 1 or not 0 <= hi <= 1:
        raise DomainError(f"interval ({lo}, {hi}) outside [0, 1]")
    if lo > hi:
        raise DomainError(f"inverted interval ({lo}, {hi})")
    if lo == hi:
        return substitute_probability(lo, scheme)
    cats = attainable_categories(lo, hi, scheme)
    floor = substitute_probability(lo, scheme)
    above = [c for c in cats if c > floor]
    return min(above) if above else min(cats)


def pessimistic_point(lo: float, hi: float, category: ProbCategory, scheme: SubstitutionScheme) -> float:
    """Lowest number of (lo, hi) that the assigned category admits."""
    return max(lo, scheme.prob_interval(category)[0])


def branch_tokens(option: Option, index: int, branch: Branch, scheme: SubstitutionScheme) -> tuple[Token, Token]:
    if branch.interval is not None and scheme.ambiguity_law:
        lo, hi = branch.interval
        pc = substitute_uncertain_probability(lo, hi, scheme)
        p_tok = Token(option, index, Dimension.PROB, pc, pessimistic_point(lo, hi, pc, scheme), (lo, hi))
    else:
        p_tok = Token(option, index, Dimension.PROB, substitute_probability(branch.p, scheme), branch.p)
    v_tok = Token(option, index, Dimension.VALUE, substitute_value(branch.v, scheme), branch.v)
    return p_tok, v_tok


def pair_tokens(pair: Pair, scheme: SubstitutionScheme) -> list[Token]:
    """Tokens of every explicit branch; impossible branches drop their value token."""
    tokens = []
    for option in Option:
        for i, branch in enumerate(pair.gamble(option).explicit):
            p_tok, v_tok = branch_tokens(option, i, branch, scheme)
            tokens.append(p_tok)
            if p_tok.category is not ProbCategory.ZERO:
                tokens.append(v_tok)
    return tokens


def build_matrices(pair: Pair, scheme: SubstitutionScheme) -> tuple[DecisionMatrix, DecisionMatrix]:
    tokens = pair_tokens(pair, scheme)
    g_p = DecisionMatrix.from_tokens(t for t in tokens if t.dimension is Dimension.PROB)
    g_v = DecisionMatrix.from_tokens(t for t in tokens if t.dimension is Dimension.VALUE)
    return g_p, g_v


def product(g_p: DecisionMatrix, g_v: DecisionMatrix) -> DecisionMatrix:
    """Cellwise multiset union of two decision matrices."""
    return g_p.product(g_v)
