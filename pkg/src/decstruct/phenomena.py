"""Worked scenarios: Allais pairs, Ellsberg gambles, probability-weighting verdicts."""

from __future__ import annotations

import json
from enum import Enum
from importlib import resources
from typing import Optional

from .core import Branch, DomainError, Gamble, Pair, SubstitutionScheme
from .reduction import DEFAULT_POLICY, ReductionPolicy, choice_distribution, winner

# 1M and 5M both large; the second value cutoff keeps 1M clear of the boundary
ALLAIS_SCHEME = SubstitutionScheme(value_cutoffs=(10_000.0, 500_000.0))
ELLSBERG_SCHEME = SubstitutionScheme(value_cutoffs=(50.0, 500.0))


def allais_pairs() -> tuple[Pair, Pair]:
    first = Pair(
        Gamble.of((1.0, 1_000_000)),
        Gamble.of((0.10, 5_000_000), (0.89, 1_000_000), (0.01, 0)),
        "allais-1", "A", "B",
    )
    second = Pair(
        Gamble.of((0.11, 1_000_000), (0.89, 0)),
        Gamble.of((0.10, 5_000_000), (0.90, 0)),
        "allais-2", "C", "D",
    )
    return first, second


def ellsberg_pairs() -> tuple[Pair, Pair]:
    """Urn with 30 red and 60 black-or-yellow balls, $100 prizes.

    Ambiguous events carry their credal range; the nominal probability is
    the range midpoint, used only when the ambiguity law is switched off.
    """
    third = 1 / 3
    a = Gamble((Branch(third, 100.0),))
    b = Gamble((Branch(third, 100.0, (0.0, 2 * third)),))
    c = Gamble((Branch(2 * third, 100.0, (third, 1.0)),))
    d = Gamble((Branch(2 * third, 100.0),))
    return Pair(a, b, "ellsberg-AB", "A", "B"), Pair(c, d, "ellsberg-CD", "C", "D")


def _verdict(pair: Pair, scheme: SubstitutionScheme, policy: ReductionPolicy) -> Optional[str]:
    top = winner(choice_distribution(pair, scheme, policy))
    return pair.name(top) if top is not None else None


def allais_predict(
    scheme: SubstitutionScheme = ALLAIS_SCHEME, policy: ReductionPolicy = DEFAULT_POLICY
) -> tuple[Optional[str], Optional[str]]:
    first, second = allais_pairs()
    return _verdict(first, scheme, policy), _verdict(second, scheme, policy)


def ellsberg_predict(
    scheme: SubstitutionScheme = ELLSBERG_SCHEME, policy: ReductionPolicy = DEFAULT_POLICY
) -> tuple[Optional[str], Optional[str]]:
    ab, cd = ellsberg_pairs()
    return _verdict(ab, scheme, policy), _verdict(cd, scheme, policy)


class PiVerdict(str, Enum):
    OVERWEIGHTED = "Overweighted"
    UNDERWEIGHTED = "Underweighted"
    EXACT = "Exact"


def pi_behavior(p: float, scheme: Optional[SubstitutionScheme] = None, tol: float = 1e-12) -> PiVerdict:
    """Whether substituting ``p`` by its category's representative inflates or shrinks it.

    A probability below the representative of its own interval is perceived
    as larger (overweighted), one above it as smaller (underweighted).
    """
    if not 0 < p < 1:
        raise DomainError(f"weighting verdicts need 0 < p < 1, got {p}")
    p_ab, p_bc = scheme.prob_cutoffs if scheme else (0.35, 0.7)
    reps = scheme.prob_representatives if scheme else (0.3, 0.5, 0.7)
    rep = reps[0] if p < p_ab else reps[1] if p < p_bc else reps[2]
    if abs(p - rep) <= tol:
        return PiVerdict.EXACT
    return PiVerdict.OVERWEIGHTED if p < rep else PiVerdict.UNDERWEIGHTED


def fixture_text(name: str) -> str:
    return resources.files("decstruct.data").joinpath(f"{name}.json").read_text(encoding="utf-8")


def fixture_scheme(name: str) -> SubstitutionScheme:
    return SubstitutionScheme.from_dict(json.loads(fixture_text(name))["scheme"])
