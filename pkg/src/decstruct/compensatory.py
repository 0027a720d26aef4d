"""Expectation baselines (EV, EU, PT) and the coefficient bridge to category cells."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .core import DomainError, Gamble, Option, Pair, SubstitutionScheme


def _probe_grid(hi: float, n: int = 400) -> list[float]:
    return [0.0] + [hi * (i / n) ** 3 for i in range(1, n + 1)]


@dataclass(frozen=True)
class Utility:
    """A strictly increasing reward map with u(0) = 0, checked on a probe grid."""

    fn: Callable[[float], float]
    name: str = "custom"

    def __post_init__(self):
        if abs(self.fn(0.0)) > 1e-12:
            raise DomainError(f"utility {self.name} must satisfy u(0) = 0")
        pts = _probe_grid(1e7)
        vals = [self.fn(v) for v in pts]
        if any(not b > a for a, b in zip(vals, vals[1:])):
            raise DomainError(f"utility {self.name} is not strictly increasing")

    def __call__(self, v: float) -> float:
        return self.fn(v)


@dataclass(frozen=True)
class Weighting:
    """A probability weighting map with w(0) = 0, w(1) = 1, nondecreasing."""

    fn: Callable[[float], float]
    name: str = "custom"

    def __post_init__(self):
        if abs(self.fn(0.0)) > 1e-12 or abs(self.fn(1.0) - 1.0) > 1e-12:
            raise DomainError(f"weighting {self.name} must fix 0 and 1")
        vals = [self.fn(i / 1000) for i in range(1001)]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise DomainError(f"weighting {self.name} is not monotone")

    def __call__(self, p: float) -> float:
        return self.fn(p)


def _as_utility(u) -> Utility:
    return u if isinstance(u, Utility) else Utility(u)


def _as_weighting(w) -> Weighting:
    return w if isinstance(w, Weighting) else Weighting(w)


IDENTITY_UTILITY = Utility(lambda v: v, "identity")
IDENTITY_WEIGHTING = Weighting(lambda p: p, "identity")


def power_utility(alpha: float = 0.88) -> Utility:
    """Preset: u(v) = v**alpha."""
    return Utility(lambda v: v**alpha, f"power({alpha})")


def inverse_s_weighting(gamma: float = 0.61) -> Weighting:
    """Preset: the one-parameter inverse-S weighting w(p) = p^g / (p^g + (1-p)^g)^(1/g)."""

    def w(p):
        if p <= 0:
            return 0.0
        if p >= 1:
            return 1.0
        a, b = p**gamma, (1 - p) ** gamma
        return a / (a + b) ** (1 / gamma)

    return Weighting(w, f"inverse_s({gamma})")


def expected_value(g: Gamble) -> float:
    return math.fsum(b.p * b.v for b in g.branches)


def expected_utility(g: Gamble, u=IDENTITY_UTILITY) -> float:
    u = _as_utility(u)
    return math.fsum(b.p * u(b.v) for b in g.branches)


def prospect_value(g: Gamble, w=IDENTITY_WEIGHTING, u=IDENTITY_UTILITY) -> float:
    w, u = _as_weighting(w), _as_utility(u)
    return math.fsum(w(b.p) * u(b.v) for b in g.branches if b.v > 0 and b.p > 0)


def ordering(x: float, y: float, rel: float = 1e-12) -> str:
    tol = rel * max(abs(x), abs(y))
    if x - y > tol:
        return "X"
    if y - x > tol:
        return "Y"
    return "tie"


CELL_NAMES = ("a", "b", "c")


@dataclass(frozen=True)
class CoefficientSet:
    """Scale factors carrying each option's numbers onto the category representatives.

    ``k[n] * P_x == rep_p[n] == k_y[n] * P_y`` and ``m[n] * V_x == rep_v[n] == m_y[n] * V_y``
    for the three interior cells n = a, b, c.
    """

    k: tuple[float, float, float]
    k_y: tuple[float, float, float]
    m: tuple[float, float, float]
    m_y: tuple[float, float, float]
    p_x: float
    p_y: float
    v_x: float
    v_y: float
    rep_p: tuple[float, float, float]
    rep_v: tuple[float, float, float]

    def cell_products(self, n: int) -> tuple[float, float, float]:
        """(k m P_x V_x, rep_p rep_v, k' m' P_y V_y) for cell n."""
        return (
            self.k[n] * self.m[n] * self.p_x * self.v_x,
            self.rep_p[n] * self.rep_v[n],
            self.k_y[n] * self.m_y[n] * self.p_y * self.v_y,
        )


def derive_coefficients(
    p_x: float,
    p_y: float,
    v_x: float,
    v_y: float,
    rep_p: tuple[float, float, float],
    rep_v: tuple[float, float, float],
) -> CoefficientSet:
    if min(p_x, p_y, v_x, v_y) <= 0:
        raise DomainError("coefficients need strictly positive probabilities and rewards")
    return CoefficientSet(
        k=tuple(r / p_x for r in rep_p),
        k_y=tuple(r / p_y for r in rep_p),
        m=tuple(r / v_x for r in rep_v),
        m_y=tuple(r / v_y for r in rep_v),
        p_x=p_x,
        p_y=p_y,
        v_x=v_x,
        v_y=v_y,
        rep_p=tuple(rep_p),
        rep_v=tuple(rep_v),
    )


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


@dataclass(frozen=True)
class CellCheck:
    cell: str
    option: str
    value: float
    expected: float
    ok: bool


@dataclass(frozen=True)
class CorollaryReport:
    which: int
    cells: tuple[CellCheck, ...]
    identities: tuple[CellCheck, ...]
    ordering: str
    baseline_ordering: str
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells + self.identities) and self.ordering == self.baseline_ordering


def corollary_check(
    which: int,
    pair: Pair,
    scheme: SubstitutionScheme,
    u=IDENTITY_UTILITY,
    w=IDENTITY_WEIGHTING,
    rel: float = 1e-12,
) -> CorollaryReport:
    """Check that a coefficient choice turns cell products into a compensatory score.

    1: k = k' = m = m' = 1, cells carry P V and compare as EV.
    2: k = k' = 1 and m = u(V)/V, cells carry P u(V) and compare as EU.
    3: k = w(P)/P and m = u(V)/V, cells carry w(P) u(V) and compare as PT.
    Cell-specific coefficients are the same for a, b and c; every branch of
    an option contributes its own product to each cell.
    """
    if which not in (1, 2, 3):
        raise DomainError("corollary must be 1, 2 or 3")
    u, w = _as_utility(u), _as_weighting(w)

    def coeffs(p, v):
        k = w(p) / p if which == 3 else 1.0
        m = u(v) / v if which in (2, 3) else 1.0
        return k, m

    def target(p, v):
        if which == 1:
            return p * v
        if which == 2:
            return p * u(v)
        return w(p) * u(v)

    cells, totals = [], {}
    for option in Option:
        g = pair.gamble(option)
        live = [b for b in g.branches if b.p > 0 and b.v > 0]
        for n, name in enumerate(CELL_NAMES):
            got = math.fsum(coeffs(b.p, b.v)[0] * coeffs(b.p, b.v)[1] * b.p * b.v for b in live)
            want = math.fsum(target(b.p, b.v) for b in live)
            cells.append(CellCheck(name, option.value, got, want, _close(got, want, rel)))
            totals.setdefault(option, got)

    if which == 1:
        baseline = ordering(expected_value(pair.x), expected_value(pair.y))
    elif which == 2:
        baseline = ordering(expected_utility(pair.x, u), expected_utility(pair.y, u))
    else:
        baseline = ordering(prospect_value(pair.x, w, u), prospect_value(pair.y, w, u))

    identities = []
    rep_p, rep_v = scheme.prob_representatives, scheme.value_representatives
    for bx in pair.x.branches:
        for by in pair.y.branches:
            if min(bx.p, by.p, bx.v, by.v) <= 0:
                continue
            cs = derive_coefficients(bx.p, by.p, bx.v, by.v, rep_p, rep_v)
            for n, name in enumerate(CELL_NAMES):
                left, mid, right = cs.cell_products(n)
                identities.append(CellCheck(name + name + "'", "X", left, mid, _close(left, mid, rel)))
                identities.append(CellCheck(name + name + "'", "Y", right, mid, _close(right, mid, rel)))

    return CorollaryReport(
        which,
        tuple(cells),
        tuple(identities),
        ordering(totals[Option.X], totals[Option.Y]),
        baseline,
    )
