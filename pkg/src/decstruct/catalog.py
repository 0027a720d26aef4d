"""Printed structure catalog and the generated class table.

Each printed matrix is stored as its two rows, ``[[a, b], [anchor, c]]``,
with tokens written as ``a_i``, ``b_j'``, ``1_i``.  A bare ``1`` marks an
empty cell.  Subscripts map onto options: i, A, C -> X and j, B, D -> Y.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .classification import classify_ranks
from .core import (
    DecisionMatrix,
    Dimension,
    Label,
    Option,
    Order,
    ProbCategory,
    StructureClass,
    Token,
    ValCategory,
)

SUBSCRIPTS = {"i": Option.X, "A": Option.X, "C": Option.X, "j": Option.Y, "B": Option.Y, "D": Option.Y}
_TOKEN = re.compile(r"^([abc1])_([A-Za-z])('?)$")
_CELL_OF = {(0, 0): 1, (0, 1): 2, (1, 1): 3, (1, 0): 4}


@dataclass(frozen=True)
class Printed:
    key: str
    section: str
    role: str  # "prob", "value", "combined", or "multi" for multi-branch pairs
    rows: tuple[tuple[str, str], tuple[str, str]]
    factors: Optional[tuple[str, str]] = None


def _p(key, section, role, r0, r1, factors=None):
    return Printed(key, section, role, (tuple(r0), tuple(r1)), factors)


PRINTED: dict[str, Printed] = {
    e.key: e
    for e in [
        # zero order
        _p("5", "zero", "prob", ["a_i", "b_j"], ["1", "1"]),
        _p("6", "zero", "prob", ["a_i", "1"], ["1", "c_j"]),
        _p("7", "zero", "prob", ["1", "b_i"], ["1", "c_j"]),
        _p("8", "zero", "value", ["a_i'", "b_j'"], ["1", "1"]),
        _p("9", "zero", "value", ["a_i'", "1"], ["1", "c_j'"]),
        _p("10", "zero", "value", ["1", "b_i'"], ["1", "c_j'"]),
        _p("11", "zero", "combined", ["a_i a_i'", "b_j b_j'"], ["1", "1"], ("5", "8")),
        # first order, section 1: probabilities share a cell
        _p("12", "first-1", "prob", ["a_i a_j", "1"], ["1", "1"]),
        _p("13", "first-1", "prob", ["1", "b_i b_j"], ["1", "1"]),
        _p("14", "first-1", "prob", ["1", "1"], ["1", "c_i c_j"]),
        _p("15", "first-1", "value", ["a_i'", "b_j'"], ["1", "1"]),
        _p("16", "first-1", "value", ["a_i'", "1"], ["1", "c_j'"]),
        _p("17", "first-1", "value", ["1", "b_i'"], ["1", "c_j'"]),
        _p("18", "first-1", "combined", ["a_i a_j a_i'", "b_j'"], ["1", "1"], ("12", "15")),
        _p("19", "first-1", "combined", ["a_i a_j a_i'", "1"], ["1", "c_j'"], ("12", "16")),
        _p("20", "first-1", "combined", ["a_i a_j", "b_i'"], ["1", "c_j'"], ("12", "17")),
        _p("21", "first-1", "combined", ["a_i'", "b_i b_j b_j'"], ["1", "1"], ("13", "15")),
        _p("22", "first-1", "combined", ["a_i'", "b_i b_j"], ["1", "c_j'"], ("13", "16")),
        _p("23", "first-1", "combined", ["1", "b_i b_j b_i'"], ["1", "c_j'"], ("13", "17")),
        _p("24", "first-1", "combined", ["a_i'", "b_j'"], ["1", "c_i c_j"], ("14", "15")),
        _p("25", "first-1", "combined", ["a_i'", "1"], ["1", "c_i c_j c_j'"], ("14", "16")),
        _p("26", "first-1", "combined", ["1", "b_i'"], ["1", "c_i c_j c_j'"], ("14", "17")),
        # first order, section 2: values share a cell
        _p("27", "first-2", "prob", ["a_i", "b_j"], ["1", "1"]),
        _p("28", "first-2", "prob", ["a_i", "1"], ["1", "c_j"]),
        _p("29", "first-2", "prob", ["1", "b_i"], ["1", "c_j"]),
        _p("30", "first-2", "combined", ["a_i a_j' a_i'", "b_j"], ["1", "1"], ("27", "15")),
        _p("31", "first-2", "combined", ["a_i", "b_j b_i' b_j'"], ["1", "1"], ("27", "16")),
        _p("32", "first-2", "combined", ["a_i", "b_j"], ["1", "c_i' c_j'"], ("27", "17")),
        _p("33", "first-2", "combined", ["a_i a_i' a_j'", "1"], ["1", "c_j'"], ("28", "15")),
        _p("34", "first-2", "combined", ["a_i", "b_i' b_j'"], ["1", "c_j"], ("28", "16")),
        _p("35", "first-2", "combined", ["a_i", "1"], ["1", "c_j c_i' c_j'"], ("28", "17")),
        _p("36", "first-2", "combined", ["a_i' a_j'", "b_i"], ["1", "c_j"], ("29", "15")),
        _p("37", "first-2", "combined", ["1", "b_i b_i' b_j'"], ["1", "c_j"], ("29", "16")),
        _p("38", "first-2", "combined", ["1", "b_i"], ["1", "c_j c_i' c_j'"], ("29", "17")),
        # second order, paralleling
        _p("39", "parallel", "value", ["a_i' a_j'", "1"], ["1", "1"]),
        _p("40", "parallel", "value", ["1", "b_i' b_j'"], ["1", "1"]),
        _p("41", "parallel", "value", ["1", "1"], ["1", "c_i' c_j'"]),
        _p("42", "parallel", "combined", ["a_i a_j a_i' a_j'", "1"], ["1", "1"], ("12", "39")),
        _p("43", "parallel", "combined", ["a_i a_j", "b_i' b_j'"], ["1", "1"], ("12", "40")),
        _p("44", "parallel", "combined", ["a_i a_j", "1"], ["1", "c_i' c_j'"], ("12", "41")),
        _p("45", "parallel", "combined", ["a_i' a_j'", "b_i b_j"], ["1", "1"], ("13", "39")),
        _p("46", "parallel", "combined", ["1", "b_i b_j b_i' b_j'"], ["1", "1"], ("13", "40")),
        _p("47", "parallel", "combined", ["1", "b_i b_j"], ["1", "c_i' c_j'"], ("13", "41")),
        _p("48", "parallel", "combined", ["a_i' a_j'", "1"], ["1", "c_i c_j"], ("14", "39")),
        _p("49", "parallel", "combined", ["1", "b_i' b_j'"], ["1", "c_i c_j"], ("14", "40")),
        _p("50", "parallel", "combined", ["1", "1"], ["1", "c_i c_j c_i' c_j'"], ("14", "41")),
        # second order, crossing
        _p("51", "crossing", "value", ["a_j'", "b_i'"], ["1", "1"]),
        _p("52", "crossing", "value", ["a_j'", "1"], ["1", "c_i'"]),
        _p("53", "crossing", "value", ["1", "b_j'"], ["1", "c_i'"]),
        _p("54", "crossing", "combined", ["a_i a_j'", "b_j b_i'"], ["1", "1"], ("5", "51")),
        _p("55", "crossing", "combined", ["a_i a_j'", "b_j"], ["1", "c_i'"], ("5", "52")),
        _p("56", "crossing", "combined", ["a_i", "b_j b_j'"], ["1", "c_i'"], ("5", "53")),
        _p("57", "crossing", "combined", ["a_i a_j'", "b_i'"], ["1", "c_j"], ("6", "51")),
        _p("58", "crossing", "combined", ["a_i a_j'", "1"], ["1", "c_i' c_j"], ("6", "52")),
        _p("59", "crossing", "combined", ["a_i", "b_j'"], ["1", "c_j c_i'"], ("6", "53")),
        _p("60", "crossing", "combined", ["a_j'", "b_i b_i'"], ["1", "c_j"], ("7", "51")),
        _p("61", "crossing", "combined", ["a_j'", "b_i"], ["1", "c_i' c_j"], ("7", "52")),
        _p("62", "crossing", "combined", ["1", "b_i b_j'"], ["1", "c_j c_i'"], ("7", "53")),
        # illustrations of the taxonomy and of reduction
        _p("item1", "zero", "combined", ["a_i a_i'", "b_j b_j'"], ["1", "1"]),
        _p("item2", "first-1", "combined", ["a_i a_j a_i'", "b_j'"], ["1", "1"]),
        _p("item3", "crossing", "combined", ["a_i a_j'", "b_j b_i'"], ["1", "1"]),
        _p("item4", "first-1", "combined", ["a_j'", "b_i b_j b_i'"], ["1", "1"]),
        _p("item5", "first-1", "combined", ["a_i a_j a_j'", "b_i'"], ["1", "1"]),
        _p("item6", "first-2", "combined", ["a_i", "b_j b_i' b_j'"], ["1", "1"]),
        _p("item7", "first-2", "combined", ["a_i a_i' a_j'", "b_j"], ["1", "1"]),
        _p("63", "crossing", "combined", ["a_i a_j'", "b_j b_i'"], ["1", "1"]),
        _p("64.G18", "first-1", "combined", ["a_i a_j a_j'", "b_i'"], ["1", "1"]),
        _p("64.G21", "first-1", "combined", ["a_j'", "b_i b_j b_i'"], ["1", "1"]),
        _p("64.G30", "first-2", "combined", ["a_i a_j' a_i'", "b_j"], ["1", "1"]),
        _p("64.G31", "first-2", "combined", ["a_i", "b_j b_i' b_j'"], ["1", "1"]),
        _p("65.BA", "zero", "combined", ["a_i a_i'", "b_j b_j'"], ["1", "1"]),
        _p("65.AB", "zero", "combined", ["a_j a_j'", "b_i b_i'"], ["1", "1"]),
        _p("75", "allais", "multi", ["a_j a_j", "b_j"], ["1_i", "c_i' c_j' c_j'"]),
        _p("76", "allais", "multi", ["a_i a_j", "1"], ["1", "c_i c_j c_i' c_j'"]),
        _p("77.2", "parallel", "combined", ["a_i a_j", "1"], ["1", "c_i' c_j'"]),
        _p("77.3", "first-1", "combined", ["a_i a_j", "b_i'"], ["1", "c_j'"]),
        _p("78", "parallel", "combined", ["a_A a_B", "b_A' b_B'"], ["1", "1"]),
        _p("79", "first-2", "combined", ["a_A", "b_B b_A' b_B'"], ["1", "1"]),
        _p("80", "parallel", "combined", ["1", "b_C b_D b_C' b_D'"], ["1", "1"]),
        _p("81", "first-2", "combined", ["1", "b_D b_C' b_D'"], ["1", "c_C"]),
    ]
}

# The four first-order children of the crossing structure, keyed by step label.
CROSSING_CHILDREN = {
    Label.RISK_AVERSION: "64.G18",
    Label.RISK_SEEKING: "64.G21",
    Label.VALUE_AVERSION: "64.G30",
    Label.VALUE_SEEKING: "64.G31",
}

SECTION_CLASS = {
    "zero": (Order.ZERO, None),
    "first-1": (Order.FIRST, Dimension.PROB),
    "first-2": (Order.FIRST, Dimension.VALUE),
    "parallel": (Order.PARALLEL, None),
    "crossing": (Order.CROSSING, None),
}

# How a single-dimension factor must relate the two options in its section.
SECTION_RELATION = {
    ("zero", "prob"): "Y",
    ("zero", "value"): "Y",
    ("first-1", "prob"): "tie",
    ("first-1", "value"): "Y",
    ("first-2", "prob"): "Y",
    ("parallel", "value"): "tie",
    ("crossing", "value"): "X",
}


def parse_token(text: str, cell: int) -> tuple[Token, bool]:
    """Token for a printed symbol and whether it sits in its own category's cell."""
    m = _TOKEN.match(text)
    if not m:
        raise ValueError(f"unreadable token {text!r}")
    sym, sub, prime = m.groups()
    r = {"a": 1, "b": 2, "c": 3, "1": 4}[sym]
    dim = Dimension.VALUE if prime else Dimension.PROB
    cat = ValCategory(r) if prime else ProbCategory(r)
    return Token(SUBSCRIPTS[sub], 0, dim, cat, 0.0), r == cell


def printed_matrix(entry: Printed) -> tuple[DecisionMatrix, list[str]]:
    tokens, problems = [], []
    for (row, col), cell in _CELL_OF.items():
        text = entry.rows[row][col].strip()
        if text == "1":
            continue
        for piece in text.split():
            tok, placed = parse_token(piece, cell)
            if not placed:
                problems.append(f"{piece} printed outside its category cell")
            tokens.append(tok)
    return DecisionMatrix.from_tokens(tokens), problems


def _per_option(matrix: DecisionMatrix, dim: Dimension) -> dict[Option, list[int]]:
    return {o: [int(t.category) for t in matrix.tokens if t.option is o and t.dimension is dim] for o in Option}


def printed_class(entry: Printed) -> tuple[Optional[object], list[str]]:
    """Structure class (combined) or option relation (factor) of a printed matrix."""
    matrix, problems = printed_matrix(entry)
    if entry.role == "multi":
        return None, problems
    if entry.role == "combined":
        ranks = []
        for o in Option:
            for dim in Dimension:
                got = _per_option(matrix, dim)[o]
                if len(got) != 1:
                    problems.append(f"option {o.value} has {len(got)} {dim.value} tokens")
                    continue
                ranks.append(got[0])
        if problems:
            return None, problems
        px, vx, py, vy = ranks
        return classify_ranks(px, vx, py, vy), problems
    dim = Dimension.PROB if entry.role == "prob" else Dimension.VALUE
    got = _per_option(matrix, dim)
    other = _per_option(matrix, dim.other)
    if any(len(got[o]) != 1 for o in Option) or any(other.values()):
        problems.append("factor matrix must hold one token per option on its own dimension")
        return None, problems
    x, y = got[Option.X][0], got[Option.Y][0]
    return ("X" if x > y else "Y" if y > x else "tie"), problems


@dataclass(frozen=True)
class ConformanceRow:
    key: str
    section: str
    role: str
    well_formed: bool
    printed: Optional[str]
    expected: Optional[str]
    matches_section: Optional[bool]
    product_matches: Optional[bool]
    product_class: Optional[str]
    notes: tuple[str, ...]

    @property
    def discrepancy(self) -> bool:
        return (not self.well_formed) or self.matches_section is False or self.product_matches is False


def _expected(entry: Printed) -> Optional[str]:
    if entry.role == "combined":
        if entry.section not in SECTION_CLASS:
            return None
        order, tied = SECTION_CLASS[entry.section]
        return order.value if tied is None else f"{order.value}[{tied.value}]"
    return SECTION_RELATION.get((entry.section, entry.role))


def _summary(cls) -> str:
    if isinstance(cls, StructureClass):
        if cls.order is Order.FIRST:
            return f"{cls.order.value}[{cls.tied.value}]"
        return cls.order.value
    return cls


def conformance_table() -> list[ConformanceRow]:
    rows = []
    for key, entry in PRINTED.items():
        cls, problems = printed_class(entry)
        expected = _expected(entry)
        notes = list(problems)
        printed = _summary(cls) if cls is not None else None
        matches = None if printed is None or expected is None else printed == expected
        product_matches = product_class = None
        if entry.factors:
            left, _ = printed_matrix(PRINTED[entry.factors[0]])
            right, _ = printed_matrix(PRINTED[entry.factors[1]])
            prod = left.product(right)
            mine, _ = printed_matrix(entry)
            product_matches = prod.shape() == mine.shape()
            px, vx, py, vy = (_per_option(prod, d)[o][0] for o in Option for d in Dimension)
            product_class = _summary(classify_ranks(px, vx, py, vy))
            if not product_matches:
                notes.append(
                    f"printed matrix differs from ({entry.factors[0]})o({entry.factors[1]}), "
                    f"whose product classifies as {product_class}"
                )
        rows.append(
            ConformanceRow(key, entry.section, entry.role, not problems, printed, expected,
                           matches, product_matches, product_class, tuple(notes))
        )
    return rows


def discrepancy_log() -> list[str]:
    return [f"({r.key}) " + "; ".join(r.notes or ("class differs from section",))
            for r in conformance_table() if r.discrepancy]


def class_table() -> dict[tuple[int, int, int, int], list[StructureClass]]:
    """Every class each (P_x, V_x, P_y, V_y) rank combination falls in.

    Built by testing each candidate class's defining condition separately,
    so exclusivity can be checked rather than assumed.
    """
    table = {}
    for px, vx, py, vy in itertools.product(range(5), repeat=4):
        dp, dv = px - py, vx - vy
        hits = []
        for fav, s in ((Option.X, 1), (Option.Y, -1)):
            if s * dp > 0 and s * dv > 0:
                hits.append(StructureClass(Order.ZERO, fav))
            if dp == 0 and s * dv > 0:
                hits.append(StructureClass(Order.FIRST, fav, Dimension.PROB))
            if dv == 0 and s * dp > 0:
                hits.append(StructureClass(Order.FIRST, fav, Dimension.VALUE))
        if dp == 0 and dv == 0:
            hits.append(StructureClass(Order.PARALLEL))
        if dp * dv < 0:
            hits.append(StructureClass(Order.CROSSING))
        table[(px, vx, py, vy)] = hits
    return table
