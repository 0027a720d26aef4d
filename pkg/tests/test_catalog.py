import pytest

from decstruct.catalog import (
    CROSSING_CHILDREN,
    PRINTED,
    class_table,
    conformance_table,
    discrepancy_log,
    parse_token,
)
from decstruct.core import Dimension, Option, ProbCategory, ValCategory

ROWS = {r.key: r for r in conformance_table()}
BAD = {str(n) for n in range(30, 39)}


def test_parse_token():
    tok, placed = parse_token("b_j'", 2)
    assert (tok.option, tok.dimension, tok.category, placed) == (Option.Y, Dimension.VALUE, ValCategory.B, True)
    tok, placed = parse_token("a_C", 3)
    assert (tok.option, tok.category, placed) == (Option.X, ProbCategory.A, False)
    with pytest.raises(ValueError):
        parse_token("d_i", 1)


def test_class_table_exhaustive_and_exclusive():
    table = class_table()
    assert len(table) == 5**4
    assert all(len(hits) == 1 for hits in table.values())


def test_class_table_agrees_with_classifier():
    from decstruct.classification import classify_ranks

    for ranks, (hit,) in class_table().items():
        assert classify_ranks(*ranks) == hit


@pytest.mark.parametrize("key", [k for k in PRINTED if k.isdigit() and (5 <= int(k) <= 29 or 39 <= int(k) <= 62)])
def test_printed_structures_match_section(key):
    row = ROWS[key]
    assert row.well_formed
    if row.expected is not None:
        assert row.matches_section, row
    assert row.product_matches is not False, row


def test_known_discrepancies_are_logged():
    flagged = {r.key for r in conformance_table() if r.discrepancy}
    assert flagged == BAD
    log = discrepancy_log()
    assert len(log) == len(BAD)
    assert any(line.startswith("(33)") and "tokens" in line for line in log)


def test_crossing_children_cover_all_labels():
    assert len(set(CROSSING_CHILDREN.values())) == 4
    for key in CROSSING_CHILDREN.values():
        assert ROWS[key].well_formed and ROWS[key].matches_section


@pytest.mark.parametrize("key", ["65.BA", "65.AB", "77.2", "77.3", "78", "79", "80", "81"])
def test_worked_example_structures(key):
    assert ROWS[key].well_formed and ROWS[key].matches_section
