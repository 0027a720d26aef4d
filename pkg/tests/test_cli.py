import csv
import io
import json

import pytest

from decstruct.batch import (
    CSV_FIELDS,
    BatchError,
    parse_batch_text,
    render,
    reports_from_json,
    run_batch,
)
from decstruct.cli import main
from decstruct.core import DomainError
from decstruct.phenomena import fixture_text
from decstruct.reduction import ReductionPolicy


@pytest.fixture
def fixtures(tmp_path):
    paths = {}
    for name in ("allais", "ellsberg", "crossing", "policy_default"):
        p = tmp_path / f"{name}.json"
        p.write_text(fixture_text(name))
        paths[name] = p
    return paths


def test_malformed_json_reports_line():
    with pytest.raises(BatchError) as exc:
        parse_batch_text('{"pairs": [\n  {"id": "a",\n  }\n]}')
    assert exc.value.errors[0][0] == 3


def test_invalid_probability_names_pair_and_line():
    text = '{"pairs": [\n{"id": "ok", "x": [[0.5, 1]], "y": [[0.5, 2]]},\n{"id": "bad", "x": [[1.2, 5]], "y": [[0.5, 2]]}\n]}'
    with pytest.raises(BatchError) as exc:
        parse_batch_text(text)
    ((line, msg),) = exc.value.errors
    assert line == 3 and "'bad'" in msg


def test_duplicate_ids_rejected():
    text = json.dumps({"pairs": [{"id": "a", "x": [[0.5, 1]], "y": [[0.5, 1]]}] * 2})
    with pytest.raises(BatchError, match="duplicate"):
        parse_batch_text(text)


def test_empty_batch_gives_empty_report():
    batch = parse_batch_text('{"pairs": [], "scheme": {"value_cutoffs": [1, 2]}}')
    reports = run_batch(batch)
    assert reports == []
    assert render(reports, "csv") == ",".join(CSV_FIELDS) + "\n"
    assert render(reports, "json") == "[]\n"


def test_missing_scheme_is_an_error():
    batch = parse_batch_text('{"pairs": [{"id": "a", "x": [[0.5, 1]], "y": [[0.5, 1]]}]}')
    with pytest.raises(DomainError):
        run_batch(batch)


def test_csv_has_one_row_per_path():
    reports = run_batch(parse_batch_text(fixture_text("crossing")))
    rows = list(csv.DictReader(io.StringIO(render(reports, "csv"))))
    by_id = {}
    for row in rows:
        by_id.setdefault(row["id"], []).append(row)
    assert len(by_id["p-bet-vs-dollar-bet"]) == 4
    assert len(by_id["dominant"]) == 1
    assert {r["outcome_name"] for r in by_id["p-bet-vs-dollar-bet"]} == {"$-bet", "P-bet"}


def test_json_roundtrip():
    reports = run_batch(parse_batch_text(fixture_text("allais")))
    text = render(reports, "json")
    assert render(reports_from_json(text), "json") == text
    assert [r.winner for r in reports] == ["A", "D"]


def test_reports_flag_ev_disagreement():
    first, _ = run_batch(parse_batch_text(fixture_text("allais")))
    assert first.orderings["ev"] == "Y" and first.agreement["ev"] is False


def test_seed_changes_only_sampled_trace():
    batch = parse_batch_text(fixture_text("crossing"))
    a, b = run_batch(batch, seed=1), run_batch(batch, seed=2)
    assert [r.distribution for r in a] == [r.distribution for r in b]


def test_table_output():
    reports = run_batch(parse_batch_text(fixture_text("crossing")))
    text = render(reports, "table")
    assert "dominant: ZeroOrder(X) -> X" in text
    assert "RiskSeeking" in text and "ValueAversion" in text
    with pytest.raises(ValueError):
        render(reports, "xml")


def test_policy_changes_weights():
    batch = parse_batch_text(fixture_text("crossing"))
    pol = ReductionPolicy(path_weights={"RiskAversion": 5})
    (r, *_) = run_batch(batch, policy=pol)
    # RiskAversion pulls the P-bet's odds down to the $-bet's cell, so that path favors X
    assert r.distribution == pytest.approx({"X": 0.75, "Y": 0.25})


def test_cli_exit_codes(fixtures, tmp_path, capsys):
    assert main(["--batch", str(fixtures["allais"])]) == 0
    assert "allais-1" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text('{"pairs": [{"id": "p", "x": [[1.2, 5]], "y": [[0.5, 2]]}], "scheme": {"value_cutoffs": [1, 2]}}')
    assert main(["--batch", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "'p'" in err and "line 1" in err
    assert main(["--batch", str(tmp_path / "missing.json")]) == 1


def test_cli_scheme_and_policy_files(fixtures, tmp_path):
    scheme = tmp_path / "scheme.json"
    scheme.write_text(json.dumps({"value_cutoffs": [10_000, 2_000_000]}))
    out = tmp_path / "out.csv"
    code = main(["--batch", str(fixtures["allais"]), "--scheme", str(scheme),
                 "--policy", str(fixtures["policy_default"]), "--format", "csv", "-o", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len([r for r in rows if r["id"] == "allais-1"]) == 4


def test_cli_byte_identical_reruns(fixtures, tmp_path):
    outs = []
    for n in range(2):
        out = tmp_path / f"run{n}.json"
        assert main(["--batch", str(fixtures["crossing"]), "--format", "json", "--seed", "5", "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
