"""Batch files in, per-pair reports out (table, CSV or JSON)."""

from __future__ import annotations

import csv
import io
import json
import random
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from .compensatory import (
    expected_utility,
    expected_value,
    inverse_s_weighting,
    ordering,
    power_utility,
    prospect_value,
)
from .core import Branch, DomainError, Gamble, Outcome, Pair, SubstitutionScheme
from .reduction import (
    DEFAULT_POLICY,
    ReductionPolicy,
    ReductionTree,
    choice_distribution,
    deliberation_time,
    reduction_tree,
    winner,
)
from .substitution import build_matrices

PT_UTILITY = power_utility(0.88)
PT_WEIGHTING = inverse_s_weighting(0.61)


class BatchError(ValueError):
    def __init__(self, errors: list[tuple[Optional[int], str]]):
        self.errors = errors
        super().__init__("\n".join(self.lines()))

    def lines(self) -> list[str]:
        return [f"line {ln}: {msg}" if ln else msg for ln, msg in self.errors]


@dataclass
class BatchFile:
    pairs: list[Pair]
    scheme: Optional[SubstitutionScheme] = None


def _line_of(text: str, pair_id: str) -> Optional[int]:
    m = re.search(r'"id"\s*:\s*' + re.escape(json.dumps(pair_id)), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _gamble(rows, intervals, where: str) -> Gamble:
    if not isinstance(rows, list) or not rows:
        raise DomainError(f"{where}: needs a nonempty list of [p, v] branches")
    if intervals is None:
        intervals = [None] * len(rows)
    if len(intervals) != len(rows):
        raise DomainError(f"{where}: 'ambiguous' has {len(intervals)} entries for {len(rows)} branches")
    branches = []
    for row, iv in zip(rows, intervals):
        if not (isinstance(row, list) and len(row) == 2 and all(isinstance(n, (int, float)) for n in row)):
            raise DomainError(f"{where}: branch {row!r} is not [p, v]")
        if iv is not None and not (isinstance(iv, list) and len(iv) == 2):
            raise DomainError(f"{where}: ambiguity interval {iv!r} is not [lo, hi]")
        branches.append(Branch(float(row[0]), float(row[1]), tuple(float(n) for n in iv) if iv else None))
    return Gamble(tuple(branches))


def parse_batch_text(text: str) -> BatchFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BatchError([(exc.lineno, f"malformed JSON: {exc.msg}")]) from None
    if isinstance(data, list):
        data = {"pairs": data}
    if not isinstance(data, dict) or not isinstance(data.get("pairs", []), list):
        raise BatchError([(1, "batch must be an object with a 'pairs' list")])

    errors: list[tuple[Optional[int], str]] = []
    scheme = None
    if data.get("scheme") is not None:
        try:
            scheme = SubstitutionScheme.from_dict(data["scheme"])
        except (DomainError, TypeError, ValueError) as exc:
            errors.append((None, f"scheme: {exc}"))

    pairs, seen = [], set()
    for n, raw in enumerate(data.get("pairs", [])):
        pid = raw.get("id") if isinstance(raw, dict) else None
        if not isinstance(pid, str) or not pid:
            errors.append((None, f"pair #{n}: missing string 'id'"))
            continue
        line = _line_of(text, pid)
        if pid in seen:
            errors.append((line, f"pair {pid!r}: duplicate id"))
            continue
        seen.add(pid)
        amb = raw.get("ambiguous") or {}
        labels = raw.get("labels") or {}
        try:
            x = _gamble(raw.get("x"), amb.get("x"), f"pair {pid!r} option x")
            y = _gamble(raw.get("y"), amb.get("y"), f"pair {pid!r} option y")
        except DomainError as exc:
            msg = str(exc)
            errors.append((line, msg if msg.startswith("pair") else f"pair {pid!r}: {msg}"))
            continue
        pairs.append(Pair(x, y, pid, str(labels.get("x", "X")), str(labels.get("y", "Y"))))
    if errors:
        raise BatchError(errors)
    return BatchFile(pairs, scheme)


def parse_batch(path: Union[str, Path]) -> BatchFile:
    return parse_batch_text(Path(path).read_text(encoding="utf-8"))


@dataclass
class PairReport:
    id: str
    labels: dict
    multi_branch: bool
    structure: Optional[str]
    matrix: dict
    tree: dict
    paths: list
    distribution: dict
    winner: Optional[str]
    sampled_trace: dict
    deliberation_time: float
    baselines: dict
    orderings: dict
    agreement: dict = field(default_factory=dict)


def _first_structure(tree: ReductionTree) -> Optional[str]:
    node = tree.root
    while node is not None:
        if node.structure is not None:
            return str(node.structure)
        node = node.children[0] if node.children else None
    return None


def report_pair(
    pair: Pair,
    scheme: SubstitutionScheme,
    policy: ReductionPolicy = DEFAULT_POLICY,
    seed: int = 0,
    max_tree_depth: int = 4,
) -> PairReport:
    tree = reduction_tree(pair, scheme, policy, max_tree_depth)
    dist = choice_distribution(pair, scheme, policy)
    top = winner(dist)
    trace = tree.sample(random.Random(seed))
    g_p, g_v = build_matrices(pair, scheme)

    scores = {
        "ev": (expected_value(pair.x), expected_value(pair.y)),
        "eu": (expected_utility(pair.x, PT_UTILITY), expected_utility(pair.y, PT_UTILITY)),
        "pt": (
            prospect_value(pair.x, PT_WEIGHTING, PT_UTILITY),
            prospect_value(pair.y, PT_WEIGHTING, PT_UTILITY),
        ),
    }
    orderings = {k: ordering(*v) for k, v in scores.items()}
    agreement = {
        k: (None if top is None or top is Outcome.INDIFFERENT else orderings[k] == top.value)
        for k in scores
    }
    return PairReport(
        id=pair.id,
        labels={"x": pair.x_name, "y": pair.y_name},
        multi_branch=not (pair.x.is_single_branch and pair.y.is_single_branch),
        structure=_first_structure(tree),
        matrix=g_p.product(g_v).symbols(),
        tree=tree.to_dict(),
        paths=[
            {
                "steps": [s.kind.value for s in t.steps],
                "labels": [s.label.value if s.label else None for s in t.steps],
                "structures": [str(s.result) if s.result else None for s in t.steps],
                "outcome": t.outcome.value,
                "weight": w,
            }
            for t, w in tree.paths()
        ],
        distribution={o.value: w for o, w in dist.items()},
        winner=pair.name(top) if top is not None else None,
        sampled_trace=trace.to_dict(),
        deliberation_time=deliberation_time(trace, policy.time_params, 1),
        baselines={k: {"X": v[0], "Y": v[1]} for k, v in scores.items()},
        orderings=orderings,
        agreement=agreement,
    )


def run_batch(
    batch: BatchFile,
    scheme: Optional[SubstitutionScheme] = None,
    policy: ReductionPolicy = DEFAULT_POLICY,
    seed: int = 0,
    max_tree_depth: int = 4,
) -> list[PairReport]:
    scheme = scheme or batch.scheme
    if scheme is None:
        raise DomainError("no substitution scheme: pass one or embed 'scheme' in the batch file")
    # each pair gets its own stream so report order and content never depend on scheduling
    return [
        report_pair(pair, scheme, policy, seed * 1_000_003 + i, max_tree_depth)
        for i, pair in enumerate(batch.pairs)
    ]


CSV_FIELDS = ["id", "path", "steps", "labels", "outcome", "outcome_name", "weight", "structure", "winner"]


def _render_csv(reports: list[PairReport]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_FIELDS)
    for r in reports:
        names = {"X": r.labels["x"], "Y": r.labels["y"]}
        for i, p in enumerate(r.paths):
            out.writerow([
                r.id,
                i,
                ">".join(p["steps"]),
                ">".join(lab for lab in p["labels"] if lab),
                p["outcome"],
                names.get(p["outcome"], p["outcome"]),
                repr(p["weight"]),
                r.structure or "",
                r.winner or "",
            ])
    return buf.getvalue()


def _tree_lines(node: dict, prefix: str = "", last: bool = True, root: bool = True) -> list[str]:
    head = node["kind"]
    if node["label"]:
        head += f" [{node['label']}]"
    if node["structure"]:
        head += f" {node['structure']}"
    if node["note"]:
        head += f" ({node['note']})"
    if not node["children"]:
        head += f" -> {node['outcome']}"
    if not root:
        head += f"  w={node['weight']:.3g}"
    line = head if root else prefix + ("`-- " if last else "|-- ") + head
    lines = [line]
    child_prefix = "" if root else prefix + ("    " if last else "|   ")
    kids = node["children"]
    for k, child in enumerate(kids):
        lines += _tree_lines(child, child_prefix, k == len(kids) - 1, False)
    return lines


def _fmt_dist(r: PairReport) -> str:
    names = {"X": r.labels["x"], "Y": r.labels["y"]}
    return ", ".join(f"{names.get(o, o)}={w:.3g}" for o, w in r.distribution.items())


def _render_table(reports: list[PairReport]) -> str:
    out = []
    for r in reports:
        names = {"X": r.labels["x"], "Y": r.labels["y"]}
        ev = r.baselines["ev"]
        verdict = r.winner or "no majority"
        if not r.tree["children"]:
            out.append(
                f"{r.id}: {r.structure} -> {verdict}  "
                f"(EV {names['X']}={ev['X']:.6g} {names['Y']}={ev['Y']:.6g})"
            )
            continue
        out.append(f"{r.id}: {r.structure or 'multi-branch'} -> {verdict}")
        out.extend("  " + line for line in _tree_lines(r.tree))
        out.append(f"  choice: {_fmt_dist(r)}")
        out.append(
            "  baselines: "
            + "  ".join(
                f"{k.upper()} {names['X']}={v['X']:.6g} {names['Y']}={v['Y']:.6g} ({names.get(r.orderings[k], r.orderings[k])})"
                for k, v in r.baselines.items()
            )
        )
        out.append(f"  deliberation time (sampled path): {r.deliberation_time:g}")
    return "\n".join(out) + ("\n" if out else "")


def render(reports: list[PairReport], fmt: str = "table") -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in reports], indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _render_csv(reports)
    if fmt == "table":
        return _render_table(reports)
    raise ValueError(f"unknown format {fmt!r}")


def reports_from_json(text: str) -> list[PairReport]:
    return [PairReport(**d) for d in json.loads(text)]
