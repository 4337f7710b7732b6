"""Verification reports and the on-disk oracle cache."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    witness: object = None
    detail: str = ""

    def to_json(self):
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerifyReport:
    case: dict
    checks: list = field(default_factory=list)
    series: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    timing: float = 0.0
    conjecture: bool = False

    def add(self, name, ok, witness=None, detail=""):
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        self.checks.append(Check(name, status, witness, detail))
        return status == PASS

    def skip(self, name, detail=""):
        self.checks.append(Check(name, SKIPPED, None, detail))

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def status(self) -> str:
        return PASS if all(c.status != FAIL for c in self.checks) else FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def to_json(self):
        return {"case": self.case, "status": self.status,
                "kind": "conjecture" if self.conjecture else "theorem",
                "checks": [c.to_json() for c in self.checks],
                "series": self.series, "counts": self.counts,
                "notes": self.notes, "timing": round(self.timing, 3)}

    def case_label(self) -> str:
        c = self.case
        group = c.get("group", "")
        if group == "identities":
            return f"q={c.get('q')} identities seed={c.get('seed')}"
        if c.get("alpha") and group == "parabolic":
            group += "(" + ",".join(map(str, c["alpha"])) + ")"
        return f"q={c.get('q')} m={c.get('m')} n={c.get('n')} {group}".strip()

    def to_text(self) -> str:
        lines = [f"{self.case_label()}: {self.status.upper()} ({self.timing:.2f}s)"]
        for c in self.checks:
            line = f"  [{c.status:7}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.status == FAIL and c.witness is not None:
                lines.append(f"            witness: {json.dumps(c.witness)}")
        for k, v in self.series.items():
            lines.append(f"  series {k}: {v}")
        if self.counts:
            lines.append("  counts: " + ", ".join(f"{k}={v}" for k, v in self.counts.items()))
        for k, v in self.notes.items():
            lines.append(f"  note {k}: {v}")
        return "\n".join(lines)

    def csv_rows(self):
        for c in self.checks:
            yield [self.case_label(), c.name, c.status, c.detail]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["case", "check", "status", "detail"])
    for r in reports:
        for row in r.csv_rows():
            w.writerow(row)
    return buf.getvalue()


def reports_to_latex(reports) -> str:
    lines = [r"\begin{tabular}{lll}", r"case & status & basis size \\ \hline"]
    for r in reports:
        lines.append(f"{r.case_label()} & {r.status} & {r.counts.get('basis', '')} \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


def render(reports, fmt: str) -> str:
    reports = list(reports)
    if fmt == "json":
        data = [r.to_json() for r in reports]
        return json.dumps(data[0] if len(data) == 1 else data, indent=2)
    if fmt == "csv":
        return reports_to_csv(reports)
    if fmt == "latex":
        return reports_to_latex(reports)
    return "\n".join(r.to_text() for r in reports)


def atomic_write_json(path: Path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class OracleCache:
    """Per-degree oracle results as JSON files keyed by
    (p, e, m, n, group kind, alpha, degree)."""

    def __init__(self, root):
        self.root = Path(root)

    def path(self, spec, m, d) -> Path:
        F = spec.field
        alpha = "-".join(map(str, spec.alpha)) or "none"
        name = f"p{F.p}_e{F.e}_m{m}_n{spec.n}_{spec.kind}_{alpha}_d{d}.json"
        return self.root / name

    def get(self, spec, m, d):
        from .groups import DegreeInvariants

        p = self.path(spec, m, d)
        if not p.exists():
            return None
        try:
            with open(p) as fh:
                return DegreeInvariants.from_json(json.load(fh))
        except (OSError, ValueError, KeyError):
            return None

    def put(self, spec, m, d, value):
        atomic_write_json(self.path(spec, m, d), value.to_json())
