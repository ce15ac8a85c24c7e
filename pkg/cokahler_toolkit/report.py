"""Check reports: verdicts, exit statuses and their text/JSON renderings"""

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
INPUT_ERROR = "input-error"

EXIT_STATUS = {PASS: 0, FAIL: 1, INPUT_ERROR: 2, INCONCLUSIVE: 3}

# Worst-case order used when verdicts are combined
_SEVERITY = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2, INPUT_ERROR: 3}


def worst_verdict(verdicts):
    """Combine verdicts: pass < inconclusive < fail < input-error"""
    worst = PASS
    for verdict in verdicts:
        if _SEVERITY[verdict] > _SEVERITY[worst]:
            worst = verdict
    return worst


def status_of(ok, inconclusive=False):
    if inconclusive:
        return INCONCLUSIVE
    return PASS if ok else FAIL


def jsonable(value):
    """Turn witnesses (Elements, QQ scalars, tuples) into plain JSON values"""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        if value.denominator == 1:
            return int(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass
class CheckEntry:
    name: str
    status: str
    witness: object = None
    detail: str = ""

    def to_dict(self):
        entry = {"name": self.name, "status": self.status}
        if self.witness is not None:
            entry["witness"] = jsonable(self.witness)
        if self.detail:
            entry["detail"] = self.detail
        return entry


@dataclass
class Report:
    """Outcome of one command: per-check entries plus optional payload

    The verdict is derived from the entries, so text and JSON renderings always
    agree. Timing enters the JSON rendering only on request (include_timing),
    so default structured output is byte-identical across runs.
    """

    command: str
    checks: list = field(default_factory=list)
    betti: list = None
    model: dict = None
    data: dict = field(default_factory=dict)
    elapsed: float = None
    forced_verdict: str = None

    def add(self, name, status, witness=None, detail=""):
        entry = CheckEntry(name, status, witness, detail)
        self.checks.append(entry)
        return entry

    def check(self, name, ok, witness=None, detail="", inconclusive=False):
        """Record a boolean check; witness is kept only when it is not a pass"""
        status = status_of(ok, inconclusive)
        return self.add(name, status, None if status == PASS else witness, detail)

    def extend(self, other, prefix=None):
        """Append the entries of another report, optionally prefixing their names"""
        for entry in other.checks:
            name = f"{prefix}: {entry.name}" if prefix else entry.name
            self.checks.append(CheckEntry(name, entry.status, entry.witness, entry.detail))
        if other.forced_verdict:
            self.forced_verdict = worst_verdict([self.forced_verdict or PASS, other.forced_verdict])

    def first_failure(self):
        for entry in self.checks:
            if entry.status != PASS:
                return entry
        return None

    @property
    def verdict(self):
        verdicts = [entry.status for entry in self.checks]
        if self.forced_verdict:
            verdicts.append(self.forced_verdict)
        return worst_verdict(verdicts)

    @property
    def passed(self):
        return self.verdict == PASS

    @property
    def exit_status(self):
        return EXIT_STATUS[self.verdict]

    def to_dict(self, include_timing=False):
        result = {"command": self.command, "verdict": self.verdict,
                  "checks": [entry.to_dict() for entry in self.checks]}
        if self.betti is not None:
            result["betti"] = list(self.betti)
        for key, value in self.data.items():
            result[key] = jsonable(value)
        if self.model is not None:
            result["model"] = self.model
        if include_timing and self.elapsed is not None:
            result["elapsed_seconds"] = round(self.elapsed, 6)
        return result

    def to_json(self, include_timing=False):
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"

    def render_text(self):
        lines = [f"{self.command}: {self.verdict.upper()}"]
        for entry in self.checks:
            line = f"  [{entry.status}] {entry.name}"
            if entry.detail:
                line += f" - {entry.detail}"
            lines.append(line)
            if entry.witness is not None:
                lines.append(f"      witness: {_render_witness(entry.witness)}")
        if self.betti is not None:
            lines.append(f"  Betti numbers: ({', '.join(str(b) for b in self.betti)})")
        for key, value in self.data.items():
            lines.append(f"  {key}: {_render_witness(value)}")
        if self.elapsed is not None:
            lines.append(f"  ({self.elapsed:.3f}s)")
        return "\n".join(lines) + "\n"


def input_error_report(command, message):
    report = Report(command, forced_verdict=INPUT_ERROR)
    report.add("input", INPUT_ERROR, detail=message)
    return report


def _render_witness(value):
    value = jsonable(value)
    if isinstance(value, list):
        return "(" + ", ".join(_render_witness(v) for v in value) + ")"
    if isinstance(value, dict):
        return ", ".join(f"{k} = {_render_witness(v)}" for k, v in value.items())
    return str(value)
