"""Line-oriented scenario files driving the volume simulator.

Grammar (one step per line, ``#`` starts a comment line)::

    volume <id> <policy>
    create <vol> <exclusive|truncate> <name>
    lookup <vol> <name>
    transfer <src> <dst-policy> <exclusive|truncate> [as <id>]
    expect <OutcomeKind>             # outcome of the last create/lookup
    expect entries <vol> <n>
    expect stored <vol> <name>
    expect transfer <EntryKind> <n>  # count in the last transfer report

``<name>`` is the rest of the line: a ``U+XXXX`` escape list or literal text.
Lookups report ``Found`` or ``NotFound``.  Content ids are ``L<line>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .policy import policy_by_name
from .text import decode_name, to_escapes
from .ucd import NormalizationTables
from .volume import TRANSFER_KINDS, Mode, SimVolume, TransferReport, transfer

OUTCOME_KINDS = ("Created", "Overwrote", "AlreadyExistsError", "InvalidName", "Found", "NotFound")


class ScenarioError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Step:
    lineno: int
    verb: str
    args: tuple
    raw: str


@dataclass
class ScenarioResult:
    transcript: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    reports: list[tuple[str, TransferReport]] = field(default_factory=list)
    volumes: dict[str, SimVolume] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def _rest(line: str, count: int) -> str:
    """Text after the first *count* whitespace-separated tokens."""
    rest = line.lstrip()
    for _ in range(count):
        parts = rest.split(None, 1)
        rest = parts[1] if len(parts) > 1 else ""
        rest = rest.lstrip()
    return rest


def _name(lineno: int, raw: str) -> str:
    if not raw:
        raise ScenarioError(lineno, "missing file name")
    try:
        return decode_name(raw)
    except ValueError as exc:
        raise ScenarioError(lineno, str(exc)) from None


def _int(lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ScenarioError(lineno, f"expected an integer, got {token!r}") from None


def parse_scenario(lines: Iterable[str]) -> list[Step]:
    steps: list[Step] = []
    volumes: set[str] = set()

    def need_volume(lineno: int, vol: str) -> None:
        if vol not in volumes:
            raise ScenarioError(lineno, f"unknown volume id {vol!r}")

    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        verb = tokens[0]
        try:
            if verb == "volume":
                if len(tokens) != 3:
                    raise ScenarioError(lineno, "usage: volume <id> <policy>")
                volumes.add(tokens[1])
                args = (tokens[1], policy_by_name(tokens[2]))
            elif verb == "create":
                if len(tokens) < 4:
                    raise ScenarioError(lineno, "usage: create <vol> <mode> <name>")
                need_volume(lineno, tokens[1])
                args = (tokens[1], Mode.parse(tokens[2]), _name(lineno, _rest(line, 3)))
            elif verb == "lookup":
                if len(tokens) < 3:
                    raise ScenarioError(lineno, "usage: lookup <vol> <name>")
                need_volume(lineno, tokens[1])
                args = (tokens[1], _name(lineno, _rest(line, 2)))
            elif verb == "transfer":
                if len(tokens) not in (4, 6) or (len(tokens) == 6 and tokens[4] != "as"):
                    raise ScenarioError(lineno, "usage: transfer <src> <dst-policy> <mode> [as <id>]")
                need_volume(lineno, tokens[1])
                policy = policy_by_name(tokens[2])
                new_id = tokens[5] if len(tokens) == 6 else f"{tokens[1]}@{policy.label}"
                volumes.add(new_id)
                args = (tokens[1], policy, Mode.parse(tokens[3]), new_id)
            elif verb == "expect":
                args = _parse_expect(lineno, line, tokens, need_volume)
            else:
                raise ScenarioError(lineno, f"unknown step {verb!r}")
        except ScenarioError:
            raise
        except ValueError as exc:
            raise ScenarioError(lineno, str(exc)) from None
        steps.append(Step(lineno, verb, args, line.strip()))
    return steps


def _parse_expect(lineno, line, tokens, need_volume) -> tuple:
    if len(tokens) == 2 and tokens[1] in OUTCOME_KINDS:
        return ("outcome", tokens[1])
    what = tokens[1] if len(tokens) > 1 else ""
    if what == "entries" and len(tokens) == 4:
        need_volume(lineno, tokens[2])
        return ("entries", tokens[2], _int(lineno, tokens[3]))
    if what == "stored" and len(tokens) >= 4:
        need_volume(lineno, tokens[2])
        return ("stored", tokens[2], _name(lineno, _rest(line, 3)))
    if what == "transfer" and len(tokens) == 4 and tokens[2] in TRANSFER_KINDS:
        return ("transfer", tokens[2], _int(lineno, tokens[3]))
    raise ScenarioError(lineno, f"unrecognised expectation: {line.strip()!r}")


def run_scenario(steps: Iterable[Step], tables: NormalizationTables) -> ScenarioResult:
    result = ScenarioResult()
    volumes = result.volumes
    last_outcome: str | None = None
    last_report: TransferReport | None = None

    for step in steps:
        prefix = f"{step.lineno:>4}: "
        if step.verb == "volume":
            vol, policy = step.args
            volumes[vol] = SimVolume(policy, tables)
            result.transcript.append(f"{prefix}volume {vol} is {policy.label}")
        elif step.verb == "create":
            vol, mode, name = step.args
            outcome = volumes[vol].create(name, f"L{step.lineno}", mode)
            last_outcome = outcome.kind
            stored = getattr(outcome, "stored", None)
            suffix = f" stored as {to_escapes(stored)}" if stored is not None else ""
            if outcome.kind == "InvalidName":
                suffix = " (" + ", ".join(outcome.report.rule_ids) + ")"
            result.transcript.append(
                f"{prefix}create {vol} {mode.value} {to_escapes(name)} -> {outcome.kind}{suffix}"
            )
        elif step.verb == "lookup":
            vol, name = step.args
            diagnostics: list[str] = []
            content = volumes[vol].lookup(name, diagnostics)
            last_outcome = "NotFound" if content is None else "Found"
            detail = f" ({content})" if content is not None else ""
            detail += "".join(f" [{d}]" for d in diagnostics)
            result.transcript.append(f"{prefix}lookup {vol} {to_escapes(name)} -> {last_outcome}{detail}")
        elif step.verb == "transfer":
            src, policy, mode, new_id = step.args
            volumes[new_id], last_report = transfer(volumes[src], policy, mode)
            result.reports.append((new_id, last_report))
            counts = ", ".join(f"{k}={v}" for k, v in last_report.summary.items())
            result.transcript.append(f"{prefix}transfer {src} -> {new_id} ({policy.label}, {mode.value}): {counts}")
        else:
            passed, detail = _check(step.args, volumes, last_outcome, last_report)
            status = "ok" if passed else "FAILED"
            result.transcript.append(f"{prefix}{step.raw} -> {status}{detail}")
            if not passed:
                result.failures.append(f"line {step.lineno}: {step.raw}{detail}")
    return result


def _check(args, volumes, last_outcome, last_report) -> tuple[bool, str]:
    what = args[0]
    if what == "outcome":
        return last_outcome == args[1], f" (actual: {last_outcome})"
    if what == "entries":
        actual = len(volumes[args[1]])
        return actual == args[2], f" (actual: {actual})"
    if what == "stored":
        names = volumes[args[1]].names()
        return args[2] in names, f" (stored: {'; '.join(to_escapes(n) for n in names) or 'none'})"
    if last_report is None:
        return False, " (no transfer has run)"
    actual = last_report.count(args[1])
    return actual == args[2], f" (actual: {actual})"
