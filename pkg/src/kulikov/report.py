"""Run reports and fixture comparison for the command line.

A fixture file holds a list of checks.  Each check names a path into the
results object, the expected JSON value, and optionally a ``when`` block
restricting it to runs with matching arguments.
"""

from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterator, Sequence

from .errors import ConfigurationError


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def data_path(name: str) -> Path:
    """Path of a file bundled in the package's data directory."""
    return Path(str(resources.files("kulikov") / "data" / name))


def resolve_data_file(path: str | Path) -> Path:
    """Use ``path`` if it exists, else look it up among the bundled files."""
    p = Path(path)
    if p.exists():
        return p
    for candidate in (data_path(str(path)), data_path("fixtures/" + str(path))):
        if candidate.exists():
            return candidate
    raise ConfigurationError(f"no such file: {path}")


@dataclass(frozen=True)
class Check:
    name: str
    path: tuple[Any, ...]
    expected: Any
    when: dict[str, Any] = field(default_factory=dict)

    def applies(self, args: dict[str, Any]) -> bool:
        return all(args.get(k) == v for k, v in self.when.items())


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    expected: Any
    actual: Any

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "expected": self.expected, "actual": self.actual}


_MISSING = "<missing>"


def lookup(obj: Any, path: Sequence[Any]) -> Any:
    for key in path:
        if isinstance(obj, dict) and key in obj:
            obj = obj[key]
        elif isinstance(obj, list) and isinstance(key, int) and -len(obj) <= key < len(obj):
            obj = obj[key]
        else:
            return _MISSING
    return obj


def load_checks(path: str | Path) -> list[Check]:
    with open(resolve_data_file(path)) as f:
        data = json.load(f)
    try:
        return [
            Check(c["name"], tuple(c["path"]), c["expected"], dict(c.get("when", {})))
            for c in data["checks"]
        ]
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed fixture file {path}: {exc}") from exc


def compare(
    results: dict[str, Any], checks: Sequence[Check], args: dict[str, Any], fail_fast: bool = False
) -> list[FixtureResult]:
    out = []
    for c in checks:
        if not c.applies(args):
            continue
        actual = lookup(results, c.path)
        # compare through JSON so tuples and lists agree
        passed = canonical_json(actual) == canonical_json(c.expected)
        out.append(FixtureResult(c.name, passed, c.expected, actual))
        if fail_fast and not passed:
            break
    return out


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    fixtures: list[FixtureResult] = field(default_factory=list)
    timing_ms: int = 0

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.fixtures)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def results_json(self) -> str:
        return canonical_json(self.results)

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "fixtures": [f.to_json() for f in self.fixtures],
            "ok": self.ok,
            "timing_ms": self.timing_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for k, v in sorted(self.inputs.items()):
            lines.append(f"input {k}: {v}")
        lines.append("results:")
        for k, v in sorted(self.results.items()):
            lines.append(f"  {k}: {canonical_json(v)}")
        for f in self.fixtures:
            mark = "PASS" if f.passed else "FAIL"
            line = f"[{mark}] {f.name}"
            if not f.passed:
                line += f" expected={canonical_json(f.expected)} actual={canonical_json(f.actual)}"
            lines.append(line)
        lines.append(f"fixtures: {sum(f.passed for f in self.fixtures)}/{len(self.fixtures)} passed")
        lines.append(f"time: {self.timing_ms} ms")
        return "\n".join(lines)


@contextmanager
def stopwatch() -> Iterator[list[int]]:
    box = [0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int((time.perf_counter() - start) * 1000)
