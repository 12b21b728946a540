"""Built-in example elections and a JSON file format for custom ones.

Each scenario bundles the focal voter's utilities with the public tallies
and a lexicographic priority order, independent of how many seats are up.
The five built-ins cover: a single leader with dispersed support (s1), the
same plus a trivially-liked candidate (s2), two runaway leaders (s3), and a
strongly disliked front-runner in two tally variants (s4, s4-design).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from .core import ElectionState, Lexicographic, Tiebreak, UtilityFunction
from .exact import format_exact


class ScenarioError(ValueError):
    """A scenario definition is malformed."""


class UnknownScenarioError(ScenarioError):
    """The referenced scenario does not exist."""


@dataclass(frozen=True)
class Scenario:
    """An election stimulus: candidates, utilities, tallies, tie priority.

    ``base_tallies`` are the approvals counted before the focal voter acts.
    ``lex_priority`` lists candidate indices best-first and drives the
    deterministic tie-break; ``notes`` is free text for data quirks.
    """

    id: str
    candidates: Tuple[str, ...]
    utilities: UtilityFunction
    base_tallies: Tuple[int, ...]
    lex_priority: Tuple[int, ...]
    notes: str = ""

    def __post_init__(self):
        if not self.id:
            raise ScenarioError("scenario id must be non-empty")
        m = len(self.candidates)
        if len(set(self.candidates)) != m:
            raise ScenarioError(f"{self.id}: candidate labels must be unique")
        if len(self.utilities) != m:
            raise ScenarioError(
                f"{self.id}: got {len(self.utilities)} utilities for {m} candidates"
            )
        if len(self.base_tallies) != m:
            raise ScenarioError(
                f"{self.id}: got {len(self.base_tallies)} tallies for {m} candidates"
            )
        if any(not isinstance(t, int) or t < 0 for t in self.base_tallies):
            raise ScenarioError(f"{self.id}: tallies must be non-negative integers")
        if sorted(self.lex_priority) != list(range(m)):
            raise ScenarioError(
                f"{self.id}: lex_priority must be a permutation of all candidates"
            )

    @property
    def num_candidates(self) -> int:
        return len(self.candidates)

    def state(self, seats: int, tiebreak: Optional[Tiebreak] = None) -> ElectionState:
        """The election state for ``seats`` winners.

        Uses this scenario's lexicographic priority unless ``tiebreak``
        overrides it.
        """
        if tiebreak is None:
            tiebreak = Lexicographic(self.lex_priority)
        return ElectionState(self.candidates, self.base_tallies, seats, tiebreak)


_LABELS = ("A", "B", "C", "D", "E")
_PRIORITY = (0, 1, 2, 3, 4)


def _make(id: str, utilities, tallies, notes: str) -> Scenario:
    return Scenario(
        id=id,
        candidates=_LABELS,
        utilities=UtilityFunction.from_values(utilities),
        base_tallies=tallies,
        lex_priority=_PRIORITY,
        notes=notes,
    )


_BUILTINS: Dict[str, Scenario] = {
    s.id: s
    for s in (
        _make(
            "s1",
            (0.05, 0.10, 0, 0, 0.25),
            (3, 3, 4, 3, 3),
            "Single leader C; the liked candidates trail by one vote.",
        ),
        _make(
            "s2",
            (0.05, 0.10, 0.01, 0, 0.25),
            (3, 3, 4, 3, 3),
            "Like s1 but the leader C carries a trivial utility of 0.01, "
            "so the truth* variant drops exactly C.",
        ),
        _make(
            "s3",
            (0.05, 0.10, 0, 0, 0.25),
            (1, 1, 4, 4, 1),
            "Two runaway leaders C and D; with two seats no single ballot "
            "changes the outcome.",
        ),
        _make(
            "s4",
            (0.05, 0.10, 0, -1, 0.25),
            (3, 3, 4, 4, 4),
            "Disliked candidate D leads jointly with C and E. "
            "See s4-design for the variant where E starts one vote lower.",
        ),
        _make(
            "s4-design",
            (0.05, 0.10, 0, -1, 0.25),
            (3, 3, 4, 4, 3),
            "Variant of s4 with E at three approvals instead of four; among "
            "the headline evaluations only the two-seat truthful value "
            "differs (0.15 here, 0.30 on s4).",
        ),
    )
}

BUILTIN_IDS: Tuple[str, ...] = tuple(_BUILTINS)


def builtin(scenario_id: str) -> Scenario:
    """Look up a built-in scenario by id."""
    try:
        return _BUILTINS[scenario_id]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {scenario_id!r}; built-ins are {', '.join(BUILTIN_IDS)}"
        ) from None


def builtin_scenarios() -> Tuple[Scenario, ...]:
    """All built-in scenarios, in their canonical order."""
    return tuple(_BUILTINS.values())


_REQUIRED_FIELDS = ("id", "candidates", "utilities", "tallies", "lex_priority")
_ALL_FIELDS = _REQUIRED_FIELDS + ("notes",)


def _decimal(value) -> Union[int, float]:
    # Emit the exact decimal form; utilities are stored in millionths, so
    # one always exists.
    return json.loads(format_exact(value))


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """Write a scenario as a JSON document; inverse of :func:`load_scenario`."""
    doc = {
        "id": scenario.id,
        "candidates": list(scenario.candidates),
        "utilities": [_decimal(v) for v in scenario.utilities.values()],
        "tallies": list(scenario.base_tallies),
        "lex_priority": list(scenario.lex_priority),
        "notes": scenario.notes,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _require(doc: dict, field: str, kind, path) -> object:
    value = doc[field]
    if not isinstance(value, kind):
        raise ScenarioError(f"{path}: field {field!r} must be a {kind.__name__}")
    return value


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read a scenario JSON document written by :func:`save_scenario`.

    Unknown fields are rejected, missing ones reported by name, and all
    length and type constraints of :class:`Scenario` enforced.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be a JSON object")
    unknown = sorted(set(doc) - set(_ALL_FIELDS))
    if unknown:
        raise ScenarioError(f"{path}: unknown field(s): {', '.join(unknown)}")
    missing = sorted(f for f in _REQUIRED_FIELDS if f not in doc)
    if missing:
        raise ScenarioError(f"{path}: missing field(s): {', '.join(missing)}")
    candidates = _require(doc, "candidates", list, path)
    utilities = _require(doc, "utilities", list, path)
    tallies = _require(doc, "tallies", list, path)
    priority = _require(doc, "lex_priority", list, path)
    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise ScenarioError(f"{path}: field 'notes' must be a string")
    if any(not isinstance(c, str) for c in candidates):
        raise ScenarioError(f"{path}: candidates must be strings")
    if any(isinstance(t, bool) or not isinstance(t, int) for t in tallies):
        raise ScenarioError(f"{path}: tallies must be integers")
    if any(isinstance(p, bool) or not isinstance(p, int) for p in priority):
        raise ScenarioError(f"{path}: lex_priority must be integers")
    try:
        utility_fn = UtilityFunction.from_values(utilities)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{path}: bad utilities: {exc}") from None
    try:
        return Scenario(
            id=str(_require(doc, "id", str, path)),
            candidates=tuple(candidates),
            utilities=utility_fn,
            base_tallies=tuple(tallies),
            lex_priority=tuple(priority),
            notes=notes,
        )
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}") from None
