"""Pipeline plans: predict every digest a run would produce, before any
payload exists, and check a store for cache hits.

Plan files are strict JSON: {"version": "...", "steps": [...]}, each step
one of
  {"kind": "value",        "digest": D}            insert an original value
  {"kind": "insert",       "digest": D}            insert any element
  {"kind": "function",     "digest": D, "outputs": N?}   apply (default 1 output)
  {"kind": "create",       "digest": D, "outputs": N}    apply, explicit arity
  {"kind": "map_entry",    "key": K,   "digest": D}      insert key-bound value
  {"kind": "remove_index", "index": I}
  {"kind": "remove_name",  "name": N}
Unknown fields anywhere are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import codec, workflow
from .core import UtElement
from .errors import AlgidError, PlanError
from .params import GroupParams, version
from .store import FileStore
from .workflow import CommutingSet, Composite, Single, TupleState

_STEP_FIELDS: dict[str, tuple[frozenset[str], frozenset[str]]] = {
    # kind: (required fields, optional fields)
    "value": (frozenset({"digest"}), frozenset()),
    "insert": (frozenset({"digest"}), frozenset()),
    "function": (frozenset({"digest"}), frozenset({"outputs"})),
    "create": (frozenset({"digest", "outputs"}), frozenset()),
    "map_entry": (frozenset({"key", "digest"}), frozenset()),
    "remove_index": (frozenset({"index"}), frozenset()),
    "remove_name": (frozenset({"name"}), frozenset()),
}


@dataclass(frozen=True)
class PlanStep:
    kind: str
    digest: str | None = None
    outputs: int | None = None
    index: int | None = None
    name: str | None = None
    key: str | None = None


@dataclass(frozen=True)
class Plan:
    params: GroupParams
    steps: tuple[PlanStep, ...]


def load_plan(path: str | Path) -> Plan:
    try:
        data = json.loads(Path(path).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PlanError(f"cannot read plan: {exc}") from exc
    return parse_plan(data)


def parse_plan(data: Any) -> Plan:
    if not isinstance(data, Mapping):
        raise PlanError("plan must be a JSON object")
    extra = set(data) - {"version", "steps"}
    if extra:
        raise PlanError(f"unknown plan fields {sorted(extra)}")
    if "version" not in data or "steps" not in data:
        raise PlanError("plan needs 'version' and 'steps'")
    try:
        params = version(data["version"])
    except (ValueError, TypeError) as exc:
        raise PlanError(str(exc)) from exc
    if not isinstance(data["steps"], Sequence) or isinstance(data["steps"], str):
        raise PlanError("'steps' must be an array")
    return Plan(params, tuple(_parse_step(i, s) for i, s in enumerate(data["steps"], start=1)))


def _parse_step(position: int, raw: Any) -> PlanStep:
    if not isinstance(raw, Mapping):
        raise PlanError(f"step {position}: not an object")
    kind = raw.get("kind")
    if kind not in _STEP_FIELDS:
        raise PlanError(f"step {position}: unknown kind {kind!r}")
    required, optional = _STEP_FIELDS[kind]
    fields = set(raw) - {"kind"}
    if not required <= fields:
        raise PlanError(f"step {position}: {kind} needs fields {sorted(required)}")
    if fields - required - optional:
        raise PlanError(f"step {position}: unknown fields {sorted(fields - required - optional)}")
    step = PlanStep(
        kind=kind,
        digest=raw.get("digest"),
        outputs=raw.get("outputs"),
        index=raw.get("index"),
        name=raw.get("name"),
        key=raw.get("key"),
    )
    for attr, want in (("digest", str), ("name", str), ("key", str), ("outputs", int), ("index", int)):
        got = getattr(step, attr)
        if got is not None and not isinstance(got, want):
            raise PlanError(f"step {position}: {attr} must be {want.__name__}")
    if step.outputs is not None and step.outputs < 1:
        raise PlanError(f"step {position}: outputs must be >= 1")
    if step.index is not None and step.index < 1:
        raise PlanError(f"step {position}: index must be >= 1")
    return step


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepReport:
    position: int
    kind: str
    detail: str
    running_digest: str
    hit: bool | None


@dataclass(frozen=True)
class PlanReport:
    version: str
    steps: tuple[StepReport, ...]
    final_digest: str
    final_hit: bool | None
    slots: tuple[dict[str, Any], ...]
    history: tuple[dict[str, Any], ...]
    three_way_ok: bool

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "steps": [
                {
                    "position": s.position,
                    "kind": s.kind,
                    "detail": s.detail,
                    "running": s.running_digest,
                    "hit": s.hit,
                }
                for s in self.steps
            ],
            "final": self.final_digest,
            "final_hit": self.final_hit,
            "slots": list(self.slots),
            "history": list(self.history),
            "three_way_ok": self.three_way_ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"plan version {self.version}"]
        for s in self.steps:
            mark = "" if s.hit is None else ("  hit" if s.hit else "  miss")
            lines.append(f"  {s.position:3d} {s.kind:<12s} {s.detail:<24s} {s.running_digest}{mark}")
        mark = "" if self.final_hit is None else ("  hit" if self.final_hit else "  miss")
        lines.append(f"final {self.final_digest}{mark}")
        lines.append("slots:")
        for slot in self.slots:
            flags = " placeholder" if slot["placeholder"] else ""
            name = f" name={slot['name']}" if slot["name"] else ""
            lines.append(f"  {slot['digest']}{name}{flags}")
        lines.append("history:")
        for entry in self.history:
            lines.append(f"  {entry['type']}: {', '.join(entry['digests'])}")
        lines.append(f"three-way check: {'ok' if self.three_way_ok else 'MISMATCH'}")
        return "\n".join(lines) + "\n"


def evaluate_plan(plan: Plan, store: FileStore | None = None) -> PlanReport:
    """Fold the plan through the workflow algebra; no payloads touched."""
    params = plan.params
    state = TupleState.empty(params, allow_removals=True)
    process: list[UtElement] = []
    reports: list[StepReport] = []
    for pos, step in enumerate(plan.steps, start=1):
        state, applied, detail = _apply_step(state, step, params, pos)
        process.extend(applied)
        running = codec.encode(state.product)
        reports.append(StepReport(pos, step.kind, detail, running, _probe(store, running)))
    final = codec.encode(state.product)
    return PlanReport(
        version=params.name,
        steps=tuple(reports),
        final_digest=final,
        final_hit=_probe(store, final),
        slots=tuple(
            {"digest": codec.encode(s.element), "name": s.name, "placeholder": s.placeholder}
            for s in state.slots
        ),
        history=tuple(_render_entry(e) for e in state.history),
        three_way_ok=workflow.verify_three_way(state, process),
    )


def _apply_step(
    state: TupleState, step: PlanStep, params: GroupParams, pos: int
) -> tuple[TupleState, list[UtElement], str]:
    try:
        if step.kind in ("value", "insert"):
            element = codec.decode(step.digest, params)
            if step.kind == "value" and not element.is_commuting():
                raise PlanError(f"step {pos}: value digest is not commuting (use 'insert')")
            return state.insert(element), [element], _shorten(step.digest)
        if step.kind in ("function", "create"):
            element = codec.decode(step.digest, params)
            outputs = step.outputs if step.outputs is not None else 1
            return state.create(element, outputs), [element], f"{_shorten(step.digest)} k={outputs}"
        if step.kind == "map_entry":
            entry = workflow.map_entry(step.key, codec.decode(step.digest, params), params)
            return state.insert(entry, name=step.key), [entry], f"{step.key}={_shorten(step.digest)}"
        if step.kind == "remove_index":
            delta = codec.removal_element(params, index=step.index)
            return state.remove_by_index(step.index), [delta], f"index {step.index}"
        delta = codec.removal_element(params, name=step.name)
        return state.remove_by_name(step.name), [delta], f"name {step.name}"
    except AlgidError:
        raise
    except Exception as exc:
        raise PlanError(f"step {pos} ({step.kind}): {exc}") from exc


def _probe(store: FileStore | None, digest: str) -> bool | None:
    if store is None:
        return None
    return store.has(store.resolve(digest))


def _render_entry(entry: Single | CommutingSet | Composite) -> dict[str, Any]:
    if isinstance(entry, Single):
        return {"type": "single", "digests": [codec.encode(entry.element)]}
    if isinstance(entry, CommutingSet):
        return {"type": "set", "digests": [codec.encode(e) for e in entry.members]}
    return {
        "type": "composite",
        "digests": [codec.encode(e) for e in entry.steps],
        "auditable": entry.auditable,
    }


def _shorten(digest: str) -> str:
    return digest if len(digest) <= 12 else digest[:6] + ".." + digest[-4:]
