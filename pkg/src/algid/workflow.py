"""Identification algebra for multi-step, multi-valued data processing.

A TupleState is an immutable snapshot of a pipeline: ordered slots (one
per live value), the running product identifying the whole expression,
and a history of the steps that built it.  Three views stay equal at all
times: the product of slot elements, the product of history entries, and
the product of the raw process steps (see verify_three_way).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from . import codec
from .core import ElementClass, UtElement, identity, product
from .errors import (
    BadPosition,
    NotAFunction,
    RemovalsDisabled,
    ThetaExhausted,
    VersionMismatch,
)
from .params import GroupParams

MAX_CREATE_OUTPUTS = 63


class Role(Enum):
    """What a step means to the pipeline, independent of element class."""

    VALUE = "value"
    FUNCTION = "function"
    REMOVAL = "removal"
    RESERVED = "reserved"


# ---------------------------------------------------------------------------
# History
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Single:
    """One applied element: a function, or a removal marker."""

    element: UtElement

    def entry_product(self) -> UtElement:
        return self.element

    def elements(self) -> tuple[UtElement, ...]:
        return (self.element,)


@dataclass(frozen=True)
class CommutingSet:
    """Inserted values that pairwise commute; order carries no meaning.

    Stored as a tuple in insertion order so duplicates keep the product
    honest; equality of histories is structural.
    """

    members: tuple[UtElement, ...]

    def entry_product(self) -> UtElement:
        return product(self.members, self.members[0].params)

    def elements(self) -> tuple[UtElement, ...]:
        return self.members

    def commutes_with_all(self, x: UtElement) -> bool:
        return all(x.commutes_with(m) for m in self.members)


@dataclass(frozen=True)
class Composite:
    """An ordered run of steps recorded as one entry, e.g. the factors of
    a composed function or the replay steps of an identity removal."""

    steps: tuple[UtElement, ...]
    auditable: bool = True

    def entry_product(self) -> UtElement:
        return product(self.steps, self.steps[0].params)

    def elements(self) -> tuple[UtElement, ...]:
        return self.steps


HistoryEntry = Single | CommutingSet | Composite


def history_product(history: Sequence[HistoryEntry], params: GroupParams) -> UtElement:
    return product((entry.entry_product() for entry in history), params)


# ---------------------------------------------------------------------------
# Tuple state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    element: UtElement
    name: str | None = None
    content: str | None = None
    placeholder: bool = False


@dataclass(frozen=True)
class TupleState:
    params: GroupParams
    slots: tuple[Slot, ...] = ()
    product: UtElement = field(default=None)  # type: ignore[assignment]
    history: tuple[HistoryEntry, ...] = ()
    allow_removals: bool = False

    def __post_init__(self) -> None:
        if self.product is None:
            object.__setattr__(self, "product", identity(self.params))

    @classmethod
    def empty(cls, params: GroupParams, *, allow_removals: bool = False) -> TupleState:
        return cls(params=params, allow_removals=allow_removals)

    # -- inspection -----------------------------------------------------

    def slot_elements(self) -> tuple[UtElement, ...]:
        return tuple(s.element for s in self.slots)

    def slot_product(self) -> UtElement:
        return product(self.slot_elements(), self.params)

    def __len__(self) -> int:
        return len(self.slots)

    # -- insertion --------------------------------------------------------

    def insert(self, x: UtElement, *, name: str | None = None, content: str | None = None) -> TupleState:
        """Append a value slot at the right; product gains x."""
        self._check_version(x)
        history = list(self.history)
        if history and isinstance(history[-1], CommutingSet) and history[-1].commutes_with_all(x):
            history[-1] = CommutingSet(history[-1].members + (x,))
        else:
            history.append(CommutingSet((x,)))
        return replace(
            self,
            slots=self.slots + (Slot(x, name=name, content=content),),
            product=self.product * x,
            history=tuple(history),
        )

    def insert_entry(self, key: str, x: UtElement, *, content: str | None = None) -> TupleState:
        """Insert a key-bound map entry built from a commuting value."""
        return self.insert(map_entry(key, x, self.params), name=key, content=content)

    # -- creation and substitution ----------------------------------------

    def create(self, f: UtElement, outputs: int, *, detail: Sequence[UtElement] | None = None) -> TupleState:
        """Apply a function that returns `outputs` values.

        The combined result v·f·v⁻¹ is split into one factor per output;
        all but the last lean on the reserved slot elements, the last is
        the correction that makes the factors multiply back exactly.
        """
        self._check_version(f)
        if f.classify() is not ElementClass.ORDERED:
            raise NotAFunction(f"creation needs an ordered element, got {f.classify().value}")
        factors = self._factor(self.product * f * self.product.inverse(), outputs)
        entry = self._function_entry(f, detail)
        return replace(
            self,
            slots=tuple(Slot(e) for e in factors) + self.slots,
            product=self.product * f,
            history=self.history + (entry,),
        )

    def substitute(
        self,
        f: UtElement,
        replaced: Iterable[int],
        outputs: int,
        *,
        detail: Sequence[UtElement] | None = None,
    ) -> TupleState:
        """Apply f consuming the 1-based `replaced` slots and returning
        `outputs` fresh values; consumed inputs reappear as factors on the
        left so the product still only gains f."""
        self._check_version(f)
        if f.classify() is not ElementClass.ORDERED:
            raise NotAFunction(f"substitution needs an ordered element, got {f.classify().value}")
        positions = sorted(set(replaced))
        if positions and not (1 <= positions[0] and positions[-1] <= len(self.slots)):
            raise BadPosition(f"replaced positions {positions} outside 1..{len(self.slots)}")
        unchanged = tuple(s for i, s in enumerate(self.slots, start=1) if i not in positions)
        w = product((s.element for s in unchanged), self.params)
        factors = self._factor(self.product * f * w.inverse(), outputs + len(positions))
        entry = self._function_entry(f, detail)
        return replace(
            self,
            slots=tuple(Slot(e) for e in factors) + unchanged,
            product=self.product * f,
            history=self.history + (entry,),
        )

    def _factor(self, combined: UtElement, count: int) -> tuple[UtElement, ...]:
        if not 1 <= count <= MAX_CREATE_OUTPUTS:
            raise ThetaExhausted(f"cannot factor into {count} outputs (1..{MAX_CREATE_OUTPUTS})")
        head = tuple(combined * codec.reserved_slot(self.params, i) for i in range(count - 1))
        tail = product(head, self.params).inverse() * combined
        return head + (tail,)

    def _function_entry(self, f: UtElement, detail: Sequence[UtElement] | None) -> HistoryEntry:
        if detail is None:
            return Single(f)
        steps = tuple(detail)
        if not steps or product(steps, self.params) != f:
            raise ValueError("detail steps must multiply to the applied element")
        return Composite(steps)

    # -- removal ----------------------------------------------------------

    def remove_by_identity(self, position: int) -> TupleState:
        """Drop a slot outright by replaying the suffix; leaves no
        placeholder.  Non-rightmost removals are recorded non-auditable."""
        target, suffix = self._split_at(position)
        suffix_elements = tuple(s.element for s in suffix)
        steps = (product((target.element,) + suffix_elements, self.params).inverse(),) + suffix_elements
        new_product = self.product
        for step in steps:
            new_product = new_product * step
        return replace(
            self,
            slots=self.slots[: position - 1] + suffix,
            product=new_product,
            history=self.history + (Composite(steps, auditable=position == len(self.slots)),),
        )

    def remove_by_index(self, index: int) -> TupleState:
        """Mark the 1-based slot as removed with a placeholder element."""
        self._split_at(index)
        delta = codec.removal_element(self.params, index=index)
        return self._apply_removal(index, delta)

    def remove_by_name(self, name: str) -> TupleState:
        """Mark the unique slot inserted under `name` as removed."""
        self._require_removals()
        matches = [i for i, s in enumerate(self.slots, start=1) if s.name == name]
        if len(matches) != 1:
            raise BadPosition(f"name {name!r} matches {len(matches)} slots, need exactly 1")
        delta = codec.removal_element(self.params, name=name)
        return self._apply_removal(matches[0], delta)

    def _apply_removal(self, position: int, delta: UtElement) -> TupleState:
        target, suffix = self._split_at(position)
        s = product((x.element for x in suffix), self.params)
        # Conjugating delta through the suffix keeps slot product == product
        # for non-rightmost targets; rightmost reduces to y·delta.
        ghost = Slot(
            element=target.element * (s * delta * s.inverse()),
            name=target.name,
            content=None,
            placeholder=True,
        )
        return replace(
            self,
            slots=self.slots[: position - 1] + (ghost,) + suffix,
            product=self.product * delta,
            history=self.history + (Single(delta),),
        )

    def _require_removals(self) -> None:
        if not self.allow_removals:
            raise RemovalsDisabled("construct the state with allow_removals=True to remove slots")

    def _split_at(self, position: int) -> tuple[Slot, tuple[Slot, ...]]:
        self._require_removals()
        if not 1 <= position <= len(self.slots):
            raise BadPosition(f"position {position} outside 1..{len(self.slots)}")
        return self.slots[position - 1], self.slots[position:]

    def _check_version(self, x: UtElement) -> None:
        if x.params != self.params:
            raise VersionMismatch(f"{x.params!r} element in {self.params!r} state")


# ---------------------------------------------------------------------------
# Map entries, nesting, composition, adaptors
# ---------------------------------------------------------------------------


def map_entry(key: str, x: UtElement, params: GroupParams | None = None) -> UtElement:
    """Bind a commuting value to a key; the pair commutes as a whole while
    the key-value association stays order-sensitive inside the lift."""
    params = params or x.params
    if not x.is_commuting():
        raise ValueError("map entries bind commuting values (rank < p**4)")
    return (x.lift() * codec.key_element(key, params).lift()).unlift()


def nested_entry(inner_product: UtElement, key: str, params: GroupParams | None = None) -> UtElement:
    """Embed a whole sub-expression under a key; any element class."""
    params = params or inner_product.params
    return (inner_product.lift() * codec.key_element(key, params).lift()).unlift()


def compose(fs: Sequence[UtElement]) -> UtElement:
    """Left-to-right product of the given steps; needs at least one."""
    if not fs:
        raise ValueError("compose needs at least one element")
    return product(fs, fs[0].params)


def adaptor(f: UtElement, applied: Sequence[UtElement]) -> UtElement:
    """Residual element a with (applied…)·a = f, for resuming a partial
    application under the original function identifier."""
    return product(applied, f.params).inverse() * f


# ---------------------------------------------------------------------------
# Set expressions
# ---------------------------------------------------------------------------


class SetExpression:
    """Tree of alternative (union) and sequential (concat) element sets."""

    def expand(self) -> frozenset[UtElement]:
        raise NotImplementedError


@dataclass(frozen=True)
class SetLeaf(SetExpression):
    elements: frozenset[UtElement]

    def expand(self) -> frozenset[UtElement]:
        return self.elements


@dataclass(frozen=True)
class SetUnion(SetExpression):
    left: SetExpression
    right: SetExpression

    def expand(self) -> frozenset[UtElement]:
        return self.left.expand() | self.right.expand()


@dataclass(frozen=True)
class SetConcat(SetExpression):
    left: SetExpression
    right: SetExpression

    def expand(self) -> frozenset[UtElement]:
        return frozenset(a * b for a in self.left.expand() for b in self.right.expand())


def set_of(*elements: UtElement) -> SetLeaf:
    return SetLeaf(frozenset(elements))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_three_way(state: TupleState, process: Sequence[UtElement]) -> bool:
    """True iff process product, state product, slot product, and history
    product all agree."""
    want = state.product
    return (
        product(process, state.params) == want
        and state.slot_product() == want
        and history_product(state.history, state.params) == want
    )
