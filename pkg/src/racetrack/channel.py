"""Correlated multi-head read channel.

One physical shift fault hits every head: a fault at position ``i`` of the
first head shows up at ``i + offset(h)`` in head ``h``.  Event positions
always refer to the stored word, so head ``h`` sees the stored word with all
events applied at their shifted positions simultaneously.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .bitword import Word
from .errors import ParameterError, PatternError, SamplingError

DEL = "del"
STICKY = "sticky"


@dataclass(frozen=True)
class HeadLayout:
    """``m = len(gaps) + 1`` heads; ``gaps[k]`` separates head ``k+1`` from ``k+2``."""

    gaps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(int(g) for g in self.gaps))
        if any(g < 1 for g in self.gaps):
            raise ParameterError(f"head gaps must be positive: {self.gaps}")

    @classmethod
    def uniform(cls, m: int, gap: int) -> "HeadLayout":
        if m < 1:
            raise ParameterError("need at least one head")
        return cls((gap,) * (m - 1))

    @classmethod
    def parse(cls, text: str) -> "HeadLayout":
        """Comma list of gaps (``"4,4"``); the empty string means one head."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(tuple(int(g) for g in text.split(",")))
        except ValueError:
            raise ParameterError(f"bad gap list {text!r}") from None

    @property
    def m(self) -> int:
        return len(self.gaps) + 1

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.gaps))

    @property
    def span(self) -> int:
        """Offset of the last head."""
        return sum(self.gaps)

    def to_dict(self) -> dict:
        return {"gaps": list(self.gaps)}

    @classmethod
    def from_dict(cls, data: dict) -> "HeadLayout":
        return cls(tuple(data["gaps"]))


@dataclass(frozen=True, order=True)
class Event:
    pos: int
    kind: str
    length: int = 1

    def __post_init__(self):
        if self.kind not in (DEL, STICKY):
            raise PatternError(f"unknown event kind {self.kind!r}")
        if self.pos < 1 or self.length < 1:
            raise PatternError(f"event position and length must be positive: {self}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pos": self.pos, "len": self.length}

    def __str__(self) -> str:
        return f"{self.kind}({self.pos},{self.length})"


def DeletionBurst(pos: int, length: int = 1) -> Event:
    return Event(pos, DEL, length)


def StickyBurst(pos: int, length: int = 1) -> Event:
    return Event(pos, STICKY, length)


@dataclass(frozen=True)
class ErrorPattern:
    events: tuple[Event, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        prev = None
        for ev in self.events:
            if prev is not None:
                if ev.pos <= prev.pos:
                    raise PatternError("event positions must be strictly increasing")
                if prev.kind == DEL and ev.pos <= prev.pos + prev.length - 1:
                    raise PatternError(f"{ev} overlaps deletion burst {prev}")
            prev = ev

    @property
    def deleted(self) -> int:
        return sum(e.length for e in self.events if e.kind == DEL)

    @property
    def inserted(self) -> int:
        return sum(e.length for e in self.events if e.kind == STICKY)

    def validate(self, n: int, layout: HeadLayout) -> None:
        """Raise :class:`PatternError` unless every head sees every event in range."""
        span = layout.span
        for ev in self.events:
            last = ev.pos + span + (ev.length - 1 if ev.kind == DEL else 0)
            if last > n:
                raise PatternError(f"{ev} falls outside n={n} for the last head (offset {span})")

    def to_dict(self) -> dict:
        return {"events": [e.to_dict() for e in self.events]}

    @classmethod
    def from_dict(cls, data: dict) -> "ErrorPattern":
        try:
            return cls(tuple(Event(int(e["pos"]), e["kind"], int(e.get("len", 1))) for e in data["events"]))
        except (KeyError, TypeError) as exc:
            raise PatternError(f"malformed pattern JSON: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ErrorPattern":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.events)) + "]"


@dataclass(frozen=True)
class ReadOut:
    outputs: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(Word(o) for o in self.outputs))
        if len({len(o) for o in self.outputs}) > 1:
            raise PatternError("all heads must report words of equal length")

    @property
    def m(self) -> int:
        return len(self.outputs)

    def __getitem__(self, h: int) -> Word:
        return self.outputs[h]

    def __iter__(self):
        return iter(self.outputs)

    def __len__(self) -> int:
        return len(self.outputs)


def _apply(c: tuple, offset: int, events: Sequence[Event]) -> Word:
    # events are sorted and disjoint, so copy the untouched stretches between them
    parts = []
    done = 0
    for ev in events:
        p = ev.pos + offset
        if ev.kind == DEL:
            parts.append(c[done : p - 1])
            done = p - 1 + ev.length
        else:
            parts.append(c[done:p])
            parts.append((c[p - 1],) * ev.length)
            done = p
    parts.append(c[done:])
    return Word._wrap(tuple(itertools.chain.from_iterable(parts)))


def read(c, layout: HeadLayout, pattern: ErrorPattern) -> ReadOut:
    """Outputs of every head when ``pattern`` occurs while reading ``c``."""
    c = c if isinstance(c, Word) else Word(c)
    pattern.validate(len(c), layout)
    bits = tuple(c)
    return ReadOut(tuple(_apply(bits, off, pattern.events) for off in layout.offsets))


# ---------------------------------------------------------------------------
# error classes
# ---------------------------------------------------------------------------

Shape = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class ErrorClass:
    """A family of error patterns, described by its allowed *shapes*.

    A shape is the ordered tuple of ``(kind, length)`` of the events; the
    patterns of the class are all valid placements of all its shapes.

    Text forms::

        none          no errors
        del:d         d single deletions
        burst:b       one burst of exactly b deletions
        leburst:b     one burst of 1..b deletions
        sticky:d:s    d sticky bursts, each of length 1..s
        poserr:e      at most e position errors (deleted + inserted symbols)
    """

    name: str
    shapes: frozenset = field(compare=False, repr=False)

    @classmethod
    def parse(cls, text: str) -> "ErrorClass":
        text = text.strip().lower()
        head, *rest = text.split(":")
        try:
            args = [int(x) for x in rest]
        except ValueError:
            raise ParameterError(f"bad error class {text!r}") from None
        arity = {"none": 0, "del": 1, "burst": 1, "leburst": 1, "sticky": 2, "poserr": 1}.get(head)
        if arity is None or len(args) != arity or any(x < 1 for x in args):
            raise ParameterError(f"bad error class {text!r}")
        if head == "none":
            shapes = {()}
        elif head == "del":
            shapes = {((DEL, 1),) * args[0]}
        elif head == "burst":
            shapes = {((DEL, args[0]),)}
        elif head == "leburst":
            shapes = {((DEL, b),) for b in range(1, args[0] + 1)}
        elif head == "sticky":
            d, s = args
            shapes = {tuple((STICKY, k) for k in ks) for ks in itertools.product(range(1, s + 1), repeat=d)}
        else:
            shapes = set(_shapes_up_to(args[0]))
        return cls(text, frozenset(shapes))

    def __str__(self) -> str:
        return self.name

    @property
    def kind(self) -> str:
        return self.name.split(":")[0]

    @property
    def args(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.name.split(":")[1:])


def _shapes_up_to(budget: int) -> Iterator[Shape]:
    yield ()
    for kind in (DEL, STICKY):
        for length in range(1, budget + 1):
            for rest in _shapes_up_to(budget - length):
                yield ((kind, length),) + rest


def _fits(shape: Shape, positions: Sequence[int], n: int, span: int) -> bool:
    prev_end = 0
    for (kind, length), pos in zip(shape, positions):
        if pos <= prev_end:
            return False
        if kind == DEL:
            if pos + span + length - 1 > n:
                return False
            prev_end = pos + length - 1
        else:
            if pos + span > n:
                return False
            prev_end = pos
    return True


def patterns(n: int, layout: HeadLayout, cls: ErrorClass) -> Iterator[ErrorPattern]:
    """Every valid pattern of the class, in a canonical order."""
    span = layout.span
    top = n - span
    for shape in sorted(cls.shapes):
        for positions in itertools.combinations(range(1, top + 1), len(shape)):
            if _fits(shape, positions, n, span):
                yield ErrorPattern(tuple(Event(p, k, ln) for (k, ln), p in zip(shape, positions)))


def pattern_bound(n: int, layout: HeadLayout, cls: ErrorClass) -> int:
    """Upper bound on the number of patterns (used for budget checks)."""
    top = max(n - layout.span, 0)
    return sum(math.comb(top, len(shape)) for shape in cls.shapes)


def _satisfiable(shape: Shape, n: int, span: int) -> bool:
    positions = []
    nxt = 1
    for kind, length in shape:
        positions.append(nxt)
        nxt += length if kind == DEL else 1
    return _fits(shape, positions, n, span)


def random_pattern(seed: Union[int, random.Random], n: int, layout: HeadLayout, cls: ErrorClass) -> ErrorPattern:
    """Draw a pattern uniformly from the class.

    Proposes a shape with weight ``C(top, len(shape))`` and sorted positions
    uniformly, then rejects invalid placements; accepted draws are uniform over
    the valid patterns.  ``seed`` may be an int or a :class:`random.Random`.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    span = layout.span
    top = n - span
    shapes = sorted(s for s in cls.shapes if _satisfiable(s, n, span))
    if not shapes:
        raise SamplingError(f"class {cls} has no valid pattern for n={n}, gaps={list(layout.gaps)}")
    weights = [math.comb(top, len(s)) for s in shapes]
    for _ in range(10_000):
        shape = rng.choices(shapes, weights)[0]
        positions = sorted(rng.sample(range(1, top + 1), len(shape)))
        if _fits(shape, positions, n, span):
            return ErrorPattern(tuple(Event(p, k, ln) for (k, ln), p in zip(shape, positions)))
    # acceptance rate is tiny only for very crowded classes; enumerate instead
    return rng.choice(list(patterns(n, layout, cls)))
