"""Binary words and the combinatorial primitives used by the codes.

Positions in every public function are 1-indexed: ``subword(u, 4, 8)`` is
``(u_4, ..., u_8)``.  A :class:`Word` is still a tuple, so plain Python
indexing (``u[0]``) stays 0-indexed.
"""

from __future__ import annotations

import operator
from typing import Iterable, Optional

from .errors import ParameterError

__all__ = [
    "Word",
    "concat",
    "subword",
    "longest_periodic",
    "longest_run",
    "longest_zero_run",
    "runs",
    "delete",
    "delete_burst",
    "sticky_insert",
    "period_check",
    "leftmost_diff",
]


_FROM_ASCII = bytes.maketrans(b"01", b"\x00\x01")
_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")


class Word(tuple):
    """Immutable binary word.

    Accepts any iterable of 0/1 integers or a string over ``{0, 1}``.
    ``str(word)`` gives the ASCII form used on the command line and in JSON.
    """

    __slots__ = ()

    def __new__(cls, bits: Iterable[int] | str = ()):
        if isinstance(bits, Word):
            return bits
        if isinstance(bits, str):
            text = bits.strip()
            if text.strip("01"):
                raise ParameterError(f"word text must be over {{0,1}}: {bits!r}")
            return tuple.__new__(cls, text.encode().translate(_FROM_ASCII))
        items = tuple(bits)
        try:
            if set(items) <= {0, 1}:
                return tuple.__new__(cls, bytes(items))
        except TypeError:
            pass
        bad = next(b for b in items if b not in (0, 1) or not isinstance(b, int))
        raise ParameterError(f"word symbols must be 0 or 1, got {bad!r}")

    @classmethod
    def _wrap(cls, items) -> "Word":
        # trusted fast path: items already 0/1 ints
        return tuple.__new__(cls, items)

    def __str__(self) -> str:
        return bytes(self).translate(_TO_ASCII).decode()

    def __repr__(self) -> str:
        return f"Word('{self}')"

    def __add__(self, other) -> "Word":
        return Word._wrap(tuple.__add__(self, tuple(other)))

    def __getitem__(self, key):
        item = tuple.__getitem__(self, key)
        if isinstance(key, slice):
            return Word._wrap(item)
        return item


def _as_word(u) -> Word:
    return u if isinstance(u, Word) else Word(u)


def concat(*parts) -> Word:
    """Concatenation ``u ∘ v ∘ ...``."""
    out: tuple = ()
    for p in parts:
        out += tuple(p)
    return Word._wrap(out)


def subword(u, i1: int, i2: int) -> Word:
    """Return ``(u_{i1}, ..., u_{i2})``."""
    u = _as_word(u)
    if not (1 <= i1 <= i2 <= len(u)):
        raise IndexError(f"subword [{i1},{i2}] outside word of length {len(u)}")
    return Word._wrap(tuple.__getitem__(u, slice(i1 - 1, i2)))


def longest_periodic(u, ell: int) -> int:
    """Length of the longest subvector of ``u`` having period ``ell``.

    A stretch has period ``ell`` exactly when the matching stretch of the
    period-check vector is all zeros, so this is ``ell`` plus the longest
    zero run of ``u_k + u_{k+ell}``.  Any window of length ``ell`` qualifies,
    so the answer is at least ``ell``.
    """
    n = len(u)
    if ell < 1 or ell > n:
        raise ParameterError(f"period {ell} must lie in [1, {n}]")
    u = tuple(u)
    check = bytes(map(operator.xor, u[ell:], u[:-ell]))
    return ell + max(map(len, check.split(b"\x01")))


def runs(u) -> list[tuple[int, int]]:
    """Run-length encoding as ``[(symbol, length), ...]``."""
    out: list[list[int]] = []
    for b in u:
        if out and out[-1][0] == b:
            out[-1][1] += 1
        else:
            out.append([b, 1])
    return [(s, k) for s, k in out]


def longest_run(u) -> int:
    return max((k for _, k in runs(u)), default=0)


def longest_zero_run(u) -> int:
    """Length of the longest run of zeros; 0 when ``u`` has no zero."""
    return max((k for s, k in runs(u) if s == 0), default=0)


def delete(u, positions: Iterable[int]) -> Word:
    """Delete the bits at the given (distinct, 1-indexed) positions."""
    u = _as_word(u)
    pos = list(positions)
    gone = set(pos)
    if len(gone) != len(pos):
        raise ParameterError("deletion positions must be distinct")
    n = len(u)
    for p in gone:
        if not 1 <= p <= n:
            raise ParameterError(f"deletion position {p} outside [1, {n}]")
    return Word._wrap(tuple(b for k, b in enumerate(u, 1) if k not in gone))


def delete_burst(u, i: int, b: int) -> Word:
    """Delete ``b`` consecutive bits starting at position ``i``."""
    u = _as_word(u)
    if b < 1 or i < 1 or i + b - 1 > len(u):
        raise ParameterError(f"burst [{i}, {i + b - 1}] outside word of length {len(u)}")
    return Word._wrap(tuple.__getitem__(u, slice(0, i - 1)) + tuple.__getitem__(u, slice(i + b - 1, None)))


def sticky_insert(u, i: int, s: int) -> Word:
    """Repeat ``u_i`` a further ``s`` times right after position ``i``."""
    u = _as_word(u)
    if s < 1 or not 1 <= i <= len(u):
        raise ParameterError(f"sticky insertion ({i}, {s}) invalid for length {len(u)}")
    head = tuple.__getitem__(u, slice(0, i))
    return Word._wrap(head + (u[i - 1],) * s + tuple.__getitem__(u, slice(i, None)))


def period_check(u, b: int) -> Word:
    """``(u_1 + u_{1+b}, ..., u_{m-b} + u_m)`` over GF(2)."""
    u = _as_word(u)
    if b < 1 or b >= len(u):
        raise ParameterError(f"period check needs 1 <= b < len(u), got b={b}, len={len(u)}")
    return Word._wrap(tuple(u[k] ^ u[k + b] for k in range(len(u) - b)))


def leftmost_diff(u, v) -> Optional[int]:
    """Smallest 1-indexed ``j`` with ``u_j != v_j``.

    When one word is a strict prefix of the other the answer is
    ``min(len) + 1``; identical words give ``None``.
    """
    for j, (a, b) in enumerate(zip(u, v), 1):
        if a != b:
            return j
    if len(u) != len(v):
        return min(len(u), len(v)) + 1
    return None
