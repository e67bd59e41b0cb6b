"""Constrained codebooks: membership, exact sizes, and enumerative coding.

Families
--------
``C1(n, t)``
    longest run at most ``t``.
``C2(n, b, t)``
    longest period-``b`` subvector at most ``t``.
``C3(n, b, t)``
    longest period-``l`` subvector at most ``t`` for every ``l <= b``.
``C3_VT(n, b, t, a)``
    ``C3`` intersected with the checksum class ``sum(i * u_i) = a (mod n + 1)``.

Sizes are exact Python integers.  ``C1`` and ``C2`` use the run-length
composition recurrence; ``C3`` and ``C3_VT`` run a forward DP over a small
automaton whose state is the last ``b`` symbols plus, per period ``l``, the
current zero-run length of the period-check vector.  The same automaton,
unrolled into a trellis, drives lexicographic ``rank``/``unrank``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .bitword import Word, longest_periodic, period_check
from .errors import MembershipError, ParameterError

FAMILIES = ("C1", "C2", "C3", "C3_VT")

GOALS = ("single-deletion", "b-burst", "leq-b-burst")


@dataclass(frozen=True)
class CodeSpec:
    family: str
    n: int
    t: int
    b: int = 1
    a: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown code family {self.family!r}")
        if self.n < 1:
            raise ParameterError("code length must be at least 1")
        if self.family == "C1" and self.b != 1:
            raise ParameterError("C1 has no period parameter")
        if not 1 <= self.b <= self.t <= self.n:
            raise ParameterError(f"need 1 <= b <= t <= n, got b={self.b}, t={self.t}, n={self.n}")
        if self.family == "C3_VT":
            if self.a is None or not 0 <= self.a <= self.n:
                raise ParameterError(f"checksum residue must lie in [0, {self.n}]")
        elif self.a is not None:
            raise ParameterError(f"{self.family} takes no checksum residue")

    @classmethod
    def parse(cls, text: str) -> "CodeSpec":
        """Parse ``family:n[:b]:t[:a]``, e.g. ``C1:9:3`` or ``C3_VT:12:2:6:0``."""
        parts = text.strip().split(":")
        family = parts[0].upper()
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParameterError(f"bad code spec {text!r}") from None
        arity = {"C1": 2, "C2": 3, "C3": 3, "C3_VT": 4}.get(family)
        if arity is None:
            raise ParameterError(f"unknown code family in {text!r}")
        if len(nums) != arity:
            raise ParameterError(f"{family} spec needs {arity} numbers: {text!r}")
        if family == "C1":
            return cls("C1", nums[0], nums[1])
        if family == "C3_VT":
            return cls(family, nums[0], nums[2], nums[1], nums[3])
        return cls(family, nums[0], nums[2], nums[1])

    def __str__(self) -> str:
        if self.family == "C1":
            return f"C1:{self.n}:{self.t}"
        if self.family == "C3_VT":
            return f"C3_VT:{self.n}:{self.b}:{self.t}:{self.a}"
        return f"{self.family}:{self.n}:{self.b}:{self.t}"

    @property
    def periods(self) -> tuple[int, ...]:
        if self.family == "C2":
            return (self.b,)
        if self.family == "C1":
            return (1,)
        return tuple(range(1, self.b + 1))


def vt_checksum(u, modulus: int) -> int:
    """``sum(i * u_i) mod modulus`` with 1-indexed weights."""
    return sum(i for i, bit in enumerate(u, 1) if bit) % modulus


def is_member(spec: CodeSpec, u) -> bool:
    if len(u) != spec.n:
        raise ParameterError(f"word length {len(u)} does not match n={spec.n}")
    if any(longest_periodic(u, ell) > spec.t for ell in spec.periods):
        return False
    if spec.family == "C3_VT":
        return vt_checksum(u, spec.n + 1) == spec.a
    return True


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def compositions(m: int, max_part: int) -> int:
    """Number of compositions of ``m`` into parts of size ``1..max_part``."""
    if m < 0:
        return 0
    f = [1] + [0] * m
    window = 1
    for k in range(1, m + 1):
        f[k] = window
        window += f[k]
        if k - max_part >= 0:
            window -= f[k - max_part]
    return f[m]


def count_r(n: int, t: int) -> int:
    """Size of ``R(n, t)``: length-``n`` words whose zero-runs are at most ``t``."""
    if n < 0 or t < 0:
        raise ParameterError("R(n, t) needs n >= 0 and t >= 0")
    return compositions(n + 1, t + 1)


def count(spec: CodeSpec) -> int:
    """Exact codebook size."""
    if spec.family == "C1":
        return 2 * compositions(spec.n, spec.t)
    if spec.family == "C2":
        return 2 ** spec.b * count_r(spec.n - spec.b, spec.t - spec.b)
    return count_by_automaton(spec)


def count_by_automaton(spec: CodeSpec) -> int:
    """Forward DP over the constraint automaton (valid for every family)."""
    auto = _automaton(spec)
    layer = {auto.start: 1}
    for pos in range(1, spec.n + 1):
        nxt: dict = {}
        for state, ways in layer.items():
            for x in (0, 1):
                ns = auto.step(state, pos, x)
                if ns is not None:
                    nxt[ns] = nxt.get(ns, 0) + ways
        layer = nxt
    return sum(ways for state, ways in layer.items() if auto.accept(state))


def lower_bound_c3(n: int, b: int, t: int) -> Fraction:
    """``2^n (1 - n 2^-(t-b))``, returned exactly."""
    if t <= b:
        raise ParameterError("the C3 size bound needs t > b")
    return Fraction(2 ** n) * (1 - Fraction(n, 2 ** (t - b)))


def redundancy(spec: CodeSpec) -> float:
    size = count(spec)
    if size == 0:
        raise ParameterError(f"{spec} is empty; redundancy undefined")
    return spec.n - math.log2(size)


def _ceil_log2(n: int) -> int:
    if n < 1:
        raise ParameterError("n must be positive")
    return (n - 1).bit_length()


def recommended_t(n: int, b: int = 1, goal: str = "single-deletion") -> int:
    """Head distance / constraint length suggested for each correction goal."""
    base = _ceil_log2(n)
    if goal == "single-deletion":
        return base + 1
    if goal == "b-burst":
        return base + b
    if goal == "leq-b-burst":
        return base + b + 1
    raise ParameterError(f"unknown goal {goal!r}; expected one of {GOALS}")


# ---------------------------------------------------------------------------
# the period-check bijection
# ---------------------------------------------------------------------------

def phi(u, b: int) -> tuple[Word, Word]:
    u = Word(u) if not isinstance(u, Word) else u
    if len(u) <= b:
        raise ParameterError(f"phi needs len(u) > b, got len={len(u)}, b={b}")
    return u[:b], period_check(u, b)


def psi(prefix, check, b: int) -> Word:
    if len(prefix) != b:
        raise ParameterError(f"prefix must have length b={b}")
    u = list(prefix)
    for k, w in enumerate(check):
        u.append(u[k] ^ w)
    return Word(u)


# ---------------------------------------------------------------------------
# automata and enumerative coding
# ---------------------------------------------------------------------------

class _PeriodAutomaton:
    """Tracks the last ``max(periods)`` symbols and one zero-run per period."""

    def __init__(self, periods: tuple[int, ...], t: int):
        self.periods = periods
        self.width = max(periods)
        self.t = t
        self.start = ((), (0,) * len(periods))
        self._memo: dict = {}

    def step(self, state, pos, x):
        key = (state, x)
        try:
            return self._memo[key]
        except KeyError:
            pass
        window, zeros = state
        nz = []
        ns = None
        for ell, z in zip(self.periods, zeros):
            if len(window) >= ell:
                z = z + 1 if x == window[-ell] else 0
                if z > self.t - ell:
                    break
            nz.append(z)
        else:
            ns = ((window + (x,))[-self.width:], tuple(nz))
        self._memo[key] = ns
        return ns

    def accept(self, state) -> bool:
        return True


class _ChecksumAutomaton:
    """Product of an inner automaton with the running checksum mod ``n + 1``."""

    def __init__(self, inner, n: int, residue: int):
        self.inner = inner
        self.modulus = n + 1
        self.residue = residue
        self.start = (inner.start, 0)

    def step(self, state, pos, x):
        inner, s = state
        ns = self.inner.step(inner, pos, x)
        if ns is None:
            return None
        return ns, (s + pos * x) % self.modulus

    def accept(self, state) -> bool:
        return state[1] == self.residue


def _automaton(spec: CodeSpec):
    auto = _PeriodAutomaton(spec.periods, spec.t)
    if spec.family == "C3_VT":
        return _ChecksumAutomaton(auto, spec.n, spec.a)
    return auto


class _Trellis:
    """The automaton unrolled over ``n`` positions.

    ``rows[k][s]`` is ``(zero_ways, next0, next1)`` for state ``s`` of layer
    ``k``: the number of accepted completions after writing a 0, and the
    successor indices in layer ``k + 1`` (``-1`` when the symbol is
    forbidden).  ``ways[k][s]`` counts all accepted completions.
    """

    def __init__(self, spec: CodeSpec):
        auto = _automaton(spec)
        n = spec.n
        layer = [auto.start]
        edges = []
        for pos in range(1, n + 1):
            index: dict = {}
            row = []
            for state in layer:
                pair = []
                for x in (0, 1):
                    ns = auto.step(state, pos, x)
                    pair.append(-1 if ns is None else index.setdefault(ns, len(index)))
                row.append(pair)
            edges.append(row)
            layer = list(index)
        ways: list = [None] * (n + 1)
        rows: list = [None] * n
        ways[n] = [1 if auto.accept(s) else 0 for s in layer]
        for k in range(n - 1, -1, -1):
            below = ways[k + 1]
            row = []
            for a, b in edges[k]:
                row.append((below[a] if a >= 0 else 0, a, b))
            rows[k] = tuple(row)
            ways[k] = [z + (below[b] if b >= 0 else 0) for z, _, b in row]
        self.n = n
        self.rows = rows
        self.ways = ways
        self.size = ways[0][0]


@lru_cache(maxsize=16)
def _trellis(spec: CodeSpec) -> _Trellis:
    return _Trellis(spec)


def unrank(spec: CodeSpec, index: int) -> Word:
    """The ``index``-th codeword (0-based) in lexicographic order."""
    tr = _trellis(spec)
    if not 0 <= index < tr.size:
        raise ParameterError(f"index {index} outside [0, {tr.size}) for {spec}")
    out = bytearray(tr.n)
    s = 0
    for k, row in enumerate(tr.rows):
        zero_ways, a, b = row[s]
        if index < zero_ways:
            s = a
        else:
            index -= zero_ways
            out[k] = 1
            s = b
    return Word._wrap(out)


def rank(spec: CodeSpec, u) -> int:
    """Inverse of :func:`unrank`."""
    if len(u) != spec.n or not is_member(spec, u):
        raise MembershipError(f"{''.join(map(str, u))} is not a codeword of {spec}")
    r = 0
    s = 0
    for row, x in zip(_trellis(spec).rows, u):
        zero_ways, a, b = row[s]
        if x:
            r += zero_ways
            s = b
        else:
            s = a
    return r


def codewords(spec: CodeSpec) -> Iterator[Word]:
    """All codewords in lexicographic order (depth-first over the trellis)."""
    tr = _trellis(spec)
    rows, ways, n = tr.rows, tr.ways, tr.n
    prefix: list[int] = []

    def walk(k, s):
        if k == n:
            yield Word._wrap(prefix)
            return
        zero_ways, a, b = rows[k][s]
        for x, ns, w in ((0, a, zero_ways), (1, b, ways[k][s] - zero_ways)):
            if w:
                prefix.append(x)
                yield from walk(k + 1, ns)
                prefix.pop()

    yield from walk(0, 0)
