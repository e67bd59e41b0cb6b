"""Multi-head decoders.

Every decoder takes the head outputs and the code length explicitly and
returns a :class:`DecodeResult`.  The building block is the *peel*: compare
two heads, find the leftmost index where they differ, and splice the prefix
of the later head (still clean there) onto the suffix of the earlier one.
This removes the earliest error from the earlier head.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .bitword import Word, concat, leftmost_diff, longest_periodic, runs
from .channel import ErrorClass, HeadLayout, ReadOut
from .constraints import CodeSpec, vt_checksum
from .errors import ConstraintViolation, DecodeError, LengthError, ParameterError, SyndromeError

__all__ = [
    "DecodeResult",
    "decode_2h_1del",
    "decode_2h_burst",
    "decode_2h_leq_burst",
    "decode_mh_ddel",
    "vt_decode",
    "decode_dh_ddel",
    "decode_2h_sticky",
    "decode_sticky",
    "decode_2h_1poserr",
    "decode_3h_2poserr",
    "DECODERS",
    "select_decoder",
    "decode",
]


@dataclass
class DecodeResult:
    codeword: Word
    diagnostics: list[tuple[str, int]] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return [j for _, j in self.diagnostics]

    def to_dict(self) -> dict:
        return {
            "codeword": str(self.codeword),
            "stages": [{"stage": s, "j": j} for s, j in self.diagnostics],
        }


def _words(reads) -> list[Word]:
    return [r if isinstance(r, Word) else Word(r) for r in reads]


def _expect_len(words: Sequence[Word], length: int) -> None:
    for w in words:
        if len(w) != length:
            raise LengthError(f"expected head outputs of length {length}, got {len(w)}")


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstraintViolation(what)


def _within_periods(c: Word, t: int, periods) -> bool:
    return all(longest_periodic(c, ell) <= t for ell in periods if ell <= len(c))


def _distance_bound(d: int, t1: int) -> int:
    return d * t1 - d * (d + 1) // 2 + 1


def _check_gaps(layout: HeadLayout, minimum: int) -> None:
    if any(g < minimum for g in layout.gaps):
        raise ParameterError(f"head gaps {list(layout.gaps)} below the required {minimum}")


# ---------------------------------------------------------------------------
# pairwise primitives
# ---------------------------------------------------------------------------

def _peel_deletion(early: Word, late: Word, b: int = 1) -> tuple[Word, int]:
    """Undo the earliest deletion burst of length ``b`` in ``early``."""
    j = leftmost_diff(early, late)
    if j is None:
        raise ConstraintViolation("head outputs agree everywhere; no deletion can be located")
    if j + b - 1 > len(late):
        raise ConstraintViolation(f"differing index {j} too close to the end for a burst of {b}")
    return concat(late[: j + b - 1], early[j - 1 :]), j


def _peel_sticky(early: Word, late: Word, s: int) -> tuple[Word, int]:
    """Drop ``s`` repeated symbols from the earliest sticky burst in ``early``."""
    j = leftmost_diff(early, late)
    if j is None:
        raise ConstraintViolation("head outputs agree everywhere; no insertion can be located")
    return concat(late[: j - 1], early[j - 1 + s :]), j


def decode_2h_1del(h1, h2, t: int, n: int) -> DecodeResult:
    """Two heads ``t`` apart, one deletion, code ``C1(n, 1, t)``."""
    h1, h2 = _words((h1, h2))
    _expect_len((h1, h2), n - 1)
    c, j = _peel_deletion(h1, h2)
    _require(longest_periodic(c, 1) <= t, f"decoded word has a run longer than {t}")
    return DecodeResult(c, [("pair", j)])


def decode_2h_burst(h1, h2, t: int, n: int, b: int) -> DecodeResult:
    """Two heads ``t`` apart, one burst of exactly ``b`` deletions, code ``C2(n, b, t)``.

    With ``j`` the leftmost differing index the stored word is
    ``h2[1, j+b-1] ∘ h1[j, n-b]``: agreement of the heads beyond ``i+t-b``
    would need a period-``b`` stretch of length ``t+1``.
    """
    if b < 1:
        raise ParameterError("burst length must be positive")
    h1, h2 = _words((h1, h2))
    _expect_len((h1, h2), n - b)
    c, j = _peel_deletion(h1, h2, b)
    _require(longest_periodic(c, b) <= t, f"decoded word has a period-{b} stretch longer than {t}")
    return DecodeResult(c, [("pair", j)])


def decode_2h_leq_burst(h1, h2, t: int, n: int, b_max: int) -> DecodeResult:
    """One burst of unknown length ``0..b_max``; code ``C3(n, <=b_max, t)``."""
    h1, h2 = _words((h1, h2))
    b = n - len(h1)
    if not 0 <= b <= b_max or len(h2) != len(h1):
        raise LengthError(f"output length {len(h1)} implies a burst outside [0, {b_max}]")
    if b == 0:
        result = DecodeResult(h1, [])
    else:
        c, j = _peel_deletion(h1, h2, b)
        result = DecodeResult(c, [("pair", j)])
    _require(
        _within_periods(result.codeword, t, range(1, b_max + 1)),
        f"decoded word violates C3(n, <={b_max}, {t})",
    )
    return result


# ---------------------------------------------------------------------------
# multiple deletions
# ---------------------------------------------------------------------------

def _cascade(heads: list[Word], rounds: int, diagnostics: list) -> list[Word]:
    # round r peels the earliest deletion of head k using head k+1; one head drops out per round
    for r in range(1, rounds + 1):
        peeled = []
        for k in range(len(heads) - 1):
            w, j = _peel_deletion(heads[k], heads[k + 1])
            diagnostics.append((f"{r}.{k + 1}", j))
            peeled.append(w)
        heads = peeled
    return heads


def decode_mh_ddel(reads, layout: HeadLayout, n: int, d: int, t1: int) -> DecodeResult:
    """``d + 1`` heads, ``d`` deletions, code ``C3(n, <=d, t1)``.

    Runs ``d`` rounds of pairwise peels over adjacent heads
    (``d(d+1)/2`` peels in all); the survivor is the stored word.  The stage
    labels are ``"round.pair"``.
    """
    heads = _words(reads)
    if len(heads) != d + 1 or layout.m != d + 1:
        raise ParameterError(f"{d} deletions need exactly {d + 1} heads")
    _check_gaps(layout, _distance_bound(d, t1))
    _expect_len(heads, n - d)
    diagnostics: list = []
    (c,) = _cascade(heads, d, diagnostics)
    _require(_within_periods(c, t1, range(1, d + 1)), f"decoded word violates C3(n, <={d}, {t1})")
    return DecodeResult(c, diagnostics)


def vt_decode(r, n: int, a: int) -> Word:
    """Recover a word with checksum ``a (mod n+1)`` from one deletion."""
    r = _words((r,))[0]
    if len(r) != n - 1:
        raise LengthError(f"expected a word of length {n - 1}, got {len(r)}")
    ones = sum(r)
    deficiency = (a - vt_checksum(r, n + 1)) % (n + 1)
    if deficiency <= ones:
        # a 0 with `deficiency` ones to its right
        right = 0
        p = len(r)
        while right < deficiency:
            p -= 1
            right += r[p]
        c = concat(r[:p], (0,), r[p:])
    else:
        zeros_left = deficiency - ones - 1
        if zeros_left > len(r) - ones:
            raise SyndromeError(f"no single-deletion preimage of {r} has checksum {a}")
        p = 0
        seen = 0
        while seen < zeros_left:
            seen += 1 - r[p]
            p += 1
        c = concat(r[:p], (1,), r[p:])
    if vt_checksum(c, n + 1) != a % (n + 1):
        raise SyndromeError(f"no single-deletion preimage of {r} has checksum {a}")
    return c


def decode_dh_ddel(reads, layout: HeadLayout, n: int, d: int, t1: int, a: int) -> DecodeResult:
    """``d`` heads, ``d`` deletions, code ``C3_VT(n, d, t1, a)``.

    ``d - 1`` rounds of peels leave one head with a single deletion, which the
    checksum then corrects.
    """
    heads = _words(reads)
    if len(heads) != d or layout.m != d:
        raise ParameterError(f"this decoder uses exactly {d} heads for {d} deletions")
    _check_gaps(layout, _distance_bound(d, t1))
    _expect_len(heads, n - d)
    diagnostics: list = []
    (last,) = _cascade(heads, d - 1, diagnostics)
    c = vt_decode(last, n, a)
    _require(_within_periods(c, t1, range(1, d + 1)), f"decoded word violates C3(n, <={d}, {t1})")
    return DecodeResult(c, diagnostics)


# ---------------------------------------------------------------------------
# sticky insertions
# ---------------------------------------------------------------------------

def decode_2h_sticky(h1, h2, t: int, n: int) -> DecodeResult:
    """Two heads at distance >= ``t``, one sticky burst, code ``C1(n, 1, t)``.

    The burst length is ``s = len(h1) - n``; the stored word is
    ``h2[1, j-1] ∘ h1[j+s, n+s]``.
    """
    h1, h2 = _words((h1, h2))
    s = len(h1) - n
    if s < 0 or len(h2) != len(h1):
        raise LengthError(f"sticky outputs must be at least n={n} long and equal")
    if s == 0:
        c, diagnostics = h1, []
    else:
        c, j = _peel_sticky(h1, h2, s)
        diagnostics = [("pair", j)]
    _require(longest_periodic(c, 1) <= t, f"decoded word has a run longer than {t}")
    return DecodeResult(c, diagnostics)


def _run_consensus(heads: Sequence[Word]) -> tuple[Word, list]:
    # sticky insertions only lengthen runs; some head always has each run clean
    encodings = [runs(h) for h in heads]
    shape = [sym for sym, _ in encodings[0]]
    if any([sym for sym, _ in e] != shape for e in encodings[1:]):
        raise ConstraintViolation("head outputs have different run structures")
    out: list[int] = []
    diagnostics = []
    for r, column in enumerate(zip(*encodings)):
        lengths = [k for _, k in column]
        shortest = min(lengths)
        if max(lengths) != shortest:
            diagnostics.append((f"run{r + 1}", len(out) + 1))
        out.extend((shape[r],) * shortest)
    return Word._wrap(out), diagnostics


def decode_sticky(reads, layout: HeadLayout, n: int, t: int, d: int) -> DecodeResult:
    """``d + 1`` heads at distance >= ``t``, ``d`` sticky bursts, code ``C1(n, 1, t)``.

    Two heads use the pairwise splice.  With more heads the runs are
    reconciled directly: a run of the stored word has length <= ``t`` and
    the heads are >= ``t`` apart, so no burst hits the same run in two heads
    and the shortest copy of every run is the original.
    """
    heads = _words(reads)
    if len(heads) != d + 1 or layout.m != d + 1:
        raise ParameterError(f"{d} sticky bursts need exactly {d + 1} heads")
    _check_gaps(layout, t)
    if len({len(h) for h in heads}) != 1 or len(heads[0]) < n:
        raise LengthError(f"sticky outputs must be at least n={n} long and equal")
    if len(heads) == 2:
        return decode_2h_sticky(heads[0], heads[1], t, n)
    c, diagnostics = _run_consensus(heads)
    if len(c) != n:
        raise DecodeError(f"run consensus produced length {len(c)}, expected {n}")
    _require(longest_periodic(c, 1) <= t, f"decoded word has a run longer than {t}")
    return DecodeResult(c, diagnostics)


# ---------------------------------------------------------------------------
# mixed position errors
# ---------------------------------------------------------------------------

def decode_2h_1poserr(h1, h2, t: int, n: int) -> DecodeResult:
    """Two heads, at most one deletion or one sticky insertion, code ``C1(n, 1, t)``."""
    h1, h2 = _words((h1, h2))
    delta = len(h1) - n
    if delta == 0:
        return DecodeResult(h1, [])
    if delta == -1:
        return decode_2h_1del(h1, h2, t, n)
    if delta == 1:
        return decode_2h_sticky(h1, h2, t, n)
    raise LengthError(f"output length {len(h1)} is more than one away from n={n}")


def _explains(w: Word, out: Word, x: int, y: int) -> bool:
    """Does deleting ``w_x`` and repeating ``w_y`` once turn ``w`` into ``out``?"""
    if x < y:
        return out == w[: x - 1] + w[x:y] + w[y - 1 : y] + w[y:]
    return out == w[:y] + w[y - 1 : y] + w[y : x - 1] + w[x:]


def _common_suffix(u: Word, v: Word) -> int:
    k = 0
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            break
        k += 1
    return k


def _consistent_mixed(w: Word, heads: Sequence[Word], offsets: Sequence[int]) -> bool:
    """Is there one deletion plus one sticky insertion (or no error) yielding ``heads``?"""
    n = len(w)
    if all(h == w for h in heads):
        return True
    top = n - offsets[-1]
    hi_first = top
    lo_second = 1
    for h, off in zip(heads, offsets):
        if h == w:
            continue
        prefix = (leftmost_diff(h, w) or n + 1) - 1
        hi_first = min(hi_first, prefix + 1 - off)
        lo_second = max(lo_second, n - _common_suffix(h, w) - 1 - off)
    for first in range(1, hi_first + 1):
        for second in range(max(first + 1, lo_second), top + 1):
            for x, y in ((first, second), (second, first)):
                if all(_explains(w, h, x + off, y + off) for h, off in zip(heads, offsets)):
                    return True
    return False


def _mixed_candidates(heads: list[Word]) -> list[Word]:
    h1, h2, h3 = heads
    cands: list[Word] = []
    if h1 == h2 == h3:
        cands.append(h1)
    # deletion peeled first, then the insertion
    try:
        a, _ = _peel_deletion(h1, h2)
        b, _ = _peel_deletion(h2, h3)
        cands.append(_peel_sticky(a, b, 1)[0])
    except DecodeError:
        pass
    # insertion peeled first, then the deletion
    try:
        a, _ = _peel_sticky(h1, h2, 1)
        b, _ = _peel_sticky(h2, h3, 1)
        cands.append(_peel_deletion(a, b)[0])
    except DecodeError:
        pass
    # close-together errors: a later head is clean on a prefix that reaches
    # past both errors of an earlier head, whose tail is realigned by then
    for late, early in ((h3, h1), (h2, h1), (h3, h2)):
        for p in range(len(early) + 1):
            cands.append(concat(late[:p], early[p:]))
    return list(dict.fromkeys(cands))


def decode_3h_2poserr(reads, t1: int, n: int, layout: Optional[HeadLayout] = None) -> DecodeResult:
    """Three heads, at most two position errors of any mix, code ``C3(n, <=2, t1)``.

    The net length change selects the branch.  A zero change with differing
    heads means one deletion plus one sticky insertion; candidate words from
    both peel orders and from head splices are kept only if they are
    codewords that reproduce all three outputs, and exactly one must survive.
    """
    heads = _words(reads)
    if layout is None:
        layout = HeadLayout.uniform(3, 3 * t1 - 2)
    if len(heads) != 3 or layout.m != 3:
        raise ParameterError("this decoder uses exactly three heads")
    # the pure branches only need their own distances; the mixed branch needs 3*t1 - 2
    _check_gaps(layout, t1)
    if len({len(h) for h in heads}) != 1:
        raise LengthError("all heads must report words of equal length")
    delta = len(heads[0]) - n
    member = lambda c: len(c) == n and _within_periods(c, t1, (1, 2))  # noqa: E731

    if delta == -2:
        return decode_mh_ddel(heads, layout, n, 2, t1)
    if delta == -1:
        result = decode_2h_1del(heads[0], heads[1], t1, n)
    elif delta == 1:
        result = decode_2h_sticky(heads[0], heads[1], t1, n)
    elif delta == 2:
        c, diagnostics = _run_consensus(heads)
        result = DecodeResult(c, diagnostics)
    elif delta == 0:
        _check_gaps(layout, 3 * t1 - 2)
        offsets = layout.offsets
        found = [c for c in _mixed_candidates(heads) if member(c) and _consistent_mixed(c, heads, offsets)]
        if len(found) != 1:
            raise DecodeError(f"{len(found)} codewords explain the head outputs; expected exactly one")
        j = leftmost_diff(heads[0], heads[1])
        result = DecodeResult(found[0], [] if j is None else [("pair", j)])
    else:
        raise LengthError(f"output length {len(heads[0])} is more than two away from n={n}")
    if not member(result.codeword):
        raise DecodeError(f"decoded word violates C3(n, <=2, {t1})")
    return result


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _class_arg(cls: ErrorClass, k: int = 0) -> int:
    return cls.args[k]


DECODERS: dict[str, Callable[[ReadOut, CodeSpec, HeadLayout, ErrorClass], DecodeResult]] = {
    "identity": lambda r, spec, lay, cls: DecodeResult(Word(r[0]), []),
    "2h1del": lambda r, spec, lay, cls: decode_2h_1del(r[0], r[1], spec.t, spec.n),
    "2hburst": lambda r, spec, lay, cls: decode_2h_burst(r[0], r[1], spec.t, spec.n, _class_arg(cls)),
    "2hleburst": lambda r, spec, lay, cls: decode_2h_leq_burst(r[0], r[1], spec.t, spec.n, _class_arg(cls)),
    "mhddel": lambda r, spec, lay, cls: decode_mh_ddel(r, lay, spec.n, _class_arg(cls), spec.t),
    "dhddel": lambda r, spec, lay, cls: decode_dh_ddel(r, lay, spec.n, _class_arg(cls), spec.t, spec.a),
    "sticky": lambda r, spec, lay, cls: decode_sticky(r, lay, spec.n, spec.t, _class_arg(cls)),
    "2h1poserr": lambda r, spec, lay, cls: decode_2h_1poserr(r[0], r[1], spec.t, spec.n),
    "3h2poserr": lambda r, spec, lay, cls: decode_3h_2poserr(r, spec.t, spec.n, lay),
}


def select_decoder(spec: CodeSpec, layout: HeadLayout, cls: ErrorClass) -> str:
    """Pick the decoder id matching a code, a head layout and an error class."""
    m = layout.m
    kind = cls.kind
    if kind == "none":
        return "identity"
    if kind == "del":
        d = cls.args[0]
        if d == 1 and m == 2:
            return "2h1del"
        if m == d + 1:
            return "mhddel"
        if m == d and spec.family == "C3_VT":
            return "dhddel"
    elif kind == "burst" and m == 2:
        return "2hburst"
    elif kind == "leburst" and m == 2:
        return "2hleburst"
    elif kind == "sticky" and m == cls.args[0] + 1:
        return "sticky"
    elif kind == "poserr":
        e = cls.args[0]
        if e == 1 and m == 2:
            return "2h1poserr"
        if e <= 2 and m == 3:
            return "3h2poserr"
    raise ParameterError(f"no decoder for class {cls} with {m} head(s) on {spec}")


def decode(spec: CodeSpec, layout: HeadLayout, cls: ErrorClass, reads, decoder: Optional[str] = None) -> DecodeResult:
    """Decode head outputs with the named (or automatically selected) decoder."""
    if not isinstance(reads, ReadOut):
        reads = ReadOut(tuple(reads))
    if reads.m != layout.m:
        raise ParameterError(f"got {reads.m} head outputs for a {layout.m}-head layout")
    name = decoder or select_decoder(spec, layout, cls)
    try:
        fn = DECODERS[name]
    except KeyError:
        raise ParameterError(f"unknown decoder {name!r}") from None
    return fn(reads, spec, layout, cls)
