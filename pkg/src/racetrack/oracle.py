"""Brute-force ground truth.

Everything here enumerates: codebooks by filtering all ``2^n`` words through
the membership predicate, head outputs by applying each event with the
``bitword`` operators directly.  No decoder code is reused, so a verifier
pass is independent evidence that a decoder is right.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .bitword import Word, delete, longest_periodic, sticky_insert
from .channel import DEL, ErrorClass, ErrorPattern, HeadLayout, pattern_bound, patterns
from .constraints import CodeSpec, count, count_by_automaton, count_r, is_member, lower_bound_c3, vt_checksum
from .decoders import DECODERS, DecodeResult
from .errors import BudgetExceeded, DecodeError, ParameterError

DEFAULT_BUDGET = 2 ** 26


@dataclass
class VerifyReport:
    spec: str
    layout: Optional[HeadLayout]
    cls: str
    trials: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "layout": self.layout.to_dict() if self.layout is not None else None,
            "class": self.cls,
            "trials": self.trials,
            "pass": self.passed,
            "failures": [list(f) for f in self.failures],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "VerifyReport":
        layout = HeadLayout.from_dict(data["layout"]) if data.get("layout") is not None else None
        report = cls(data["spec"], layout, data["class"], data["trials"], [tuple(f) for f in data["failures"]])
        if report.passed != data["pass"]:
            raise ParameterError("report pass flag disagrees with its failure list")
        return report


def brute_codewords(spec: CodeSpec) -> Iterable[Word]:
    """Codewords in lexicographic order, by filtering every word."""
    for bits in itertools.product((0, 1), repeat=spec.n):
        w = Word._wrap(bits)
        if is_member(spec, w):
            yield w


def head_outputs(c: Word, layout: HeadLayout, pattern: ErrorPattern) -> tuple[Word, ...]:
    """Independent channel: apply events right to left so earlier positions stay put."""
    outs = []
    for off in layout.offsets:
        w = c
        for ev in sorted(pattern.events, reverse=True):
            p = ev.pos + off
            if ev.kind == DEL:
                w = delete(w, range(p, p + ev.length))
            else:
                w = sticky_insert(w, p, ev.length)
        outs.append(w)
    return tuple(outs)


def _guard(spec: CodeSpec, layout: HeadLayout, cls: ErrorClass, budget: int) -> None:
    work = 2 ** spec.n * max(pattern_bound(spec.n, layout, cls), 1)
    if work > budget:
        raise BudgetExceeded(f"{spec} under {cls} needs about {work} trials; budget is {budget}")


def _resolve(decoder) -> Callable:
    if callable(decoder):
        return decoder
    try:
        return DECODERS[decoder]
    except KeyError:
        raise ParameterError(f"unknown decoder {decoder!r}") from None


def verify_decoder(
    spec: CodeSpec,
    layout: HeadLayout,
    cls: ErrorClass,
    decoder: Union[str, Callable],
    budget: int = DEFAULT_BUDGET,
) -> VerifyReport:
    """Run ``decoder`` on every codeword under every pattern of ``cls``.

    ``decoder`` is a registry id or any callable with the registry signature
    ``(reads, spec, layout, cls)`` returning a :class:`DecodeResult` or word.
    Failures are ``(codeword, pattern_json, got)`` with ``got`` either the
    wrong word or ``"error: ..."``.
    """
    _guard(spec, layout, cls, budget)
    fn = _resolve(decoder)
    pats = list(patterns(spec.n, layout, cls))
    report = VerifyReport(str(spec), layout, str(cls))
    for c in brute_codewords(spec):
        for pat in pats:
            report.trials += 1
            reads = head_outputs(c, layout, pat)
            try:
                got = fn(reads, spec, layout, cls)
            except DecodeError as exc:
                report.failures.append((str(c), pat.to_json(), f"error: {exc}"))
                continue
            if isinstance(got, DecodeResult):
                got = got.codeword
            if tuple(got) != c:
                report.failures.append((str(c), pat.to_json(), str(Word(got))))
    report.failures.sort()
    return report


def verify_uniqueness(
    spec: CodeSpec,
    layout: HeadLayout,
    cls: ErrorClass,
    budget: int = DEFAULT_BUDGET,
) -> VerifyReport:
    """Check that distinct codewords never share a possible head read-out.

    A collision is reported as ``(codeword, pattern_json, other_codeword)``:
    the read-out of ``codeword`` under the pattern is also producible from
    ``other_codeword`` (the lexicographically first one to produce it).
    """
    _guard(spec, layout, cls, budget)
    pats = list(patterns(spec.n, layout, cls))
    report = VerifyReport(str(spec), layout, str(cls))
    owner: dict = {}
    for c in brute_codewords(spec):
        for pat in pats:
            report.trials += 1
            key = head_outputs(c, layout, pat)
            first = owner.setdefault(key, c)
            if first != c:
                report.failures.append((str(c), pat.to_json(), str(first)))
    report.failures.sort()
    return report


def _histograms(n: int, b_max: int, vt_max: int):
    # hist[b][t]: words with max_{l<=b} L(u,l) == t;  per[b][t]: words with L(u,b) == t
    per = {b: [0] * (n + 1) for b in range(1, b_max + 1)}
    hist = {b: [0] * (n + 1) for b in range(1, b_max + 1)}
    vt: dict = {}
    for bits in itertools.product((0, 1), repeat=n):
        worst = 0
        for b in range(1, min(b_max, n) + 1):
            val = longest_periodic(bits, b)
            per[b][val] += 1
            worst = max(worst, val)
            hist[b][worst] += 1
            if n <= vt_max:
                key = (b, worst, vt_checksum(bits, n + 1))
                vt[key] = vt.get(key, 0) + 1
    return per, hist, vt


def verify_counts(n_max: int = 18, b_max: int = 3, vt_max: int = 10) -> VerifyReport:
    """Cross-check every counting route against enumeration for ``n <= n_max``.

    For each ``n``, ``b <= b_max`` and ``b <= t <= n`` the checks are:
    enumeration = closed form = automaton DP for C1, C2 and C3; the C2
    product ``2^b |R(n-b, t-b)|`` and its C1 restatement; the C3 lower
    bound for ``t > b``; and enumeration = DP for C3_VT at every residue
    when ``n <= vt_max``.  Failures are ``(spec, check, detail)``.
    """
    report = VerifyReport(f"n<={n_max},b<={b_max}", None, "counts")
    fail = report.failures.append
    for n in range(1, n_max + 1):
        per, hist, vt = _histograms(n, b_max, vt_max)
        for b in range(1, min(b_max, n) + 1):
            for t in range(b, n + 1):
                c2 = sum(per[b][: t + 1])
                c3 = sum(hist[b][: t + 1])
                specs = [(CodeSpec("C2", n, t, b), c2), (CodeSpec("C3", n, t, b), c3)]
                if b == 1:
                    specs.append((CodeSpec("C1", n, t), c2))
                for spec, enumerated in specs:
                    report.trials += 1
                    for label, value in (("formula", count(spec)), ("automaton", count_by_automaton(spec))):
                        if value != enumerated:
                            fail((str(spec), label, f"{value} != enumerated {enumerated}"))
                report.trials += 1
                product = 2 ** b * count_r(n - b, t - b)
                if product != c2:
                    fail((f"C2:{n}:{b}:{t}", "period-check product", f"{product} != {c2}"))
                restated = 2 ** b * count(CodeSpec("C1", n - b + 1, t - b + 1)) // 2
                if restated != c2:
                    fail((f"C2:{n}:{b}:{t}", "run-code restatement", f"{restated} != {c2}"))
                if t > b and lower_bound_c3(n, b, t) > c3:
                    fail((f"C3:{n}:{b}:{t}", "lower bound", f"{lower_bound_c3(n, b, t)} > {c3}"))
                if n <= vt_max:
                    for a in range(n + 1):
                        report.trials += 1
                        enumerated = sum(vt.get((b, tt, a), 0) for tt in range(t + 1))
                        spec = CodeSpec("C3_VT", n, t, b, a)
                        if count(spec) != enumerated:
                            fail((str(spec), "automaton", f"{count(spec)} != enumerated {enumerated}"))
    return report
