"""The eight acceptance criteria, each reported on its own PASS/FAIL line."""

import math
import time
from contextlib import contextmanager

from racetrack.bitword import Word, delete, delete_burst, longest_periodic, subword
from racetrack.channel import DeletionBurst, ErrorClass, ErrorPattern, HeadLayout, read
from racetrack.cli import simulate
from racetrack.constraints import CodeSpec, count, rank, redundancy, unrank
from racetrack.decoders import decode_2h_1del, decode_mh_ddel
from racetrack.oracle import verify_counts, verify_decoder, verify_uniqueness


@contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as exc:
        with capsys.disabled():
            print(f"\nacceptance {number}: FAIL  {title} ({type(exc).__name__}: {str(exc)[:120]})")
        raise
    with capsys.disabled():
        print(f"\nacceptance {number}: PASS  {title} [{elapsed:.1f}s]")


def ceil_log2(n):
    return (n - 1).bit_length()


def sweep(spec, gaps, cls, decoder):
    """Exhaustive check; returns the trial count and fails on any mismatch."""
    report = verify_decoder(spec, HeadLayout(gaps), ErrorClass.parse(cls), decoder)
    assert report.passed, (str(spec), gaps, cls, report.failures[:3])
    return report.trials


def test_worked_examples(capsys):
    with criterion(capsys, 1, "worked examples reproduce bit-exactly", limit=1.0):
        u = Word("001101011")
        assert subword(u, 4, 8) == Word("10101")
        assert longest_periodic(u, 1) == 2
        assert longest_periodic(u, 2) == 5

        assert delete(u, {4}) == Word("00101011")
        assert delete(u, {4, 7, 9}) == Word("001011")
        assert delete_burst(u, 3, 4) == Word("00011")

        h1, h2 = read(u, HeadLayout((3,)), ErrorPattern((DeletionBurst(3),)))
        assert (h1, h2) == (Word("00101011"), Word("00110011"))
        result = decode_2h_1del(h1, h2, 3, 9)
        assert result.codeword == u and result.indices == [4]

        c = Word("00110110111")
        layout = HeadLayout((4, 4))
        reads = read(c, layout, ErrorPattern((DeletionBurst(1), DeletionBurst(3))))
        assert reads.outputs == (delete(c, {1, 3}), delete(c, {5, 7}), delete(c, {9, 11}))
        result = decode_mh_ddel(reads, layout, 11, 2, 3)
        assert result.codeword == c and result.indices == [2, 5, 4]


def test_two_head_single_deletion_exhaustive(capsys):
    with criterion(capsys, 2, "two-head single deletion, n in [4,14], zero failures", limit=120):
        trials = 0
        for n in range(4, 15):
            for t in sorted({3, 4, ceil_log2(n) + 1}):
                if t <= n:
                    trials += sweep(CodeSpec("C1", n, t), (t,), "del:1", "2h1del")
        assert trials > 0


def test_burst_exhaustive(capsys):
    with criterion(capsys, 3, "exact-b and at-most-b bursts, n <= 13, zero failures", limit=300):
        for b in (2, 3):
            for n in range(b + 1, 14):
                t = ceil_log2(n) + b
                if t <= n:
                    sweep(CodeSpec("C2", n, t, b), (t,), f"burst:{b}", "2hburst")
                if t + 1 <= n:
                    sweep(CodeSpec("C3", n, t + 1, b), (t + 1,), f"leburst:{b}", "2hleburst")


def test_multi_deletion_and_position_errors_exhaustive(capsys):
    with criterion(capsys, 4, "double deletion, sticky bursts, 1 and 2 position errors", limit=600):
        t1 = 3
        for n in range(4, 13):
            sweep(CodeSpec("C3", n, t1, 2), (2 * (t1 - 1),) * 2, "del:2", "mhddel")
        for d in (1, 2, 3):
            for n in range(4, 13):
                sweep(CodeSpec("C1", n, 3), (3,) * d, f"sticky:{d}:2", "sticky")
        for n in range(4, 13):
            sweep(CodeSpec("C1", n, 3), (3,), "poserr:1", "2h1poserr")
        # with t1 = 3 the heads span 2*(3*t1 - 2) = 14 > 12 cells, so n <= 12 admits no
        # error at all; check the same gaps where patterns exist, and t1 = 2 inside n <= 12
        mixed = 0
        for n in range(4, 13):
            mixed += sweep(CodeSpec("C3", n, 2, 2), (4, 4), "poserr:2", "3h2poserr")
        for n in (15, 16, 17):
            mixed += sweep(CodeSpec("C3", n, t1, 2), (3 * t1 - 2,) * 2, "poserr:2", "3h2poserr")
        assert mixed > 0


def test_counting_identities(capsys):
    with criterion(capsys, 5, "counting identities and lower bound, n <= 18, b <= 3", limit=300):
        report = verify_counts(n_max=18, b_max=3)
        assert report.passed, report.failures[:5]
        assert report.trials > 1000


def test_redundancy_constants(capsys):
    with criterion(capsys, 6, "redundancy constants", limit=60):
        for k in range(8, 13):
            assert 0.30 <= redundancy(CodeSpec("C1", 2 ** k, k + 1)) <= 0.43
            for b in (2, 3):
                assert redundancy(CodeSpec("C3", 2 ** k, k + b + 1, b)) <= 1.0
        checked = 0
        for n in range(2, 19):
            for d in (1, 2, 3):
                t = ceil_log2(n) + d + 1
                if t > n:
                    continue
                # the claim is existential in the residue: take the largest class
                best = max(count(CodeSpec("C3_VT", n, t, d, a)) for a in range(n + 1))
                assert n - math.log2(best) <= ceil_log2(n + 1) + 1, (n, d)
                checked += 1
        assert checked > 0


def test_uniqueness_witness(capsys):
    with criterion(capsys, 7, "two heads give disjoint read-outs, one head collides", limit=120):
        for n in range(4, 13):
            spec = CodeSpec("C1", n, 3)
            cls = ErrorClass.parse("del:1")
            assert verify_uniqueness(spec, HeadLayout((3,)), cls).passed
            single = verify_uniqueness(spec, HeadLayout(()), cls)
            assert not single.passed and single.failures


def test_encoder_round_trip(capsys):
    with criterion(capsys, 8, "rank/unrank round trip and 10^4 seeded trials at n=4096", limit=60):
        for n in range(1, 17):
            t = min(4, n)
            specs = [CodeSpec("C1", n, min(3, n))]
            if n >= 2:
                specs += [CodeSpec("C2", n, t, 2), CodeSpec("C3", n, t, 2), CodeSpec("C3_VT", n, t, 2, n // 2)]
            for spec in specs:
                for k in range(count(spec)):
                    assert rank(spec, unrank(spec, k)) == k
        report = simulate(CodeSpec("C1", 4096, 13), HeadLayout((13,)), ErrorClass.parse("del:1"), seed=2024, trials=10_000)
        assert report["successes"] == 10_000 and not report["failures"]
