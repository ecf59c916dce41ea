"""Claim verdicts per pair, exhaustive scans, and the resumable sweep engine.

Claim identifiers used throughout the package and its outputs:

  thm1  pi_star(a, b) >= 0.04 * pi(s) for every coprime pair with b > a >= 1
  thm2  pi_star(a, b) >  (1/2 + 1/(2(a-1))) * s / log s   (the "rhs" threshold)
  thm3  for 3 <= a <= 10 the thm2 inequality holds for all b > a except
        (3,4), (3,5), (3,7), and the strict-half property holds below a
        per-a direct-check threshold
  coj1  2 * pi_star vs pi(s): strict / equality / fail
  coj2  thm2 threshold status for b > a >= 3: holds / exception

Verdicts that compare an integer count against a log-bearing threshold are
guarded (see bounds.guarded_strictly_greater); pure integer verdicts are exact.
"""

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith, bounds, pistar
from . import primes as primelib
from .errors import CheckpointCorrupt, DomainError
from .semigroup import new_pair

COJ1_STRICT = "strict"
COJ1_EQUALITY = "equality"
COJ1_FAIL = "fail"
COJ2_HOLDS = "holds"
COJ2_EXCEPTION = "exception"

EXPECTED_COJ2_EXCEPTIONS = ((3, 4), (3, 5), (3, 7))
EXPECTED_COJ1_EQUALITIES = ((2, 3), (2, 5), (3, 5))

B_RULE_UPTO = "upto"
B_RULE_50A2 = "50a2"
B_RULE_EXP = "exp-threshold"

SCHEMA_VERSION = 1
CSV_HEADER = "a,b,s,pi_star,pi_s,thm2_rhs,thm2,thm1,coj1,coj2,ms"
CHECKPOINT_FIELDS = (
    "schema",
    "a",
    "b",
    "s",
    "pi_star",
    "pi_s",
    "thm2_rhs",
    "thm2",
    "thm1",
    "coj1",
    "coj2",
    "ms",
)

_CHUNK = 1024

CASE1_DELTA = Fraction(1, 10)
CASE1_THRESHOLD = Fraction("0.0445")
CASE2_DELTA = Fraction("0.0904")
CASE2_THRESHOLD = Fraction("0.0401")
CASE3_DELTA = Fraction("0.095")
CASE3_THRESHOLD = Fraction("0.0425")
CASE4_THRESHOLD = Fraction("0.05334")

# thresholds of the strict-half window checks for the two largest direct cases
_WINDOW_S_MIN = {9: 18595, 10: 60180}


@dataclass(frozen=True)
class VerificationRecord:
    a: int
    b: int
    s: int
    pi_star: int
    pi_s: int
    thm2_rhs: float  # nan outside the a >= 3, s >= 2 domain
    thm2_holds: bool
    thm1_holds: bool
    coj1_status: str
    coj2_status: str
    runtime_ms: int = 0


# ----------------------------------------------------------------------
# record serialization (canonical outputs carry ms = 0 so runs are replayable)


def _fmt_real(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return format(x, ".6g")


def record_to_csv(rec: VerificationRecord) -> str:
    return ",".join(
        (
            str(rec.a),
            str(rec.b),
            str(rec.s),
            str(rec.pi_star),
            str(rec.pi_s),
            _fmt_real(rec.thm2_rhs),
            str(rec.thm2_holds).lower(),
            str(rec.thm1_holds).lower(),
            rec.coj1_status,
            rec.coj2_status,
            "0",
        )
    )


def record_to_dict(rec: VerificationRecord) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "a": rec.a,
        "b": rec.b,
        "s": rec.s,
        "pi_star": rec.pi_star,
        "pi_s": rec.pi_s,
        "thm2_rhs": None if math.isnan(rec.thm2_rhs) else rec.thm2_rhs,
        "thm2": rec.thm2_holds,
        "thm1": rec.thm1_holds,
        "coj1": rec.coj1_status,
        "coj2": rec.coj2_status,
        "ms": 0,
    }


def record_from_dict(obj) -> VerificationRecord:
    if not isinstance(obj, dict):
        raise CheckpointCorrupt("record is not an object")
    got = set(obj)
    want = set(CHECKPOINT_FIELDS)
    if got - want:
        raise CheckpointCorrupt(f"unknown fields: {sorted(got - want)}")
    if want - got:
        raise CheckpointCorrupt(f"missing fields: {sorted(want - got)}")
    if obj["schema"] != SCHEMA_VERSION:
        raise CheckpointCorrupt(f"unsupported schema {obj['schema']!r}")
    for key in ("a", "b", "s", "pi_star", "pi_s", "ms"):
        if not isinstance(obj[key], int) or isinstance(obj[key], bool):
            raise CheckpointCorrupt(f"field {key} must be an integer")
    for key in ("thm2", "thm1"):
        if not isinstance(obj[key], bool):
            raise CheckpointCorrupt(f"field {key} must be a boolean")
    if obj["coj1"] not in (COJ1_STRICT, COJ1_EQUALITY, COJ1_FAIL):
        raise CheckpointCorrupt(f"bad coj1 value {obj['coj1']!r}")
    if obj["coj2"] not in (COJ2_HOLDS, COJ2_EXCEPTION):
        raise CheckpointCorrupt(f"bad coj2 value {obj['coj2']!r}")
    rhs = obj["thm2_rhs"]
    if rhs is None:
        rhs = math.nan
    elif not isinstance(rhs, (int, float)) or isinstance(rhs, bool):
        raise CheckpointCorrupt("field thm2_rhs must be a number or null")
    return VerificationRecord(
        obj["a"],
        obj["b"],
        obj["s"],
        obj["pi_star"],
        obj["pi_s"],
        float(rhs),
        obj["thm2"],
        obj["thm1"],
        obj["coj1"],
        obj["coj2"],
        obj["ms"],
    )


def _trim_torn_tail(path: str):
    """Drop a trailing half-written line so appends start on a fresh line."""
    if not os.path.exists(path):
        return
    with open(path, "rb+") as fh:
        raw = fh.read()
        if not raw or raw.endswith(b"\n"):
            return
        complete, sep, _ = raw.rpartition(b"\n")
        fh.truncate(len(complete) + len(sep))


def load_checkpoint(path: str) -> dict:
    """Completed records keyed by (a, b).

    A final line without a terminating newline is an interrupted append; the
    pair is simply recomputed. Any complete line that fails to parse or
    validate raises CheckpointCorrupt.
    """
    if not os.path.exists(path):
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    if not raw:
        return {}
    complete, _, _partial = raw.rpartition("\n")
    out = {}
    if not complete:
        return out
    for i, line in enumerate(complete.split("\n"), start=1):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CheckpointCorrupt(f"line {i}: invalid JSON ({e.msg})") from None
        rec = record_from_dict(obj)
        out[(rec.a, rec.b)] = rec
    return out


# ----------------------------------------------------------------------
# per-pair evaluation


def evaluate_pair(a: int, b: int, s: int, pi_star: int, pi_s: int, runtime_ms: int = 0) -> VerificationRecord:
    """Assemble all verdicts from the computed counts."""
    amin = a if a <= b else b
    if amin >= 3 and s >= 2:
        rhs = bounds.thm2_rhs(amin, s)
        holds = bounds.pi_star_exceeds_thm2_rhs(pi_star, amin, s)
    else:
        rhs = math.nan
        holds = True  # threshold undefined; treated as vacuously holding
    thm1 = 100 * pi_star >= 4 * pi_s
    diff = 2 * pi_star - pi_s
    if diff > 0:
        coj1 = COJ1_STRICT
    elif diff == 0:
        coj1 = COJ1_EQUALITY
    else:
        coj1 = COJ1_FAIL
    coj2 = COJ2_HOLDS if holds else COJ2_EXCEPTION
    return VerificationRecord(a, b, s, pi_star, pi_s, rhs, holds, thm1, coj1, coj2, runtime_ms)


def check_pair(a: int, b: int, cross_check: bool = False, brute_cap: int = pistar.BRUTE_FORCE_CAP) -> VerificationRecord:
    """Full verdict record for one pair; optionally cross-check all methods."""
    pair = new_pair(a, b)
    t0 = time.perf_counter()
    fast = pistar.pi_star_fast(pair)
    if cross_check:
        residue = pistar.pi_star_residue_sum(pair)
        if residue.pi_star != fast.pi_star:
            raise RuntimeError(f"method disagreement at ({a},{b}): residue-sum {residue.pi_star} vs fast {fast.pi_star}")
        if pair.s <= brute_cap:
            brute = pistar.pi_star_bruteforce(pair, cap=brute_cap)
            if brute.pi_star != fast.pi_star:
                raise RuntimeError(f"method disagreement at ({a},{b}): brute-force {brute.pi_star} vs fast {fast.pi_star}")
    ms = int(round((time.perf_counter() - t0) * 1000))
    return evaluate_pair(a, b, pair.s, fast.pi_star, fast.pi_s, ms)


# ----------------------------------------------------------------------
# grid iteration with a shared per-a prime table


def exp_threshold_b_max(a: int) -> int:
    """Largest b covered by the per-a direct strict-half check, 2 <= a <= 10."""
    if a == 9:
        return 2325
    if a == 10:
        return 6687
    if 2 <= a <= 8:
        return math.floor(math.exp(1.5 * (a - 1)) / (a - 1) + 2)
    raise DomainError("direct-check threshold defined for 2 <= a <= 10")


def b_limit(rule: str, a: int, b_max: int = None) -> int:
    if rule == B_RULE_UPTO:
        if b_max is None:
            raise ValueError("b rule 'upto' needs an explicit bound")
        return b_max
    if rule == B_RULE_50A2:
        return 50 * a * a
    if rule == B_RULE_EXP:
        return exp_threshold_b_max(a)
    raise ValueError(f"unknown b rule {rule!r}")


def _coprime_bs(a: int, lo: int, hi: int) -> list:
    return [b for b in range(lo, hi + 1) if math.gcd(a, b) == 1]


def iter_pair_stats(a: int, bs):
    """Yield (b, s, pi_star, pi_s) for each b, sharing one prime table."""
    bs = list(bs)
    if not bs:
        return
    s_max = max(a * b - a - b for b in bs)
    table = primelib.primes_array(max(s_max, 2))
    for b in bs:
        s = a * b - a - b
        if a == 1 or b == 1 or s < 2:
            yield b, s, 0, 0
            continue
        b_inv = pow(b, -1, a)
        idx = int(np.searchsorted(table, s, side="right"))
        chunk = table[:idx]
        yield b, s, pistar.count_gap_primes(chunk, a, b, b_inv), idx


# ----------------------------------------------------------------------
# scans


def scan_coj2_exceptions(a_max: int, b_rule: str = B_RULE_50A2, b_max: int = None, a_min: int = 3) -> list:
    """All pairs with b > a in the grid where the thm2 threshold fails, ascending."""
    found = []
    for a in range(max(a_min, 3), a_max + 1):
        hi = b_limit(b_rule, a, b_max)
        for b, s, ps, pis in iter_pair_stats(a, _coprime_bs(a, a + 1, hi)):
            if not bounds.pi_star_exceeds_thm2_rhs(ps, a, s):
                found.append((a, b))
    return found


@dataclass(frozen=True)
class Coj1ScanResult:
    equalities: list  # (a, b) pairs with a >= 2 and 2*pi_star == pi_s
    failures: list  # (a, b) pairs with 2*pi_star < pi_s (expected none)
    a1_family_checked: int  # sampled b count for a = 1; each is an equality


def scan_coj1_equalities(a_max: int, b_max: int = None) -> Coj1ScanResult:
    """Equality and failure pairs for the half-bound comparison.

    b_max None means the per-a direct-check threshold; the a = 1 family
    (always 0 = 0) is sampled rather than listed pair by pair.
    """
    equalities = []
    failures = []
    a1_checked = 0
    for b in range(1, 101):
        r = pistar.pi_star_fast(new_pair(1, b))
        if 2 * r.pi_star != r.pi_s:
            failures.append((1, b))
        a1_checked += 1
    for a in range(2, a_max + 1):
        hi = b_max if b_max is not None else exp_threshold_b_max(a)
        for b, s, ps, pis in iter_pair_stats(a, _coprime_bs(a, a + 1, hi)):
            diff = 2 * ps - pis
            if diff == 0:
                equalities.append((a, b))
            elif diff < 0:
                failures.append((a, b))
    return Coj1ScanResult(equalities, failures, a1_checked)


# ----------------------------------------------------------------------
# finite reproduction of the headline claims


@dataclass(frozen=True)
class Thm3Report:
    a: int
    b_direct_max: int
    threshold_exceptions: list
    expected_threshold_exceptions: list
    half_equalities: list
    expected_half_equalities: list
    half_failures: list
    window_ok: bool  # None when no window clause applies

    @property
    def passed(self) -> bool:
        return (
            self.threshold_exceptions == self.expected_threshold_exceptions
            and self.half_equalities == self.expected_half_equalities
            and not self.half_failures
            and self.window_ok in (None, True)
        )


def _strict_half_window_ok(a: int) -> bool:
    """pi(n) < (n / log n)(1 + 1/(a-1)) for every integer n in (s_min, e^{3(a-1)/2}]."""
    lo = _WINDOW_S_MIN[a]
    hi = math.floor(math.exp(1.5 * (a - 1)))
    table = primelib.primes_array(hi)
    ns = np.arange(lo + 1, hi + 1, dtype=np.int64)
    counts = np.searchsorted(table, ns, side="right")
    rhs = ns / np.log(ns) * (1.0 + 1.0 / (a - 1))
    return bool(np.all(counts < rhs))


def reproduce_thm3(a: int) -> Thm3Report:
    """Run every finite check behind the thm3 claim for one a in [3, 10]."""
    if not 3 <= a <= 10:
        raise DomainError("thm3 covers 3 <= a <= 10")
    exceptions = scan_coj2_exceptions(a, B_RULE_50A2, a_min=a)
    expected_exc = [(x, y) for x, y in EXPECTED_COJ2_EXCEPTIONS if x == a]
    b_direct = exp_threshold_b_max(a)
    equalities = []
    failures = []
    for b, s, ps, pis in iter_pair_stats(a, _coprime_bs(a, a + 1, b_direct)):
        diff = 2 * ps - pis
        if diff == 0:
            equalities.append((a, b))
        elif diff < 0:
            failures.append((a, b))
    expected_eq = [(3, 5)] if a == 3 else []
    window_ok = _strict_half_window_ok(a) if a in _WINDOW_S_MIN else None
    return Thm3Report(a, b_direct, exceptions, expected_exc, equalities, expected_eq, failures, window_ok)


@dataclass(frozen=True)
class Thm1CaseReport:
    case_id: int
    n_pairs: int  # pairs in the computational branch (0 when purely analytic)
    computational_failures: list
    analytic_min: float  # None when the case has no analytic branch
    analytic_threshold: float
    analytic_ok: bool

    @property
    def ok(self) -> bool:
        return not self.computational_failures and self.analytic_ok


def h_poly(a: int) -> int:
    """Smallest s on the grid when b > a: s at b = a + 1."""
    return a * a - a - 1


def g_poly(a: int) -> int:
    """Smallest s when b > 1000: s at b = 1001."""
    return 1000 * a - 1001


def case1_sample_points(n: int = 200, lo: int = 60001, hi: int = 10_000_000) -> list:
    return bounds.log_spaced_ints(lo, hi, n)


def _delta_scan(d: Fraction, a_values, s_of_a, threshold: Fraction):
    worst = math.inf
    ok = True
    for a in a_values:
        fac = arith.factor(a)
        s = s_of_a(a)
        val = bounds.delta(d, a, s, factored=fac)
        if val < worst:
            worst = val
        if not bounds.delta_exceeds(d, a, s, threshold, factored=fac):
            ok = False
    return worst, ok


def reproduce_thm1_cases(case_id: int, case1_samples: int = 200) -> Thm1CaseReport:
    """Reproduce the finite checks behind one of the four thm1 regimes.

    1: a > 6*10**4           delta(0.1, a, a**2-a-1) > 0.0445 on sampled a
    2: 181 <= a <= 6*10**4   delta(0.0904, a, a**2-a-1) > 0.0401 for every a
    3: 16 <= a <= 180        b <= 1000 computational branch plus
                             delta(0.095, a, 1000a-1001) > 0.0425 for every a
    4: 3 <= a <= 15          b <= 180 half-bound branch plus the closed
                             constant > 0.05334 for every a
    """
    if case_id == 1:
        worst, ok = _delta_scan(CASE1_DELTA, case1_sample_points(case1_samples), h_poly, CASE1_THRESHOLD)
        return Thm1CaseReport(1, 0, [], worst, float(CASE1_THRESHOLD), ok)
    if case_id == 2:
        worst, ok = _delta_scan(CASE2_DELTA, range(181, 60001), h_poly, CASE2_THRESHOLD)
        return Thm1CaseReport(2, 0, [], worst, float(CASE2_THRESHOLD), ok)
    if case_id == 3:
        failures = []
        n_pairs = 0
        for a in range(16, 181):
            bs = _coprime_bs(a, a + 1, 1000)
            if not bs:
                continue
            s_max = a * max(bs) - a - max(bs)
            table = primelib.primes_array(max(s_max, 2))
            for b in bs:
                s = a * b - a - b
                b_inv = pow(b, -1, a)
                cut = int(np.searchsorted(table, s // 20, side="right"))
                low_gaps = pistar.count_gap_primes(table[:cut], a, b, b_inv)
                pi_s = int(np.searchsorted(table, s, side="right"))
                n_pairs += 1
                if not 10_000 * low_gaps > 663 * pi_s:
                    failures.append((a, b))
        worst, ok = _delta_scan(CASE3_DELTA, range(16, 181), g_poly, CASE3_THRESHOLD)
        return Thm1CaseReport(3, n_pairs, failures, worst, float(CASE3_THRESHOLD), ok)
    if case_id == 4:
        failures = []
        n_pairs = 0
        for a in range(3, 16):
            for b, s, ps, pis in iter_pair_stats(a, _coprime_bs(a, a + 1, 180)):
                n_pairs += 1
                if not 2 * ps >= pis:
                    failures.append((a, b))
        worst = min(bounds.case4_constant(a) for a in range(3, 16))
        ok = all(bounds.case4_constant_exceeds(a, CASE4_THRESHOLD) for a in range(3, 16))
        return Thm1CaseReport(4, n_pairs, failures, worst, float(CASE4_THRESHOLD), ok)
    raise ValueError("case_id must be 1, 2, 3 or 4")


# ----------------------------------------------------------------------
# sweep engine


@dataclass(frozen=True)
class SweepConfig:
    a_min: int = 3
    a_max: int = 10
    b_rule: str = B_RULE_50A2
    b_max: int = None
    cross_check: bool = False
    workers: int = 1
    checkpoint_path: str = None
    brute_cap: int = pistar.BRUTE_FORCE_CAP


@dataclass(frozen=True)
class SweepSummary:
    n_pairs: int
    coj2_exceptions: list
    coj1_equalities: list
    coj1_failures: list
    thm1_failures: list


@dataclass(frozen=True)
class SweepResult:
    records: list
    summary: SweepSummary


def grid_pairs(cfg: SweepConfig) -> dict:
    """Coprime b values per a, always with b > a."""
    out = {}
    for a in range(cfg.a_min, cfg.a_max + 1):
        hi = b_limit(cfg.b_rule, a, cfg.b_max)
        bs = _coprime_bs(a, a + 1, hi)
        if bs:
            out[a] = bs
    return out


def _sweep_chunk(a, bs, cross_check, brute_cap):
    out = []
    for b, s, ps, pis in iter_pair_stats(a, bs):
        if cross_check:
            pair = new_pair(a, b)
            residue = pistar.pi_star_residue_sum(pair)
            if residue.pi_star != ps:
                raise RuntimeError(f"method disagreement at ({a},{b})")
            if s <= brute_cap:
                brute = pistar.pi_star_bruteforce(pair, cap=brute_cap)
                if brute.pi_star != ps:
                    raise RuntimeError(f"method disagreement at ({a},{b})")
        out.append(evaluate_pair(a, b, s, ps, pis))
    return out


def _summarize(records) -> SweepSummary:
    return SweepSummary(
        n_pairs=len(records),
        coj2_exceptions=[(r.a, r.b) for r in records if r.coj2_status == COJ2_EXCEPTION],
        coj1_equalities=[(r.a, r.b) for r in records if r.coj1_status == COJ1_EQUALITY],
        coj1_failures=[(r.a, r.b) for r in records if r.coj1_status == COJ1_FAIL],
        thm1_failures=[(r.a, r.b) for r in records if not r.thm1_holds],
    )


def sweep(cfg: SweepConfig) -> SweepResult:
    """Run the grid, appending finished pairs to the checkpoint as they land.

    Output order is deterministic: records are sorted by (a, b) regardless of
    worker count or resume state. Checkpointed pairs are reused, not recomputed.
    """
    grid = grid_pairs(cfg)
    done = load_checkpoint(cfg.checkpoint_path) if cfg.checkpoint_path else {}
    reused = []
    tasks = []
    for a, bs in grid.items():
        pending = []
        for b in bs:
            if (a, b) in done:
                reused.append(done[(a, b)])
            else:
                pending.append(b)
        for i in range(0, len(pending), _CHUNK):
            tasks.append((a, pending[i : i + _CHUNK]))

    new_records = []
    if cfg.checkpoint_path:
        _trim_torn_tail(cfg.checkpoint_path)
        ckpt = open(cfg.checkpoint_path, "a", encoding="utf-8")
    else:
        ckpt = None
    try:

        def emit(chunk_records):
            new_records.extend(chunk_records)
            if ckpt is not None:
                for rec in chunk_records:
                    ckpt.write(json.dumps(record_to_dict(rec)) + "\n")
                ckpt.flush()

        if cfg.workers <= 1 or len(tasks) <= 1:
            for a, bs in tasks:
                emit(_sweep_chunk(a, bs, cfg.cross_check, cfg.brute_cap))
        else:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                futures = [
                    pool.submit(_sweep_chunk, a, bs, cfg.cross_check, cfg.brute_cap) for a, bs in tasks
                ]
                for fut in as_completed(futures):
                    emit(fut.result())
    finally:
        if ckpt is not None:
            ckpt.close()

    records = sorted(reused + new_records, key=lambda r: (r.a, r.b))
    return SweepResult(records, _summarize(records))
