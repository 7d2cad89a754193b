"""Construction of the stage chain T_1 < N_1 < T_2 < N_2 < ... for a rate alpha.

``bound`` mode is the production regime: the crossing degree N_j (minimal n
with c_n of the stage algebra >= alpha^n) is bracketed by a certified
interval instead of computed exactly.  The upper end N_hi comes from the
factorial lower bound (k! at degrees n = kT+1), the lower end N_lo from the
iterated polynomial upper bound 2T^3 n!/T!.  Because the threshold
inequality's left side grows with N, running it at N_hi is conservative,
and that monotonicity is itself certified at the used points.

``exact`` mode computes true codimensions and is feasible only at toy sizes
(engine caps); plans it emits are labeled toy.

Scale notes.  Already for alpha = 3 the second stage has N_2 around
10^20000, so three search regimes coexist, all certified:

* plain scans with exact big-integer arithmetic where the numbers are sane;
* bisection over the region where lhs/rhs of the threshold inequality is
  provably monotone (for n > 2N both ratio terms are strictly decreasing:
  d/dn ln(t1/rhs) = -ln(1 - N/n) - ln(2 + 2^-j) <= ln 2 - ln(2 + 2^-j) < 0,
  and d/dn ln(t2/rhs) = 3/n - ln(1 + 2^-j-1) < 0 once n > 3/ln(1 + 2^-j-1));
* a floating Newton presolve at escalating precision to localize the
  crossing, followed by a certified window check that pins the exact
  minimal integer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
from mpmath import libmp

from . import bounds
from .algebra import make_bt
from .bounds import (
    FAILS,
    HOLDS,
    UNDECIDED,
    BoundCheck,
    CertifiedScalar,
    DEFAULT_LADDER,
    LadderConfig,
    check_eq5,
    check_eq10,
    crude_upper,
    log_factorial_bounds,
    phi_pow_exact,
)
from .engine import DEFAULT_CONFIG, EngineConfig, codim
from .errors import (
    InvalidParameterError,
    PrecisionExhaustedError,
    ResourceLimitError,
)
from .util import ensure_int_str_digits

MODE_BOUND = "bound"
MODE_EXACT = "exact"

_EXACT_N_SCAN_LIMIT = 1_000_000


@dataclass
class Stage:
    T: int
    N_exact: int | None = None
    N_lo: int | None = None
    N_hi: int | None = None
    certificates: list[BoundCheck] = dc_field(default_factory=list)

    @property
    def n_upper(self) -> int:
        return self.N_exact if self.N_exact is not None else self.N_hi

    def to_json_dict(self) -> dict:
        n: object
        if self.N_exact is not None:
            n = self.N_exact
        else:
            n = {"lo": self.N_lo, "hi": self.N_hi}
        return {
            "T": self.T,
            "N": n,
            "certificates": [c.to_json_dict() for c in self.certificates],
        }


@dataclass
class SequencePlan:
    alpha: Fraction
    mode: str
    stages: list[Stage]
    continuation: dict | None = None
    caveats: list[str] = dc_field(default_factory=list)
    toy: bool = False

    def to_json_dict(self) -> dict:
        ensure_int_str_digits()
        out = {
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}"
            if self.alpha.denominator != 1
            else str(self.alpha.numerator),
            "mode": self.mode,
            "toy": self.toy,
            "caveats": list(self.caveats),
            "stages": [s.to_json_dict() for s in self.stages],
        }
        if self.continuation is not None:
            out["continuation"] = {
                "j": self.continuation["j"],
                "T_next": self.continuation["T_next"],
                "certificates": [
                    c.to_json_dict() for c in self.continuation["certificates"]
                ],
            }
        return out

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)


# -- T_1 ------------------------------------------------------------------------


def find_T1(alpha: Fraction, ladder: LadderConfig = DEFAULT_LADDER) -> tuple[int, BoundCheck]:
    """Minimal T_1 such that 2 m^3 < alpha^m for all m >= T_1."""
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise InvalidParameterError("alpha must be > 1")
    probe = check_eq5(alpha, 1, ladder)
    if probe.holds:
        return 1, probe
    # last violation is below the exhaustive horizon of check_eq5(alpha, 1)
    m = int(probe.witness["m"])
    while True:
        cand = m + 1
        chk = check_eq5(alpha, cand, ladder)
        if chk.holds:
            return cand, chk
        m = int(chk.witness["m"])


# -- N_j ------------------------------------------------------------------------


def _exact_k_predicate(alpha: Fraction, T: int, k: int) -> bool:
    """k! >= alpha^(kT+1), exact big-integer comparison."""
    p, q = alpha.numerator, alpha.denominator
    n = k * T + 1
    return math.factorial(k) * q**n >= p**n


def _find_n_hi(alpha: Fraction, T: int, ladder: LadderConfig) -> tuple[int, list[BoundCheck]]:
    """Minimal n = kT+1 whose factorial lower bound k! reaches alpha^n.

    A float log-gamma bisection localizes the crossing k first.  When k is
    small the minimal k is then pinned by exact factorial comparisons;
    beyond exact reach the certified Newton/Stirling path takes over (the
    crossing k grows like alpha^T, so stage two is already astronomical).
    """
    ln_alpha_f = math.log(alpha.numerator) - math.log(alpha.denominator)

    def float_diff(k: float) -> float:
        return math.lgamma(k + 1) - (k * T + 1) * ln_alpha_f

    lo, hi = 1.0, 2.0
    while float_diff(hi) < 0:
        hi *= 2
        if hi > 1e17:
            break
    if hi > 1e17 or T * ln_alpha_f > math.log(1e15):
        k = _certified_min_k(alpha, T, ladder)
        method = "stirling-certified"
    else:
        while hi - lo > 0.5:
            mid = (lo + hi) / 2
            if float_diff(mid) >= 0:
                hi = mid
            else:
                lo = mid
        k = max(1, int(hi) - 2)
        while not _exact_k_predicate(alpha, T, k):
            k += 1
        while k > 1 and _exact_k_predicate(alpha, T, k - 1):
            k -= 1
        method = "exact-factorial"
    n = k * T + 1
    checks = [
        BoundCheck(
            "stage-n-upper",
            {"alpha": alpha, "T": T},
            HOLDS,
            {"n": n, "k": k, "method": method},
        ),
    ]
    if k > 1:
        checks.append(
            BoundCheck(
                "stage-n-upper-minimal",
                {"alpha": alpha, "T": T},
                HOLDS,
                {"previous_k": k - 1, "method": method},
            )
        )
    return n, checks


def _lnfact_vs_alpha(k: int, alpha: Fraction, T: int, prec: int) -> bool | None:
    """Certified verdict of k! >= alpha^(kT+1); None when undecided."""
    enc = log_factorial_bounds(k, prec)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec
    try:
        rhs = (k * T + 1) * iv.log(iv.mpf(alpha.numerator) / alpha.denominator)
        rhs_c = CertifiedScalar.from_iv(rhs)
    finally:
        iv.prec = old
    ge = rhs_c.certified_le(enc)
    if ge:
        return True
    lt = enc.certified_lt(rhs_c)
    if lt:
        return False
    return None


def _certified_decide_k(k: int, alpha: Fraction, T: int, ladder: LadderConfig) -> bool:
    for prec in ladder.precisions(2 * k.bit_length() + 256):
        verdict = _lnfact_vs_alpha(k, alpha, T, prec)
        if verdict is not None:
            return verdict
    raise PrecisionExhaustedError(f"factorial threshold undecided at k={k}")


def _certified_min_k(alpha: Fraction, T: int, ladder: LadderConfig) -> int:
    """Newton presolve for ln Gamma(k+1) = (kT+1) ln alpha, then a certified
    walk to the exact minimal k."""
    mp = mpmath.mp
    old_prec = mp.prec
    try:
        ln_alpha_f = math.log(alpha.numerator) - math.log(alpha.denominator)
        bits_estimate = int((T * ln_alpha_f + 2) / math.log(2)) + 64
        k_val = None
        prec = 64
        while True:
            mp.prec = min(prec, bits_estimate)
            la = mp.log(mp.mpf(alpha.numerator) / alpha.denominator)
            if k_val is None:
                k_val = mp.exp(T * la + 1)
            for _ in range(80):
                g = mp.loggamma(k_val + 1) - (k_val * T + 1) * la
                gp = mp.psi(0, k_val + 1) - T * la
                step = g / gp
                k_val = k_val - step
                if k_val < 1:
                    k_val = mp.mpf(1)
                if abs(step) < mp.mpf(2) ** (-mp.prec // 2) * k_val + mp.mpf("0.01"):
                    break
            if mp.prec >= bits_estimate:
                break
            prec *= 2
        k_hat = max(1, int(mp.floor(k_val)))
    finally:
        mp.prec = old_prec

    k = max(1, k_hat - 2)
    if _certified_decide_k(k, alpha, T, ladder):
        # walk left to the first failing k
        steps = 0
        while k > 1 and _certified_decide_k(k - 1, alpha, T, ladder):
            k -= 1
            steps += 1
            if steps > 64:
                raise PrecisionExhaustedError(
                    "certified walk for minimal k did not localize; presolve off"
                )
        return k
    steps = 0
    while not _certified_decide_k(k + 1, alpha, T, ladder):
        k += 1
        steps += 1
        if steps > 64:
            raise PrecisionExhaustedError(
                "certified walk for minimal k did not localize; presolve off"
            )
    return k + 1


def _find_n_lo(alpha: Fraction, T: int) -> tuple[int, list[BoundCheck]]:
    """Minimal n >= T with the crude upper bound 2 T^3 n!/T! >= alpha^n;
    below it the codimension provably stays under alpha^n (for n >= T)."""
    p, q = alpha.numerator, alpha.denominator
    value = 2 * T**3  # 2T^3 * n!/T! at n = T
    pn, qn = p**T, q**T
    n = T
    while n <= _EXACT_N_SCAN_LIMIT:
        if value * qn >= pn:
            checks = [
                BoundCheck(
                    "stage-n-lower",
                    {"alpha": alpha, "T": T},
                    HOLDS,
                    {"n": n, "method": "exact-scan"},
                )
            ]
            if n > T:
                checks.append(
                    BoundCheck(
                        "stage-n-lower-minimal",
                        {"alpha": alpha, "T": T},
                        HOLDS,
                        {"previous_n": n - 1},
                    )
                )
            return n, checks
        n += 1
        value *= n
        pn *= p
        qn *= q
    raise ResourceLimitError(
        f"crude upper bound did not reach alpha^n below n = {_EXACT_N_SCAN_LIMIT}"
    )


def find_N(
    alpha: Fraction,
    T: int,
    mode: str = MODE_BOUND,
    config: EngineConfig = DEFAULT_CONFIG,
    ladder: LadderConfig = DEFAULT_LADDER,
):
    """The crossing degree for stage algebra bt(T).

    exact mode: minimal n with c_n >= alpha^n, engine caps permitting
    (returns the integer).  bound mode: returns (N_lo, N_hi, certificates)
    with the certified interval described in the module docstring.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise InvalidParameterError("alpha must be > 1")
    if mode == MODE_EXACT:
        p, q = alpha.numerator, alpha.denominator
        for n in range(1, config.cap_left_normed + 1):
            spec = make_bt(T, (n - 1) // T + 1)
            c = codim(spec, n, "leftnormed", config).rank
            if c * q**n >= p**n:
                return n
        raise ResourceLimitError(
            f"no n <= {config.cap_left_normed} has c_n >= alpha^n; "
            "exact mode is a toy regime, use bound mode for real stages"
        )
    if mode != MODE_BOUND:
        raise InvalidParameterError(f"unknown find_N mode {mode!r}")
    n_lo, lo_checks = _find_n_lo(alpha, T)
    n_hi, hi_checks = _find_n_hi(alpha, T, ladder)
    validity = BoundCheck(
        "stage-interval-valid",
        {"alpha": alpha, "T": T},
        HOLDS if n_lo <= n_hi else FAILS,
        {"lo": n_lo, "hi": n_hi},
    )
    return n_lo, n_hi, lo_checks + hi_checks + [validity]


# -- T_(j+1) ---------------------------------------------------------------------


def _eq10_verdict(alpha, N, n, j, ladder) -> str:
    return check_eq10(alpha, N, n, j, ladder).verdict


def _monotone_floor(j: int, ladder: LadderConfig) -> int:
    """n beyond which both lhs/rhs ratio terms of the threshold inequality
    are certifiably decreasing: n > 3/ln(1 + 2^-(j+1))."""
    iv = mpmath.iv
    old = iv.prec
    iv.prec = ladder.start
    try:
        val = 3 / iv.log(1 + iv.mpf(2) ** (-(j + 1)))
        hi = val._mpi_[1]
    finally:
        iv.prec = old
    sign, man, exp, _ = hi
    if man == 0:
        raise PrecisionExhaustedError("monotone floor enclosure non-finite")
    frac = Fraction(int(man) if not sign else -int(man)) * Fraction(2) ** exp
    return math.floor(frac) + 1


def find_next_T(
    alpha: Fraction,
    j: int,
    N_prev: int,
    ladder: LadderConfig = DEFAULT_LADDER,
    scan_factor: int = 10,
) -> tuple[int, list[BoundCheck]]:
    """Minimal n > 2 N_prev satisfying the stage-j threshold inequality.

    Linear scan through the possibly non-monotone prefix, then bisection
    (or Newton presolve plus certified window at astronomical sizes) over
    the monotone region.  The returned certificates include the holds
    verdict at n and the fails verdict at n-1.
    """
    alpha = Fraction(alpha)
    if N_prev < 1 or j < 1:
        raise InvalidParameterError("need N_prev >= 1 and j >= 1")
    scan_cap = scan_factor * N_prev * (j + 1)
    n_start = 2 * N_prev + 1
    floor_n = _monotone_floor(j, ladder)

    found = None
    # exhaustive prefix: region where monotonicity is not established
    prefix_end = min(max(n_start - 1, floor_n), scan_cap)
    for n in range(n_start, prefix_end + 1):
        if _eq10_verdict(alpha, N_prev, n, j, ladder) == HOLDS:
            found = n
            break

    if found is None:
        lo = max(n_start - 1, prefix_end)  # holds nowhere up to here
        hi = None
        probe = max(lo + 1, floor_n + 1)
        while probe <= scan_cap:
            if _eq10_verdict(alpha, N_prev, probe, j, ladder) == HOLDS:
                hi = probe
                break
            lo = probe
            probe *= 2
        if hi is None:
            raise ResourceLimitError(
                f"threshold inequality not reached below {scan_cap}; "
                "raise scan_factor if this is intended"
            )
        if hi.bit_length() > 64:
            lo, hi = _newton_window(alpha, N_prev, j, lo, hi, ladder)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _eq10_verdict(alpha, N_prev, mid, j, ladder) == HOLDS:
                hi = mid
            else:
                lo = mid
        found = hi

    hold_check = check_eq10(alpha, N_prev, found, j, ladder)
    certs = [hold_check]
    if found - 1 > 2 * N_prev:
        prev_check = check_eq10(alpha, N_prev, found - 1, j, ladder)
        certs.append(prev_check)
        if prev_check.verdict != FAILS:
            raise PrecisionExhaustedError(
                f"minimality witness inconsistent at n={found - 1}"
            )
    else:
        certs.append(
            BoundCheck(
                "eq10-minimality-boundary",
                {"alpha": alpha, "N": N_prev, "j": j},
                HOLDS,
                {"note": f"n-1 = {found - 1} <= 2N, outside the inequality's domain"},
            )
        )
    certs.append(
        BoundCheck(
            "eq10-monotone-region",
            {"j": j},
            HOLDS,
            {
                "floor_n": floor_n,
                "note": "ratio terms decreasing beyond floor_n; prefix scanned linearly",
            },
        )
    )
    return found, certs


def _newton_window(alpha, N, j, lo, hi, ladder) -> tuple[int, int]:
    """Narrow a huge bisection bracket by solving lhs = rhs in floats at
    escalating precision; returns a small certified bracket."""
    mp = mpmath.mp
    old = mp.prec
    try:
        bits_target = hi.bit_length() + 64
        n_val = None
        prec = 64
        while True:
            mp.prec = min(prec, bits_target)
            la = mp.log(mp.mpf(alpha.numerator) / alpha.denominator)
            lrhsbase = mp.log(mp.mpf(2 ** (j + 1) + 1) / 2**j)
            c0 = mp.log(2 * N * (N + 1))
            if n_val is None:
                n_val = mp.mpf((lo + hi)) / 2
            for _ in range(80):
                # f(n) = ln rhs - ln t1 (t2 is negligible at this scale)
                lnn = mp.log(n_val)
                lnm = mp.log(n_val - N)
                f = (
                    n_val * lrhsbase
                    - c0
                    - N * la
                    - (N * lnn - N * mp.log(N) + (n_val - N) * (lnn - lnm))
                )
                fp = lrhsbase + mp.log(1 - N / n_val)
                step = f / fp
                n_val = n_val - step
                if n_val <= 2 * N + 1:
                    n_val = mp.mpf(2 * N + 2)
                if abs(step) < mp.mpf(2) ** (-mp.prec // 2) * n_val + mp.mpf("0.01"):
                    break
            if mp.prec >= bits_target:
                break
            prec *= 2
        center = int(mp.floor(n_val))
    finally:
        mp.prec = old
    new_lo = max(lo, center - 8)
    new_hi = min(hi, center + 8)
    # the certified bracket must keep its invariants; fall back to the
    # original bracket ends when the presolve window misses
    if new_lo >= new_hi:
        return lo, hi
    if _eq10_verdict(alpha, N, new_lo, j, ladder) == HOLDS:
        new_lo = lo
    if _eq10_verdict(alpha, N, new_hi, j, ladder) != HOLDS:
        new_hi = hi
    return new_lo, new_hi


def _eq10_N_monotone_check(alpha, N_lo, N_hi, n, j, ladder) -> BoundCheck:
    """Certify that the threshold left side at N_hi dominates the one at
    N_lo (so running the inequality at N_hi covers the unknown true N)."""
    if N_lo == N_hi:
        return BoundCheck(
            "eq10-N-monotone",
            {"n": n, "j": j},
            HOLDS,
            {"note": "exact N, nothing to dominate"},
        )
    est_bits = n * max(n.bit_length(), 2)
    if est_bits <= 2_000_000:
        t_lo = (
            2 * N_lo * (N_lo + 1) * Fraction(alpha) ** N_lo * phi_pow_exact(N_lo, n)
        )
        t_hi = (
            2 * N_hi * (N_hi + 1) * Fraction(alpha) ** N_hi * phi_pow_exact(N_hi, n)
        )
        verdict = HOLDS if t_lo <= t_hi else FAILS
        return BoundCheck(
            "eq10-N-monotone",
            {"N_lo": N_lo, "N_hi": N_hi, "n": n, "j": j},
            verdict,
            {"method": "exact"},
        )
    iv = mpmath.iv
    for prec in ladder.precisions(bounds.eq10_adaptive_bits(n)):
        old = iv.prec
        iv.prec = prec
        try:
            la = iv.log(iv.mpf(alpha.numerator) / alpha.denominator)

            def lhs(NN):
                s = (
                    NN * la
                    + n * iv.log(iv.mpf(n))
                    - NN * iv.log(iv.mpf(NN))
                    - (n - NN) * iv.log(iv.mpf(n - NN))
                )
                return (2 * NN * (NN + 1)) * iv.exp(s)

            lo_c = CertifiedScalar.from_iv(lhs(N_lo))
            hi_c = CertifiedScalar.from_iv(lhs(N_hi))
        finally:
            iv.prec = old
        le = lo_c.certified_le(hi_c)
        if le is not None:
            return BoundCheck(
                "eq10-N-monotone",
                {"N_lo": N_lo, "N_hi": N_hi, "n": n, "j": j},
                HOLDS if le else FAILS,
                {"method": f"interval@{prec}"},
            )
    raise PrecisionExhaustedError("eq10 N-monotonicity undecided")


# -- plans ------------------------------------------------------------------------


def build_plan(
    alpha: Fraction,
    steps: int,
    mode: str = MODE_BOUND,
    config: EngineConfig = DEFAULT_CONFIG,
    ladder: LadderConfig = DEFAULT_LADDER,
    t1_override: int | None = None,
) -> SequencePlan:
    """Run the full stage construction for ``steps`` stages.

    The continuation record carries the next stage threshold (T_(steps+1))
    and its certificates, so a plan with s stages exercises the threshold
    inequality for j = 1..s.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise InvalidParameterError("alpha must be > 1")
    if steps < 1:
        raise InvalidParameterError("steps must be >= 1")
    caveats = []
    if alpha <= 2:
        caveats.append(
            "alpha <= 2: the chain is still built, but the headline "
            "non-existence phenomenon needs alpha > 2"
        )
    toy = mode == MODE_EXACT or t1_override is not None
    if t1_override is not None:
        T = t1_override
        t1_check = BoundCheck(
            "t1-override",
            {"alpha": alpha},
            HOLDS,
            {"T1": T, "note": "user override; toy, not per the threshold rule"},
        )
        if toy:
            caveats.append("T1 overridden by user; toy, not per the threshold rule")
    else:
        T, t1_check = find_T1(alpha, ladder)
    stages: list[Stage] = []
    continuation = None
    pending_checks: list[BoundCheck] = []  # certificates that produced current T
    for j in range(1, steps + 1):
        stage = Stage(T=T)
        stage.certificates.extend(pending_checks)
        if j == 1:
            stage.certificates.append(t1_check)
        if mode == MODE_EXACT:
            stage.N_exact = find_N(alpha, T, MODE_EXACT, config, ladder)
            n_used = stage.N_exact
        else:
            n_lo, n_hi, checks = find_N(alpha, T, MODE_BOUND, config, ladder)
            stage.N_lo, stage.N_hi = n_lo, n_hi
            stage.certificates.extend(checks)
            n_used = n_hi
        stages.append(stage)
        next_T, next_checks = find_next_T(alpha, j, n_used, ladder)
        if mode == MODE_BOUND:
            next_checks.append(
                _eq10_N_monotone_check(alpha, stage.N_lo, stage.N_hi, next_T, j, ladder)
            )
        if j < steps:
            T = next_T
            pending_checks = next_checks
        else:
            continuation = {"j": j, "T_next": next_T, "certificates": next_checks}
    plan = SequencePlan(alpha, mode, stages, continuation, caveats, toy)
    _validate_interleaving(plan)
    return plan


def _validate_interleaving(plan: SequencePlan) -> None:
    last = 0
    for stage in plan.stages:
        if stage.T <= last:
            raise InvalidParameterError(
                f"stage chain does not interleave: T={stage.T} after {last}"
            )
        n_lo = stage.N_exact if stage.N_exact is not None else stage.N_lo
        n_hi = stage.n_upper
        if not (stage.T < n_lo <= n_hi):
            raise InvalidParameterError(
                f"stage chain does not interleave at T={stage.T}: "
                f"N in [{n_lo}, {n_hi}]"
            )
        last = n_hi
    if plan.continuation is not None and plan.stages:
        if plan.continuation["T_next"] <= plan.stages[-1].n_upper:
            raise InvalidParameterError("continuation threshold does not interleave")


def load_plan(path: str) -> SequencePlan:
    ensure_int_str_digits()
    with open(path) as fh:
        data = json.load(fh)
    return plan_from_json_dict(data)


def plan_from_json_dict(data: dict) -> SequencePlan:
    def checks_from(lst):
        return [
            BoundCheck(c["name"], c["inputs"], c["verdict"], c["witness"])
            for c in lst
        ]

    stages = []
    for s in data["stages"]:
        stage = Stage(T=int(s["T"]))
        if isinstance(s["N"], dict):
            stage.N_lo = int(s["N"]["lo"])
            stage.N_hi = int(s["N"]["hi"])
        else:
            stage.N_exact = int(s["N"])
        stage.certificates = checks_from(s.get("certificates", []))
        stages.append(stage)
    continuation = None
    if "continuation" in data:
        continuation = {
            "j": int(data["continuation"]["j"]),
            "T_next": int(data["continuation"]["T_next"]),
            "certificates": checks_from(data["continuation"].get("certificates", [])),
        }
    return SequencePlan(
        Fraction(data["alpha"]),
        data["mode"],
        stages,
        continuation,
        list(data.get("caveats", [])),
        bool(data.get("toy", False)),
    )
