"""Certified numeric layer: enclosures, special functions, inequality checks.

Every comparison here is decided only when interval enclosures separate (or
the arithmetic is exact over the rationals / integers); otherwise the
verdict is "undecided" and callers climb a precision ladder.  Enclosure
arithmetic is mpmath interval arithmetic; endpoints are kept as exact
binary floats (raw libmp tuples), so endpoint comparisons are themselves
exact at any magnitude -- exponents of the numbers showing up in stage-2
constructions have tens of thousands of digits.

The ladder starts at 128 bits and doubles.  Its cap is nominally 8192 bits,
but the cap scales up automatically with the bit-length of the integers in
the instance: deciding the threshold inequalities near their crossing point
inherently needs working precision proportional to log2 of the quantities
involved, so a fixed cap would make large-stage constructions fail for no
mathematical reason.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import libmp

from .errors import InvalidParameterError, PrecisionExhaustedError, ResourceLimitError

HOLDS = "holds"
FAILS = "fails"
UNDECIDED = "undecided"

_iv = mpmath.iv


@contextmanager
def _iv_prec(prec: int):
    old = _iv.prec
    _iv.prec = prec
    try:
        yield _iv
    finally:
        _iv.prec = old


@dataclass(frozen=True)
class LadderConfig:
    """Doubling precision ladder; ``cap`` is raised to ``adaptive_bits``
    when an instance's integers are too large for the nominal cap."""

    start: int = 128
    cap: int = 8192

    def precisions(self, adaptive_bits: int = 0):
        cap = max(self.cap, adaptive_bits)
        p = self.start
        while True:
            yield min(p, cap)
            if p >= cap:
                return
            p *= 2


DEFAULT_LADDER = LadderConfig()


class CertifiedScalar:
    """A value known only through lower/upper enclosures.

    Endpoints are exact binary floats; ``certified_lt`` and friends return
    True/False only when the enclosures separate and None otherwise.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        # raw libmp mpf tuples
        self.lo = lo
        self.hi = hi
        if libmp.mpf_cmp(lo, hi) > 0:
            raise InvalidParameterError("enclosure endpoints out of order")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_iv(cls, value) -> "CertifiedScalar":
        lo, hi = value._mpi_
        return cls(lo, hi)

    @classmethod
    def exact_int(cls, n: int) -> "CertifiedScalar":
        raw = libmp.from_int(n)
        return cls(raw, raw)

    @classmethod
    def from_fraction(cls, f: Fraction, prec: int = 128) -> "CertifiedScalar":
        if f.denominator == 1:
            return cls.exact_int(f.numerator)
        lo = libmp.from_rational(f.numerator, f.denominator, prec, "f")
        hi = libmp.from_rational(f.numerator, f.denominator, prec, "c")
        return cls(lo, hi)

    # -- predicates ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return libmp.mpf_cmp(self.lo, self.hi) == 0

    def certified_lt(self, other: "CertifiedScalar") -> bool | None:
        if libmp.mpf_cmp(self.hi, other.lo) < 0:
            return True
        if libmp.mpf_cmp(self.lo, other.hi) >= 0:
            return False
        return None

    def certified_le(self, other: "CertifiedScalar") -> bool | None:
        if libmp.mpf_cmp(self.hi, other.lo) <= 0:
            return True
        if libmp.mpf_cmp(self.lo, other.hi) > 0:
            return False
        return None

    def contains_int(self, n: int) -> bool:
        raw = libmp.from_int(n)
        return (
            libmp.mpf_cmp(self.lo, raw) <= 0 and libmp.mpf_cmp(raw, self.hi) <= 0
        )

    def __str__(self) -> str:
        if self.is_exact:
            return libmp.to_str(self.lo, 20)
        return f"[{libmp.to_str(self.lo, 20)}, {libmp.to_str(self.hi, 20)}]"

    def __repr__(self) -> str:
        return f"CertifiedScalar({self})"


def _cert(value) -> CertifiedScalar:
    return CertifiedScalar.from_iv(value)


@dataclass
class BoundCheck:
    """Outcome of one certified inequality check, with enough witness data
    to re-run it."""

    name: str
    inputs: dict
    verdict: str
    witness: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json_dict(self) -> dict:
        from .util import ensure_int_str_digits

        ensure_int_str_digits()
        return {
            "name": self.name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "verdict": self.verdict,
            "witness": {k: str(v) for k, v in self.witness.items()},
        }


def _short(scalar: CertifiedScalar, digits: int = 12) -> str:
    return str(CertifiedScalar(scalar.lo, scalar.hi)) if digits == 20 else (
        libmp.to_str(scalar.lo, digits)
        if scalar.is_exact
        else f"[{libmp.to_str(scalar.lo, digits)}, {libmp.to_str(scalar.hi, digits)}]"
    )


# -- the entropy-type function ------------------------------------------------


def phi(x: Fraction, prec: int = 128) -> CertifiedScalar:
    """Enclosure of 1/(x^x (1-x)^(1-x)) on [0, 1].

    Exact at the three rational-valued points: phi(0) = phi(1) = 1 by the
    continuous extension and phi(1/2) = 2.
    """
    x = Fraction(x)
    if x < 0 or x > 1:
        raise InvalidParameterError(f"phi defined on [0,1], got {x}")
    if x == 0 or x == 1:
        return CertifiedScalar.exact_int(1)
    if x == Fraction(1, 2):
        return CertifiedScalar.exact_int(2)
    with _iv_prec(prec):
        xi = _iv.mpf(x.numerator) / x.denominator
        yi = 1 - xi
        val = _iv.exp(-(xi * _iv.log(xi) + yi * _iv.log(yi)))
        return _cert(val)


def phi_pow_exact(N: int, n: int) -> Fraction:
    """phi(N/n)^n as an exact rational: n^n / (N^N (n-N)^(n-N))."""
    if not (0 < N < n):
        raise InvalidParameterError("need 0 < N < n")
    return Fraction(n**n, N**N * (n - N) ** (n - N))


def check_phi_properties(
    grid_size: int = 1024, ladder: LadderConfig = DEFAULT_LADDER
) -> BoundCheck:
    """Certify the monotone increase of phi on the [0, 1/2] grid and the
    bound phi <= 2 at every grid point of [0, 1].

    The bound is an equality exactly at 1/2; everywhere else strictness is
    certified by enclosure separation.
    """
    if grid_size < 1:
        raise InvalidParameterError("grid_size must be >= 1")
    points = [Fraction(i, grid_size) for i in range(grid_size + 1)]
    two = CertifiedScalar.exact_int(2)
    max_prec = ladder.start
    for idx, x in enumerate(points):
        for prec in ladder.precisions():
            val = phi(x, prec)
            max_prec = max(max_prec, prec)
            if x == Fraction(1, 2):
                ok = True  # exact equality, allowed by <=
            else:
                ok = val.certified_lt(two)
            if ok is None:
                continue
            if not ok:
                return BoundCheck(
                    "phi-bound",
                    {"grid": grid_size},
                    FAILS,
                    {"x": x, "phi": _short(val)},
                )
            break
        else:
            raise PrecisionExhaustedError(f"phi <= 2 undecided at x={x}")
        if idx == 0 or points[idx] > Fraction(1, 2):
            continue
        prev = points[idx - 1]
        for prec in ladder.precisions():
            lo_val = phi(prev, prec)
            hi_val = phi(x, prec)
            max_prec = max(max_prec, prec)
            lt = lo_val.certified_lt(hi_val)
            if lt is None:
                continue
            if not lt:
                return BoundCheck(
                    "phi-monotone",
                    {"grid": grid_size},
                    FAILS,
                    {"x": prev, "y": x},
                )
            break
        else:
            raise PrecisionExhaustedError(
                f"phi monotonicity undecided between {prev} and {x}"
            )
    return BoundCheck(
        "phi-properties",
        {"grid": grid_size},
        HOLDS,
        {"points": len(points), "max_prec": max_prec, "phi_half": "2 (exact)"},
    )


# -- factorial enclosures ------------------------------------------------------


def log_factorial_bounds(k: int, prec: int = 128) -> CertifiedScalar:
    """Rigorous enclosure of ln k! from the two-sided factorial formula
    sqrt(2 pi k) (k/e)^k e^(1/(12k+theta)), 0 < theta < 1."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    with _iv_prec(prec):
        ki = _iv.mpf(k)
        base = (ki + _iv.mpf(1) / 2) * _iv.log(ki) - ki + _iv.log(2 * _iv.pi) / 2
        low = base + _iv.mpf(1) / (12 * k + 1)
        high = base + _iv.mpf(1) / (12 * k)
        return CertifiedScalar(low._mpi_[0], high._mpi_[1])


def check_stirling(m: int, ladder: LadderConfig = DEFAULT_LADDER) -> BoundCheck:
    """Exact m! lies strictly between the theta = 1 and theta = 0 ends of
    the factorial formula."""
    if m < 1:
        raise InvalidParameterError("m must be >= 1")
    fact = CertifiedScalar.exact_int(math.factorial(m))
    for prec in ladder.precisions():
        with _iv_prec(prec):
            mi = _iv.mpf(m)
            base = _iv.sqrt(2 * _iv.pi * mi) * _iv.exp(mi * _iv.log(mi) - mi)
            low = base * _iv.exp(_iv.mpf(1) / (12 * m + 1))
            high = base * _iv.exp(_iv.mpf(1) / (12 * m))
        lo_ok = _cert(low).certified_lt(fact)
        hi_ok = fact.certified_lt(_cert(high))
        if lo_ok is None or hi_ok is None:
            continue
        verdict = HOLDS if (lo_ok and hi_ok) else FAILS
        return BoundCheck(
            "stirling",
            {"m": m},
            verdict,
            {
                "factorial": math.factorial(m),
                "lower": _short(_cert(low)),
                "upper": _short(_cert(high)),
                "prec": prec,
            },
        )
    raise PrecisionExhaustedError(f"stirling enclosure undecided at m={m}")


# -- binomial bounds ------------------------------------------------------------


def check_binomial_bound(n: int, k: int) -> BoundCheck:
    """Exact check of the two binomial estimates.

    First: C(n,k) <= sqrt(n/(k(n-k))) * n^n/(k^k (n-k)^(n-k)), verified by
    squaring.  Second: C(n,k) < 2 phi(k/n)^n, whose right side is the exact
    rational 2 n^n/(k^k (n-k)^(n-k)).  The chained comparison against
    phi(K/n)^n for k <= K < n/2 additionally needs n > 2k; the check records
    whether that applies.
    """
    if not (1 <= k < n):
        raise InvalidParameterError("need 1 <= k < n")
    c = math.comb(n, k)
    m = k**k * (n - k) ** (n - k)
    # eq 7 squared: C^2 k^(2k) (n-k)^(2(n-k)) k (n-k) <= n * n^(2n)
    lhs7 = c * c * m * m * k * (n - k)
    rhs7 = n ** (2 * n + 1)
    ok7 = lhs7 <= rhs7
    # strict version of the 2 phi^n bound
    ok8 = c * m < 2 * n**n
    verdict = HOLDS if (ok7 and ok8) else FAILS
    return BoundCheck(
        "binomial-bound",
        {"n": n, "k": k},
        verdict,
        {
            "binomial": c,
            "sqrt_bound_holds": ok7,
            "phi_bound_holds": ok8,
            "chain_applicable": n > 2 * k,
        },
    )


# -- threshold inequalities -------------------------------------------------------


def check_eq5(
    alpha: Fraction, T1: int, ladder: LadderConfig = DEFAULT_LADDER
) -> BoundCheck:
    """2 m^3 < alpha^m for every m >= T1.

    Checked exactly for T1 <= m <= m0 where m0 >= 3/ln(alpha); beyond m0 the
    ratio alpha^m/m^3 is increasing (its log-derivative ln(alpha) - 3/m is
    positive there), so one verified point closes the tail.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise InvalidParameterError("alpha must be > 1")
    if T1 < 1:
        raise InvalidParameterError("T1 must be >= 1")
    m0 = None
    for prec in ladder.precisions():
        with _iv_prec(prec):
            lane = _iv.log(_iv.mpf(alpha.numerator) / alpha.denominator)
            bound = 3 / lane
        hi_raw = bound._mpi_[1]
        if libmp.mpf_cmp(hi_raw, libmp.from_int(10**9)) > 0:
            raise ResourceLimitError("3/ln(alpha) too large; alpha is too close to 1")
        hi_fr = _raw_to_fraction(hi_raw)
        m0 = max(T1, math.floor(hi_fr) + 1)
        break
    p, q = alpha.numerator, alpha.denominator
    # incrementally maintain alpha^m = p^m / q^m
    pn = p**T1
    qn = q**T1
    for m in range(T1, m0 + 1):
        if 2 * m**3 * qn >= pn:
            return BoundCheck(
                "eq5",
                {"alpha": alpha, "T1": T1},
                FAILS,
                {"m": m, "lhs": 2 * m**3, "rhs": f"{pn}/{qn}"},
            )
        pn *= p
        qn *= q
    return BoundCheck(
        "eq5",
        {"alpha": alpha, "T1": T1},
        HOLDS,
        {"checked_up_to": m0, "tail_from": m0},
    )


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if man == 0:
        if raw == libmp.fzero:
            return Fraction(0)
        raise InvalidParameterError("non-finite value has no rational form")
    man = int(man)
    if sign:
        man = -man
    return Fraction(man) * Fraction(2) ** exp


_EQ10_EXACT_BITS = 300_000


def _eq10_exact_holds(alpha: Fraction, N: int, n: int, j: int) -> bool:
    """Integer cross-multiplied comparison of
    2N(N+1) a^N phi(N/n)^n + 2 n^3 2^n < (2 + 2^-j)^n, no gcd work."""
    p, q = alpha.numerator, alpha.denominator
    t1_num = 2 * N * (N + 1) * p**N * n**n
    t1_den = q**N * N**N * (n - N) ** (n - N)
    t2 = 2 * n**3 * 2**n
    rhs_num = (2 ** (j + 1) + 1) ** n
    rhs_den = 2 ** (j * n)
    # t1_num/t1_den + t2 < rhs_num/rhs_den
    return (t1_num + t2 * t1_den) * rhs_den < rhs_num * t1_den


def _eq10_once_iv(alpha: Fraction, N: int, n: int, j: int, prec: int):
    with _iv_prec(prec):
        ln_alpha = _iv.log(_iv.mpf(alpha.numerator) / alpha.denominator)
        ln_n = _iv.log(_iv.mpf(n))
        ln_N = _iv.log(_iv.mpf(N))
        ln_nm = _iv.log(_iv.mpf(n - N))
        s = N * ln_alpha + n * ln_n - N * ln_N - (n - N) * ln_nm
        t1 = (2 * N * (N + 1)) * _iv.exp(s)
        t2 = (2 * n**3) * _iv.exp(n * _iv.log(_iv.mpf(2)))
        rhs = _iv.exp(n * _iv.log(_iv.mpf(2 ** (j + 1) + 1) / 2**j))
        lhs = t1 + t2
        lhs_c, rhs_c = _cert(lhs), _cert(rhs)
    lt = lhs_c.certified_lt(rhs_c)
    if lt is None:
        return UNDECIDED, lhs_c, rhs_c
    return (HOLDS if lt else FAILS), lhs_c, rhs_c


def eq10_adaptive_bits(n: int) -> int:
    return 2 * n.bit_length() + 256


def check_eq10(
    alpha: Fraction,
    N: int,
    n: int,
    j: int,
    ladder: LadderConfig = DEFAULT_LADDER,
) -> BoundCheck:
    """The stage-threshold inequality
    2 N (N+1) alpha^N phi(N/n)^n + 2 n^3 2^n < (2 + 1/2^j)^n.

    phi(N/n)^n is the exact rational n^n/(N^N (n-N)^(n-N)), so small
    instances are decided by exact big-integer arithmetic; beyond the exact
    budget the comparison runs in interval arithmetic on the precision
    ladder.  Requires n > 2N (the binomial chain behind the inequality
    needs it).
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise InvalidParameterError("alpha must be > 1")
    if not (N >= 1 and j >= 1):
        raise InvalidParameterError("need N >= 1 and j >= 1")
    if n <= 2 * N:
        raise InvalidParameterError(f"eq10 needs n > 2N, got n={n}, N={N}")
    inputs = {"alpha": alpha, "N": N, "n": n, "j": j}
    est_bits = n * max(n.bit_length(), 2) + N * alpha.numerator.bit_length()
    if est_bits <= _EQ10_EXACT_BITS:
        holds = _eq10_exact_holds(alpha, N, n, j)
        return BoundCheck(
            "eq10",
            inputs,
            HOLDS if holds else FAILS,
            {"method": "exact"},
        )
    for prec in ladder.precisions(eq10_adaptive_bits(n)):
        verdict, lhs_c, rhs_c = _eq10_once_iv(alpha, N, n, j, prec)
        if verdict != UNDECIDED:
            return BoundCheck(
                "eq10",
                inputs,
                verdict,
                {
                    "method": f"interval@{prec}",
                    "lhs": _short(lhs_c, 8),
                    "rhs": _short(rhs_c, 8),
                },
            )
    raise PrecisionExhaustedError(
        f"eq10 comparison undecided at alpha={alpha}, N={N}, n={n}, j={j}"
    )


# -- codimension bounds from the growth lemmas -------------------------------------


def lemma4_lower(T: int, n: int) -> int:
    """Factorial lower bound k! available at degrees n = kT+1."""
    if T < 2:
        raise InvalidParameterError("T must be >= 2")
    if n < T + 1 or (n - 1) % T != 0:
        raise InvalidParameterError(f"n must be kT+1 with k >= 1, got n={n}, T={T}")
    k = (n - 1) // T
    if k > 10**7:
        raise ResourceLimitError(
            f"k = {k} too large for an exact factorial; use log_factorial_bounds"
        )
    return math.factorial(k)


def crude_upper(T: int, n: int) -> int:
    """Upper bound 2 T^3 n!/T!: the degree-T polynomial cap iterated up to
    degree n through c_m <= m c_(m-1)."""
    if T < 2:
        raise InvalidParameterError("T must be >= 2")
    if n < T:
        raise InvalidParameterError(f"need n >= T, got n={n}, T={T}")
    if n > 10**6:
        raise ResourceLimitError(f"n = {n} too large for exact factorial ratio")
    ratio = 1
    for m in range(T + 1, n + 1):
        ratio *= m
    return 2 * T**3 * ratio
