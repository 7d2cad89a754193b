"""Small shared helpers."""

import sys

_BIG_INT_DIGITS = 2_000_000


def ensure_int_str_digits(digits: int = _BIG_INT_DIGITS) -> None:
    """Raise CPython's int<->str conversion limit.

    Stage-two constructions legitimately carry integers with tens of
    thousands of digits; serializing a plan would otherwise trip the
    default 4300-digit guard.
    """
    if hasattr(sys, "get_int_max_str_digits") and sys.get_int_max_str_digits() < digits:
        sys.set_int_max_str_digits(digits)
