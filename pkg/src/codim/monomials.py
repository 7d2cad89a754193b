"""Multilinear monomials of the free nonassociative algebra.

A monomial of degree n is a binary bracketing shape with n leaves plus a
permutation assigning the variables x1..xn to the leaves.  Shapes are nested
tuples whose leaves are the slot numbers 0..n-1 in left-to-right order, e.g.
``((0, 1), 2)`` for (x.x).x and ``(0, (1, 2))`` for x.(x.x).

The canonical monomial order is: shapes in generation order (left subtree
size descending, recursively -- so the left comb comes first and left-normed
monomials form a prefix of the full column list), then permutations in
lexicographic order.  Reports and golden files rely on this order being
stable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidParameterError, ResourceLimitError

Shape = int | tuple  # leaf slot, or (left, right)

MODE_FULL = "full"
MODE_LEFT_NORMED = "leftnormed"

DEFAULT_CAP_LEFT_NORMED = 8
DEFAULT_CAP_FULL = 6


def catalan(k: int) -> int:
    if k < 0:
        raise InvalidParameterError("catalan index must be >= 0")
    return math.comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=None)
def shapes(n: int) -> tuple[Shape, ...]:
    """All bracketing shapes with n leaves; Catalan(n-1) of them."""
    if n < 1:
        raise InvalidParameterError("shapes need n >= 1")
    return tuple(_shapes(n, 0))


def _shapes(n: int, offset: int) -> list[Shape]:
    if n == 1:
        return [offset]
    out = []
    for left_size in range(n - 1, 0, -1):
        for left in _shapes(left_size, offset):
            for right in _shapes(n - left_size, offset + left_size):
                out.append((left, right))
    return out


def left_comb(n: int) -> Shape:
    shape: Shape = 0
    for slot in range(1, n):
        shape = (shape, slot)
    return shape


def is_left_comb(shape: Shape) -> bool:
    while isinstance(shape, tuple):
        left, right = shape
        if isinstance(right, tuple):
            return False
        shape = left
    return True


def shape_leaves(shape: Shape) -> int:
    if isinstance(shape, int):
        return 1
    return shape_leaves(shape[0]) + shape_leaves(shape[1])


@dataclass(frozen=True)
class Monomial:
    """A bracketing shape plus the variable (1-based) sitting at each leaf
    slot, left to right."""

    shape: Shape
    perm: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.perm)

    def is_left_normed(self) -> bool:
        return is_left_comb(self.shape)

    def fold_order(self) -> tuple[int, ...]:
        """Variables in left-to-right leaf order (for left-normed monomials
        this is the multiplication order)."""
        return self.perm

    def __str__(self) -> str:
        return render_monomial(self.shape, self.perm)


def render_monomial(shape: Shape, perm: tuple[int, ...]) -> str:
    """Canonical text form: juxtaposition is left-associative, so only
    right factors that are themselves products get parentheses."""
    if isinstance(shape, int):
        return f"x{perm[shape]}"
    left, right = shape
    left_str = render_monomial(left, perm)
    right_str = render_monomial(right, perm)
    if isinstance(right, tuple):
        right_str = f"({right_str})"
    return left_str + right_str


class MultilinearPoly:
    """Rational linear combination of degree-n monomials.

    Every monomial must use each of x1..xn exactly once; zero coefficients
    are dropped on construction.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict):
        from fractions import Fraction

        if degree < 1:
            raise InvalidParameterError("polynomial degree must be >= 1")
        expected = frozenset(range(1, degree + 1))
        cleaned = {}
        for mon, coeff in terms.items():
            if len(mon.perm) != degree or frozenset(mon.perm) != expected:
                raise InvalidParameterError(
                    f"monomial {mon} is not multilinear of degree {degree}"
                )
            coeff = Fraction(coeff)
            if coeff:
                cleaned[mon] = coeff
        self.degree = degree
        self.terms = cleaned

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultilinearPoly)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .poly import poly_to_str

        return f"MultilinearPoly({poly_to_str(self)!r})"


def dim_pn(n: int, mode: str) -> int:
    """Number of degree-n monomial columns: n! left-normed, Catalan(n-1)*n!
    for the full bracketing space."""
    if mode == MODE_LEFT_NORMED:
        return math.factorial(n)
    if mode == MODE_FULL:
        return catalan(n - 1) * math.factorial(n)
    raise InvalidParameterError(f"unknown mode {mode!r}")


def enumerate_monomials(
    n: int,
    mode: str = MODE_FULL,
    cap_left_normed: int = DEFAULT_CAP_LEFT_NORMED,
    cap_full: int = DEFAULT_CAP_FULL,
) -> list[Monomial]:
    """Degree-n monomials in canonical order.

    Left-normed mode emits the n! left-comb monomials; full mode all
    Catalan(n-1) * n!.  Degrees beyond the configured cap raise
    ResourceLimitError rather than silently grinding.
    """
    if n < 1:
        raise InvalidParameterError("degree must be >= 1")
    if mode == MODE_LEFT_NORMED:
        if n > cap_left_normed:
            raise ResourceLimitError(
                f"degree {n} exceeds left-normed cap {cap_left_normed}; "
                "raise EngineConfig.cap_left_normed if this size is intended"
            )
        shape_list: tuple[Shape, ...] = (left_comb(n),)
    elif mode == MODE_FULL:
        if n > cap_full:
            raise ResourceLimitError(
                f"degree {n} exceeds full-mode cap {cap_full}; "
                "raise EngineConfig.cap_full if this size is intended"
            )
        shape_list = shapes(n)
    else:
        raise InvalidParameterError(f"unknown mode {mode!r}")
    perms = list(itertools.permutations(range(1, n + 1)))
    return [Monomial(shape, perm) for shape in shape_list for perm in perms]
