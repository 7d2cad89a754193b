"""Evaluation matrices, codimensions, identity tests.

The degree-n codimension of an algebra is the rank of its evaluation
matrix: columns are the canonical monomials, rows are (substitution,
output-coordinate) pairs, and the entry is the coordinate of the monomial's
value on that substitution.  Ranks are exact over the rationals (see
:mod:`codim.rank` for the modular escape hatch).

Row generation never enumerates the full ``dim^n`` substitution space.  A
conservative value-set sweep first collects every multiset of basis elements
that can possibly produce a nonzero product of the requested degree
(tracking supports only, so cancellation is over- not under-estimated), and
rows are the arrangements of those multisets.  Tuples skipped this way are
provably all-zero rows, which cannot change the rank; the unpruned oracle in
the test suite pins this down on every small instance.

Left-normed mode restricts the columns to the n! left-comb monomials.  That
is only sound for algebras where x1(x2x3) vanishes identically -- every
other bracketing is then identically zero -- so the mode refuses to run
unless the algebra's identity flag verifies.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraSpec, Element, el_add_scaled
from .errors import InvalidParameterError, ResourceLimitError
from .monomials import (
    DEFAULT_CAP_FULL,
    DEFAULT_CAP_LEFT_NORMED,
    MODE_FULL,
    MODE_LEFT_NORMED,
    Monomial,
    MultilinearPoly,
    dim_pn,
    enumerate_monomials,
)
from .rank import RankResult, certified_rank

_ONE = Fraction(1)


@dataclass(frozen=True)
class EngineConfig:
    """Size caps and strategy knobs; all computations take one of these."""

    cap_left_normed: int = DEFAULT_CAP_LEFT_NORMED
    cap_full: int = DEFAULT_CAP_FULL
    exact_budget: int = 200_000      # nonzeros before modular rank kicks in
    rowgen_budget: int = 500_000     # value-set DP size before fallback
    max_rows: int = 2_000_000        # hard cap on candidate substitutions
    threads: int = 1
    field: str = "auto"              # auto | rational | modular
    modular_primes: int = 2
    prime_seed: int = 20240601

    def with_threads(self, threads: int) -> "EngineConfig":
        return replace(self, threads=threads)


DEFAULT_CONFIG = EngineConfig()


# -- single monomial evaluation --------------------------------------------


def evaluate(spec: AlgebraSpec, monomial: Monomial, substitution: tuple[int, ...]) -> Element:
    """Value of one monomial under a substitution of basis elements.

    ``substitution[v-1]`` is the basis index standing in for x_v.
    """
    if len(substitution) != monomial.degree:
        raise InvalidParameterError(
            f"substitution length {len(substitution)} != degree {monomial.degree}"
        )
    dim = spec.dim
    if any(not (0 <= i < dim) for i in substitution):
        raise InvalidParameterError("substitution index out of range")
    return _eval_tree(spec, monomial.shape, monomial.perm, substitution)


def _eval_tree(spec, shape, perm, sub) -> Element:
    if isinstance(shape, int):
        return {sub[perm[shape] - 1]: _ONE}
    left = _eval_tree(spec, shape[0], perm, sub)
    if not left:
        return {}
    right = _eval_tree(spec, shape[1], perm, sub)
    if not right:
        return {}
    return spec.mul(left, right)


# -- shared monomial DAG (full mode) ----------------------------------------
#
# Sub-monomials repeat massively across columns; interning them into one
# evaluation DAG lets a row be computed bottom-up with each distinct
# sub-product evaluated once per substitution.


@lru_cache(maxsize=32)
def _monomial_dag(n: int, mode: str, cap_ln: int, cap_full: int):
    columns = enumerate_monomials(n, mode, cap_ln, cap_full)
    key2id: dict = {}
    nodes: list[tuple] = []  # ("L", var) or ("M", left_id, right_id)

    def intern(shape, perm) -> int:
        if isinstance(shape, int):
            key = ("L", perm[shape])
        else:
            lid = intern(shape[0], perm)
            rid = intern(shape[1], perm)
            key = ("M", lid, rid)
        nid = key2id.get(key)
        if nid is None:
            nid = len(nodes)
            key2id[key] = nid
            nodes.append(key)
        return nid

    tops = [intern(m.shape, m.perm) for m in columns]
    return columns, tuple(nodes), tuple(tops)


@lru_cache(maxsize=32)
def _perm_column_index(n: int) -> dict[tuple[int, ...], int]:
    return {
        perm: idx
        for idx, perm in enumerate(itertools.permutations(range(1, n + 1)))
    }


# -- candidate substitution generation --------------------------------------


def _pair_supports(spec: AlgebraSpec) -> dict[tuple[int, int], frozenset[int]]:
    return {
        key: frozenset(k for k, _ in entries)
        for key, entries in spec.products.items()
    }


def _value_multisets(
    spec: AlgebraSpec, n: int, mode: str, budget: int
) -> list[tuple[int, ...]] | None:
    """Multisets of basis indices that can reach a nonzero degree-n value.

    Returns None when the sweep outgrows ``budget`` (caller falls back to
    filtered cartesian enumeration).  Supports are tracked as unions, so the
    result is a superset of the truly productive multisets.
    """
    pair_supp = _pair_supports(spec)
    lvl1 = {(i,): frozenset((i,)) for i in range(spec.dim)}
    levels: list[dict] = [None, lvl1]
    total = len(lvl1)

    def combine(d1, d2, acc):
        for m1, s1 in d1.items():
            for m2, s2 in d2.items():
                supp = set()
                for i in s1:
                    for j in s2:
                        hit = pair_supp.get((i, j))
                        if hit:
                            supp.update(hit)
                if not supp:
                    continue
                key = tuple(sorted(m1 + m2))
                prev = acc.get(key)
                acc[key] = frozenset(supp) if prev is None else prev | supp

    for k in range(2, n + 1):
        acc: dict = {}
        if mode == MODE_LEFT_NORMED:
            combine(levels[k - 1], lvl1, acc)
        else:
            for i in range(1, k):
                combine(levels[i], levels[k - i], acc)
        levels.append(acc)
        total += len(acc)
        if total > budget:
            return None
    return sorted(levels[n].keys())


def _filtered_cartesian(
    spec: AlgebraSpec, n: int, mode: str, max_rows: int
) -> list[tuple[int, ...]]:
    """Fallback candidate enumeration with cheap sound filters only:
    single product-graph component, at most one element that is dead as a
    right factor (left-normed), all elements usable as some factor (full)."""
    comp = spec.components()
    nzr = spec.right_factors()
    nzl = spec.left_factors()
    if n == 1:
        return [(i,) for i in range(spec.dim)]
    if mode == MODE_LEFT_NORMED:
        usable = [i for i in range(spec.dim) if i in nzr or i in nzl]
    else:
        usable = [i for i in range(spec.dim) if i in nzr or i in nzl]
    out = []
    for tup in itertools.product(usable, repeat=n):
        c0 = comp[tup[0]]
        if any(comp[i] != c0 for i in tup[1:]):
            continue
        outside = [i for i in tup if i not in nzr]
        if mode == MODE_LEFT_NORMED:
            if len(outside) > 1:
                continue
            if outside:
                if outside[0] not in nzl:
                    continue
            elif not any(i in nzl for i in tup):
                continue
        else:
            if not any(i in nzl for i in tup):
                continue
            if not any(i in nzr for i in tup):
                continue
        out.append(tup)
        if len(out) > max_rows:
            raise ResourceLimitError(
                f"more than {max_rows} candidate substitutions at degree {n}; "
                "raise EngineConfig.max_rows if this size is intended"
            )
    return out


def candidate_substitutions(
    spec: AlgebraSpec, n: int, mode: str, config: EngineConfig = DEFAULT_CONFIG
) -> list[tuple[int, ...]]:
    """Sorted substitution tuples covering every nonzero row at degree n."""
    multisets = _value_multisets(spec, n, mode, config.rowgen_budget)
    if multisets is None:
        return _filtered_cartesian(spec, n, mode, config.max_rows)
    tuples: set[tuple[int, ...]] = set()
    for ms in multisets:
        tuples.update(itertools.permutations(ms))
        if len(tuples) > config.max_rows:
            raise ResourceLimitError(
                f"more than {config.max_rows} candidate substitutions at degree {n}; "
                "raise EngineConfig.max_rows if this size is intended"
            )
    return sorted(tuples)


# -- row evaluation ----------------------------------------------------------


def _rows_ln_for_tuple(spec: AlgebraSpec, sub, perm_index) -> list[tuple]:
    """All (coord, {column: coeff}) rows a substitution yields, left-normed.

    Walks the permutation tree depth-first sharing prefix products; a zero
    prefix kills the entire subtree, which is what makes degree 7-8 cheap.
    """
    n = len(sub)
    by_coord: dict[int, dict[int, Fraction]] = {}
    mul = spec.mul

    def rec(value: Element, used: int, prefix: list[int]):
        depth = len(prefix)
        if depth == n:
            col = perm_index[tuple(prefix)]
            for coord, c in value.items():
                by_coord.setdefault(coord, {})[col] = c
            return
        for v in range(1, n + 1):
            bit = 1 << v
            if used & bit:
                continue
            if depth == 0:
                nxt: Element = {sub[v - 1]: _ONE}
            else:
                nxt = mul(value, {sub[v - 1]: _ONE})
                if not nxt:
                    continue
            prefix.append(v)
            rec(nxt, used | bit, prefix)
            prefix.pop()

    rec({}, 0, [])
    return [(coord, row) for coord, row in sorted(by_coord.items())]


def _rows_full_for_tuple(spec: AlgebraSpec, sub, nodes, tops) -> list[tuple]:
    """Bottom-up evaluation of the interned monomial DAG on one tuple."""
    vals: list[Element] = [None] * len(nodes)  # type: ignore[list-item]
    mul = spec.mul
    for nid, node in enumerate(nodes):
        if node[0] == "L":
            vals[nid] = {sub[node[1] - 1]: _ONE}
        else:
            left = vals[node[1]]
            if left:
                right = vals[node[2]]
                vals[nid] = mul(left, right) if right else {}
            else:
                vals[nid] = {}
    by_coord: dict[int, dict[int, Fraction]] = {}
    for col, top in enumerate(tops):
        for coord, c in vals[top].items():
            by_coord.setdefault(coord, {})[col] = c
    return [(coord, row) for coord, row in sorted(by_coord.items())]


@dataclass
class EvalMatrix:
    """Sparse evaluation matrix: rows keyed by (substitution, coordinate)."""

    algebra: str
    n: int
    mode: str
    columns: list[Monomial]
    rows: list[dict[int, Fraction]]
    row_keys: list[tuple[tuple[int, ...], int]]

    @property
    def nonzeros(self) -> int:
        return sum(len(r) for r in self.rows)


def eval_matrix(
    spec: AlgebraSpec, n: int, mode: str = MODE_FULL, config: EngineConfig = DEFAULT_CONFIG
) -> EvalMatrix:
    if mode == MODE_LEFT_NORMED and not spec.satisfies_identity2():
        raise InvalidParameterError(
            "left-normed mode requires the right-nilpotency identity "
            "x1(x2x3)=0 to verify on this algebra; it does not"
        )
    subs = candidate_substitutions(spec, n, mode, config)
    if mode == MODE_LEFT_NORMED:
        columns = enumerate_monomials(n, mode, config.cap_left_normed, config.cap_full)
        perm_index = _perm_column_index(n)
        worker = lambda tup: _rows_ln_for_tuple(spec, tup, perm_index)
    else:
        columns, nodes, tops = _monomial_dag(
            n, mode, config.cap_left_normed, config.cap_full
        )
        columns = list(columns)
        worker = lambda tup: _rows_full_for_tuple(spec, tup, nodes, tops)

    rows: list[dict[int, Fraction]] = []
    row_keys: list[tuple[tuple[int, ...], int]] = []

    def consume(tup, produced):
        for coord, row in produced:
            rows.append(row)
            row_keys.append((tup, coord))

    if config.threads > 1 and len(subs) > 64:
        chunks = [subs[i : i + 256] for i in range(0, len(subs), 256)]
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            for chunk, results in zip(
                chunks, pool.map(lambda ch: [worker(t) for t in ch], chunks)
            ):
                for tup, produced in zip(chunk, results):
                    consume(tup, produced)
    else:
        for tup in subs:
            consume(tup, worker(tup))
    return EvalMatrix(spec.name, n, mode, columns, rows, row_keys)


# -- codimension and identity operations ------------------------------------


@dataclass(frozen=True)
class CodimResult:
    algebra: str
    n: int
    mode: str
    dim_pn: int
    rank: int
    field: str
    certification: str
    nonzeros: int
    n_rows: int

    @property
    def codim(self) -> int:
        return self.rank

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "mode": self.mode,
            "dim_pn": self.dim_pn,
            "codim": self.rank,
            "field": self.field,
            "certification": self.certification,
            "nonzeros": self.nonzeros,
            "rows": self.n_rows,
        }


def codim(
    spec: AlgebraSpec,
    n: int,
    mode: str = MODE_FULL,
    config: EngineConfig = DEFAULT_CONFIG,
    field: str | None = None,
) -> CodimResult:
    """c_n of the algebra: exact rank of the degree-n evaluation matrix."""
    matrix = eval_matrix(spec, n, mode, config)
    result: RankResult = certified_rank(
        matrix.rows,
        len(matrix.columns),
        strategy=field or config.field,
        exact_budget=config.exact_budget,
        modular_primes=config.modular_primes,
        prime_seed=config.prime_seed,
    )
    return CodimResult(
        algebra=spec.name,
        n=n,
        mode=mode,
        dim_pn=dim_pn(n, mode),
        rank=result.rank,
        field=result.field,
        certification=result.certification,
        nonzeros=result.nonzeros,
        n_rows=len(matrix.rows),
    )


def identity_space_dim(
    spec: AlgebraSpec, n: int, mode: str = MODE_FULL, config: EngineConfig = DEFAULT_CONFIG
) -> int:
    """dim of the degree-n multilinear identities of the algebra (within the
    chosen monomial space)."""
    return dim_pn(n, mode) - codim(spec, n, mode, config).rank


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    witness: tuple[str, ...] | None = None
    witness_value: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_identity(
    spec: AlgebraSpec, poly: MultilinearPoly, config: EngineConfig = DEFAULT_CONFIG
) -> IdentityVerdict:
    """Whether the polynomial vanishes under every basis substitution.

    Multilinearity means basis substitutions decide the general case.  The
    candidate sweep only skips substitutions on which every monomial is
    provably zero, so skipped tuples cannot be witnesses.
    """
    from .algebra import el_to_str

    n = poly.degree
    if n > config.cap_full:
        raise ResourceLimitError(
            f"degree {n} exceeds full-mode cap {config.cap_full}; "
            "raise EngineConfig.cap_full if this size is intended"
        )
    for tup in candidate_substitutions(spec, n, MODE_FULL, config):
        acc: Element = {}
        for mon, coeff in poly.terms.items():
            el_add_scaled(acc, _eval_tree(spec, mon.shape, mon.perm, tup), coeff)
        if acc:
            labels = tuple(spec.basis[i].label for i in tup)
            return IdentityVerdict(False, labels, el_to_str(spec, acc))
    return IdentityVerdict(True)


def identity_containment(
    A: AlgebraSpec,
    B: AlgebraSpec,
    n: int,
    mode: str = MODE_FULL,
    config: EngineConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether every degree-n identity of A is an identity of B.

    Decided exactly: ker M_A is contained in ker M_B iff stacking B's rows
    under A's does not raise the rank.
    """
    m_a = eval_matrix(A, n, mode, config)
    m_b = eval_matrix(B, n, mode, config)
    rank_a = certified_rank(
        m_a.rows, len(m_a.columns), "rational"
    ).rank
    rank_stack = certified_rank(
        m_a.rows + m_b.rows, len(m_a.columns), "rational"
    ).rank
    return rank_stack == rank_a


def mutual_identity_equality(
    A: AlgebraSpec,
    B: AlgebraSpec,
    n: int,
    mode: str = MODE_FULL,
    config: EngineConfig = DEFAULT_CONFIG,
) -> bool:
    """Equal degree-n identity spaces, via one stacked elimination."""
    m_a = eval_matrix(A, n, mode, config)
    m_b = eval_matrix(B, n, mode, config)
    ncols = len(m_a.columns)
    rank_a = certified_rank(m_a.rows, ncols, "rational").rank
    rank_b = certified_rank(m_b.rows, ncols, "rational").rank
    rank_stack = certified_rank(m_a.rows + m_b.rows, ncols, "rational").rank
    return rank_a == rank_b == rank_stack


# -- unital expansion --------------------------------------------------------


def expand_unital(poly: MultilinearPoly) -> dict[frozenset, object]:
    """Components of the substitution x_i -> 1 + x_i, keyed by the subset of
    surviving variables.

    The component for subset S replaces every other variable with the unit
    and simplifies by unit absorption; its variables are renamed
    order-preservingly to x1..x|S| (identity checking is invariant under
    that).  The empty-set component is the plain rational scalar.
    """
    n = poly.degree
    components: dict[frozenset, dict[Monomial, Fraction]] = {}
    scalar = Fraction(0)
    all_vars = range(1, n + 1)
    for subset_size in range(n + 1):
        for keep in itertools.combinations(all_vars, subset_size):
            keep_set = frozenset(keep)
            rename = {v: r + 1 for r, v in enumerate(sorted(keep))}
            acc: dict[Monomial, Fraction] = {}
            for mon, coeff in poly.terms.items():
                tree = _absorb_units(mon.shape, mon.perm, keep_set)
                if tree is None:
                    if not keep_set:
                        scalar += coeff
                    continue
                if not keep_set:
                    continue
                shape, variables = _tree_to_monomial(tree)
                new_mon = Monomial(shape, tuple(rename[v] for v in variables))
                val = acc.get(new_mon, Fraction(0)) + coeff
                if val:
                    acc[new_mon] = val
                elif new_mon in acc:
                    del acc[new_mon]
            if keep_set:
                components[keep_set] = acc
    out: dict[frozenset, object] = {frozenset(): scalar}
    for keep_set, terms in components.items():
        out[keep_set] = MultilinearPoly(len(keep_set), terms)
    return out


def _absorb_units(shape, perm, keep: frozenset):
    """Shape with dropped variables replaced by the unit and absorbed;
    returns a var / (l, r) tree, or None for the all-units product."""
    if isinstance(shape, int):
        v = perm[shape]
        return v if v in keep else None
    left = _absorb_units(shape[0], perm, keep)
    right = _absorb_units(shape[1], perm, keep)
    if left is None:
        return right
    if right is None:
        return left
    return (left, right)


def _tree_to_monomial(tree):
    variables: list[int] = []

    def rebuild(node):
        if isinstance(node, int):
            slot = len(variables)
            variables.append(node)
            return slot
        return (rebuild(node[0]), rebuild(node[1]))

    shape = rebuild(tree)
    return shape, variables
