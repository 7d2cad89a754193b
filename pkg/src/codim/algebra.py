"""Structure-constant presentations of the algebra family under study.

An :class:`AlgebraSpec` is a finite ordered basis together with a sparse
multiplication table over exact rationals.  Everything downstream (monomial
evaluation, codimension ranks, identity tests) works against this one
representation.  The constructors in this module build the concrete family:

* ``make_bt(T, level_cap)`` -- the shift/carry algebra on generators a, b and
  z[i,j]: right-multiplying z[i,j] by ``a`` advances the position j, and
  ``b`` applied at position T carries to level i+1.  The true algebra has
  infinitely many levels; ``level_cap`` truncates.  For any degree-n
  computation, ``level_cap = (n-1)//T + 1`` is enough, since a length-n
  product can climb at most that many levels.
* ``make_qn(N)`` -- the truncated polynomial algebra on theta without
  constant term, theta^(N+1) = 0.
* ``tensor``, ``direct_sum``, ``unitalize`` -- the closure operations, plus
  the composites ``make_btn`` and ``make_r``.

Coefficients are `fractions.Fraction` throughout; no floating point enters
any algebra computation.  Specs are immutable after construction (derived
data is cached, the table itself never changes) and safe to share across
threads.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InvalidParameterError, ParseError

# A sparse element: basis index -> nonzero rational coefficient.
Element = dict[int, Fraction]

ProductTable = dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]


@dataclass(frozen=True)
class BasisElement:
    """A structured basis label.

    ``kind`` is one of ``a b z theta unit pair summand raw``; ``args`` holds
    the structure (level/position for z, power for theta, operands for pair,
    index and inner element for summand, the literal label for raw).
    """

    kind: str
    args: tuple = ()

    @property
    def label(self) -> str:
        if self.kind == "a":
            return "a"
        if self.kind == "b":
            return "b"
        if self.kind == "z":
            level, pos = self.args
            return f"z[{level},{pos}]"
        if self.kind == "theta":
            return f"theta[{self.args[0]}]"
        if self.kind == "unit":
            return "e"
        if self.kind == "pair":
            left, right = self.args
            return f"{_wrap(left.label)}@{_wrap(right.label)}"
        if self.kind == "summand":
            idx, inner = self.args
            return f"s{idx}:{_wrap(inner.label)}"
        if self.kind == "raw":
            return self.args[0]
        raise ValueError(f"unknown basis element kind {self.kind!r}")

    def __str__(self) -> str:
        return self.label


def _wrap(label: str) -> str:
    return f"({label})" if ("@" in label or ":" in label) else label


class AlgebraSpec:
    """Immutable finite-dimensional algebra given by its multiplication table.

    ``products`` maps a pair of basis indices to the expansion of their
    product; absent pairs multiply to zero.  Entries are validated on
    construction: indices in range, coefficients nonzero, labels unique.
    """

    __slots__ = (
        "basis",
        "products",
        "name",
        "nilpotency_cap",
        "_label_index",
        "_identity2",
        "_right_factors",
        "_left_factors",
        "_components",
        "_right_mul",
    )

    def __init__(
        self,
        basis: Sequence[BasisElement],
        products: Mapping[tuple[int, int], Iterable[tuple[int, Fraction]]],
        name: str = "",
        nilpotency_cap: int | None = None,
    ):
        self.basis: tuple[BasisElement, ...] = tuple(basis)
        dim = len(self.basis)
        labels = [el.label for el in self.basis]
        if len(set(labels)) != dim:
            raise InvalidParameterError("basis labels must be unique")
        table: ProductTable = {}
        for (i, j), entries in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InvalidParameterError(f"product key ({i},{j}) out of range")
            cleaned = []
            for k, c in entries:
                if not (0 <= k < dim):
                    raise InvalidParameterError(f"product target {k} out of range")
                c = Fraction(c)
                if c == 0:
                    raise InvalidParameterError(
                        f"zero coefficient stored in product ({i},{j})"
                    )
                cleaned.append((k, c))
            if cleaned:
                cleaned.sort(key=lambda kc: kc[0])
                table[(i, j)] = tuple(cleaned)
        self.products: ProductTable = table
        self.name = name
        self.nilpotency_cap = nilpotency_cap
        self._label_index = {lab: i for i, lab in enumerate(labels)}
        self._identity2: bool | None = None
        self._right_factors: frozenset[int] | None = None
        self._left_factors: frozenset[int] | None = None
        self._components: tuple[int, ...] | None = None
        self._right_mul: dict[int, tuple[tuple[int, tuple[tuple[int, Fraction], ...]], ...]] | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, label: str) -> int:
        return self._label_index[label]

    def product(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        return self.products.get((i, j), ())

    def mul_basis(self, i: int, j: int) -> Element:
        return {k: c for k, c in self.product(i, j)}

    def mul(self, u: Element, v: Element) -> Element:
        """Bilinear product of two sparse elements."""
        out: Element = {}
        products = self.products
        for i, cu in u.items():
            for j, cv in v.items():
                entries = products.get((i, j))
                if not entries:
                    continue
                cc = cu * cv
                for k, c in entries:
                    val = out.get(k, 0) + cc * c
                    if val:
                        out[k] = val
                    elif k in out:
                        del out[k]
        return out

    # -- derived structure (cached, computed once) -----------------------

    def satisfies_identity2(self) -> bool:
        """Whether x1(x2x3) = 0 holds for all basis substitutions.

        Computed by exhaustive check, never assumed: every target of a
        nonzero product must itself be dead as a right factor.  The result
        gates the left-normed fast path.
        """
        if self._identity2 is None:
            right_keys = self.right_factors()
            ok = True
            for entries in self.products.values():
                if any(k in right_keys for k, _ in entries):
                    ok = False
                    break
            self._identity2 = ok
        return self._identity2

    def right_factors(self) -> frozenset[int]:
        """Indices that occur as the right factor of some nonzero product."""
        if self._right_factors is None:
            self._right_factors = frozenset(j for (_, j) in self.products)
        return self._right_factors

    def left_factors(self) -> frozenset[int]:
        if self._left_factors is None:
            self._left_factors = frozenset(i for (i, _) in self.products)
        return self._left_factors

    def components(self) -> tuple[int, ...]:
        """Connected components of the product graph, as a component id per
        basis index.  Factors and targets of one product are linked; direct
        summands therefore land in distinct components."""
        if self._components is None:
            parent = list(range(self.dim))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            def union(x: int, y: int) -> None:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[ry] = rx

            for (i, j), entries in self.products.items():
                union(i, j)
                for k, _ in entries:
                    union(i, k)
            self._components = tuple(find(i) for i in range(self.dim))
        return self._components

    def right_mul(self, i: int):
        """All ways to extend ``i`` by one right factor: (j, entries) pairs."""
        if self._right_mul is None:
            by_left: dict[int, list] = {}
            for (a, b), entries in self.products.items():
                by_left.setdefault(a, []).append((b, entries))
            self._right_mul = {
                a: tuple(sorted(lst)) for a, lst in by_left.items()
            }
        return self._right_mul.get(i, ())

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "basis": [el.label for el in self.basis],
            "products": [
                [i, j, [[k, _frac_str(c)] for k, c in entries]]
                for (i, j), entries in sorted(self.products.items())
            ],
        }

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=1)

    @classmethod
    def from_json_dict(cls, data: dict, name: str = "") -> "AlgebraSpec":
        try:
            labels = data["basis"]
            raw_products = data["products"]
        except (KeyError, TypeError) as exc:
            raise InvalidParameterError(f"malformed algebra file: {exc}")
        basis = [BasisElement("raw", (str(lab),)) for lab in labels]
        products = {}
        for row in raw_products:
            if len(row) != 3:
                raise InvalidParameterError(f"malformed product row {row!r}")
            i, j, entries = row
            products[(int(i), int(j))] = [
                (int(k), _parse_frac(c)) for k, c in entries
            ]
        return cls(basis, products, name=name)

    @classmethod
    def load(cls, path: str) -> "AlgebraSpec":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_json_dict(data, name=path)

    def __repr__(self) -> str:
        tag = self.name or "algebra"
        return f"<AlgebraSpec {tag} dim={self.dim} entries={len(self.products)}>"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_frac(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"bad rational {text!r}: {exc}")


# -- element helpers ------------------------------------------------------


def el_from_basis(i: int) -> Element:
    return {i: Fraction(1)}


def el_add_scaled(acc: Element, other: Element, scale: Fraction) -> None:
    """In-place acc += scale * other (drops zeros)."""
    if not scale:
        return
    for k, c in other.items():
        val = acc.get(k, 0) + scale * c
        if val:
            acc[k] = val
        elif k in acc:
            del acc[k]


def el_to_str(spec: AlgebraSpec, u: Element) -> str:
    if not u:
        return "0"
    parts = []
    for k in sorted(u):
        c = u[k]
        lab = spec.basis[k].label
        parts.append(lab if c == 1 else f"{_frac_str(c)}*{lab}")
    return " + ".join(parts)


# -- the concrete family ---------------------------------------------------


def make_bt(T: int, level_cap: int) -> AlgebraSpec:
    """The shift/carry algebra on basis {a, b} union {z[i,j]}.

    z[i,j]*a = z[i,j+1] for j <= T-1 and zero at j = T; z[i,T]*b carries to
    z[i+1,1].  All other products of basis elements vanish.  Levels i run
    from 1 to ``level_cap``; the carry out of the top level is truncated to
    zero.
    """
    if T < 2:
        raise InvalidParameterError(f"T must be >= 2, got {T}")
    if level_cap < 1:
        raise InvalidParameterError(f"level_cap must be >= 1, got {level_cap}")
    basis = [BasisElement("a"), BasisElement("b")]
    index = {}
    for i in range(1, level_cap + 1):
        for j in range(1, T + 1):
            index[(i, j)] = len(basis)
            basis.append(BasisElement("z", (i, j)))
    one = Fraction(1)
    products = {}
    for i in range(1, level_cap + 1):
        for j in range(1, T):
            products[(index[(i, j)], 0)] = [(index[(i, j + 1)], one)]
        if i + 1 <= level_cap:
            products[(index[(i, T)], 1)] = [(index[(i + 1, 1)], one)]
    return AlgebraSpec(basis, products, name=f"bt:T={T},cap={level_cap}")


def make_qn(N: int) -> AlgebraSpec:
    """Truncated polynomial algebra: basis theta[1..N], theta^(N+1) = 0."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    basis = [BasisElement("theta", (s,)) for s in range(1, N + 1)]
    one = Fraction(1)
    products = {}
    for s in range(1, N + 1):
        for t in range(1, N + 1):
            if s + t <= N:
                products[(s - 1, t - 1)] = products.get((s - 1, t - 1), [])
                products[(s - 1, t - 1)].append((s + t - 1, one))
    return AlgebraSpec(basis, products, name=f"qn:N={N}", nilpotency_cap=N + 1)


def tensor(A: AlgebraSpec, B: AlgebraSpec) -> AlgebraSpec:
    """Tensor product; (u@v)(u'@v') expands bilinearly through both tables."""
    dim_b = B.dim
    basis = [
        BasisElement("pair", (ea, eb)) for ea in A.basis for eb in B.basis
    ]
    products = {}
    for (ia, ja), ent_a in A.products.items():
        for (ib, jb), ent_b in B.products.items():
            key = (ia * dim_b + ib, ja * dim_b + jb)
            products[key] = [
                (ka * dim_b + kb, ca * cb)
                for ka, ca in ent_a
                for kb, cb in ent_b
            ]
    cap = None
    if A.nilpotency_cap is not None or B.nilpotency_cap is not None:
        cap = min(
            c for c in (A.nilpotency_cap, B.nilpotency_cap) if c is not None
        )
    name = f"({A.name})(x)({B.name})" if A.name and B.name else ""
    return AlgebraSpec(basis, products, name=name, nilpotency_cap=cap)


def _direct_sum_many(parts: Sequence[AlgebraSpec], name: str = "") -> AlgebraSpec:
    basis: list[BasisElement] = []
    products: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    offset = 0
    for idx, part in enumerate(parts, start=1):
        basis.extend(
            BasisElement("summand", (idx, el)) for el in part.basis
        )
        for (i, j), entries in part.products.items():
            products[(i + offset, j + offset)] = [
                (k + offset, c) for k, c in entries
            ]
        offset += part.dim
    caps = [p.nilpotency_cap for p in parts]
    cap = max(caps) if caps and all(c is not None for c in caps) else None
    return AlgebraSpec(basis, products, name=name, nilpotency_cap=cap)


def direct_sum(A: AlgebraSpec, B: AlgebraSpec) -> AlgebraSpec:
    """Direct sum: disjoint union of bases, cross products zero."""
    name = f"sum({A.name};{B.name})" if A.name and B.name else ""
    return _direct_sum_many([A, B], name=name)


def unitalize(A: AlgebraSpec) -> AlgebraSpec:
    """Adjoin an external unit e with e*x = x*e = x (including e*e = e)."""
    if any(el.kind == "unit" for el in A.basis):
        raise InvalidParameterError("algebra already has an adjoined unit")
    e = A.dim
    basis = list(A.basis) + [BasisElement("unit")]
    one = Fraction(1)
    products: dict[tuple[int, int], list[tuple[int, Fraction]]] = {
        key: list(entries) for key, entries in A.products.items()
    }
    products[(e, e)] = [(e, one)]
    for i in range(A.dim):
        products[(e, i)] = [(i, one)]
        products[(i, e)] = [(i, one)]
    name = f"unital({A.name})" if A.name else ""
    return AlgebraSpec(basis, products, name=name)


def bt_level_cap_for_degree(T: int, n: int) -> int:
    """Levels needed so degree-n products over bt(T, .) are exact: a
    length-n left-normed product can pass at most (n-1)//T carries."""
    return (n - 1) // T + 1


def make_btn(T: int, N: int) -> AlgebraSpec:
    """bt(T) tensored with qn(N).

    Every factor carries theta-degree >= 1, so any product of more than N
    elements vanishes; level_cap (N-1)//T + 1 on the bt side is therefore
    exact for all degrees.
    """
    if T < 2:
        raise InvalidParameterError(f"T must be >= 2, got {T}")
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    spec = tensor(make_bt(T, bt_level_cap_for_degree(T, N)), make_qn(N))
    return AlgebraSpec(
        spec.basis,
        spec.products,
        name=f"btn:T={T},N={N}",
        nilpotency_cap=N + 1,
    )


def make_r(stages: Sequence[tuple[int, int]], degree_cap: int) -> AlgebraSpec:
    """Direct sum of btn(T_j, N_j) over the given stages.

    The stage chain must interleave strictly: T_1 < N_1 < T_2 < N_2 < ...
    Stages with T_j above ``degree_cap`` cannot affect identities of degree
    <= degree_cap beyond the first of them, so only stages with
    T_j <= degree_cap plus one extra stage are kept.
    """
    if not stages:
        raise InvalidParameterError("at least one (T, N) stage required")
    flat = [v for tn in stages for v in tn]
    if any(x >= y for x, y in zip(flat, flat[1:])):
        raise InvalidParameterError(
            f"stages must interleave strictly (T1 < N1 < T2 < ...), got {list(stages)}"
        )
    kept = []
    for T, N in stages:
        kept.append((T, N))
        if T > degree_cap:
            break
    parts = [make_btn(T, N) for T, N in kept]
    stage_str = ";".join(f"btn:T={t},N={n}" for t, n in kept)
    spec = _direct_sum_many(parts, name=f"sum({stage_str})")
    return spec


def corrupt_product(
    spec: AlgebraSpec,
    left_label: str,
    right_label: str,
    entries: Sequence[tuple[str, Fraction]],
) -> AlgebraSpec:
    """Copy of ``spec`` with one table entry replaced (empty = set to zero).

    Test instrumentation for mutation sensitivity; never used by the
    constructors themselves.
    """
    i = spec.index_of(left_label)
    j = spec.index_of(right_label)
    products = {key: list(ent) for key, ent in spec.products.items()}
    new_entries = [(spec.index_of(lab), Fraction(c)) for lab, c in entries]
    if new_entries:
        products[(i, j)] = new_entries
    else:
        products.pop((i, j), None)
    return AlgebraSpec(
        spec.basis,
        products,
        name=(spec.name + f"!mut({left_label},{right_label})"),
        nilpotency_cap=spec.nilpotency_cap,
    )


# -- descriptor mini-language ----------------------------------------------
#
# bt:T=2,cap=3 | qn:N=4 | btn:T=2,N=3 | unital(<desc>) | sum(<desc>;<desc>;...)

_PARAM_RE = re.compile(r"([A-Za-z_]+)=(\d+)")


def from_descriptor(
    text: str, bt_cap_for: Callable[[int], int] | None = None
) -> AlgebraSpec:
    """Build an algebra from a shorthand descriptor string.

    ``bt_cap_for`` supplies a level cap for ``bt:`` descriptors that omit
    ``cap`` (the CLI passes a cap derived from the requested degree).
    """
    spec, pos = _parse_descriptor(text, 0, bt_cap_for)
    if pos != len(text):
        raise ParseError("trailing input after descriptor", pos, text)
    return spec


def _parse_descriptor(text: str, pos: int, bt_cap_for) -> tuple[AlgebraSpec, int]:
    if text.startswith("unital(", pos):
        inner, p = _parse_descriptor(text, pos + len("unital("), bt_cap_for)
        if p >= len(text) or text[p] != ")":
            raise ParseError("expected ')' closing unital(...)", p, text)
        return unitalize(inner), p + 1
    if text.startswith("sum(", pos):
        p = pos + len("sum(")
        parts = []
        while True:
            inner, p = _parse_descriptor(text, p, bt_cap_for)
            parts.append(inner)
            if p < len(text) and text[p] == ";":
                p += 1
                continue
            break
        if p >= len(text) or text[p] != ")":
            raise ParseError("expected ')' or ';' in sum(...)", p, text)
        name = "sum(" + ";".join(part.name for part in parts) + ")"
        return _direct_sum_many(parts, name=name), p + 1
    for head in ("bt:", "qn:", "btn:"):
        if text.startswith(head, pos):
            p = pos + len(head)
            params: dict[str, int] = {}
            while True:
                m = _PARAM_RE.match(text, p)
                if not m:
                    raise ParseError(f"expected key=value in {head}...", p, text)
                params[m.group(1)] = int(m.group(2))
                p = m.end()
                if p < len(text) and text[p] == ",":
                    nxt = _PARAM_RE.match(text, p + 1)
                    if nxt:
                        p += 1
                        continue
                break
            try:
                return _build_from_params(head, params, bt_cap_for), p
            except InvalidParameterError as exc:
                raise ParseError(str(exc), pos, text)
    raise ParseError(
        "expected one of bt:, qn:, btn:, unital(, sum(", pos, text
    )


def _build_from_params(head: str, params: dict[str, int], bt_cap_for) -> AlgebraSpec:
    if head == "bt:":
        if "T" not in params:
            raise InvalidParameterError("bt descriptor needs T=...")
        T = params["T"]
        if "cap" in params:
            cap = params["cap"]
        elif bt_cap_for is not None:
            cap = bt_cap_for(T)
        else:
            raise InvalidParameterError("bt descriptor needs cap=...")
        _check_keys(params, {"T", "cap"})
        return make_bt(T, cap)
    if head == "qn:":
        if "N" not in params:
            raise InvalidParameterError("qn descriptor needs N=...")
        _check_keys(params, {"N"})
        return make_qn(params["N"])
    if head == "btn:":
        if "T" not in params or "N" not in params:
            raise InvalidParameterError("btn descriptor needs T=...,N=...")
        _check_keys(params, {"T", "N"})
        return make_btn(params["T"], params["N"])
    raise InvalidParameterError(f"unknown descriptor head {head!r}")


def _check_keys(params: dict, allowed: set) -> None:
    extra = set(params) - allowed
    if extra:
        raise InvalidParameterError(f"unknown descriptor keys {sorted(extra)}")
