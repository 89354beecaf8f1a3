"""Finite groups through their character theory.

Two kinds of group are supported.  Finite abelian groups ``Z_n1 x ... x Z_nr``
are built directly; their elements and irreps are both residue tuples and the
character of irrep ``l`` at element ``g`` is ``prod zeta_ni^(li*gi)``.  Any other
finite group enters through a parsed character table, where an element is a
conjugacy-class index ``(i,)`` and an irrep is a row index ``(r,)``.

Irreps and elements are therefore plain tuples of ints in both cases.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Mapping, Sequence

from .errors import (
    ChartabSyntaxError,
    ChartabValidationError,
    DomainError,
    InternalCheckError,
    UnsupportedOperationError,
)
from .exactnum import CycNum, cyc_root, parse_cycnum

Irrep = tuple
Element = tuple

__all__ = [
    "Group",
    "AbelianGroup",
    "TabledGroup",
    "CharacterTable",
    "ClassInfo",
    "IrrepRow",
    "Embedding",
    "make_abelian_group",
    "parse_group_spec",
    "char_value",
    "parse_character_table",
    "render_character_table",
    "class_function_multiplicities",
    "restrict_irrep",
]


class Group:
    """Common interface; see :class:`AbelianGroup` and :class:`TabledGroup`."""

    order: int
    name: str

    @property
    def irreps(self) -> list[Irrep]:
        raise NotImplementedError

    @property
    def elements(self) -> list[Element]:
        """One representative per conjugacy class."""
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        return self.elements[0]

    @property
    def trivial(self) -> Irrep:
        return self.irreps[0]

    def class_size(self, g: Element) -> int:
        raise NotImplementedError

    def element_order(self, g: Element) -> int:
        raise NotImplementedError

    def dim(self, irrep: Irrep) -> int:
        raise NotImplementedError

    def char(self, irrep: Irrep, g: Element) -> CycNum:
        raise NotImplementedError

    def power(self, g: Element, j: int) -> Element:
        raise NotImplementedError

    def irrep_label(self, irrep: Irrep) -> str:
        raise NotImplementedError

    def tensor(self, a: Irrep, b: Irrep) -> dict[Irrep, int]:
        """Decomposition of the tensor product of two irreps."""
        raise NotImplementedError

    @property
    def spec(self) -> str:
        return self.name

    def check_irrep(self, irrep: Irrep) -> Irrep:
        if irrep not in self._irrep_set:
            raise DomainError(f"{irrep!r} is not an irrep of {self.name}")
        return irrep

    def check_element(self, g: Element) -> Element:
        raise NotImplementedError

    @cached_property
    def _irrep_set(self) -> frozenset:
        return frozenset(self.irreps)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class AbelianGroup(Group):
    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be positive, got {list(orders)}")
        self.orders = orders
        self.order = prod(orders)
        self.name = "x".join(f"Z{n}" for n in orders) if orders else "1"
        self._chars: dict[tuple[Irrep, Element], CycNum] = {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and other.orders == self.orders

    def __hash__(self) -> int:
        return hash(("abelian", self.orders))

    @cached_property
    def irreps(self) -> list[Irrep]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    @property
    def elements(self) -> list[Element]:
        return self.irreps

    def check_element(self, g: Element) -> Element:
        g = tuple(g)
        if len(g) != len(self.orders) or any(not 0 <= x < n for x, n in zip(g, self.orders)):
            raise DomainError(f"{g!r} is not an element of {self.name}")
        return g

    def reduce(self, g: Sequence[int]) -> Element:
        return tuple(x % n for x, n in zip(g, self.orders))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def class_size(self, g: Element) -> int:
        return 1

    def element_order(self, g: Element) -> int:
        return lcm(1, *(n // gcd(x, n) for x, n in zip(g, self.orders)))

    def dim(self, irrep: Irrep) -> int:
        return 1

    def power(self, g: Element, j: int) -> Element:
        return tuple((x * j) % n for x, n in zip(g, self.orders))

    def char(self, irrep: Irrep, g: Element) -> CycNum:
        key = (irrep, g)
        val = self._chars.get(key)
        if val is None:
            self.check_irrep(irrep)
            self.check_element(g)
            big = lcm(1, *self.orders)
            e = sum(l * x * (big // n) for l, x, n in zip(irrep, g, self.orders))
            val = cyc_root(big, e)
            self._chars[key] = val
        return val

    def irrep_label(self, irrep: Irrep) -> str:
        if len(irrep) == 1:
            return f"l{irrep[0]}"
        return "l(" + ",".join(str(x) for x in irrep) + ")"

    def tensor(self, a: Irrep, b: Irrep) -> dict[Irrep, int]:
        return {self.add(a, b): 1}


@dataclass(frozen=True)
class ClassInfo:
    label: str
    size: int
    ord: int
    powers: tuple[int, ...] | None = None  # class index of g^j for j = 0..ord-1


@dataclass(frozen=True)
class IrrepRow:
    label: str
    dim: int
    values: tuple[CycNum, ...]


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: int
    classes: tuple[ClassInfo, ...]
    rows: tuple[IrrepRow, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.rows)

    def inner(self, i: int, j: int) -> CycNum:
        """<chi_i, chi_j> under the class-size-weighted inner product."""
        acc = CycNum.rational(0)
        for cls, a, b in zip(self.classes, self.rows[i].values, self.rows[j].values):
            acc = acc + a * b.conj() * cls.size
        return acc / self.order

    def validate(self) -> None:
        k = len(self.classes)
        if len(self.rows) != k:
            raise ChartabValidationError(f"{len(self.rows)} irreps for {k} classes")
        if not self.classes or self.classes[0].size != 1 or self.classes[0].ord != 1:
            raise ChartabValidationError("the identity class (size 1, ord 1) must come first")
        total = sum(c.size for c in self.classes)
        if total != self.order:
            raise ChartabValidationError(f"class sizes sum to {total}, group order is {self.order}")
        for c in self.classes:
            if self.order % c.size or self.order % c.ord:
                raise ChartabValidationError(f"class {c.label}: size and order must divide {self.order}")
        for r in self.rows:
            if len(r.values) != k:
                raise ChartabValidationError(f"irrep {r.label}: {len(r.values)} values for {k} classes")
        for i in range(k):
            for j in range(i, k):
                v = self.inner(i, j)
                want = 1 if i == j else 0
                if v != want:
                    if i == j:
                        raise ChartabValidationError(f"row norm ≠ 1 for irrep {self.rows[i].label} (got {v})")
                    raise ChartabValidationError(
                        f"orthogonality violated for pair ({self.rows[i].label}, {self.rows[j].label}): "
                        f"inner product {v}"
                    )
        sq = sum(d * d for d in self.dims)
        if sq != self.order:
            raise ChartabValidationError(f"sum of squared dims is {sq}, group order is {self.order}")
        for r in self.rows:
            if r.values[0] != r.dim:
                raise ChartabValidationError(f"irrep {r.label}: identity-class value {r.values[0]} != dim {r.dim}")
            if r.dim == 1:
                for c, v in zip(self.classes, r.values):
                    if v ** c.ord != 1:
                        raise ChartabValidationError(
                            f"irrep {r.label}: value {v} at class {c.label} is not an ord-{c.ord} root of unity"
                        )
        for idx, c in enumerate(self.classes):
            if c.powers is None:
                continue
            if len(c.powers) != c.ord or c.powers[0] != 0 or (c.ord > 1 and c.powers[1] != idx):
                raise ChartabValidationError(f"class {c.label}: malformed power map")
            for j, p in enumerate(c.powers):
                target = self.classes[p]
                want_ord = c.ord // gcd(j, c.ord)
                if target.ord != want_ord:
                    raise ChartabValidationError(
                        f"class {c.label}: g^{j} lands in {target.label} of order {target.ord}, expected {want_ord}"
                    )
                for r in self.rows:
                    if r.dim == 1 and r.values[p] != r.values[idx] ** j:
                        raise ChartabValidationError(
                            f"class {c.label}: power map g^{j} -> {target.label} contradicts irrep {r.label}"
                        )


def parse_character_table(text: str) -> CharacterTable:
    """Parse and validate a character table in the line-oriented file format.

    ::

        group <name>
        order <N>
        classes <k>
        class <label> size <s> ord <o> [pow <label of g^0> ... <label of g^(o-1)>]
        irrep <label> dim <d> : <v1> | <v2> | ... | <vk>

    ``#`` starts a comment.  Values use the cyclotomic grammar of
    :func:`swdegree.exactnum.parse_cycnum`.
    """
    name = None
    order = None
    nclasses = None
    raw_classes: list[tuple[str, int, int, list[str] | None, int]] = []
    rows: list[IrrepRow] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        words = line.split()
        key = words[0]

        def col(token_index: int) -> int:
            pos = indent
            for w in words[:token_index]:
                pos = line.index(w, pos) + len(w)
            return line.index(words[token_index], pos) + 1 if token_index < len(words) else len(line) + 1

        def need_int(token_index: int, what: str) -> int:
            if token_index >= len(words):
                raise ChartabSyntaxError(f"missing {what}", lineno, len(line) + 1)
            try:
                value = int(words[token_index])
            except ValueError:
                raise ChartabSyntaxError(f"expected integer {what}, got {words[token_index]!r}", lineno, col(token_index)) from None
            if value < 1:
                raise ChartabSyntaxError(f"{what} must be positive", lineno, col(token_index))
            return value

        if key == "group":
            if len(words) != 2:
                raise ChartabSyntaxError("expected 'group <name>'", lineno, indent + 1)
            name = words[1]
        elif key == "order":
            order = need_int(1, "order")
        elif key == "classes":
            nclasses = need_int(1, "class count")
        elif key == "class":
            if nclasses is None:
                raise ChartabSyntaxError("'class' line before 'classes <k>'", lineno, indent + 1)
            if rows:
                raise ChartabSyntaxError("'class' line after the first 'irrep' line", lineno, indent + 1)
            if len(words) < 6 or words[2] != "size" or words[4] != "ord":
                raise ChartabSyntaxError("expected 'class <label> size <s> ord <o>'", lineno, indent + 1)
            powers = None
            if len(words) > 6:
                if words[6] != "pow":
                    raise ChartabSyntaxError(f"unexpected token {words[6]!r}", lineno, col(6))
                powers = words[7:]
            raw_classes.append((words[1], need_int(3, "class size"), need_int(5, "element order"), powers, lineno))
        elif key == "irrep":
            if nclasses is None or len(raw_classes) != nclasses:
                raise ChartabSyntaxError(
                    f"expected {nclasses} class lines before the first irrep, found {len(raw_classes)}", lineno, indent + 1
                )
            head, sep, body = line.partition(":")
            hw = head.split()
            if not sep or len(hw) != 4 or hw[2] != "dim":
                raise ChartabSyntaxError("expected 'irrep <label> dim <d> : <v1> | ... | <vk>'", lineno, indent + 1)
            dim = need_int(3, "dimension")
            cells = body.split("|")
            values = []
            offset = len(head) + 1
            for cell in cells:
                try:
                    values.append(parse_cycnum(cell))
                except ValueError as exc:
                    raise ChartabSyntaxError(str(exc), lineno, offset + len(cell) - len(cell.lstrip()) + 1) from None
                offset += len(cell) + 1
            if len(values) != nclasses:
                raise ChartabSyntaxError(f"expected {nclasses} values, got {len(values)}", lineno, len(head) + 2)
            rows.append(IrrepRow(hw[1], dim, tuple(values)))
        else:
            raise ChartabSyntaxError(f"unknown directive {key!r}", lineno, indent + 1)

    if name is None:
        raise ChartabSyntaxError("missing 'group <name>' line", 1)
    if order is None:
        raise ChartabSyntaxError("missing 'order <N>' line", 1)
    if nclasses is None:
        raise ChartabSyntaxError("missing 'classes <k>' line", 1)

    labels = {c[0]: i for i, c in enumerate(raw_classes)}
    if len(labels) != len(raw_classes):
        raise ChartabValidationError("duplicate class labels")
    classes = []
    for label, size, o, powers, lineno in raw_classes:
        idx = None
        if powers is not None:
            try:
                idx = tuple(labels[p] for p in powers)
            except KeyError as exc:
                raise ChartabSyntaxError(f"unknown class label {exc.args[0]!r} in power map", lineno) from None
        classes.append(ClassInfo(label, size, o, idx))
    table = CharacterTable(name, order, tuple(classes), tuple(rows))
    table.validate()
    return table


def render_character_table(table: CharacterTable) -> str:
    lines = [f"group {table.name}", f"order {table.order}", f"classes {len(table.classes)}"]
    for c in table.classes:
        line = f"class {c.label} size {c.size} ord {c.ord}"
        if c.powers is not None:
            line += " pow " + " ".join(table.classes[p].label for p in c.powers)
        lines.append(line)
    for r in table.rows:
        lines.append(f"irrep {r.label} dim {r.dim} : " + " | ".join(str(v) for v in r.values))
    return "\n".join(lines) + "\n"


class TabledGroup(Group):
    def __init__(self, table: CharacterTable):
        self.table = table
        self.order = table.order
        self.name = table.name
        self._tensor: dict[tuple[Irrep, Irrep], dict[Irrep, int]] = {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TabledGroup) and other.table == self.table

    def __hash__(self) -> int:
        return hash(("tabled", self.name, self.order, len(self.table.classes)))

    @cached_property
    def irreps(self) -> list[Irrep]:
        return [(i,) for i in range(len(self.table.rows))]

    @cached_property
    def elements(self) -> list[Element]:
        return [(i,) for i in range(len(self.table.classes))]

    @property
    def spec(self) -> str:
        return f"table:{self.name}"

    def check_element(self, g: Element) -> Element:
        g = tuple(g)
        if len(g) != 1 or not 0 <= g[0] < len(self.table.classes):
            raise DomainError(f"{g!r} is not a class of {self.name}")
        return g

    def class_size(self, g: Element) -> int:
        return self.table.classes[g[0]].size

    def element_order(self, g: Element) -> int:
        return self.table.classes[g[0]].ord

    def dim(self, irrep: Irrep) -> int:
        return self.table.rows[self.check_irrep(irrep)[0]].dim

    def char(self, irrep: Irrep, g: Element) -> CycNum:
        self.check_irrep(irrep)
        self.check_element(g)
        return self.table.rows[irrep[0]].values[g[0]]

    def power(self, g: Element, j: int) -> Element:
        cls = self.table.classes[self.check_element(g)[0]]
        if cls.powers is None:
            raise UnsupportedOperationError(f"class {cls.label} of {self.name} has no power map")
        return (cls.powers[j % cls.ord],)

    def has_power_maps(self) -> bool:
        return all(c.powers is not None for c in self.table.classes)

    def irrep_label(self, irrep: Irrep) -> str:
        return self.table.rows[irrep[0]].label

    def tensor(self, a: Irrep, b: Irrep) -> dict[Irrep, int]:
        key = (a, b) if a <= b else (b, a)
        cached = self._tensor.get(key)
        if cached is None:
            values = {g: self.char(a, g) * self.char(b, g) for g in self.elements}
            mult = class_function_multiplicities(self, values)
            cached = {}
            for irrep, q in mult.items():
                if q.denominator != 1:
                    raise InternalCheckError(
                        f"tensor {self.irrep_label(a)}*{self.irrep_label(b)} has multiplicity {q} at "
                        f"{self.irrep_label(irrep)}; the character table is inconsistent"
                    )
                if q:
                    cached[irrep] = int(q)
            self._tensor[key] = cached
        return dict(cached)


def make_abelian_group(orders: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(orders)


def parse_group_spec(spec: str) -> AbelianGroup:
    """``Z3``, ``Z2xZ2``, ``Z3xZ5``; ``1`` is the trivial group."""
    s = spec.strip()
    if s in ("1", ""):
        return AbelianGroup(())
    parts = s.split("x")
    orders = []
    for p in parts:
        m = re.fullmatch(r"Z(\d+)", p.strip())
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"bad group spec {spec!r}; expected e.g. Z3 or Z2xZ2")
        orders.append(int(m.group(1)))
    return AbelianGroup(orders)


def char_value(G: Group, irrep: Irrep, g: Element) -> CycNum:
    return G.char(tuple(irrep), tuple(g))


def class_function_multiplicities(G: Group, values: Mapping[Element, object]) -> dict[Irrep, Fraction]:
    """Inner products <f, chi> for every irrep chi (rational, not checked for integrality)."""
    f = {G.check_element(tuple(g)): CycNum.coerce(v) for g, v in values.items()}
    missing = [g for g in G.elements if g not in f]
    if missing:
        raise DomainError(f"class function on {G.name} has no value at {missing[0]!r}")
    out: dict[Irrep, Fraction] = {}
    for irrep in G.irreps:
        acc = CycNum.rational(0)
        for g in G.elements:
            v = f[g]
            if v.is_zero():
                continue
            acc = acc + v * G.char(irrep, g).conj() * G.class_size(g)
        acc = acc / G.order
        if not acc.is_rational():
            raise DomainError(
                f"class function on {G.name} has irrational inner product {acc} with {G.irrep_label(irrep)}"
            )
        out[irrep] = acc.to_fraction()
    return out


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism Z_n -> target, determined by the image of 1."""

    source: AbelianGroup
    target: Group
    image: Element

    def __post_init__(self):
        if len(self.source.orders) != 1:
            raise DomainError(f"embedding source must be cyclic, got {self.source.name}")
        img = self.target.check_element(tuple(self.image))
        object.__setattr__(self, "image", img)
        n = self.source.orders[0]
        if self.target.element_order(img) != n:
            raise DomainError(
                f"image {img!r} has order {self.target.element_order(img)}, source {self.source.name} has order {n}"
            )

    @classmethod
    def cyclic(cls, n: int, target: Group, image: Sequence[int]) -> Embedding:
        return cls(AbelianGroup([n]), target, tuple(image))

    def image_of(self, j: int) -> Element:
        return self.target.power(self.image, j)


def restrict_irrep(e: Embedding, irrep: Irrep):
    """Decompose irrep composed with the embedding into irreps of the cyclic source."""
    from .reprings import VirtualRep

    G = e.target
    irrep = G.check_irrep(tuple(irrep))
    n = e.source.orders[0]
    if G.dim(irrep) == 1:
        base = G.char(irrep, e.image)
        values = {(j,): base ** j for j in range(n)}
    else:
        values = {(j,): G.char(irrep, e.image_of(j)) for j in range(n)}
    mult = class_function_multiplicities(e.source, values)
    coeffs = {}
    for mu, q in mult.items():
        if q.denominator != 1 or q < 0:
            raise InternalCheckError(f"restriction of {G.irrep_label(irrep)} has multiplicity {q} at {mu}")
        if q:
            coeffs[mu] = int(q)
    return VirtualRep(e.source, coeffs)
