"""Representation rings R(Gamma), R(Pin(2)) and R(Gamma) (x) R(Pin(2)).

``R(Pin(2)) = Z[h] + Z c`` with ``c^2 = 1`` and ``c h = h``.  Traces are taken
at the element ``j`` (called J here: ``h -> 0``, ``c -> -1``) and at a
symbolic point ``z`` of the circle (``h -> z + 1/z``, ``c -> 1``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InternalCheckError, NotVirtualCharacterError, UnsupportedOperationError
from .exactnum import CycNum, LaurentPoly
from .groups import (
    AbelianGroup,
    Element,
    Embedding,
    Group,
    Irrep,
    class_function_multiplicities,
    parse_group_spec,
    restrict_irrep,
)

J = "J"
SYMBOLIC = "symbolic"
TRACE_POINTS = (J, SYMBOLIC)

__all__ = [
    "Pin2Elem",
    "VirtualRep",
    "EquivElem",
    "J",
    "SYMBOLIC",
    "pin2_mul",
    "pin2_trace",
    "parse_pin2",
    "equiv_mul",
    "equiv_trace",
    "wedge_star_h",
    "wedge_star_c",
    "regular_rep",
    "vr_from_character",
    "equiv_decompose",
    "equiv_from_parts",
    "equiv_from_traces",
    "restrict_equiv",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Pin2Elem:
    """Element ``p(h) + n c`` of R(Pin(2)) in the normal form Z[h] + Z c."""

    __slots__ = ("h", "c")

    def __init__(self, h: Sequence[int] = (), c: int = 0):
        self.h = _trim(h)
        self.c = int(c)

    @classmethod
    def one(cls) -> Pin2Elem:
        return cls((1,))

    @classmethod
    def gen_h(cls) -> Pin2Elem:
        return cls((0, 1))

    @classmethod
    def gen_c(cls) -> Pin2Elem:
        return cls((), 1)

    @classmethod
    def one_minus_c(cls, scale: int = 1) -> Pin2Elem:
        return cls((scale,), -scale)

    def is_zero(self) -> bool:
        return not self.h and not self.c

    @property
    def constant(self) -> int:
        return self.h[0] if self.h else 0

    @property
    def hdeg(self) -> int:
        return len(self.h) - 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Pin2Elem((other,))
        if not isinstance(other, Pin2Elem):
            return NotImplemented
        return self.h == other.h and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.h, self.c))

    def __add__(self, other: object) -> Pin2Elem:
        if isinstance(other, int):
            other = Pin2Elem((other,))
        if not isinstance(other, Pin2Elem):
            return NotImplemented
        n = max(len(self.h), len(other.h))
        a = self.h + (0,) * (n - len(self.h))
        b = other.h + (0,) * (n - len(other.h))
        return Pin2Elem([x + y for x, y in zip(a, b)], self.c + other.c)

    __radd__ = __add__

    def __neg__(self) -> Pin2Elem:
        return Pin2Elem([-x for x in self.h], -self.c)

    def __sub__(self, other: object) -> Pin2Elem:
        if isinstance(other, int):
            other = Pin2Elem((other,))
        if not isinstance(other, Pin2Elem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> Pin2Elem:
        return (-self) + other

    def __mul__(self, other: object) -> Pin2Elem:
        if isinstance(other, int):
            return Pin2Elem([x * other for x in self.h], self.c * other)
        if not isinstance(other, Pin2Elem):
            return NotImplemented
        return pin2_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Pin2Elem:
        if e < 0:
            raise ValueError("negative power in R(Pin(2))")
        out = Pin2Elem.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __str__(self) -> str:
        return render_pin2(self)

    def __repr__(self) -> str:
        return f"Pin2Elem({self})"

    def to_json(self) -> dict:
        return {"h": list(self.h), "c": self.c}

    @classmethod
    def from_json(cls, data: Mapping) -> Pin2Elem:
        return cls(data.get("h", ()), data.get("c", 0))


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def pin2_mul(a: Pin2Elem, b: Pin2Elem) -> Pin2Elem:
    """(p + m c)(q + n c) = pq + mn + m c q + n c p, with c r(h) = r(0) c + (r(h) - r(0))."""
    h = _poly_mul(a.h, b.h)
    h += [0] * max(0, max(len(a.h), len(b.h)) - len(h))
    h = h or [0]
    h[0] += a.c * b.c
    c = 0
    if a.c:
        c += a.c * b.constant
        for i in range(1, len(b.h)):
            h[i] += a.c * b.h[i]
    if b.c:
        c += b.c * a.constant
        for i in range(1, len(a.h)):
            h[i] += b.c * a.h[i]
    return Pin2Elem(h, c)


def pin2_trace(a: Pin2Elem, at: str = J):
    """Character of ``a`` at J (a rational CycNum) or at a symbolic circle point (LaurentPoly)."""
    if at == J:
        return CycNum.rational(a.constant - a.c)
    if at == SYMBOLIC:
        t = LaurentPoly.z_plus_zinv()
        out = LaurentPoly.constant(a.c)
        power = LaurentPoly.constant(1)
        for i, x in enumerate(a.h):
            if i:
                power = power * t
            if x:
                out = out + power * x
        return out
    raise ValueError(f"unknown trace point {at!r}; use 'J' or 'symbolic'")


def render_pin2(a: Pin2Elem) -> str:
    """``2 + 5h - h^2 - 3c``; ascending h powers, c last."""
    terms: list[tuple[int, str]] = []
    for i, x in enumerate(a.h):
        if x:
            terms.append((x, "" if i == 0 else ("h" if i == 1 else f"h^{i}")))
    if a.c:
        terms.append((a.c, "c"))
    if not terms:
        return "0"
    out = []
    for idx, (x, mono) in enumerate(terms):
        body = str(abs(x)) if not mono else (mono if abs(x) == 1 else f"{abs(x)}{mono}")
        if idx == 0:
            out.append(body if x > 0 else f"-{body}")
        else:
            out.append(("+ " if x > 0 else "- ") + body)
    return " ".join(out)


_PIN2_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*((?:\*?\s*[hc](?:\s*\^\s*\d+)?\s*)*)")
_PIN2_FACTOR = re.compile(r"\*?\s*([hc])(?:\s*\^\s*(\d+))?\s*")


def parse_pin2(text: str) -> Pin2Elem:
    """Parse integer polynomials in ``h`` plus ``c`` such as ``"512 - 512c"`` or ``"3*h^2 + h*c"``.

    Products involving ``c`` are normalized with c^2 = 1 and c h = h.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty R(Pin(2)) expression")
    total = Pin2Elem()
    pos = 0
    first = True
    while pos < len(src):
        m = _PIN2_TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse R(Pin(2)) expression at column {pos + 1}: {src!r}")
        sign, num, factors = m.groups()
        if num is None and not factors.strip():
            raise ValueError(f"expected a term at column {pos + 1}: {src!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator at column {pos + 1}: {src!r}")
        if num is None and factors.lstrip().startswith("*"):
            raise ValueError(f"dangling '*' at column {pos + 1}: {src!r}")
        term = Pin2Elem.one() * (int(num) if num else 1)
        for fm in _PIN2_FACTOR.finditer(factors):
            gen = Pin2Elem.gen_h() if fm.group(1) == "h" else Pin2Elem.gen_c()
            term = term * gen ** (int(fm.group(2)) if fm.group(2) else 1)
        total = total + (-term if sign == "-" else term)
        pos = m.end()
        first = False
    return total


class VirtualRep:
    """Integer combination of irreps of a finite group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: Group, coeffs: Mapping[Irrep, int] | None = None):
        self.group = group
        clean: dict[Irrep, int] = {}
        for irrep, n in (coeffs or {}).items():
            irrep = group.check_irrep(tuple(irrep))
            if isinstance(n, Fraction):
                if n.denominator != 1:
                    raise NotVirtualCharacterError(irrep, n)
                n = int(n)
            if n:
                clean[irrep] = clean.get(irrep, 0) + int(n)
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def trivial(cls, group: Group, scale: int = 1) -> VirtualRep:
        return cls(group, {group.trivial: scale})

    def __getitem__(self, irrep: Irrep) -> int:
        return self.coeffs.get(tuple(irrep), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def dim(self) -> int:
        return sum(n * self.group.dim(i) for i, n in self.coeffs.items())

    def character(self, g: Element) -> CycNum:
        acc = CycNum.rational(0)
        for irrep, n in self.coeffs.items():
            acc = acc + self.group.char(irrep, g) * n
        return acc

    def class_function(self) -> dict[Element, CycNum]:
        return {g: self.character(g) for g in self.group.elements}

    def _same(self, other: VirtualRep) -> None:
        if other.group != self.group:
            raise DomainError(f"representations of different groups: {self.group.name} vs {other.group.name}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VirtualRep):
            return NotImplemented
        return self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: VirtualRep) -> VirtualRep:
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return VirtualRep(self.group, out)

    def __neg__(self) -> VirtualRep:
        return VirtualRep(self.group, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: VirtualRep) -> VirtualRep:
        return self + (-other)

    def __mul__(self, other: object) -> VirtualRep:
        if isinstance(other, int):
            return VirtualRep(self.group, {k: v * other for k, v in self.coeffs.items()})
        if not isinstance(other, VirtualRep):
            return NotImplemented
        self._same(other)
        out: dict[Irrep, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                for irrep, n in self.group.tensor(a, b).items():
                    out[irrep] = out.get(irrep, 0) + x * y * n
        return VirtualRep(self.group, out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for irrep in sorted(self.coeffs):
            n = self.coeffs[irrep]
            label = self.group.irrep_label(irrep)
            body = label if abs(n) == 1 else f"{abs(n)}·{label}"
            if not parts:
                parts.append(body if n > 0 else f"-{body}")
            else:
                parts.append(("+ " if n > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"VirtualRep({self.group.name}: {self})"

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "coeffs": [{"irrep": list(k), "n": v} for k, v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, groups: Mapping[str, Group] | None = None) -> VirtualRep:
        G = _resolve_group(data["group"], groups)
        return cls(G, {tuple(t["irrep"]): t["n"] for t in data["coeffs"]})


def _resolve_group(spec: str, groups: Mapping[str, Group] | None) -> Group:
    if groups and spec in groups:
        return groups[spec]
    if spec.startswith("table:"):
        raise DomainError(f"tabled group {spec!r} must be supplied explicitly")
    return parse_group_spec(spec)


class EquivElem:
    """Element of R(Gamma) (x) R(Pin(2)) stored as irrep -> Pin2Elem."""

    __slots__ = ("group", "terms")

    def __init__(self, group: Group, terms: Mapping[Irrep, Pin2Elem] | None = None):
        self.group = group
        clean: dict[Irrep, Pin2Elem] = {}
        for irrep, v in (terms or {}).items():
            irrep = group.check_irrep(tuple(irrep))
            if isinstance(v, int):
                v = Pin2Elem((v,))
            v = clean[irrep] + v if irrep in clean else v
            clean[irrep] = v
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}

    @classmethod
    def one(cls, group: Group) -> EquivElem:
        return cls(group, {group.trivial: Pin2Elem.one()})

    @classmethod
    def tensor(cls, rep: VirtualRep, coeff: Pin2Elem) -> EquivElem:
        return cls(rep.group, {k: coeff * v for k, v in rep.coeffs.items()})

    @classmethod
    def scalar(cls, group: Group, coeff: Pin2Elem) -> EquivElem:
        return cls(group, {group.trivial: coeff})

    def __getitem__(self, irrep: Irrep) -> Pin2Elem:
        return self.terms.get(tuple(irrep), Pin2Elem())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquivElem):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _same(self, other: EquivElem) -> None:
        if other.group != self.group:
            raise DomainError(f"elements over different groups: {self.group.name} vs {other.group.name}")

    def __add__(self, other: EquivElem) -> EquivElem:
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return EquivElem(self.group, out)

    def __neg__(self) -> EquivElem:
        return EquivElem(self.group, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: EquivElem) -> EquivElem:
        return self + (-other)

    def __mul__(self, other: object) -> EquivElem:
        if isinstance(other, (int, Pin2Elem)):
            return EquivElem(self.group, {k: v * other for k, v in self.terms.items()})
        if not isinstance(other, EquivElem):
            return NotImplemented
        return equiv_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> EquivElem:
        if e < 0:
            raise ValueError("negative power in a representation ring")
        out = EquivElem.one(self.group)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    @property
    def hdeg(self) -> int:
        return max((v.hdeg for v in self.terms.values()), default=-1)

    def __str__(self) -> str:
        return render_equiv(self)

    def __repr__(self) -> str:
        return f"EquivElem({self.group.name}: {render_equiv(self, sep=' + ')})"

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "terms": [{"irrep": list(k), **v.to_json()} for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, groups: Mapping[str, Group] | None = None) -> EquivElem:
        G = _resolve_group(data["group"], groups)
        return cls(G, {tuple(t["irrep"]): Pin2Elem.from_json(t) for t in data["terms"]})


def render_equiv(x: EquivElem, sep: str = "\n") -> str:
    if not x.terms:
        return "0"
    return sep.join(f"({x.group.irrep_label(k)}) ⊗ ({x.terms[k]})" for k in sorted(x.terms))


def equiv_mul(x: EquivElem, y: EquivElem) -> EquivElem:
    x._same(y)
    G = x.group
    out: dict[Irrep, Pin2Elem] = {}
    for a, p in x.terms.items():
        for b, q in y.terms.items():
            pq = p * q
            if pq.is_zero():
                continue
            for irrep, n in G.tensor(a, b).items():
                v = pq * n
                out[irrep] = out[irrep] + v if irrep in out else v
    return EquivElem(G, out)


def equiv_trace(x: EquivElem, g: Element, at: str = J):
    """sum over irreps of chi(g) * trace of the Pin(2) coefficient."""
    G = x.group
    g = G.check_element(tuple(g))
    if at == J:
        acc = CycNum.rational(0)
        for irrep, coeff in x.terms.items():
            acc = acc + G.char(irrep, g) * pin2_trace(coeff, J)
        return acc
    if at == SYMBOLIC:
        acc = LaurentPoly()
        for irrep, coeff in x.terms.items():
            acc = acc + pin2_trace(coeff, SYMBOLIC) * G.char(irrep, g)
        return acc
    raise ValueError(f"unknown trace point {at!r}; use 'J' or 'symbolic'")


def _require_linear(G: Group, irrep: Irrep) -> Irrep:
    irrep = G.check_irrep(tuple(irrep))
    if G.dim(irrep) != 1:
        raise UnsupportedOperationError(
            f"exterior powers of the {G.dim(irrep)}-dimensional irrep {G.irrep_label(irrep)} are not supported"
        )
    return irrep


def _square(G: Group, irrep: Irrep) -> Irrep:
    (sq,) = G.tensor(irrep, irrep)
    return sq


def wedge_star_h(G: Group, irrep: Irrep) -> EquivElem:
    """Alternating exterior algebra of irrep (x) h: 1 - irrep (x) h + irrep^2."""
    irrep = _require_linear(G, irrep)
    # keys may coincide (trivial irrep, or irreps of order 2), so add termwise
    return (
        EquivElem(G, {G.trivial: Pin2Elem.one()})
        + EquivElem(G, {irrep: Pin2Elem((0, -1))})
        + EquivElem(G, {_square(G, irrep): Pin2Elem.one()})
    )


def wedge_star_c(G: Group, irrep: Irrep) -> EquivElem:
    """Alternating exterior algebra of irrep (x) c: 1 - irrep (x) c."""
    irrep = _require_linear(G, irrep)
    return EquivElem(G, {G.trivial: Pin2Elem.one()}) + EquivElem(G, {irrep: Pin2Elem((), -1)})


def regular_rep(G: Group) -> VirtualRep:
    return VirtualRep(G, {irrep: G.dim(irrep) for irrep in G.irreps})


def vr_from_character(G: Group, values: Mapping[Element, object]) -> VirtualRep:
    """The virtual representation with the given class function as character.

    Raises NotVirtualCharacterError if some multiplicity is not an integer.
    """
    mult = class_function_multiplicities(G, values)
    for irrep, q in mult.items():
        if q.denominator != 1:
            raise NotVirtualCharacterError(G.irrep_label(irrep), q)
    return VirtualRep(G, {irrep: int(q) for irrep, q in mult.items()})


def equiv_decompose(x: EquivElem) -> tuple[VirtualRep, VirtualRep, list[VirtualRep]]:
    """Split x as alpha0 - alpha0~ c + sum_k alpha_k h^k; returns (alpha0, alpha0~, [alpha_1, ...])."""
    G = x.group
    a0: dict[Irrep, int] = {}
    at: dict[Irrep, int] = {}
    ak: list[dict[Irrep, int]] = [dict() for _ in range(max(x.hdeg, 0))]
    for irrep, coeff in x.terms.items():
        if coeff.constant:
            a0[irrep] = coeff.constant
        if coeff.c:
            at[irrep] = -coeff.c
        for i in range(1, len(coeff.h)):
            if coeff.h[i]:
                ak[i - 1][irrep] = coeff.h[i]
    return VirtualRep(G, a0), VirtualRep(G, at), [VirtualRep(G, d) for d in ak]


def equiv_from_parts(alpha0: VirtualRep, alpha0_tilde: VirtualRep, alphas: Sequence[VirtualRep] = ()) -> EquivElem:
    G = alpha0.group
    out = EquivElem.tensor(alpha0, Pin2Elem.one()) - EquivElem.tensor(alpha0_tilde, Pin2Elem.gen_c())
    for k, a in enumerate(alphas, start=1):
        out = out + EquivElem.tensor(a, Pin2Elem.gen_h() ** k)
    if out.group != G:
        raise DomainError("parts live over different groups")
    return out


def _laurent_to_t_poly(p: LaurentPoly) -> list[CycNum]:
    """Write a z <-> 1/z symmetric Laurent polynomial as a polynomial in t = z + 1/z."""
    rest = p
    coeffs: dict[int, CycNum] = {}
    t = LaurentPoly.z_plus_zinv()
    while not rest.is_zero():
        top = max(rest.coeffs)
        if top < 0:
            raise ValueError("Laurent polynomial is not symmetric in z and 1/z")
        a = rest.coeff(top)
        coeffs[top] = a
        rest = rest - (t ** top) * a
    deg = max(coeffs, default=-1)
    return [coeffs.get(i, CycNum.rational(0)) for i in range(deg + 1)]


def equiv_from_traces(
    G: Group, at_j: Mapping[Element, CycNum], at_circle: Mapping[Element, LaurentPoly]
) -> EquivElem:
    """Reconstruct an element from its characters at every (g, J) and (g, symbolic z)."""
    polys = {g: _laurent_to_t_poly(at_circle[g]) for g in G.elements}
    deg = max((len(v) for v in polys.values()), default=0)
    zero = CycNum.rational(0)

    def t_coeff(g: Element, i: int) -> CycNum:
        return polys[g][i] if i < len(polys[g]) else zero

    # symbolic constant = p(0) + n, J value = p(0) - n
    const = vr_from_character(G, {g: (t_coeff(g, 0) + at_j[g]) / 2 for g in G.elements})
    ccoef = vr_from_character(G, {g: (t_coeff(g, 0) - at_j[g]) / 2 for g in G.elements})
    higher = [vr_from_character(G, {g: t_coeff(g, i) for g in G.elements}) for i in range(1, deg)]
    return equiv_from_parts(const, -ccoef, higher)


def restrict_equiv(e: Embedding, x: EquivElem) -> EquivElem:
    if x.group != e.target:
        raise DomainError(f"element lives over {x.group.name}, embedding targets {e.target.name}")
    out: dict[Irrep, Pin2Elem] = {}
    for irrep, coeff in x.terms.items():
        for mu, n in restrict_irrep(e, irrep).coeffs.items():
            v = coeff * n
            out[mu] = out[mu] + v if mu in out else v
    return EquivElem(e.source, out)


def identity_embedding(G: AbelianGroup) -> Embedding:
    if len(G.orders) != 1:
        raise DomainError("identity embedding needs a cyclic group")
    return Embedding(G, G, (1 % G.orders[0],))
