"""Exact arithmetic in cyclotomic fields Q(zeta_N) and Laurent polynomials over them.

A :class:`CycNum` is stored as the remainder of a rational polynomial in
``zeta_N`` modulo the N-th cyclotomic polynomial, i.e. as rational
coefficients over the power basis ``1, zeta, ..., zeta^(phi(N)-1)``.
Coefficients are kept as integer numerators over one common denominator.

>>> z3 = cyc_root(3, 1)
>>> z3 + z3 * z3
-1
>>> (1 + cyc_root(3, 1)) * (1 + cyc_root(3, 2))
1
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "CycNum",
    "LaurentPoly",
    "cyc_root",
    "cyc_is_zero",
    "cyclotomic_poly",
    "euler_phi",
    "parse_cycnum",
]

Rational = Union[int, Fraction]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result = result // p * (p - 1)
    return result


def _mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    dq = len(den) - 1
    q = [0] * (len(num) - dq)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dq]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Built by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic_poly needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j is x^j mod Phi_n over the power basis, for 0 <= j < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _normal_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


class CycNum:
    """Immutable element of the cyclotomic field Q(zeta_N)."""

    # arithmetic works at whatever conductor the operands share; the minimal
    # conductor is only computed when it is observed (conductor, coeffs, terms)
    __slots__ = ("_n", "_nums", "_den", "_hash", "_minimal")

    def __init__(self, conductor: int, coeffs: Iterable[Rational] = ()):
        # coeffs are indexed by exponent of zeta_conductor; any length is accepted
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        ints = {j: int(c * den) for j, c in enumerate(fr) if c}
        self._set(*_reduce_exponents(conductor, ints, den))

    def _set(self, n: int, nums: tuple[int, ...], den: int) -> None:
        self._n = n
        self._nums = nums
        self._den = den
        self._hash = None
        self._minimal = n == 1

    @classmethod
    def _raw(cls, n: int, exps: Mapping[int, int], den: int = 1) -> CycNum:
        obj = cls.__new__(cls)
        obj._set(*_reduce_exponents(n, exps, den))
        return obj

    @classmethod
    def rational(cls, value: Rational) -> CycNum:
        value = Fraction(value)
        obj = cls.__new__(cls)
        if value:
            obj._set(1, (value.numerator,), value.denominator)
        else:
            obj._set(1, (), 1)
        return obj

    @staticmethod
    def coerce(value: object) -> CycNum:
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Fraction)):
            return CycNum.rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycNum")

    def _shrink_to_minimal(self) -> None:
        if self._minimal:
            return
        cur = (self._n, self._nums, self._den)
        while cur[0] > 1:
            smaller = _shrink(cur[0], list(cur[1]), cur[2])
            if smaller is None:
                break
            cur = smaller
        h = self._hash
        self._set(*cur)
        self._hash = h
        self._minimal = True

    @property
    def conductor(self) -> int:
        """The smallest N (N != 2 mod 4) with this number in Q(zeta_N)."""
        self._shrink_to_minimal()
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical coefficients over 1, zeta, ..., zeta^(phi(N)-1)."""
        self._shrink_to_minimal()
        phi = euler_phi(self._n)
        nums = self._nums + (0,) * (phi - len(self._nums))
        return tuple(Fraction(a, self._den) for a in nums)

    def is_zero(self) -> bool:
        return not self._nums

    def is_rational(self) -> bool:
        return self._n == 1 or len(self._nums) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._nums[0], self._den) if self._nums else Fraction(0)

    def _nums_at(self, m: int) -> list[int]:
        """Canonical numerators at conductor m (a normalized multiple of ours), length phi(m)."""
        return _lift_nums(self._n, self._nums, m)

    def lift(self, m: int) -> tuple[Fraction, ...]:
        """Canonical coefficients of this number written at conductor m."""
        m = _normal_conductor(m)
        self._shrink_to_minimal()
        return tuple(Fraction(a, self._den) for a in self._nums_at(m))

    def _common(self, other: CycNum) -> tuple[int, list[int], list[int]]:
        m = lcm(self._n, other._n)
        return m, self._nums_at(m), other._nums_at(m)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if self._n == other._n:
            return self._den == other._den and self._nums == other._nums
        _, na, nb = self._common(other)
        return [a * other._den for a in na] == [b * self._den for b in nb]

    def __hash__(self) -> int:
        # normalized field trace is independent of the conductor used
        if self._hash is None:
            tr = Fraction(0)
            for j, a in enumerate(self._nums):
                if a:
                    d = self._n // gcd(j, self._n)
                    tr += Fraction(a * _mobius(d), euler_phi(d))
            self._hash = hash(tr / self._den)
        return self._hash

    def __add__(self, other: object) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._nums:
            return self
        if not self._nums:
            return other
        m, na, nb = self._common(other)
        den = lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return CycNum._from_canonical(m, [x * fa + y * fb for x, y in zip(na, nb)], den)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        obj = CycNum.__new__(CycNum)
        obj._set(self._n, tuple(-a for a in self._nums), self._den)
        return obj

    def __sub__(self, other: object) -> CycNum:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> CycNum:
        return CycNum.coerce(other) - self

    def _scale(self, q: Fraction) -> CycNum:
        if not q:
            return CycNum.rational(0)
        return CycNum._from_canonical(self._n, [a * q.numerator for a in self._nums], self._den * q.denominator)

    def __mul__(self, other: object) -> CycNum:
        if isinstance(other, (int, Fraction)):
            return self._scale(Fraction(other))
        if not isinstance(other, CycNum):
            return NotImplemented
        if other._n == 1:
            return self._scale(other.to_fraction())
        if self._n == 1:
            return other._scale(self.to_fraction())
        n, na, nb = self._common(other)
        prod_ = [0] * n
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    if y:
                        prod_[(i + j) % n] += x * y
        return CycNum._raw(n, {j: v for j, v in enumerate(prod_) if v}, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, t: int) -> CycNum:
        """Image under the automorphism zeta_N -> zeta_N^t (t coprime to N)."""
        if gcd(t, self._n) != 1:
            raise ValueError(f"{t} is not a unit modulo {self._n}")
        return CycNum._raw(self._n, {(j * t) % self._n: a for j, a in enumerate(self._nums) if a}, self._den)

    def conj(self) -> CycNum:
        return self.galois(-1 % self._n) if self._n > 1 else self

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        if self.is_rational():
            return self.to_fraction()
        acc = CycNum.rational(1)
        for t in range(1, self._n):
            if gcd(t, self._n) == 1:
                acc = acc * self.galois(t)
        return acc.to_fraction()

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNum.rational(1 / self.to_fraction())
        others = CycNum.rational(1)
        for t in range(2, self._n):
            if gcd(t, self._n) == 1:
                others = others * self.galois(t)
        nrm = (self * others).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other: object) -> CycNum:
        other = CycNum.coerce(other)
        if other.is_rational():
            return self._scale(1 / other.to_fraction())
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> CycNum:
        return CycNum.coerce(other) / self

    @classmethod
    def _from_canonical(cls, n: int, nums: list[int], den: int) -> CycNum:
        obj = cls.__new__(cls)
        obj._set(*_normalize(n, nums, den))
        return obj

    def terms(self) -> list[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs at the minimal conductor."""
        self._shrink_to_minimal()
        return [(j, Fraction(a, self._den)) for j, a in enumerate(self._nums) if a]

    def __str__(self) -> str:
        return render_cycnum(self)

    def __repr__(self) -> str:
        return f"CycNum({self})"


def _reduce_exponents(n: int, exps: Mapping[int, int], den: int) -> tuple[int, tuple[int, ...], int]:
    """Reduce sum a_j zeta_n^j / den to canonical form, possibly at a smaller conductor."""
    if n % 4 == 2:
        half = n // 2
        shift = (half + 1) // 2
        mapped: dict[int, int] = {}
        for j, a in exps.items():
            e = (j * shift) % half if half > 1 else 0
            mapped[e] = mapped.get(e, 0) + (-a if j % 2 else a)
        n, exps = half, mapped
    if n == 1:
        return _normalize(1, [sum(exps.values())], den)
    table = _power_table(n)
    deg = euler_phi(n)
    out = [0] * deg
    for j, a in exps.items():
        if not a:
            continue
        j %= n
        if j < deg:
            out[j] += a
        else:
            for i, r in enumerate(table[j]):
                if r:
                    out[i] += a * r
    return _normalize(n, out, den)


def _lift_nums(n: int, nums: Sequence[int], m: int) -> list[int]:
    """Numerators canonical at conductor n rewritten canonically at conductor m."""
    deg = euler_phi(m)
    if m == n:
        return list(nums) + [0] * (deg - len(nums))
    if m % n:
        raise ValueError(f"cannot lift conductor {n} to {m}")
    step = m // n
    table = _power_table(m)
    out = [0] * deg
    for j, a in enumerate(nums):
        if a:
            e = j * step
            if e < deg:
                out[e] += a
            else:
                for i, r in enumerate(table[e]):
                    if r:
                        out[i] += a * r
    return out


def _shrink(n: int, nums: list[int], den: int) -> tuple[int, tuple[int, ...], int] | None:
    """Canonical form at a proper divisor of n if the number lies in that subfield, else None."""
    for q in _factorize(n):
        d = n // q
        if d % q == 0:
            # Q(zeta_n) is free over Q(zeta_d) on 1, zeta_n, ..., zeta_n^(q-1)
            if all(not a for j, a in enumerate(nums) if j % q):
                return _reduce_exponents(d, {j // q: a for j, a in enumerate(nums) if a}, den)
            continue
        # q exactly divides n: average over Gal(Q(zeta_n)/Q(zeta_d)) and compare
        v = pow(q, -1, d) if d > 1 else 0
        exps: dict[int, int] = {}
        for j, a in enumerate(nums):
            if a:
                e = (j * v) % d if d > 1 else 0
                exps[e] = exps.get(e, 0) + (a * (q - 1) if j % q == 0 else -a)
        cand = _reduce_exponents(d, exps, den * (q - 1))
        m, cnums, cden = cand
        lifted = _lift_nums(m, cnums, n) if cnums else [0] * len(nums)
        if all(x * den == y * cden for x, y in zip(lifted, nums + [0] * (len(lifted) - len(nums)))):
            return cand
    return None


def _normalize(n: int, nums: list[int], den: int) -> tuple[int, tuple[int, ...], int]:
    while nums and not nums[-1]:
        nums.pop()
    if not nums:
        return 1, (), 1
    if len(nums) == 1:
        n = 1
    if den < 0:
        nums = [-a for a in nums]
        den = -den
    g = den
    for a in nums:
        g = gcd(g, a)
        if g == 1:
            break
    if g > 1:
        nums = [a // g for a in nums]
        den //= g
    return n, tuple(nums), den


def cyc_root(n: int, k: int) -> CycNum:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError(f"cyc_root needs n >= 1, got {n}")
    k %= n
    g = gcd(k, n) if k else n
    return CycNum._raw(n // g, {k // g: 1})


def cyc_is_zero(a: CycNum) -> bool:
    return a.is_zero()


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_cycnum(a: CycNum) -> str:
    """Render as ``1/3 + 2*z5^2 - z5^3``."""
    if a.is_zero():
        return "0"
    parts = []
    for j, c in a.terms():
        if j == 0:
            body = _fmt_frac(abs(c))
        else:
            tok = f"z{a.conductor}^{j}"
            body = tok if abs(c) == 1 else f"{_fmt_frac(abs(c))}*{tok}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?"
    r"(?:z(?P<cond>\d+)(?:\^(?P<exp>-?\d+))?)?\s*"
)


def parse_cycnum(text: str) -> CycNum:
    """Parse the textual grammar produced by :func:`render_cycnum`.

    Raises ValueError with the column of the first unparseable character.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty cyclotomic expression")
    total = CycNum.rational(0)
    pos = 0
    first = True
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse cyclotomic expression at column {pos + 1}: {src!r}")
        sign, coef, cond = m.group("sign"), m.group("coef"), m.group("cond")
        if coef is None and cond is None:
            raise ValueError(f"expected a term at column {m.end() + 1}: {src!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator at column {pos + 1}: {src!r}")
        if m.group("star") and cond is None:
            raise ValueError(f"dangling '*' at column {pos + 1}: {src!r}")
        if coef is not None and cond is not None and not m.group("star"):
            raise ValueError(f"expected '*' between coefficient and root at column {pos + 1}: {src!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        term = CycNum.rational(c)
        if cond is not None:
            n = int(cond)
            if n < 1:
                raise ValueError(f"conductor must be positive at column {pos + 1}: {src!r}")
            e = int(m.group("exp")) if m.group("exp") is not None else 1
            term = cyc_root(n, e) * c
        total = total + term
        pos = m.end()
        first = False
    return total


class LaurentPoly:
    """Laurent polynomial in a symbolic variable z with CycNum coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c: dict[int, CycNum] = {}
        for e, v in (coeffs or {}).items():
            v = CycNum.coerce(v)
            if not v.is_zero():
                c[int(e)] = v
        self._c = c

    @classmethod
    def _wrap(cls, c: dict[int, CycNum]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._c = {e: v for e, v in c.items() if not v.is_zero()}
        return obj

    @classmethod
    def constant(cls, v: object) -> LaurentPoly:
        return cls({0: v})

    @classmethod
    def z_plus_zinv(cls) -> LaurentPoly:
        return cls({1: 1, -1: 1})

    @property
    def coeffs(self) -> dict[int, CycNum]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, e: int) -> CycNum:
        return self._c.get(e, CycNum.rational(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out[e] + v if e in out else v
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._wrap({e: -v for e, v in self._c.items()})

    def __sub__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: object) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            v = CycNum.coerce(other)
            return LaurentPoly._wrap({e: c * v for e, c in self._c.items()})
        out: dict[int, CycNum] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                p = v1 * v2
                out[e] = out[e] + p if e in out else p
        return LaurentPoly._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            raise ValueError("LaurentPoly powers must be non-negative")
        result = LaurentPoly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = str(self._c[e])
            if e == 0:
                parts.append(f"({v})")
            else:
                parts.append(f"({v})*z^{e}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"
