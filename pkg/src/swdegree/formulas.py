"""Closed-form equivariant degrees and covering bookkeeping.

Conventions: ``m = b+(M)`` and ``k = -sigma(M)/16`` for the quotient manifold
M = X / Gamma.  The covering space then has ``m_X + 1 = (m + 1) #Gamma`` and
``k_X = k #Gamma``.  All exponents are exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, PreconditionError
from .groups import AbelianGroup, Group
from .reprings import EquivElem, Pin2Elem, VirtualRep, regular_rep

__all__ = [
    "CoveringData",
    "ZpClosedForm",
    "covering_invariants",
    "furuta_degree",
    "is_prime",
    "zp_closed_form",
    "zp_degree",
    "bryan_degree",
    "bryan_exponent",
    "odd_sum_alpha0",
    "odd_sum_coefficient",
    "z6_abc",
    "z6_solve",
    "z6_constraints",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def covering_invariants(m: int, k: int, order: int) -> tuple[int, int]:
    """(m_X, k_X) of a #Gamma = order fold cover."""
    if order < 1:
        raise PreconditionError(f"group order must be positive, got {order}")
    return order * (m + 1) - 1, order * k


@dataclass(frozen=True)
class CoveringData:
    group: Group
    m: int
    k: int

    def __post_init__(self):
        if self.m <= 0:
            raise PreconditionError(f"b+(M) must be positive, got m={self.m}")
        if self.k < 0:
            raise PreconditionError(f"signature must be non-positive, got k={self.k}")

    @property
    def m_X(self) -> int:
        return covering_invariants(self.m, self.k, self.group.order)[0]

    @property
    def k_X(self) -> int:
        return covering_invariants(self.m, self.k, self.group.order)[1]


def furuta_degree(m: int, k: int) -> Pin2Elem:
    """2^(m-2k-1) (1 - c), the Pin(2)-degree of the base manifold."""
    e = m - 2 * k - 1
    if e < 0:
        raise PreconditionError(f"non-integral Furuta coefficient (m-2k-1 = {e})")
    return Pin2Elem.one_minus_c(2 ** e)


@dataclass(frozen=True)
class ZpClosedForm:
    """(l2 [L^2(Z_p)] + triv rho_triv) (1 - c)."""

    p: int
    l2: int
    triv: int

    def __str__(self) -> str:
        inner = f"[{self.l2}·L2(Z{self.p})]" if self.l2 != 1 else f"[L2(Z{self.p})]"
        triv = "rho_triv" if self.triv == 1 else f"{self.triv}·rho_triv"
        return f"({inner} + {triv})(1 - c)"


def _check_zp_inputs(p: int, m: int, k: int) -> int:
    if p % 2 == 0 or not is_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    e = m - 2 * k - 1
    if e < 0:
        raise PreconditionError(f"non-integral Furuta coefficient (m-2k-1 = {e})")
    return e


def zp_closed_form(p: int, m: int, k: int) -> ZpClosedForm:
    e = _check_zp_inputs(p, m, k)
    num = 2 ** ((m - 2 * k + 1) * p - 2) - 2 ** e
    if num % p:
        raise InternalCheckError(f"Fermat integrality failed: ({num})/{p} is not an integer")
    return ZpClosedForm(p, num // p, 2 ** e)


def zp_degree(p: int, m: int, k: int) -> EquivElem:
    """Degree over Z_p x Pin(2) for an odd prime p."""
    form = zp_closed_form(p, m, k)
    G = AbelianGroup([p])
    alpha0 = regular_rep(G) * form.l2 + VirtualRep.trivial(G, form.triv)
    return EquivElem.tensor(alpha0, Pin2Elem.one_minus_c())


def bryan_exponent(q: int, m: int, k: int) -> int:
    return 2 ** q * (m - 2 * k + 1) - 2 - q


def bryan_degree(q: int, m: int, k: int) -> EquivElem:
    """2^(2^q (m-2k+1) - 2 - q) [L^2((Z_2)^q)] (1 - c).

    Valid under the geometric hypothesis b+(X) != b+(X/<g>) for every
    non-trivial g, which cannot be checked from (q, m, k) and is the
    caller's responsibility.
    """
    if q < 1:
        raise PreconditionError(f"q must be positive, got {q}")
    e = bryan_exponent(q, m, k)
    if e < 0:
        raise PreconditionError(f"negative exponent 2^q(m-2k+1)-2-q = {e}")
    G = AbelianGroup([2] * q)
    return EquivElem.tensor(regular_rep(G), Pin2Elem.one_minus_c(2 ** e))


def odd_sum_coefficient(order: int, m: int, k: int) -> Fraction:
    return Fraction(2 ** ((order - 1) * (m - 2 * k + 1)) - 1, order)


def odd_sum_alpha0(G: Group, m: int, k: int) -> VirtualRep:
    """alpha_0 + alpha_0~ = 2^(m-2k) (x [L^2(Gamma)] + rho_triv) for #Gamma odd."""
    n = G.order
    if n % 2 == 0:
        raise PreconditionError(f"group order must be odd, got {n}")
    if m - 2 * k < 0:
        raise PreconditionError(f"m - 2k must be non-negative, got {m - 2 * k}")
    x = odd_sum_coefficient(n, m, k)
    if x.denominator != 1:
        raise PreconditionError(
            f"inconsistent covering data for this group: [L^2({G.name})] coefficient "
            f"(2^{(n - 1) * (m - 2 * k + 1)} - 1)/{n} = {x} is not an integer"
        )
    return (regular_rep(G) * int(x) + VirtualRep.trivial(G)) * 2 ** (m - 2 * k)


def _z6_split(m_X: int, k_X: int) -> tuple[int, int]:
    """Return (M, t) = (m_X - 2k_X, (m_X - 2k_X + 1)/3) after validating Z_6 data."""
    if (m_X + 1) % 6 or k_X % 6 or k_X < 0:
        raise PreconditionError(f"not Z6 covering data: need 6 | m_X+1 and k_X = 6k (got m_X={m_X}, k_X={k_X})")
    big = m_X - 2 * k_X
    t = (big + 1) // 3
    if t < 2:
        raise PreconditionError(f"not Z6 covering data: base Furuta coefficient is non-integral (m_X-2k_X = {big})")
    return big, t


def z6_abc(m_X: int, k_X: int) -> tuple[Pin2Elem, Pin2Elem, Pin2Elem]:
    big, t = _z6_split(m_X, k_X)
    a = 2 ** (big - 2)
    b_num = 2 ** (big - 1) + 2 ** (t - 1)
    c_num = 2 ** (big - 1) - 2 ** (t - 2)
    if b_num % 3 or c_num % 3:
        raise InternalCheckError(f"Z6 constants not integral: {b_num}/3, {c_num}/3")
    return Pin2Elem.one_minus_c(a), Pin2Elem.one_minus_c(b_num // 3), Pin2Elem.one_minus_c(c_num // 3)


def z6_constraints(
    m_X: int, k_X: int, betas: tuple[Pin2Elem, ...]
) -> list[tuple[str, Pin2Elem, Pin2Elem]]:
    """The sum constraints coming from restriction to 1, Z_2 and Z_3: (name, lhs, rhs)."""
    A, B, C = z6_abc(m_X, k_X)
    b = betas
    return [
        ("beta0+...+beta5=furuta(m_X,k_X)", sum(b[1:], b[0]), furuta_degree(m_X, k_X)),
        ("beta0+beta2+beta4=A", b[0] + b[2] + b[4], A),
        ("beta1+beta3+beta5=A", b[1] + b[3] + b[5], A),
        ("beta0+beta3=B", b[0] + b[3], B),
        ("beta1+beta4=C", b[1] + b[4], C),
        ("beta2+beta5=C", b[2] + b[5], C),
    ]


def z6_solve(m_X: int, k_X: int, beta0: Pin2Elem, beta1: Pin2Elem) -> tuple[Pin2Elem, Pin2Elem, Pin2Elem, Pin2Elem]:
    """(beta2, beta3, beta4, beta5) of a Z_6 degree in terms of beta0, beta1."""
    A, B, C = z6_abc(m_X, k_X)
    beta2 = A - C - beta0 + beta1
    beta3 = B - beta0
    beta4 = C - beta1
    beta5 = -A + C * 2 + beta0 - beta1
    for name, lhs, rhs in z6_constraints(m_X, k_X, (beta0, beta1, beta2, beta3, beta4, beta5)):
        if lhs != rhs:
            raise InternalCheckError(f"Z6 solution violates {name}: {lhs} != {rhs}")
    return beta2, beta3, beta4, beta5
