"""Witt symmetric polynomials in two variables and their mod-p reductions.

The family w_0, w_1, ... is defined over the integers by

    x^(p^n) + y^(p^n) = sum_{j<=n} p^j * w_j(x, y)^(p^(n-j))   for every n,

with w_0 = x + y.  Each w_j is symmetric, homogeneous of total degree p^j,
and vanishes on both axes for j > 0.  The family is built by solving the
defining identity for one w_n at a time; the division by p^n is certified
exact coefficientwise, and the construction re-checks the identity for every
n it claims, so a WittFamily is its own certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalConsistencyError, ParameterError, ResourceLimitError
from .ring import INTEGERS, SparsePoly, _is_prime, prime_field

VARS = ("x", "y")

DEFAULT_MAX_DEGREE = 10**6


def _power_sum(p: int, n: int) -> SparsePoly:
    """x^(p^n) + y^(p^n) over Z."""
    d = p**n
    return SparsePoly(VARS, INTEGERS, {(d, 0): 1, (0, d): 1})


@dataclass(frozen=True)
class WittFamily:
    """w_0 .. w_jmax over Z for one prime, identity-checked at construction."""

    p: int
    polys: tuple[SparsePoly, ...]

    @property
    def jmax(self) -> int:
        return len(self.polys) - 1

    def identity_sides(self, n: int) -> tuple[SparsePoly, SparsePoly]:
        """Both sides of the defining identity at level n, computed exactly."""
        rhs = SparsePoly.zero(VARS, INTEGERS)
        for j in range(n + 1):
            rhs = rhs + self.polys[j].pow(self.p ** (n - j)).scale(self.p**j)
        return _power_sum(self.p, n), rhs

    def verify(self) -> None:
        """Re-check the defining identity for every n <= jmax."""
        for n in range(self.jmax + 1):
            lhs, rhs = self.identity_sides(n)
            if lhs != rhs:
                raise InternalConsistencyError(f"Witt identity fails at p={self.p}, n={n}")


def witt_family(p: int, jmax: int, max_degree: int = DEFAULT_MAX_DEGREE) -> WittFamily:
    """Solve the defining identity for w_0 .. w_jmax over the integers.

    w_n = (x^(p^n) + y^(p^n) - sum_{j<n} p^j w_j^(p^(n-j))) / p^n, with the
    division certified exact.  Refuses jmax with p^jmax beyond `max_degree`.
    """
    if not _is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if jmax < 0:
        raise ParameterError(f"jmax must be >= 0, got {jmax}")
    if p**jmax > max_degree:
        raise ResourceLimitError(
            f"p^jmax = {p**jmax} exceeds the degree guard {max_degree}",
            projected=p**jmax,
        )
    polys = [SparsePoly(VARS, INTEGERS, {(1, 0): 1, (0, 1): 1})]
    for n in range(1, jmax + 1):
        residual = _power_sum(p, n)
        for j in range(n):
            residual = residual - polys[j].pow(p ** (n - j)).scale(p**j)
        divisor = p**n
        terms = {}
        for e, c in residual.terms.items():
            if c % divisor:
                raise InternalConsistencyError(
                    f"coefficient {c} of {e} in w_{n} numerator not divisible by {divisor}"
                )
            terms[e] = c // divisor
        polys.append(SparsePoly(VARS, INTEGERS, terms))
    family = WittFamily(p, tuple(polys))
    family.verify()
    return family


def witt_mod_p(family: WittFamily) -> list[SparsePoly]:
    """Coefficientwise reductions w_j mod p, over F_p."""
    fp = prime_field(family.p)
    return [w.map_domain(fp) for w in family.polys]


def w1_closed_form(p: int) -> SparsePoly:
    """w_1 = -(1/p) * sum_{0<j<p} C(p,j) x^j y^(p-j), used as a cross-check."""
    terms = {(j, p - j): -(math.comb(p, j) // p) for j in range(1, p)}
    return SparsePoly(VARS, INTEGERS, terms)
