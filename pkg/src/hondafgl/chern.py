"""Chern-class relations from the formal group law and the splitting principle.

For a rank-m bundle written formally as a sum of line bundles with first
Chern classes x_1 .. x_m, tensoring every summand by a line bundle of order
p^k (first Chern class u, with u^(p^(ks)) = 0 because [p](x) = x^(p^s))
leaves the bundle unchanged, which forces

    sigma_i(F(x_1, u), ..., F(x_m, u)) = sigma_i(x_1, ..., x_m),  i = 1 .. m,

with m = p^k.  This module emits those relations as explicit differences
(left minus right) over F_p[u]/u^(p^(ks)), using the engine tower at the
smallest level that determines every F(x_j, u) completely under the
nilpotence of u.  The formal roots x_j are free variables: which classes a
given group actually realizes is not decided here, and neither is
completeness of the relation list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import (
    DEFAULT_MAX_Y_CAP,
    FglParams,
    TruncatedFgl,
    build_tower,
    p_series,
)
from .errors import ParameterError, ResourceLimitError, VacuityError
from .ring import SparsePoly, TruncationPolicy, elementary_symmetric_all

DEFAULT_MAX_TERMS = 10**7


@dataclass(frozen=True)
class TruncatedCoeffRing:
    """F_p[u]/u^(p^(ks)): the coefficients available over a cyclic p^k factor."""

    p: int
    s: int
    k: int

    def __post_init__(self):
        FglParams(self.p, self.s)
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")

    @property
    def u_cap(self) -> int:
        return self.p ** (self.k * self.s)


def required_level(params: FglParams, k: int) -> int:
    """Smallest n with q^n >= p^(ks): the level where u-truncation takes over.

    Terms of F(x_j, u) beyond P_n differ by multiples of u^(q^n), which die
    under u^(p^(ks)) = 0 once q^n >= p^(ks); so P_n already determines every
    F(x_j, u).  Equals ceil(ks/(s-1)).
    """
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    n = -(-k * params.s // (params.s - 1))
    assert params.q**n >= params.p ** (k * params.s)
    return n


@dataclass(frozen=True)
class NilpotenceCertificate:
    """Witness that [p^k](u) = u^(p^(ks)) below the tower's validity bound."""

    params: FglParams
    k: int
    level: int
    valid_below: int
    expected_exponent: int
    pseries: SparsePoly

    @property
    def passed(self) -> bool:
        return dict(self.pseries.terms) == {(self.expected_exponent,): 1}


def pk_nilpotence(params: FglParams, k: int, tower: list[TruncatedFgl]) -> NilpotenceCertificate:
    """Certify [p^k](u) = u^(p^(ks)) via the engine p-series.

    The tower must satisfy q^n > p^(ks) strictly; at q^n = p^(ks) the
    statement holds only modulo u^(p^(ks)) itself and the certificate would
    be empty, so that case raises VacuityError instead of "passing".
    """
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    n = len(tower)
    expected = params.p ** (k * params.s)
    if params.q**n <= expected:
        raise VacuityError(
            f"q^{n} = {params.q ** n} <= p^(ks) = {expected}: "
            f"extend the tower past level {n} to make the certificate nonvacuous"
        )
    series = p_series(tower, k)
    return NilpotenceCertificate(params, k, n, series.valid_below, expected, series.poly)


@dataclass(frozen=True)
class ChernRelationSet:
    """The relations sigma_i(F(x_1,u),..) - sigma_i(x_1,..), i = 1 .. m = p^k."""

    params: FglParams
    k: int
    m: int
    level: int
    u_cap: int
    variables: tuple[str, ...]
    relations: tuple[SparsePoly, ...]


def relation_set(
    params: FglParams,
    k: int,
    max_terms: int = DEFAULT_MAX_TERMS,
    max_y_cap: int = DEFAULT_MAX_Y_CAP,
) -> ChernRelationSet:
    """Generate all m relations in the variables (x_1, .., x_m, u)."""
    ring = TruncatedCoeffRing(params.p, params.s, k)
    m = params.p**k
    n = required_level(params, k)
    tower = build_tower(params, n, max_y_cap=max_y_cap)
    top = tower[-1].poly
    projected = m * len(top.terms)
    if projected > max_terms:
        raise ResourceLimitError(
            f"projected {projected} terms across {m} tensor-shifted roots "
            f"exceeds the guard {max_terms}",
            projected=projected,
        )
    variables = tuple(f"x{j}" for j in range(1, m + 1)) + ("u",)
    trunc = TruncationPolicy(caps={"u": ring.u_cap})
    fp = params.fp
    u = SparsePoly.variable(variables, fp, "u")
    roots = [SparsePoly.variable(variables, fp, f"x{j}") for j in range(1, m + 1)]
    shifted = [top.substitute({"x": r, "y": u}, trunc) for r in roots]
    sigma_shifted = elementary_symmetric_all(shifted, trunc)
    sigma_roots = elementary_symmetric_all(roots, trunc)
    relations = tuple(sigma_shifted[i] - sigma_roots[i] for i in range(1, m + 1))
    return ChernRelationSet(params, k, m, n, ring.u_cap, variables, relations)
