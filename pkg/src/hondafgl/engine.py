"""Truncated formal group law of mod-p Morava K-theory at height s > 1.

The formal group law F(x, y) of K(s), with v_s normalized to 1 and
q = p^(s-1), is a polynomial P_n(x, y) over F_p modulo y^(q^n) for every n.
This module computes the tower P_1, P_2, ... by the inductive ladder that
comes out of the Witt-polynomial recursion

    F(x, y) = F(x + y, w_1(x, y)^q, w_2(x, y)^(q^2), ...),

where the many-argument F is the iterated formal sum.  Working modulo
y^(q^(n+1)), the tail of that expression collapses through already-known
levels:

    t   = P_n(x + y, b_1)          with b_j = (w_j mod p)^(q^j),
    t   = P_{n+1-j}(t, b_j)        for j = 2 .. n-1,
    P_{n+1} = t + b_n,

every product truncated at y-exponent < q^(n+1).  Each collapse step is only
valid because the substituted second slot b_j is divisible by y^(q^j), which
makes the neglected tail b_j^(q^(n+1-j)) vanish modulo y^(q^(n+1)); `extend`
asserts this divisibility at run time rather than assuming it.

Also here: coefficient extraction F = sum A_l(x) y^l, the degree-bound
verifier (x-degree <= (pq)^m wherever the y-degree is < q^m), p-series by
diagonal substitution, and reconstruction of v_s exponents from homogeneity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    GradingError,
    InternalConsistencyError,
    ParameterError,
    ResourceLimitError,
    StructuralError,
)
from .ring import SparsePoly, TruncationPolicy, _is_prime, prime_field
from .witt import witt_family, witt_mod_p

VARS = ("x", "y")

DEFAULT_MAX_Y_CAP = 10**4

MAX_TERMS_ENV = "FGL_MAX_TERMS"


def guard_limit(default: int) -> int:
    """Resource-guard bound, overridable through the FGL_MAX_TERMS variable."""
    raw = os.environ.get(MAX_TERMS_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{MAX_TERMS_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class FglParams:
    """Prime p and height s; q = p^(s-1) is always derived, never stored.

    The truncation recursion needs s > 1 (q = 1 at s = 1 makes "modulo y^q"
    say nothing), so the constructor rejects s = 1 unless `allow_height_one`
    is set; only the rational-logarithm oracle opts in to that.
    """

    p: int
    s: int
    allow_height_one: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ParameterError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.s, int) or self.s < 1:
            raise ParameterError(f"s must be a positive integer, got {self.s!r}")
        if self.s == 1 and not self.allow_height_one:
            raise ParameterError(
                "s = 1 is not supported here: the truncation recursion requires s > 1"
            )

    @property
    def q(self) -> int:
        return self.p ** (self.s - 1)

    @property
    def fp(self):
        return prime_field(self.p)


@dataclass(frozen=True)
class TruncatedFgl:
    """F(x, y) known exactly modulo y^(q^level), as a polynomial over F_p."""

    params: FglParams
    level: int
    poly: SparsePoly

    @property
    def y_cap(self) -> int:
        return self.params.q**self.level


def initial_fgl(params: FglParams) -> TruncatedFgl:
    """Level 1: F(x, y) = x + y modulo y^q."""
    _require_recursion_height(params)
    poly = SparsePoly(VARS, params.fp, {(1, 0): 1, (0, 1): 1})
    return TruncatedFgl(params, 1, poly)


def extend(tower: Sequence[TruncatedFgl], max_y_cap: int = DEFAULT_MAX_Y_CAP) -> TruncatedFgl:
    """Compute P_{n+1} from the tower P_1 .. P_n by the collapse ladder."""
    params, n = _validate_tower(tower)
    q = params.q
    new_cap = q ** (n + 1)
    if new_cap > max_y_cap:
        raise ResourceLimitError(
            f"extension to level {n + 1} needs y-exponents up to {new_cap}, "
            f"beyond the cap {max_y_cap}",
            projected=new_cap,
        )
    trunc = TruncationPolicy(caps={"y": new_cap})
    fp = params.fp
    wbar = witt_mod_p(witt_family(params.p, n))

    b: dict[int, SparsePoly] = {}
    y_index = VARS.index("y")
    for j in range(1, n + 1):
        bj = wbar[j].pow(q**j, trunc)
        bad = [e for e in bj.terms if e[y_index] < q**j]
        if bad:
            raise InternalConsistencyError(
                f"ladder certificate failed at level {n + 1}: "
                f"w_{j}^(q^{j}) has monomials {bad} with y-exponent < q^{j} = {q**j}"
            )
        b[j] = bj

    x_plus_y = SparsePoly(VARS, fp, {(1, 0): 1, (0, 1): 1})
    if n == 1:
        result = (x_plus_y + b[1]).truncate(trunc)
    else:
        t = tower[n - 1].poly.substitute({"x": x_plus_y, "y": b[1]}, trunc)
        for j in range(2, n):
            t = tower[n - j].poly.substitute({"x": t, "y": b[j]}, trunc)
        result = (t + b[n]).truncate(trunc)
    return TruncatedFgl(params, n + 1, result)


def build_tower(params: FglParams, level: int, max_y_cap: int = DEFAULT_MAX_Y_CAP) -> list[TruncatedFgl]:
    """The tower P_1 .. P_level, each level computed once from the ones below."""
    if level < 1:
        raise ParameterError(f"level must be >= 1, got {level}")
    tower = [initial_fgl(params)]
    while len(tower) < level:
        tower.append(extend(tower, max_y_cap=max_y_cap))
    return tower


def coefficient_table(f: TruncatedFgl) -> dict[int, SparsePoly]:
    """The polynomials A_l(x) with F = sum_l A_l(x) y^l, for 0 <= l < q^n."""
    x_only = ("x",)
    fp = f.params.fp
    rows: dict[int, dict] = {l: {} for l in range(f.y_cap)}
    for (i, j), c in f.poly.terms.items():
        rows[j][(i,)] = c
    return {l: SparsePoly(x_only, fp, rows[l]) for l in range(f.y_cap)}


@dataclass(frozen=True)
class DegreeBoundReport:
    """Outcome of the x-degree bound check, with the observed maxima.

    `windows` maps m to (largest x-exponent seen among terms with y-exponent
    < q^m, allowed bound (pq)^m); how tight the bound is can be read off, but
    tightness is not asserted.
    """

    params: FglParams
    level: int
    violations: tuple[tuple[int, int, int], ...]
    windows: Mapping[int, tuple[int, int]]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_degree_bound(f: TruncatedFgl) -> DegreeBoundReport:
    """Check x-exponent <= (pq)^m for every term with y-exponent < q^m, m <= n."""
    p, q = f.params.p, f.params.q
    violations = []
    windows = {}
    for m in range(1, f.level + 1):
        y_bound = q**m
        x_bound = (p * q) ** m
        seen = 0
        for (i, j) in f.poly.terms:
            if j < y_bound:
                seen = max(seen, i)
                if i > x_bound:
                    violations.append((i, j, m))
        windows[m] = (seen, x_bound)
    return DegreeBoundReport(f.params, f.level, tuple(sorted(violations)), windows)


@dataclass(frozen=True)
class PSeries:
    """[p^k](x) as a polynomial over F_p, meaningful only below x^valid_below."""

    params: FglParams
    k: int
    poly: SparsePoly
    valid_below: int


def p_series(tower: Sequence[TruncatedFgl], k: int) -> PSeries:
    """[p^k](x) by iterated diagonal substitution [m+1](x) = P_n([m](x), x).

    Substituting y = x is only faithful below x^(q^n), so the result carries
    its validity bound; callers must check it to detect a vacuous answer
    (e.g. [p](x) = x^(p^s) says nothing when p^s >= q^n).
    """
    params, n = _validate_tower(tower)
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    bound = params.q**n
    trunc = TruncationPolicy(caps={"x": bound})
    top = tower[n - 1].poly
    x = SparsePoly.variable(("x",), params.fp, "x")
    series = x
    for _ in range(params.p**k - 1):
        series = top.substitute({"x": series, "y": x}, trunc)
    return PSeries(params, k, series, bound)


def vs_regrade(f: TruncatedFgl) -> dict[tuple[int, int], int]:
    """v_s-exponent (i + j - 1)/(p^s - 1) of every term, by homogeneity.

    With deg(v_s) = -2(p^s - 1) and deg(x) = deg(y) = 2, the term
    v_s^e x^i y^j is homogeneous of the degree of F exactly when
    e = (i + j - 1)/(p^s - 1); setting v_s = 1 loses e, and this recovers it.
    """
    d = f.params.p**f.params.s - 1
    out = {}
    for (i, j), _ in f.poly.sorted_terms():
        num = i + j - 1
        if num % d:
            raise GradingError(
                f"term x^{i}*y^{j}: {num} is not divisible by p^s - 1 = {d}"
            )
        out[(i, j)] = num // d
    return out


def _require_recursion_height(params: FglParams):
    if params.s < 2:
        raise ParameterError("the truncation recursion requires s > 1")


def _validate_tower(tower: Sequence[TruncatedFgl]) -> tuple[FglParams, int]:
    if not tower:
        raise StructuralError("tower is empty")
    params = tower[0].params
    _require_recursion_height(params)
    for expected, f in enumerate(tower, start=1):
        if f.params != params:
            raise StructuralError(f"tower mixes parameters {params} and {f.params}")
        if f.level != expected:
            raise StructuralError(f"tower levels must run 1..n, found {f.level} at position {expected}")
        if f.poly.variables != VARS:
            raise StructuralError(f"tower polynomials must live in {VARS}")
    return params, len(tower)
