"""Fixed-point localization used as an independent check on the Chevalley route.

The equivariant class of the opposite Schubert variety ``X^u`` (codimension
``l(u)``) is restricted to each torus-fixed point ``vP`` with the subword
formula.  Non-equivariantly ``[X^u]`` equals ``sigma(w)`` for ``u`` the
Poincare dual rep of ``w``, so the oracle never touches Chevalley data.

Restrictions are evaluated at rational points rather than kept as
polynomials; every integral is computed at two independent points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cohomology import CohClass
from .coset import Space
from .errors import (CostGuardExceeded, CrossCheckFailed, DegreeMismatch, ParityError,
                     IrregularPoint, PointCollision)
from .rootsys import descent_word

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DEFAULT_SEED = 20240601
MAX_REPS = 300
MAX_RANK = 4


@dataclass(frozen=True)
class EvalPoint:
    """Values of the simple roots at two independent points."""

    first: tuple
    second: tuple

    def __post_init__(self):
        if self.first == self.second:
            raise PointCollision("the two evaluation points coincide")

    @classmethod
    def default(cls, rank: int, seed: int = DEFAULT_SEED) -> "EvalPoint":
        rng = random.Random(seed)
        first = tuple(Fraction(p) for p in PRIMES[:rank])
        while True:
            second = tuple(Fraction(rng.randint(1, 97), rng.randint(1, 13)) for _ in range(rank))
            if second != first:
                return cls(first, second)

    def to_dict(self) -> dict:
        return {"first": [str(x) for x in self.first], "second": [str(x) for x in self.second]}


def _value(root: Sequence[int], point: Sequence) -> Fraction:
    return sum((c * t for c, t in zip(root, point) if c), Fraction(0))


def _check_regular(space: Space, point) -> None:
    if len(point) != space.rs.rank:
        raise IrregularPoint(f"point has {len(point)} coordinates, rank is {space.rs.rank}")
    for beta in space.rs.positive_roots:
        if _value(beta, point) == 0:
            raise IrregularPoint(f"root {beta} vanishes at {point}")


def _rotated_roots(space: Space, word: list[int]) -> list[tuple]:
    """``r_j = s_{a_1} ... s_{a_{j-1}}(alpha_{a_j})`` in simple-root coordinates."""
    rs = space.rs
    out = []
    for j, a in enumerate(word):
        beta = rs.simple_roots[a - 1]
        for b in reversed(word[:j]):
            beta = rs.reflect_root(b - 1, beta)
        out.append(beta)
    return out


def restrictions_at(space: Space, v: int, point) -> dict[int, Fraction]:
    """``{u: [X^u]|_v}`` for every rep ``u`` with nonzero restriction at ``v``.

    Subwords of a reduced word of ``v`` are scanned right to left; the running
    suffix product is kept as an orbit point so every rep is produced in one pass.
    """
    rs = space.rs
    word = descent_word(rs, space.reps[v])
    vals = [_value(r, point) for r in _rotated_roots(space, word)]
    states: dict[tuple, Fraction] = {space.rho_p: Fraction(1)}
    for j in range(len(word) - 1, -1, -1):
        i = word[j] - 1
        new = dict(states)
        for lam, c in states.items():
            if lam[i] > 0:
                mu = rs.reflect_weight(i, lam)
                new[mu] = new.get(mu, Fraction(0)) + c * vals[j]
        states = new
    return {space.index[lam]: c for lam, c in states.items() if c != 0}


def billey_restriction(space: Space, u: int, v: int, point) -> Fraction:
    """Restriction of the opposite class ``[X^u]`` at the fixed point ``vP``."""
    return restrictions_at(space, v, point).get(u, Fraction(0))


def euler_denominator(space: Space, v: int, point) -> Fraction:
    """Product of the tangent weights of G/P at ``vP``."""
    rs = space.rs
    word = descent_word(rs, space.reps[v])
    out = Fraction(1)
    for beta in rs.positive_roots:
        if all(beta[i - 1] == 0 for i in space.parabolic_nodes):
            continue
        for b in reversed(word):
            beta = rs.reflect_root(b - 1, beta)
        out *= -_value(beta, point)
    if out == 0:
        raise IrregularPoint(f"tangent weight vanishes at fixed point {space.word(v)}")
    return out


class Localizer:
    """Restriction tables of one space at one point, built lazily."""

    def __init__(self, space: Space, point):
        _check_regular(space, point)
        self.space = space
        self.point = tuple(point)
        self._table: list | None = None
        self._euler: list | None = None

    @property
    def table(self) -> list[dict[int, Fraction]]:
        if self._table is None:
            self._table = [restrictions_at(self.space, v, self.point) for v in range(len(self.space))]
        return self._table

    @property
    def euler(self) -> list[Fraction]:
        if self._euler is None:
            self._euler = [euler_denominator(self.space, v, self.point) for v in range(len(self.space))]
        return self._euler

    def restrict_class(self, c: CohClass, v: int) -> Fraction:
        """Restriction at ``v`` of an equivariant lift of ``c``."""
        dual = self.space.dual
        row = self.table[v]
        return sum((a * row.get(dual[w], 0) for w, a in c.coeffs.items()), Fraction(0))

    def integrate(self, classes: Sequence[CohClass], extra=None) -> Fraction:
        """Sum over fixed points of the product of restrictions over the Euler class.

        ``extra(v)`` optionally multiplies in a further restriction.
        """
        total = Fraction(0)
        for v in range(len(self.space)):
            term = Fraction(1)
            for c in classes:
                term *= self.restrict_class(c, v)
                if not term:
                    break
            if term and extra is not None:
                term *= extra(v)
            if term:
                total += term / self.euler[v]
        return total


@lru_cache(maxsize=64)
def _localizer(space: Space, point: tuple) -> Localizer:
    return Localizer(space, point)


def check_cost(space: Space) -> None:
    if space.rs.rank > MAX_RANK and len(space) > MAX_REPS:
        raise CostGuardExceeded(f"{space.name}: rank {space.rs.rank} and {len(space)} fixed points "
                                f"exceed the localization guard (rank <= {MAX_RANK} or <= {MAX_REPS} points)")


def _as_classes(space: Space, factors) -> list[CohClass]:
    out = []
    for f in factors:
        out.append(f if isinstance(f, CohClass) else CohClass(space, space.codim(f), {f: 1}))
    return out


def _agree(a: Fraction, b: Fraction) -> int:
    if a != b:
        raise PointCollision(f"evaluations disagree ({a} vs {b}); choose another seed")
    if a.denominator != 1:
        raise CrossCheckFailed(f"non-integral intersection number {a}")
    return int(a)


def integrate(space: Space, factors, at: EvalPoint | None = None, h_power: int = 0) -> int:
    """Intersection number of Schubert classes (rep indices or CohClass) times ``h^h_power``.

    ``h`` enters through the restriction of the Schubert divisor, not through
    the Chevalley formula.
    """
    classes = _as_classes(space, factors)
    total = sum(c.codim for c in classes) + h_power
    if total != space.dim:
        raise DegreeMismatch(f"total codimension {total} != dim {space.dim}")
    if at is None:
        at = EvalPoint.default(space.rs.rank)
    results = []
    for point in (at.first, at.second):
        loc = _localizer(space, tuple(point))
        extra = None
        if h_power:
            divisor = _divisor(space)
            extra = lambda v, loc=loc, d=divisor: loc.restrict_class(d, v) ** h_power
        results.append(loc.integrate(classes, extra))
    return _agree(*results)


def _divisor(space: Space) -> CohClass:
    (d,) = space.strata[1]
    return CohClass(space, 1, {d: 1})


def triple_gram(space: Space, xi: CohClass | None = None, k: int | None = None,
                at: EvalPoint | None = None) -> tuple[list[int], list[list[int]]]:
    """Matrix of ``integral(s s' xi)`` (or ``s s' h^k``) on the middle stratum."""
    codim = xi.codim if xi is not None else k
    m2 = space.dim - codim
    if m2 % 2:
        raise ParityError(f"dim - {codim} is odd")
    basis = list(space.strata[m2 // 2])
    if at is None:
        at = EvalPoint.default(space.rs.rank)
    mats = []
    for point in (at.first, at.second):
        loc = _localizer(space, tuple(point))
        if xi is not None:
            weight = [loc.restrict_class(xi, v) for v in range(len(space))]
        else:
            d = _divisor(space) if k else None
            weight = [loc.restrict_class(d, v) ** k if k else Fraction(1) for v in range(len(space))]
        dual = space.dual
        rows = []
        for a in basis:
            row = []
            for b in basis:
                s = Fraction(0)
                for v in range(len(space)):
                    r = loc.table[v]
                    ra, rb = r.get(dual[a]), r.get(dual[b])
                    if ra and rb and weight[v]:
                        s += ra * rb * weight[v] / loc.euler[v]
                row.append(s)
            rows.append(row)
        mats.append(rows)
    out = [[_agree(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(*mats)]
    return basis, out


# -- symbolic third check -------------------------------------------------------------


def symbolic_integrate(space: Space, factors, h_power: int = 0):
    """Exact symbolic localization sum (rank <= 3 only); returns a sympy number."""
    import sympy

    if space.rs.rank > 3:
        raise CostGuardExceeded("symbolic localization is limited to rank <= 3")
    classes = _as_classes(space, factors)
    if sum(c.codim for c in classes) + h_power != space.dim:
        raise DegreeMismatch("total codimension does not match dim")
    syms = sympy.symbols(f"a1:{space.rs.rank + 1}")
    loc = Localizer(space, syms)  # sympy symbols multiply like rationals here
    div = _divisor(space) if h_power else None
    total = sympy.Integer(0)
    for v in range(len(space)):
        term = sympy.Integer(1)
        for c in classes:
            term *= loc.restrict_class(c, v)
        if h_power:
            term *= loc.restrict_class(div, v) ** h_power
        total += term / loc.euler[v]
    return sympy.cancel(sympy.together(total))
