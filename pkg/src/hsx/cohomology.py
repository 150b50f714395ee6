"""Schubert-basis cohomology: Chevalley products, Poincare pairing, Gram forms.

Classes are graded by codimension: the Schubert variety ``X^P(w)`` of
dimension ``l(w)`` has class ``sigma(w)`` of codimension ``dim X - l(w)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .coset import Space, degree_strata
from .errors import (DegreeMismatch, DegreeOutOfRange, HsxError, NegativeCoefficient,
                     NotPicardRankOne, ParityError, TopDegree)
from .linalg import classify_symmetric


@dataclass(frozen=True, eq=False)
class CohClass:
    space: Space
    codim: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {i: int(c) for i, c in self.coeffs.items() if c != 0}
        for i in clean:
            if self.space.codim(i) != self.codim:
                raise DegreeMismatch(f"rep {self.space.word(i)} has codimension "
                                     f"{self.space.codim(i)}, not {self.codim}")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other):
        return (isinstance(other, CohClass) and other.space is self.space
                and other.codim == self.codim and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.space), self.codim, tuple(self.coeffs.items())))

    def __add__(self, other: "CohClass") -> "CohClass":
        if other.codim != self.codim:
            raise DegreeMismatch("cannot add classes of different codimension")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return CohClass(self.space, self.codim, out)

    def __rmul__(self, scalar: int) -> "CohClass":
        return CohClass(self.space, self.codim, {i: scalar * c for i, c in self.coeffs.items()})

    def coeff(self, i: int) -> int:
        return self.coeffs.get(i, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        terms = " + ".join(f"{c}*s{self.space.word(i)}" for i, c in self.coeffs.items())
        return f"CohClass(codim={self.codim}: {terms or '0'})"


def schubert_class(space: Space, w: int) -> CohClass:
    return CohClass(space, space.codim(w), {w: 1})


def fundamental_class(space: Space) -> CohClass:
    return schubert_class(space, space.fundamental)


def point_class(space: Space) -> CohClass:
    return schubert_class(space, space.point)


def zero_class(space: Space, codim: int) -> CohClass:
    return CohClass(space, codim, {})


def _require_picard_one(space: Space) -> None:
    if not space.picard_rank_one:
        raise NotPicardRankOne(f"{space.name} has Picard rank {len(space.parabolic_nodes)}")


def chevalley_h_mult(space: Space, c: CohClass) -> CohClass:
    """Multiply by the ample generator ``h`` of Pic(X)."""
    _require_picard_one(space)
    if c.codim >= space.dim:
        raise TopDegree("cannot multiply a top-degree class by h")
    edges = space.chevalley_edges
    out: dict[int, int] = {}
    for i, a in c.coeffs.items():
        for j, m in edges[i]:
            out[j] = out.get(j, 0) + a * m
    return CohClass(space, c.codim + 1, out)


def h_mult_power(space: Space, c: CohClass, k: int) -> CohClass:
    for _ in range(k):
        c = chevalley_h_mult(space, c)
    return c


def h_power(space: Space, k: int) -> CohClass:
    if not 0 <= k <= space.dim:
        raise DegreeOutOfRange(f"h^{k} outside [0, {space.dim}]")
    return h_mult_power(space, fundamental_class(space), k)


def pair_complementary(space: Space, a: CohClass, b: CohClass) -> int:
    if a.codim + b.codim != space.dim:
        raise DegreeMismatch(f"codimensions {a.codim} + {b.codim} != {space.dim}")
    dual = space.dual
    return sum(c * b.coeff(dual[i]) for i, c in a.coeffs.items())


def degree(space: Space) -> int:
    """``deg X = h^dim``."""
    return h_power(space, space.dim).coeff(space.point)


@dataclass
class GramReport:
    k: int
    basis: list
    matrix: list
    verdict: str
    witness: int | None
    minors: list

    @property
    def positive_definite(self) -> bool:
        return self.verdict == "positive_definite"

    def to_dict(self, space: Space) -> dict:
        return {
            "k": self.k,
            "basis": [space.word(i) for i in self.basis],
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "verdict": self.verdict,
            "witness": self.witness,
            "leading_minors": [str(m) for m in self.minors],
        }


def _middle_codim(space: Space, k: int) -> int:
    if not 0 <= k <= space.dim:
        raise DegreeOutOfRange(f"k={k} outside [0, {space.dim}]")
    if (space.dim - k) % 2:
        raise ParityError(f"dim - k = {space.dim - k} is odd")
    return (space.dim - k) // 2


def report_from_matrix(k: int, basis: list, matrix: list) -> GramReport:
    n = len(matrix)
    assert all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(n)), "asymmetric Gram matrix"
    verdict, witness, minors = classify_symmetric(matrix)
    return GramReport(k, basis, matrix, verdict, witness, minors)


def _h_steps(space: Space, coeffs: dict, steps: int) -> dict:
    edges = space.chevalley_edges
    for _ in range(steps):
        out: dict[int, int] = {}
        for i, a in coeffs.items():
            for j, m in edges[i]:
                out[j] = out.get(j, 0) + a * m
        coeffs = out
    return coeffs


def gram_matrix(space: Space, k: int) -> GramReport:
    """Gram matrix of ``(s, s')_{h^k} = s s' h^k`` on the codim ``(dim-k)/2`` stratum.

    ``h`` is self-adjoint for the pairing, so ``h^a s`` is paired with
    ``h^(k-a) s'`` for ``a = ceil(k/2)``; both sides stay near the middle.
    """
    _require_picard_one(space)
    m = _middle_codim(space, k)
    basis = degree_strata(space, m)
    dual = space.dual
    low = [_h_steps(space, {u: 1}, k // 2) for u in basis]
    high = low if k % 2 == 0 else [_h_steps(space, c, 1) for c in low]
    rows = []
    for hu in high:
        rows.append([sum(c * hv.get(dual[i], 0) for i, c in hu.items()) for hv in low])
    return report_from_matrix(k, basis, rows)


def eff(space: Space, progress=None) -> tuple[int, list[GramReport]]:
    """Smallest ``k`` (same parity as dim) with ``(,)_{h^k}`` positive definite.

    Returns ``(k, reports)`` with the report for every ``k`` scanned; the
    co-effectiveness is ``space.dim - k``.
    """
    _require_picard_one(space)
    reports = []
    for k in range(space.dim % 2, space.dim + 1, 2):
        rep = gram_matrix(space, k)
        reports.append(rep)
        if progress:
            progress(space, rep)
        if rep.positive_definite:
            return k, reports
    raise HsxError(f"no positive definite form found on {space.name}")  # pragma: no cover


def is_cumbersome(space: Space, c: CohClass) -> bool:
    """True when every Schubert coefficient of ``c`` is positive."""
    neg = [i for i, a in c.coeffs.items() if a < 0]
    if neg:
        raise NegativeCoefficient(f"coefficient of {space.word(neg[0])} is negative")
    return all(c.coeff(i) > 0 for i in space.strata[c.codim])


# -- JSON ----------------------------------------------------------------------------


def class_to_json(space: Space, c: CohClass) -> dict:
    return {
        "codim": c.codim,
        "coeffs": [{"word": space.word(i), "coeff": str(a)} for i, a in c.coeffs.items()],
    }


def class_from_json(space: Space, data) -> CohClass:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        codim = int(data["codim"])
        coeffs: dict[int, int] = {}
        for term in data["coeffs"]:
            i = space.index_of_word([int(x) for x in term["word"]], strict=True)
            coeffs[i] = coeffs.get(i, 0) + int(term["coeff"])
    except (KeyError, TypeError) as exc:
        raise HsxError(f"malformed class JSON: {exc}") from exc
    return CohClass(space, codim, coeffs)


def bilinear_form_xi(space: Space, xi: CohClass, at=None) -> GramReport:
    """Gram matrix of ``(s, s')_xi = s s' xi`` on the middle stratum via localization."""
    from .localize import check_cost, triple_gram

    _middle_codim(space, xi.codim)
    check_cost(space)
    basis, matrix = triple_gram(space, xi=xi, at=at)
    return report_from_matrix(xi.codim, basis, matrix)
