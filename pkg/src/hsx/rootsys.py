"""Finite root systems and their Weyl groups, in exact integer arithmetic.

Node labels follow Bourbaki throughout.  Roots are integer vectors in the
basis of simple roots; weights (and Weyl group elements, through their action
on rho) are integer vectors in the basis of fundamental weights.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import NamedTuple, Sequence

from .errors import BasisMismatch, IndexOutOfRange, InvalidType
from .linalg import inverse

ROOT = "root"
WEIGHT = "weight"


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``C[i][j] = <alpha_i^vee, alpha_j>`` (0-based rows)."""
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 3,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if series not in valid or not valid[series]:
        raise InvalidType(f"unsupported type {series}{rank}")
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        # 1-based Bourbaki labels
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji

    if series in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if series == "B":
            # alpha_n short
            link(n - 1, n, -1, -2)
        elif series == "C":
            # alpha_n long
            link(n - 1, n, -2, -1)
    elif series == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif series == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif series == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif series == "G":
        # alpha_1 short, alpha_2 long
        link(1, 2, -3, -1)
    return c


def weyl_group_order(series: str, rank: int) -> int:
    """|W| from the product of the degrees of the basic invariants."""
    n = rank
    if series == "A":
        return factorial(n + 1)
    if series in "BC":
        return 2**n * factorial(n)
    if series == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(series, n)]


def positive_root_count(series: str, rank: int) -> int:
    n = rank
    if series == "A":
        return n * (n + 1) // 2
    if series in "BC":
        return n * n
    if series == "D":
        return n * (n - 1)
    return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(series, n)]


class Weight(NamedTuple):
    """A vector tagged with the basis it is written in (``root`` or ``weight``)."""

    coords: tuple
    basis: str


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored as ``w(rho)`` in fundamental-weight coordinates."""

    canonical: tuple[int, ...]
    cached_length: int

    @property
    def length(self) -> int:
        return self.cached_length


@dataclass(frozen=True, eq=False)
class RootSystem:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    root_kinds: tuple[str, ...]
    simple_norms: tuple[int, ...]
    _index: dict = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.name})"

    # -- basic data -------------------------------------------------------

    @property
    def simple_roots(self) -> list[tuple[Fraction, ...]]:
        n = self.rank
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]

    @cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def fundamental_weights(self) -> list[tuple[Fraction, ...]]:
        """Fundamental weights in simple-root coordinates (rows)."""
        ct = [[self.cartan[j][i] for j in range(self.rank)] for i in range(self.rank)]
        return [tuple(row) for row in inverse(ct)]

    @cached_property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def norm(self, root: Sequence[int]) -> int:
        """Squared length of a root, short roots normalised to 2."""
        total = Fraction(0)
        n = self.rank
        for i in range(n):
            if root[i] == 0:
                continue
            for j in range(n):
                if root[j]:
                    total += root[i] * root[j] * self.cartan[i][j] * Fraction(self.simple_norms[i], 2)
        assert total.denominator == 1
        return int(total)

    def coroot(self, root: Sequence[int]) -> tuple[int, ...]:
        """``root^vee`` in simple-coroot coordinates."""
        nb = self.norm(root)
        out = []
        for i, b in enumerate(root):
            q = Fraction(b * self.simple_norms[i], nb)
            assert q.denominator == 1
            out.append(int(q))
        return tuple(out)

    def to_weight_basis(self, root: Sequence) -> tuple:
        """Convert a simple-root-coordinate vector to fundamental-weight coordinates."""
        n = self.rank
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(n)) for i in range(n))

    def to_root_basis(self, weight: Sequence) -> tuple:
        fw = self.fundamental_weights
        n = self.rank
        out = []
        for j in range(n):
            s = sum((weight[i] * fw[i][j] for i in range(n)), Fraction(0))
            out.append(int(s) if s.denominator == 1 else s)
        return tuple(out)

    def pair(self, weight: Sequence, root: Sequence[int]) -> int:
        """``<weight, root^vee>`` for a weight in fundamental-weight coordinates."""
        cv = self._coroots[self._index[tuple(root)]]
        return sum(a * b for a, b in zip(weight, cv))

    @cached_property
    def _coroots(self):
        return [self.coroot(r) for r in self.roots]

    @cached_property
    def positive_roots_weight_basis(self):
        return [self.to_weight_basis(r) for r in self.positive_roots]

    @cached_property
    def positive_coroots(self):
        return self._coroots[: len(self.positive_roots)]

    @cached_property
    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    @cached_property
    def highest_short_root(self) -> tuple[int, ...]:
        short = [r for r, k in zip(self.positive_roots, self.root_kinds) if k == "short"]
        if not short:
            return self.highest_root
        return max(short, key=sum)

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._index

    def kind(self, root: Sequence[int]) -> str:
        return self.root_kinds[self._index[tuple(root)] % len(self.positive_roots)]

    # -- reflections ------------------------------------------------------

    def reflect_weight(self, i: int, lam: Sequence) -> tuple:
        """Simple reflection ``s_{i+1}`` (0-based ``i``) on fundamental-weight coordinates."""
        li = lam[i]
        if li == 0:
            return tuple(lam)
        col = self._cartan_cols[i]
        return tuple(a - li * c for a, c in zip(lam, col))

    def reflect_root(self, i: int, beta: Sequence) -> tuple:
        """Simple reflection on simple-root coordinates."""
        p = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        if p == 0:
            return tuple(beta)
        out = list(beta)
        out[i] -= p
        return tuple(out)

    def reflect_by_root(self, root: Sequence[int], lam: Sequence) -> tuple:
        """``s_root`` applied to a weight in fundamental-weight coordinates."""
        p = self.pair(lam, root)
        if p == 0:
            return tuple(lam)
        rw = self.to_weight_basis(root)
        return tuple(a - p * b for a, b in zip(lam, rw))

    @cached_property
    def _cartan_cols(self):
        n = self.rank
        return [tuple(self.cartan[r][i] for r in range(n)) for i in range(n)]


def build_root_system(series: str, rank: int) -> RootSystem:
    series = series.upper()
    c = cartan_matrix(series, rank)
    n = rank
    # relative squared lengths through the Dynkin graph
    ratio = [None] * n
    ratio[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if j != i and c[i][j] != 0 and ratio[j] is None:
                ratio[j] = ratio[i] * Fraction(c[i][j], c[j][i])
                todo.append(j)
    lo = min(ratio)
    norms = tuple(int(2 * r / lo) for r in ratio)

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def refl(i, beta):
        p = sum(c[i][j] * beta[j] for j in range(n))
        out = list(beta)
        out[i] -= p
        return tuple(out)

    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            g = refl(i, beta)
            if g not in seen:
                seen.add(g)
                queue.append(g)
    pos = sorted((r for r in seen if all(x >= 0 for x in r)), key=lambda r: (sum(r), r))

    def norm(beta):
        t = Fraction(0)
        for i in range(n):
            for j in range(n):
                t += beta[i] * beta[j] * c[i][j] * Fraction(norms[i], 2)
        return t

    kinds = tuple("short" if norm(r) == 2 and min(norms) != max(norms) else "long" for r in pos)
    roots = tuple(pos) + tuple(tuple(-x for x in r) for r in pos)
    index = {r: k for k, r in enumerate(roots)}
    return RootSystem(series, n, tuple(map(tuple, c)), tuple(pos), kinds, norms, index)


# -- Weyl group ----------------------------------------------------------------


def _check_word(rs: RootSystem, word: Sequence[int]) -> None:
    for i in word:
        if not (isinstance(i, int) and 1 <= i <= rs.rank):
            raise IndexOutOfRange(f"simple index {i!r} outside [1, {rs.rank}]")


def apply_word(rs: RootSystem, word: Sequence[int], lam: Sequence) -> tuple:
    """Apply ``s_{word[0]} ... s_{word[-1]}`` to a weight (rightmost letter first)."""
    _check_word(rs, word)
    lam = tuple(lam)
    for i in reversed(word):
        lam = rs.reflect_weight(i - 1, lam)
    return lam


def orbit_length(rs: RootSystem, lam: Sequence) -> int:
    """Length of the minimal element carrying the dominant weight of the orbit to ``lam``."""
    return sum(1 for cv in rs.positive_coroots if sum(a * b for a, b in zip(lam, cv)) < 0)


def element_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    lam = apply_word(rs, word, rs.rho)
    return WeylElement(lam, orbit_length(rs, lam))


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs.rho, 0)


def descent_word(rs: RootSystem, lam: Sequence) -> list[int]:
    """Reduced word of the minimal element sending the dominant weight to ``lam``.

    Greedy: strip the smallest left descent at each step.
    """
    lam = tuple(lam)
    word = []
    while True:
        i = next((k for k, x in enumerate(lam) if x < 0), None)
        if i is None:
            return word
        word.append(i + 1)
        lam = rs.reflect_weight(i, lam)


def reduced_word(rs: RootSystem, w: WeylElement) -> list[int]:
    return descent_word(rs, w.canonical)


def act_on_weight(rs: RootSystem, w: WeylElement, v: Weight) -> Weight:
    if not isinstance(v, Weight) or v.basis not in (ROOT, WEIGHT):
        raise BasisMismatch(f"vector must be tagged with basis 'root' or 'weight', got {v!r}")
    if len(v.coords) != rs.rank:
        raise BasisMismatch(f"expected {rs.rank} coordinates, got {len(v.coords)}")
    coords = tuple(v.coords)
    step = rs.reflect_weight if v.basis == WEIGHT else rs.reflect_root
    for i in reversed(reduced_word(rs, w)):
        coords = step(i - 1, coords)
    return Weight(coords, v.basis)


def length_of(rs: RootSystem, w: WeylElement) -> int:
    return w.cached_length


def multiply(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    return element_from_word(rs, reduced_word(rs, a) + reduced_word(rs, b))


def inverse_element(rs: RootSystem, w: WeylElement) -> WeylElement:
    return element_from_word(rs, reduced_word(rs, w)[::-1])


def orbit_leq(rs: RootSystem, mu: Sequence, lam: Sequence) -> bool:
    """Bruhat comparison of two points of the same Weyl orbit.

    Points stand for minimal coset representatives.  Uses the lifting
    property: if ``s lam < lam`` then ``mu <= lam`` iff ``min(mu, s mu) <= s lam``.
    """
    mu, lam = tuple(mu), tuple(lam)
    lm, ll = orbit_length(rs, mu), orbit_length(rs, lam)
    while True:
        if lm > ll:
            return False
        if mu == lam:
            return True
        i = next((k for k, x in enumerate(lam) if x < 0), None)
        if i is None:
            return False
        if mu[i] < 0:
            mu = rs.reflect_weight(i, mu)
            lm -= 1
        lam = rs.reflect_weight(i, lam)
        ll -= 1


def bruhat_leq(rs: RootSystem, a: WeylElement, b: WeylElement) -> bool:
    return orbit_leq(rs, a.canonical, b.canonical)


def longest_element(rs: RootSystem) -> WeylElement:
    lam = rs.rho
    steps = 0
    while True:
        i = next((k for k, x in enumerate(lam) if x > 0), None)
        if i is None:
            return WeylElement(lam, steps)
        lam = rs.reflect_weight(i, lam)
        steps += 1


def enumerate_orbit(rs: RootSystem, start: Sequence, generators: Sequence[int] | None = None) -> dict:
    """Breadth-first orbit of a dominant weight; returns ``{point: length}``.

    ``generators`` (1-based) restricts to a parabolic subgroup.
    """
    gens = [g - 1 for g in generators] if generators is not None else range(rs.rank)
    start = tuple(start)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        d = seen[lam]
        for i in gens:
            if lam[i] > 0:
                mu = rs.reflect_weight(i, lam)
                if mu not in seen:
                    seen[mu] = d + 1
                    queue.append(mu)
    return seen


def all_elements(rs: RootSystem) -> list[WeylElement]:
    """Every element of W, sorted by (length, canonical vector)."""
    orbit = enumerate_orbit(rs, rs.rho)
    return sorted((WeylElement(k, v) for k, v in orbit.items()),
                  key=lambda w: (w.cached_length, w.canonical))
