"""Parabolic quotients W^P and the Schubert-variety predicates built on them.

A Schubert variety ``X^P(w)`` is indexed by the position of ``w`` in
``Space.reps``; each rep is stored as the orbit point ``w(rho_P)`` where
``rho_P`` is the sum of the fundamental weights of the marked nodes.  The
variety ``X^P(w)`` has dimension ``l(w)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .errors import (DegreeOutOfRange, EmptyParabolic, IndexOutOfRange, InvalidType,
                     InvalidWord, NotASubvariety)
from .rootsys import (RootSystem, build_root_system, descent_word, enumerate_orbit,
                      longest_element, orbit_leq, reduced_word)

_DESCRIPTOR = re.compile(r"^\s*([A-Ga-g])(\d+)\s*/\s*P\s*([\d,\s]+)$")


@dataclass(eq=False)
class Space:
    """The homogeneous space G/P for a standard parabolic P."""

    rs: RootSystem
    parabolic_nodes: frozenset
    reps: list
    lengths: list
    dim: int
    index: dict = field(repr=False)

    def __repr__(self):
        return f"Space({self.name})"

    @property
    def name(self) -> str:
        nodes = ",".join(str(i) for i in sorted(self.parabolic_nodes))
        return f"{self.rs.name}/P{nodes}"

    @property
    def picard_rank_one(self) -> bool:
        return len(self.parabolic_nodes) == 1

    @property
    def levi_nodes(self) -> frozenset:
        return frozenset(range(1, self.rs.rank + 1)) - self.parabolic_nodes

    def __len__(self):
        return len(self.reps)

    def codim(self, i: int) -> int:
        return self.dim - self.lengths[i]

    def word(self, i: int) -> list[int]:
        return descent_word(self.rs, self.reps[i])

    @cached_property
    def rho_p(self) -> tuple:
        return tuple(int(i + 1 in self.parabolic_nodes) for i in range(self.rs.rank))

    @cached_property
    def point(self) -> int:
        return self.index[self.rho_p]

    @cached_property
    def fundamental(self) -> int:
        (top,) = [i for i, ln in enumerate(self.lengths) if ln == self.dim]
        return top

    @cached_property
    def strata(self) -> dict[int, list[int]]:
        """codimension -> sorted rep indices."""
        out = {d: [] for d in range(self.dim + 1)}
        for i in range(len(self.reps)):
            out[self.codim(i)].append(i)
        return out

    @cached_property
    def dual(self) -> list[int]:
        """Poincare duality: index of the min rep of ``w0 w``."""
        w0 = reduced_word(self.rs, longest_element(self.rs))
        out = []
        for lam in self.reps:
            mu = lam
            for i in reversed(w0):
                mu = self.rs.reflect_weight(i - 1, mu)
            out.append(self.index[mu])
        return out

    @cached_property
    def chevalley_edges(self) -> list[list[tuple[int, int]]]:
        """For each rep, the ``(lower_rep, weight)`` pairs of its Bruhat covers.

        ``lower`` is ``s_gamma`` applied to the rep, one step lower in length;
        ``weight = |<lambda, gamma^vee>|`` is the Chevalley multiplicity.
        """
        rs = self.rs
        pos_w = rs.positive_roots_weight_basis
        cov = rs.positive_coroots
        out = []
        for i, lam in enumerate(self.reps):
            target_len = self.lengths[i] - 1
            edges = []
            for gw, cv in zip(pos_w, cov):
                p = sum(a * b for a, b in zip(lam, cv))
                if p == 0:
                    continue
                mu = tuple(a - p * b for a, b in zip(lam, gw))
                j = self.index[mu]
                if self.lengths[j] == target_len:
                    edges.append((j, abs(p)))
            edges.sort()
            out.append(edges)
        return out

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Bruhat covering relations ``(lower, upper)`` among reps."""
        return sorted((j, i) for i, es in enumerate(self.chevalley_edges) for j, _ in es)

    # -- words --------------------------------------------------------------

    def index_of_word(self, word: Sequence[int], strict: bool = True) -> int:
        """Rep index of the coset ``w W_P`` for ``w = s_word[0] ... s_word[-1]``.

        With ``strict`` the word must be a reduced expression of a minimal
        coset representative.
        """
        rs = self.rs
        lam = self.rho_p
        for i in reversed(list(word)):
            if not (isinstance(i, int) and 1 <= i <= rs.rank):
                raise IndexOutOfRange(f"simple index {i!r} outside [1, {rs.rank}]")
            if strict and lam[i - 1] <= 0:
                raise InvalidWord(f"{list(word)} is not a reduced word of a minimal "
                                  f"representative in {self.name}")
            lam = rs.reflect_weight(i - 1, lam)
        return self.index[lam]

    def leq(self, a: int, b: int) -> bool:
        return orbit_leq(self.rs, self.reps[a], self.reps[b])


def build_space(rs: RootSystem, parabolic_nodes: Iterable[int]) -> Space:
    nodes = frozenset(parabolic_nodes)
    if not nodes:
        raise EmptyParabolic("the set of marked nodes must be nonempty")
    for i in nodes:
        if not 1 <= i <= rs.rank:
            raise IndexOutOfRange(f"node {i} outside [1, {rs.rank}]")
    rho_p = tuple(int(i + 1 in nodes) for i in range(rs.rank))
    orbit = enumerate_orbit(rs, rho_p)
    reps = sorted(orbit, key=lambda lam: (orbit[lam], lam))
    lengths = [orbit[lam] for lam in reps]
    index = {lam: k for k, lam in enumerate(reps)}
    levi = sum(1 for r in rs.positive_roots
               if all(r[i] == 0 for i in range(rs.rank) if i + 1 in nodes))
    dim = len(rs.positive_roots) - levi
    assert max(lengths) == dim
    return Space(rs, nodes, reps, lengths, dim, index)


def parse_descriptor(text: str) -> tuple[str, int, list[int]]:
    """``"E6/P1"`` -> ``("E", 6, [1])``; several nodes as ``"B2/P1,2"``."""
    m = _DESCRIPTOR.match(text)
    if not m:
        raise InvalidType(f"bad space descriptor {text!r}; expected e.g. 'B3/P2'")
    nodes = [int(x) for x in m.group(3).replace(" ", "").split(",") if x]
    return m.group(1).upper(), int(m.group(2)), nodes


_SPACES: dict = {}


def space_from_descriptor(text: str) -> Space:
    series, rank, nodes = parse_descriptor(text)
    return get_space(series, rank, nodes)


def get_space(series: str, rank: int, nodes: Iterable[int]) -> Space:
    """Cached ``build_space``; spaces are immutable so sharing is safe."""
    key = (series.upper(), rank, frozenset(nodes))
    if key not in _SPACES:
        _SPACES[key] = build_space(build_root_system(series, rank), key[2])
    return _SPACES[key]


# -- predicates ------------------------------------------------------------------


def degree_strata(space: Space, d: int) -> list[int]:
    if not 0 <= d <= space.dim:
        raise DegreeOutOfRange(f"codimension {d} outside [0, {space.dim}]")
    return list(space.strata[d])


def poincare_dual(space: Space, w: int) -> int:
    return space.dual[w]


def stabilizer_roots(space: Space, w: int) -> tuple[frozenset, frozenset]:
    """``(levi_nodes_of_S, sigma)`` for the stabiliser ``S^P(w)`` of ``X^P(w)``.

    Node ``i`` is in the Levi of the stabiliser when ``s_i`` does not raise the
    coset length, i.e. ``<lambda, alpha_i^vee> <= 0``; ``sigma`` is the
    complementary set of marked nodes.
    """
    lam = space.reps[w]
    stab = frozenset(i + 1 for i, x in enumerate(lam) if x <= 0)
    return stab, frozenset(range(1, space.rs.rank + 1)) - stab


def parabolic_span(space: Space, q_nodes: Iterable[int], v: int) -> int:
    """Maximal rep of ``W_Q v W_P``, where ``W_Q`` is generated by the unmarked nodes of Q."""
    gens = [i - 1 for i in range(1, space.rs.rank + 1) if i not in set(q_nodes)]
    lam = space.reps[v]
    while True:
        i = next((k for k in gens if lam[k] > 0), None)
        if i is None:
            return space.index[lam]
        lam = space.rs.reflect_weight(i, lam)


def is_admissible(space: Space, v: int, w: int) -> bool:
    if not space.leq(v, w):
        raise NotASubvariety(f"X({space.word(v)}) is not contained in X({space.word(w)})")
    _, sigma_w = stabilizer_roots(space, w)
    _, sigma_v = stabilizer_roots(space, v)
    return parabolic_span(space, sigma_w, v) == w and not (sigma_w & sigma_v)


def minimal_generating(space: Space) -> list[int]:
    """Reps with a reduced word using each marked node exactly once."""
    found = set()
    for order in permutations(sorted(space.parabolic_nodes)):
        found.add(space.index_of_word(list(order), strict=True))
    return sorted(found, key=lambda i: (space.lengths[i], space.reps[i]))
