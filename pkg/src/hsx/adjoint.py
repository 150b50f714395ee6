"""Adjoint and coadjoint varieties: classes labelled by roots, and the quadratic forms
that control divisors on subvarieties of small codimension.

Labelling.  The class ``sigma(w)`` (codimension ``dim - l(w)``) gets the root
``alpha_w = -c * w(omega_p)`` where ``c * omega_p`` is the highest root
(adjoint) or highest short root (coadjoint).  The fundamental class then
carries the top root, the point its negative, the classes of codimension
``(dim - 1)/2`` the simple roots of the relevant length and the next stratum
their negatives.

Symbolic work uses sympy; ``x_i``/``y_i`` are indexed by the Bourbaki number
of the relevant simple root.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import sympy

from .cohomology import CohClass, chevalley_h_mult, h_mult_power, pair_complementary
from .coset import Space, get_space, is_admissible, stabilizer_roots
from .errors import (CrossCheckFailed, CumbersomeViolation, DegreeMismatch, FormulaMismatch,
                     IdentityFailed, IndexOutOfRange, InvalidType, NonpositiveX,
                     PicardRankNotOne, PosdefFailed)
from .linalg import classify_symmetric
from .rootsys import RootSystem, build_root_system

ADJOINT, COADJOINT = "adjoint", "coadjoint"
VARIANTS = ("literal", "mirrored", "completed")
MAX_CERTIFICATE_TERMS = 400


@dataclass(eq=False)
class AdjointModel:
    rs: RootSystem
    kind: str
    space: Space
    node: int
    scale: int                      # top root = scale * omega_node
    top_root: tuple
    class_to_root: list             # rep index -> root (simple-root coords)
    root_to_class: dict
    relevant_simples: list          # Bourbaki indices, increasing
    simple_class: dict              # i -> rep with root alpha_i
    neg_class: dict                 # i -> rep with root -alpha_i
    middle: int                     # (dim - 1) / 2
    sigma_report: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return f"{self.rs.name} {self.kind} ({self.space.name})"

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        """Edges ``(a, b)``, ``a < b``, of the Dynkin diagram among relevant simples."""
        c = self.rs.cartan
        return [(a, b) for a, b in combinations(self.relevant_simples, 2) if c[a - 1][b - 1] < 0]

    def table(self, i: int, j: int) -> int:
        """Expected coefficient of ``sigma(-alpha_j)`` in ``h * sigma(alpha_i)``."""
        if i == j:
            return 2
        return 1 if self.rs.cartan[i - 1][j - 1] < 0 else 0

    def h_mult(self, c: CohClass) -> CohClass:
        """Multiplication by the hyperplane class of the (co)adjoint embedding."""
        return self.scale * chevalley_h_mult(self.space, c)


def _top_root(rs: RootSystem, kind: str) -> tuple:
    if kind == ADJOINT:
        return rs.highest_root
    if kind == COADJOINT:
        return rs.highest_short_root
    raise InvalidType(f"kind must be '{ADJOINT}' or '{COADJOINT}', not {kind!r}")


def model_node(rs: RootSystem, kind: str) -> tuple[int, int]:
    """``(node, c)`` with top root ``c * omega_node``; raises when support is not one node."""
    wt = rs.to_weight_basis(_top_root(rs, kind))
    support = [i + 1 for i, a in enumerate(wt) if a]
    if len(support) != 1:
        raise PicardRankNotOne(f"{kind} weight of {rs.name} is supported on nodes {support}")
    return support[0], wt[support[0] - 1]


def sigma_root_formula(model: AdjointModel, w: int, literal: bool = False) -> frozenset:
    """Marked nodes of the stabiliser of ``X(w)`` read off from ``alpha_w``.

    ``literal`` uses a positive pairing, which matches the stabiliser only under
    the opposite labelling; the default negative pairing is the one consistent
    with the anchors of this model.
    """
    wt = model.rs.to_weight_basis(model.class_to_root[w])
    if literal:
        return frozenset(i + 1 for i, a in enumerate(wt) if a > 0)
    return frozenset(i + 1 for i, a in enumerate(wt) if a < 0)


def build_adjoint_model(rs: RootSystem, kind: str = ADJOINT) -> AdjointModel:
    node, c = model_node(rs, kind)
    space = get_space(rs.series, rs.rank, [node])
    top = _top_root(rs, kind)
    top_norm = rs.norm(top)
    labels = []
    for lam in space.reps:
        root = rs.to_root_basis(tuple(-c * a for a in lam))
        if not rs.is_root(root) or rs.norm(root) != top_norm:
            raise CrossCheckFailed(f"{lam} does not map to a root of the relevant length")
        labels.append(tuple(root))
    relevant_roots = [r for r in rs.roots if rs.norm(r) == top_norm]
    root_to_class = {r: i for i, r in enumerate(labels)}
    if len(root_to_class) != len(labels) or set(labels) != set(relevant_roots):
        raise CrossCheckFailed(f"class/root map of {space.name} is not a bijection")

    relevant = [i + 1 for i in range(rs.rank)
                if rs.norm(tuple(int(k == i) for k in range(rs.rank))) == top_norm]
    m2 = space.dim - 1
    if m2 % 2:
        raise CrossCheckFailed(f"{space.name} has even dimension")
    middle = m2 // 2
    simple_class, neg_class = {}, {}
    for i in relevant:
        e = tuple(int(k == i - 1) for k in range(rs.rank))
        simple_class[i] = root_to_class[e]
        neg_class[i] = root_to_class[tuple(-x for x in e)]
    model = AdjointModel(rs, kind, space, node, c, top, labels, root_to_class,
                         relevant, simple_class, neg_class, middle)
    _check_anchors(model)
    model.sigma_report = cross_check_sigma(model)
    if model.sigma_report["mismatches"]:
        raise CrossCheckFailed(f"stabiliser formula fails on {model.sigma_report['mismatches'][:3]}")
    return model


def _check_anchors(model: AdjointModel) -> None:
    sp = model.space
    neg_top = tuple(-x for x in model.top_root)
    problems = []
    if model.class_to_root[sp.fundamental] != model.top_root:
        problems.append("fundamental class is not the top root")
    if model.class_to_root[sp.point] != neg_top:
        problems.append("point class is not minus the top root")
    for i in model.relevant_simples:
        if sp.codim(model.simple_class[i]) != model.middle:
            problems.append(f"alpha_{i} not in codimension {model.middle}")
        if sp.codim(model.neg_class[i]) != model.middle + 1:
            problems.append(f"-alpha_{i} not in codimension {model.middle + 1}")
    if problems:
        raise CrossCheckFailed("; ".join(problems))


def cross_check_sigma(model: AdjointModel) -> dict:
    """Compare both sign readings of the root formula with the group-theoretic stabiliser."""
    mism, lit_ok = [], 0
    for w in range(len(model.space)):
        _, group = stabilizer_roots(model.space, w)
        if sigma_root_formula(model, w) != group:
            mism.append(model.space.word(w))
        if sigma_root_formula(model, w, literal=True) == group:
            lit_ok += 1
    return {"reps": len(model.space), "mismatches": mism, "literal_matches": lit_ok}


def model_from_type(type_name: str, kind: str = ADJOINT) -> AdjointModel:
    series, rank = _split_type(type_name)
    return build_adjoint_model(build_root_system(series, rank), kind)


def _split_type(type_name: str) -> tuple[str, int]:
    t = type_name.strip().upper()
    if len(t) < 2 or not t[1:].isdigit():
        raise InvalidType(f"bad Lie type {type_name!r}")
    return t[0], int(t[1:])


# -- Chevalley table -----------------------------------------------------------------


def chevalley_coeff(model: AdjointModel, u: int, u2: int) -> int:
    """Coefficient ``c_{-u,h}^{u'}``; ``u``, ``u'`` are Bourbaki indices of relevant simples."""
    for i in (u, u2):
        if i not in model.simple_class:
            raise IndexOutOfRange(f"alpha_{i} is not a relevant simple root of {model.name}")
    expected = model.table(u, u2)
    sp = model.space
    prod = model.h_mult(CohClass(sp, model.middle, {model.simple_class[u]: 1}))
    actual = prod.coeff(model.neg_class[u2])
    if actual != expected:
        raise CrossCheckFailed(f"c(alpha_{u}, -alpha_{u2}) = {actual}, table says {expected}")
    return expected


def chevalley_table(model: AdjointModel) -> dict[tuple[int, int], int]:
    """All entries, each cross-checked; also asserts no other class appears."""
    out = {}
    sp = model.space
    neg = set(model.neg_class.values())
    for i in model.relevant_simples:
        prod = model.h_mult(CohClass(sp, model.middle, {model.simple_class[i]: 1}))
        stray = [sp.word(k) for k in prod.coeffs if k not in neg]
        if stray:
            raise CrossCheckFailed(f"h*sigma(alpha_{i}) meets non-simple classes {stray}")
        for j in model.relevant_simples:
            out[(i, j)] = chevalley_coeff(model, i, j)
    return out


def trans_bis_pairs(model: AdjointModel) -> list[dict]:
    """For each simple ``alpha``: ``w`` labelled ``alpha``, ``v`` labelled ``-alpha``."""
    sp = model.space
    out = []
    for i in model.relevant_simples:
        w, v = model.simple_class[i], model.neg_class[i]
        _, sw = stabilizer_roots(sp, w)
        _, sv = stabilizer_roots(sp, v)
        lam = model.rs.reflect_weight(i - 1, sp.reps[v])
        out.append({
            "simple": i,
            "w": sp.word(w),
            "v": sp.word(v),
            "dual": sp.dual[w] == v,
            "reflection": sp.index[lam] == w,
            "disjoint": not (sw & sv),
            "admissible": is_admissible(sp, v, w),
        })
    return out


# -- middle data ---------------------------------------------------------------------


@dataclass
class MiddleData:
    x: dict          # i -> x_{-alpha_i}
    d: dict          # i -> d_{-alpha_i}
    a: dict          # rep -> a_w
    d_identity: bool
    a_identity: bool
    a_identity_literal: bool


def middle_data(model: AdjointModel, Y: CohClass, d: int = 1, strict: bool = False) -> MiddleData:
    sp = model.space
    if d != 1:
        raise DegreeMismatch("only d = 1 is supported")
    if 2 * (sp.dim - Y.codim) != sp.dim + 3:
        raise DegreeMismatch(f"need 2 dim Y = dim X + 3, got codim {Y.codim} in dim {sp.dim}")
    hy = model.h_mult(Y)
    if strict and any(hy.coeff(w) <= 0 for w in sp.strata[hy.codim]):
        raise CumbersomeViolation("[Y]h has a nonpositive Schubert coefficient")
    a = {w: hy.coeff(w) for w in sp.strata[hy.codim]}
    x, dd = {}, {}
    for i in model.relevant_simples:
        x[i] = pair_complementary(sp, hy, CohClass(sp, model.middle + 1, {model.neg_class[i]: 1}))
        h2 = model.h_mult(model.h_mult(CohClass(sp, model.middle, {model.simple_class[i]: 1})))
        dd[i] = pair_complementary(sp, Y, h2)
    d_ok = all(dd[i] == sum(model.table(i, j) * x[j] for j in model.relevant_simples)
               for i in model.relevant_simples)
    a_ok = all(x[i] == a[sp.dual[model.neg_class[i]]] for i in model.relevant_simples)
    a_lit = all(x[i] == a[model.simple_class[i]] for i in model.relevant_simples)
    return MiddleData(x, dd, a, d_ok, a_ok, a_lit)


# -- quadratic forms -----------------------------------------------------------------
#
# The builders below take the x-values, y-values and a square-root callable so the
# same code runs on sympy expressions (display) and on elements of the rational
# function field QQ(t, y) with x = t^2 (fast exact identity checks).


def symbols(model: AdjointModel, letter: str):
    return {i: sympy.Symbol(f"{letter}{i}", positive=True) for i in model.relevant_simples}


def _x_values(model: AdjointModel, x):
    if x is None:
        return symbols(model, "x")
    if isinstance(x, dict):
        vals = {i: x[i] for i in model.relevant_simples}
    else:
        vals = dict(zip(model.relevant_simples, x))
        if len(vals) != len(model.relevant_simples):
            raise DegreeMismatch(f"need {len(model.relevant_simples)} x-values")
    out = {}
    for i, v in vals.items():
        v = sympy.nsimplify(v) if not isinstance(v, sympy.Basic) else v
        if v.is_number and not v > 0:
            raise NonpositiveX(f"x_{i} = {v} is not positive")
        out[i] = v
    return out


def _sympy_root(xs):
    return lambda p, r: sympy.sqrt(xs[p] * xs[r])


def d_values(model: AdjointModel, xs: dict) -> dict:
    return {i: sum(model.table(i, j) * xs[j] for j in model.relevant_simples) for i in model.relevant_simples}


def _a_entries(model: AdjointModel, xs: dict) -> dict:
    ds = d_values(model, xs)
    rel = model.relevant_simples
    t = model.table
    return {(u, v): t(u, v) - sum(xs[k] / ds[k] * (t(k, u) * t(k, v)) for k in rel)
            for u in rel for v in rel}


def a_matrix(model: AdjointModel, x=None) -> dict:
    return _a_entries(model, _x_values(model, x))


def _q_generic(model, xs, ys):
    return sum(a * ys[u] * ys[v] for (u, v), a in _a_entries(model, xs).items())


def q_form(model: AdjointModel, x=None, y=None):
    """The quadratic form ``sum A_{u,u'} y_u y_{u'}`` as a sympy expression."""
    ys = y if y is not None else symbols(model, "y")
    return sympy.expand(_q_generic(model, _x_values(model, x), ys))


def _orient(e, s) -> int:
    return 1 if e[1] == s else -1


def _Q_generic(model, xs, root, variant, zero):
    if variant not in VARIANTS:
        raise InvalidType(f"variant must be one of {VARIANTS}")
    ds = d_values(model, xs)
    P = model.pairs
    out = []
    for e in P:
        row = []
        for f in P:
            if e == f:
                a, b = e
                row.append(1 - xs[a] / ds[b] - xs[b] / ds[a])
                continue
            shared = set(e) & set(f)
            if not shared:
                row.append(zero)
                continue
            (s,) = shared
            p = e[0] if e[1] == s else e[1]
            r = f[0] if f[1] == s else f[1]
            val = (-_orient(e, s) * _orient(f, s)) * root(p, r) / ds[s]
            keep = {"literal": e[1] == f[0],
                    "mirrored": e[1] == f[0] or e[0] == f[1],
                    "completed": True}[variant]
            row.append(val if keep else zero)
        out.append(row)
    return out


def Q_matrix(model: AdjointModel, x=None, variant: str = "completed") -> list[list]:
    """Matrix of the form in the coordinates ``L(u,u')`` indexed by ``model.pairs``.

    ``literal`` keeps the displayed off-diagonal entry for ``u'_1 = u_2`` only,
    ``mirrored`` also fills its transpose, ``completed`` fills every pair of
    edges that share a node (which differs from ``mirrored`` only at branch
    nodes).  Radicals are exact sympy square roots.
    """
    xs = _x_values(model, x)
    return _Q_generic(model, xs, _sympy_root(xs), variant, sympy.Integer(0))


def _L_generic(model, xs, ys, root):
    return {(a, b): (xs[a] * ys[b] - xs[b] * ys[a]) / root(a, b) for a, b in model.pairs}


def L_coords(model: AdjointModel, x=None, y=None) -> dict:
    xs = _x_values(model, x)
    ys = y if y is not None else symbols(model, "y")
    return _L_generic(model, xs, ys, _sympy_root(xs))


def _q_prime_generic(model, xs, ys):
    ds = d_values(model, xs)
    rel = model.relevant_simples
    t = model.table
    total = 0
    for u, v in combinations(rel, 2):
        coeff = sum(xs[k] / ds[k] * (t(k, u) * t(k, v)) for k in rel) - t(u, v)
        total += coeff * (xs[u] * ys[v] - xs[v] * ys[u]) ** 2 / (xs[u] * xs[v])
    return total


def q_prime(model: AdjointModel, x=None, y=None):
    """The intermediate form ``sum_{u<u'} (sum_{u''} x/d c c - c_{u,u'}) L(u,u')^2``."""
    ys = y if y is not None else symbols(model, "y")
    return _q_prime_generic(model, _x_values(model, x), ys)


class _Cleared:
    """Polynomial ring ``ZZ[t, y]`` with ``x_i = t_i^2``.

    Every quantity of the identities is multiplied by ``D = prod d_k`` (and by
    monomials in t), so the checks run on polynomials with no gcd work.
    """

    def __init__(self, model: AdjointModel):
        rel = model.relevant_simples
        names = [f"t{i}" for i in rel] + [f"y{i}" for i in rel]
        R, *gens = sympy.ring(",".join(names), sympy.ZZ)
        n = len(rel)
        self.model = model
        self.R = R
        self.ts = dict(zip(rel, gens[:n]))
        self.ys = dict(zip(rel, gens[n:]))
        self.xs = {i: t ** 2 for i, t in self.ts.items()}
        self.ds = d_values(model, self.xs)
        self.D = self._prod(self.ds.values())
        self.D_without = {k: self._prod(d for j, d in self.ds.items() if j != k) for k in rel}
        self.back = {sympy.Symbol(f"t{i}"): sympy.sqrt(sympy.Symbol(f"x{i}", positive=True)) for i in rel}
        self.back.update({sympy.Symbol(f"y{i}"): sympy.Symbol(f"y{i}", positive=True) for i in rel})

    def _prod(self, items):
        out = self.R.one
        for f in items:
            out *= f
        return out

    def q(self):
        """``D * q``."""
        m, xs, ys = self.model, self.xs, self.ys
        t = m.table
        total = self.R.zero
        for u in m.relevant_simples:
            for v in m.relevant_simples:
                a = t(u, v) * self.D - sum((xs[k] * self.D_without[k] * (t(k, u) * t(k, v))
                                            for k in m.relevant_simples), self.R.zero)
                total += a * ys[u] * ys[v]
        return total

    def q_entry(self, e, f, variant):
        """``D * Q[e][f]``."""
        xs, ts = self.xs, self.ts
        if e == f:
            a, b = e
            return self.D - xs[a] * self.D_without[b] - xs[b] * self.D_without[a]
        shared = set(e) & set(f)
        if not shared:
            return self.R.zero
        (s,) = shared
        keep = {"literal": e[1] == f[0], "mirrored": e[1] == f[0] or e[0] == f[1], "completed": True}
        if variant not in keep:
            raise InvalidType(f"variant must be one of {VARIANTS}")
        if not keep[variant]:
            return self.R.zero
        p = e[0] if e[1] == s else e[1]
        r = f[0] if f[1] == s else f[1]
        return (-_orient(e, s) * _orient(f, s)) * ts[p] * ts[r] * self.D_without[s]

    def l_tilde(self, e):
        a, b = e
        return self.xs[a] * self.ys[b] - self.xs[b] * self.ys[a]

    def to_expr(self, f, denominator=1):
        return (f.as_expr() / denominator).subs(self.back)


@dataclass
class IdentityReport:
    variant: str
    holds: bool
    difference: object   # q - Q(L), zero when the identity holds

    def to_dict(self) -> dict:
        return {"variant": self.variant, "holds": self.holds, "difference": str(self.difference)}


def q_identity(model: AdjointModel, variant: str = "completed") -> IdentityReport:
    """Exact check of ``q = Q(L)`` after clearing every denominator."""
    C = _Cleared(model)
    T = C._prod(x for x in C.xs.values())
    lhs = C.q() * T
    rhs = C.R.zero
    for e in model.pairs:
        for f in model.pairs:
            entry = C.q_entry(e, f, variant)
            if entry:
                mono = T.exquo(C.ts[e[0]] * C.ts[e[1]] * C.ts[f[0]] * C.ts[f[1]])
                rhs += entry * C.l_tilde(e) * C.l_tilde(f) * mono
    diff = lhs - rhs
    if not diff:
        return IdentityReport(variant, True, 0)
    if len(diff) > MAX_CERTIFICATE_TERMS:
        lead = C.R({diff.LM: diff.LC}).as_expr().subs(C.back)
        return IdentityReport(variant, False, f"cleared numerator with {len(diff)} terms, leading {lead}")
    return IdentityReport(variant, False, C.to_expr(diff, (C.D * T).as_expr().subs(C.back)))


def verify_q_identity(model: AdjointModel, variant: str = "completed") -> IdentityReport:
    rep = q_identity(model, variant)
    if not rep.holds:
        raise IdentityFailed(f"q != Q(L) on {model.name} ({variant})", rep.difference)
    return rep


def q_identity_report(model: AdjointModel) -> list[IdentityReport]:
    return [q_identity(model, v) for v in VARIANTS]


def q_equals_q_prime(model: AdjointModel) -> bool:
    C = _Cleared(model)
    rel = model.relevant_simples
    t = model.table
    X = C._prod(C.xs.values())
    rhs = C.R.zero
    for u, v in combinations(rel, 2):
        coeff = sum((C.xs[k] * C.D_without[k] * (t(k, u) * t(k, v)) for k in rel), C.R.zero) - t(u, v) * C.D
        if coeff:
            rhs += coeff * C.l_tilde((u, v)) ** 2 * X.exquo(C.xs[u] * C.xs[v])
    return not (C.q() * X - rhs)


def derive_q_tilde(model: AdjointModel) -> list[list]:
    """Solve for the symmetric matrix of ``q`` in the coordinates ``x_a y_b - x_b y_a``."""
    xs = symbols(model, "x")
    ys = symbols(model, "y")
    P = model.pairs
    n = len(P)
    unk = {(a, b): sympy.Symbol(f"t_{a}_{b}") for a in range(n) for b in range(a, n)}
    Lt = [xs[a] * ys[b] - xs[b] * ys[a] for a, b in P]
    form = sum(unk[(min(a, b), max(a, b))] * Lt[a] * Lt[b] for a in range(n) for b in range(n))
    diff = sympy.expand(form - q_form(model))
    eqs = sympy.Poly(diff, *ys.values()).coeffs()
    sol = sympy.solve(eqs, list(unk.values()), dict=True)
    if n and not sol:
        raise FormulaMismatch(f"q is not a form in the L coordinates on {model.name}")
    sol = sol[0] if sol else {}
    return [[sympy.factor(unk[(min(a, b), max(a, b))].subs(sol)) for b in range(n)] for a in range(n)]


def q_tilde(model: AdjointModel, x) -> list[list[Fraction]]:
    """Rational congruent copy ``D Q D`` of the completed matrix, ``D = diag(1/sqrt(x_a x_b))``."""
    rel = model.relevant_simples
    xs = {i: Fraction(x[i]) for i in rel} if isinstance(x, dict) else dict(zip(rel, map(Fraction, x)))
    if len(xs) != len(rel) or any(v <= 0 for v in xs.values()):
        raise NonpositiveX("x must be positive, one value per relevant simple root")
    ds = d_values(model, xs)
    P = model.pairs
    out = []
    for e in P:
        row = []
        for f in P:
            if e == f:
                a, b = e
                row.append((1 - xs[a] / ds[b] - xs[b] / ds[a]) / (xs[a] * xs[b]))
            elif set(e) & set(f):
                (s,) = set(e) & set(f)
                row.append(Fraction(-_orient(e, s) * _orient(f, s)) / (xs[s] * ds[s]))
            else:
                row.append(Fraction(0))
        out.append(row)
    return out


def _literal_symmetrised(model: AdjointModel, x) -> list[list[Fraction]]:
    """``(Q + Q^T)/2`` for the displayed matrix, in the same rational coordinates."""
    full = q_tilde(model, x)
    P = model.pairs
    out = [row[:] for row in full]
    for a, e in enumerate(P):
        for b, f in enumerate(P):
            if a != b:
                chain = e[1] == f[0] or f[1] == e[0]
                out[a][b] = full[a][b] / 2 if chain else Fraction(0)
    return out


@dataclass
class PosdefReport:
    model: str
    samples: int
    seed: int
    failures: int
    literal_failures: int
    tier: str
    certificate: list
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "model": self.model, "samples": self.samples, "seed": self.seed,
            "failures": self.failures, "literal_failures": self.literal_failures,
            "tier": self.tier, "certificate": [str(c) for c in self.certificate],
            "witness": self.witness,
        }


def _sample_x(rng: random.Random, n: int) -> list[Fraction]:
    return [Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(n)]


SYMBOLIC_PAIR_LIMIT = 4


def cleared_minors(model: AdjointModel) -> tuple["_Cleared", list]:
    """Leading principal minors of ``D * Q`` as polynomials in ``t_i = sqrt(x_i)``.

    Fraction-free elimination; each pivot divides the next step exactly.
    The k-th minor is ``D^k`` times the k-th minor of ``Q``.
    """
    C = _Cleared(model)
    P = model.pairs
    a = [[C.q_entry(e, f, "completed") for f in P] for e in P]
    prev, out = C.R.one, []
    for k in range(len(P)):
        piv = a[k][k]
        out.append(piv)
        if not piv:
            break
        for i in range(k + 1, len(P)):
            for j in range(k + 1, len(P)):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exquo(prev)
        prev = piv
    return C, out


def symbolic_minors(model: AdjointModel) -> list:
    """The cleared leading minors, written back in the ``x`` variables."""
    C, ms = cleared_minors(model)
    return [C.to_expr(m) for m in ms]


def _positive_certificate(poly) -> bool:
    # t_i > 0, so a nonzero polynomial with positive coefficients is positive
    return bool(poly) and all(c > 0 for c in poly.coeffs())


def check_posdef(model: AdjointModel, samples: int = 1000, seed: int = 0,
                 raise_on_failure: bool = True) -> PosdefReport:
    """Sampled (and, for at most four pairs, symbolic) positivity of the completed form.

    Also counts failures of the symmetrised displayed matrix, for the record.
    """
    if samples < 1:
        raise IndexOutOfRange("samples must be >= 1")
    rng = random.Random(seed)
    n = len(model.relevant_simples)
    fails, lit_fails, witness = 0, 0, None
    for _ in range(samples):
        x = _sample_x(rng, n)
        verdict, _, _ = classify_symmetric(q_tilde(model, x))
        if verdict != "positive_definite":
            fails += 1
            if witness is None:
                witness = {f"x{i}": str(v) for i, v in zip(model.relevant_simples, x)}
        lv, _, _ = classify_symmetric(_literal_symmetrised(model, x))
        lit_fails += lv != "positive_definite"
    cert, tier = [], "sampling"
    if not model.pairs:
        tier = "vacuous"
    elif len(model.pairs) <= SYMBOLIC_PAIR_LIMIT:
        C, polys = cleared_minors(model)
        if len(polys) == len(model.pairs) and all(_positive_certificate(m) for m in polys):
            cert, tier = [C.to_expr(m) for m in polys], "symbolic"
    rep = PosdefReport(model.name, samples, seed, fails, lit_fails, tier, cert, witness)
    if fails and raise_on_failure:
        raise PosdefFailed(f"Q is not positive definite on {model.name}", witness)
    return rep


# -- closed forms --------------------------------------------------------------------


def _det(rows, zero):
    """Determinant over a field by elimination with nonzero pivots."""
    m = [list(r) for r in rows]
    n = len(m)
    det = zero + 1
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def bn_cn_determinant(n: int, series: str) -> tuple[bool, object]:
    """Compare ``det Q`` with ``n x_1...x_{n-1} / (d_1...d_{n-1})`` (B long, C short)."""
    series = series.upper()
    if n < 3:
        raise IndexOutOfRange("the closed form is asserted for n >= 3 only")
    if series == "B":
        model = build_adjoint_model(build_root_system("B", n), ADJOINT)
    elif series == "C":
        model = build_adjoint_model(build_root_system("C", n), COADJOINT)
    else:
        raise InvalidType("series must be B or C")
    assert model.relevant_simples == list(range(1, n))
    C = _Cleared(model)
    # rows of D*Q; det(D*Q) = D^k det Q
    k = len(model.pairs)
    scaled = [[C.q_entry(e, f, "completed") for f in model.pairs] for e in model.pairs]
    K = C.R.to_field()
    det = _det([[K(x) for x in row] for row in scaled], K.zero)
    closed = K(n * C._prod(C.xs.values()) * C.D ** (k - 1))
    if det != closed:
        raise FormulaMismatch(f"det Q differs from the closed form for {series}{n}")
    value = sympy.factor(det.as_expr() / C.D.as_expr() ** k)
    return True, value.subs(C.back)


# -- coadjoint sigma facts -----------------------------------------------------------


def coadjoint_sigma_checks(model: AdjointModel, at=None) -> dict:
    """The class of ``top - alpha_1 - alpha_2`` meets every class of codimension at most dim/2."""
    from .localize import check_cost, integrate

    rs, sp = model.rs, model.space
    if rs.series not in "BCD" or model.node != 2:
        raise InvalidType(f"{model.name} is not an isotropic-line Grassmannian")
    check_cost(sp)
    target = tuple(t - int(k < 2) for k, t in enumerate(model.top_root))
    sigma = model.root_to_class[target]
    neg1 = model.root_to_class[tuple(-int(k == 0) for k in range(rs.rank))]
    sc = sp.codim(sigma)

    def product_nonzero(w):
        rest = sp.dim - sc - sp.codim(w)
        if rest < 0:
            return False
        return any(integrate(sp, [sigma, w, t], at) != 0 for t in sp.strata[rest])

    nonzero = {w: product_nonzero(w) for w in range(len(sp))}
    low = [w for w in range(len(sp)) if 2 * sp.codim(w) <= sp.dim]
    annihilators = [w for w in range(len(sp)) if not nonzero[w]]
    min_deg = min(sp.codim(w) for w in annihilators)
    minimal = [w for w in annihilators if sp.codim(w) == min_deg]
    report = {
        "space": sp.name,
        "sigma": sp.word(sigma),
        "sigma_codim": sc,
        "meets_low_classes": all(nonzero[w] for w in low),
        "minimal_annihilators": [sp.word(w) for w in minimal],
        "minimal_is_minus_alpha1": minimal == [neg1],
        "annihilator_codim": min_deg,
        "twice_codim_exceeds_dim": 2 * min_deg > sp.dim,
    }
    report["pass"] = (report["meets_low_classes"] and report["minimal_is_minus_alpha1"]
                      and report["twice_codim_exceeds_dim"])
    return report


# -- the matrix M --------------------------------------------------------------------


def m_matrix(model: AdjointModel, Y: CohClass, y=None, z=None, lam=None) -> dict:
    """Two-row matrix with columns ``-alpha_i`` (left) then ``alpha_i`` (right).

    Left block ``(x_u ; y_u)``; right block ``(sum_u c_{v,h}^u y_u ; z_v)``
    where ``z_v = [D]^2 sigma(v)`` is free unless ``D = lam * h`` on ``Y``.
    """
    data = middle_data(model, Y)
    rel = model.relevant_simples
    xs = {i: sympy.Integer(data.x[i]) for i in rel}
    if lam is not None:
        lam = sympy.nsimplify(lam)
        ys = {i: lam * xs[i] for i in rel}
        zs = {i: lam ** 2 * data.d[i] for i in rel}
    else:
        ys = y if y is not None else symbols(model, "y")
        zs = z if z is not None else {i: sympy.Symbol(f"z{i}") for i in rel}
    top = [xs[i] for i in rel] + [sum(model.table(v, u) * ys[u] for u in rel) for v in rel]
    bottom = [ys[i] for i in rel] + [zs[v] for v in rel]
    M = sympy.Matrix([top, bottom])
    minors = [sympy.expand(M[0, a] * M[1, b] - M[0, b] * M[1, a])
              for a, b in combinations(range(M.cols), 2)]
    left = [sympy.expand(M[0, a] * M[1, b] - M[0, b] * M[1, a])
            for a, b in combinations(range(len(rel)), 2)]
    return {
        "columns": [f"-a{i}" for i in rel] + [f"a{i}" for i in rel],
        "matrix": M,
        "minors": minors,
        "left_minors": left,
        "rank_one": all(m == 0 for m in minors),
        "left_rank_one": all(m == 0 for m in left),
    }


def default_Y(model: AdjointModel) -> CohClass:
    """Linear section class ``h^c`` with ``2 dim Y = dim X + 3``."""
    sp = model.space
    c = (sp.dim - 3) // 2
    return h_mult_power(sp, CohClass(sp, 0, {sp.fundamental: 1}), c)
