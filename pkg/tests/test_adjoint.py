from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hsx import adjoint as adj
from hsx.cohomology import CohClass
from hsx.errors import (CrossCheckFailed, DegreeMismatch, FormulaMismatch, IdentityFailed,
                        IndexOutOfRange, InvalidType, NonpositiveX, PicardRankNotOne)
from hsx.linalg import classify_symmetric
from hsx.rootsys import build_root_system

MODELS = [("B2", "adjoint"), ("B3", "adjoint"), ("B4", "adjoint"), ("B3", "coadjoint"),
          ("C2", "adjoint"), ("C3", "adjoint"), ("C3", "coadjoint"), ("C4", "coadjoint"),
          ("D4", "adjoint"), ("D5", "adjoint"), ("G2", "adjoint"), ("G2", "coadjoint"),
          ("F4", "adjoint"), ("F4", "coadjoint"), ("E6", "adjoint"), ("E7", "adjoint"),
          ("E8", "adjoint")]
# the involution -w0 of the Dynkin diagram, where it is not the identity
OPPOSITION = {"D5": {4: 5, 5: 4}, "E6": {1: 6, 6: 1, 3: 5, 5: 3}}


def model(t, kind="adjoint"):
    return adj.model_from_type(t, kind)


@pytest.mark.parametrize("t,kind", MODELS)
def test_model_anchors_and_labels(t, kind):
    m = model(t, kind)
    sp = m.space
    assert m.class_to_root[sp.fundamental] == m.top_root
    assert m.class_to_root[sp.point] == tuple(-x for x in m.top_root)
    assert len(sp) == len(m.root_to_class)
    assert sp.dim == 2 * m.middle + 1
    assert m.sigma_report["mismatches"] == []
    # the positive sign reading never matches with this labelling
    assert m.sigma_report["literal_matches"] == 0


@pytest.mark.parametrize("t,node", [("B3", 2), ("C3", 1), ("D5", 2), ("G2", 2), ("F4", 1),
                                    ("E6", 2), ("E7", 1), ("E8", 8)])
def test_adjoint_nodes(t, node):
    assert model(t).node == node


def test_type_a_is_not_picard_rank_one():
    with pytest.raises(PicardRankNotOne):
        model("A3")
    with pytest.raises(InvalidType):
        model("B3", "other")
    with pytest.raises(InvalidType):
        model("3B")


@pytest.mark.parametrize("t,kind", MODELS)
def test_chevalley_table(t, kind):
    m = model(t, kind)
    table = adj.chevalley_table(m)
    cartan = m.rs.cartan
    for (i, j), c in table.items():
        assert c == (2 if i == j else 1 if cartan[i - 1][j - 1] < 0 else 0)


def test_chevalley_coeff_rejects_irrelevant_roots():
    m = model("B3")           # long simple roots only
    with pytest.raises(IndexOutOfRange):
        adj.chevalley_coeff(m, 3, 1)


@pytest.mark.parametrize("t,kind", MODELS)
def test_trans_bis(t, kind):
    m = model(t, kind)
    for row in adj.trans_bis_pairs(m):
        assert row["admissible"] and row["disjoint"] and row["reflection"]
        i = row["simple"]
        assert row["dual"] == (OPPOSITION.get(t, {}).get(i, i) == i)


@pytest.mark.parametrize("t,kind", MODELS)
def test_middle_data(t, kind):
    m = model(t, kind)
    data = adj.middle_data(m, adj.default_Y(m))
    assert data.d_identity and data.a_identity
    assert all(v > 0 for v in data.x.values())


def test_middle_data_dimension_check():
    m = model("F4")
    with pytest.raises(DegreeMismatch):
        adj.middle_data(m, CohClass(m.space, 0, {m.space.fundamental: 1}))


IDENTITY = {
    # (literal, mirrored, completed)
    "G2": (True, True, True), "F4": (True, True, True), "B3": (True, True, True),
    "C3": (True, True, True), "B4": (False, True, True), "C4": (False, True, True),
    "D4": (False, False, True), "D5": (False, False, True), "E6": (False, False, True),
}


@pytest.mark.parametrize("t", sorted(IDENTITY))
def test_q_identity_variants(t):
    kind = "coadjoint" if t[0] == "C" else "adjoint"
    m = model(t, kind)
    got = tuple(r.holds for r in adj.q_identity_report(m))
    assert got == IDENTITY[t]
    assert adj.q_equals_q_prime(m)


def test_verify_q_identity_raises_with_certificate():
    m = model("D4")
    with pytest.raises(IdentityFailed) as info:
        adj.verify_q_identity(m, "literal")
    assert info.value.difference != 0
    assert adj.verify_q_identity(m).holds


def test_q_identity_numerically():
    # q and Q(L) agree at a rational point with exact square roots
    m = model("B4")
    x = {1: 4, 2: 9, 3: 1}
    y = {1: sympy.Rational(1, 2), 2: 3, 3: -2}
    q = adj.q_form(m, x, y)
    Q = adj.Q_matrix(m, x)
    L = adj.L_coords(m, x, y)
    P = m.pairs
    val = sum(Q[a][b] * L[P[a]] * L[P[b]] for a in range(len(P)) for b in range(len(P)))
    assert sympy.simplify(q - val) == 0
    assert sympy.simplify(q - adj.q_prime(m, x, y)) == 0


@pytest.mark.parametrize("t", ["D4", "B4"])
def test_derived_matrix_matches_closed_entries(t):
    m = model(t)
    derived = adj.derive_q_tilde(m)
    xs = adj.symbols(m, "x")
    point = {xs[i]: v for i, v in zip(m.relevant_simples, [1, 2, 3, 5])}
    closed = adj.q_tilde(m, [point[xs[i]] for i in m.relevant_simples])
    for a, row in enumerate(derived):
        for b, entry in enumerate(row):
            assert sympy.nsimplify(entry.subs(point)) == closed[a][b]


def test_paper_diagonal_entry():
    m = model("B3")
    x1, x2 = adj.symbols(m, "x").values()
    (entry,), = adj.Q_matrix(m)
    # d_1 = 2 x1 + x2, d_2 = x1 + 2 x2
    assert sympy.simplify(entry - (1 - x1 / (x1 + 2 * x2) - x2 / (2 * x1 + x2))) == 0


def test_x_validation():
    m = model("B3")
    with pytest.raises(NonpositiveX):
        adj.Q_matrix(m, [1, 0])
    with pytest.raises(NonpositiveX):
        adj.q_tilde(m, [1, -2])
    with pytest.raises(DegreeMismatch):
        adj.Q_matrix(m, [1])
    with pytest.raises(InvalidType):
        adj.Q_matrix(m, [1, 1], variant="other")


@pytest.mark.parametrize("t,kind,tier", [("F4", "adjoint", "symbolic"), ("B3", "adjoint", "symbolic"),
                                         ("B4", "adjoint", "symbolic"), ("C4", "coadjoint", "symbolic"),
                                         ("G2", "adjoint", "vacuous"), ("D4", "adjoint", "symbolic"),
                                         ("E6", "adjoint", "sampling")])
def test_posdef_small_sample(t, kind, tier):
    rep = adj.check_posdef(model(t, kind), samples=60, seed=1)
    assert rep.failures == 0 and rep.tier == tier
    assert rep.to_dict()["samples"] == 60


@given(st.lists(st.fractions(min_value=Fraction(1, 1000), max_value=1000), min_size=7, max_size=7))
def test_e7_form_positive(xs):
    m = model("E7")
    verdict, _, _ = classify_symmetric(adj.q_tilde(m, xs))
    assert verdict == "positive_definite"


def test_posdef_rejects_bad_samples():
    with pytest.raises(IndexOutOfRange):
        adj.check_posdef(model("B3"), samples=0)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("series", ["B", "C"])
def test_bn_cn_determinant(n, series):
    ok, value = adj.bn_cn_determinant(n, series)
    assert ok
    xs = sorted(value.free_symbols, key=str)
    # numerator n * x_1 ... x_{n-1}
    num, _ = sympy.fraction(sympy.factor(value))
    assert sympy.expand(num - n * sympy.prod(xs)) == 0


def test_bn_cn_errors():
    with pytest.raises(IndexOutOfRange):
        adj.bn_cn_determinant(2, "B")
    with pytest.raises(InvalidType):
        adj.bn_cn_determinant(4, "D")


@pytest.mark.parametrize("t", ["B3", "C3", "D4", "B4", "C4", "D5"])
def test_coadjoint_sigma(t):
    kind = "coadjoint" if t[0] == "C" else "adjoint"
    rep = adj.coadjoint_sigma_checks(model(t, kind))
    assert rep["pass"] and rep["sigma_codim"] == 2


def test_coadjoint_sigma_requires_line_grassmannian():
    with pytest.raises(InvalidType):
        adj.coadjoint_sigma_checks(model("F4"))


def test_m_matrix_rank_one_iff_proportional():
    m = model("F4")
    Y = adj.default_Y(m)
    generic = adj.m_matrix(m, Y)
    assert not generic["rank_one"] and not generic["left_rank_one"]
    assert adj.m_matrix(m, Y, lam=3)["rank_one"]
    data = adj.middle_data(m, Y)
    y = {i: 2 * data.x[i] for i in m.relevant_simples}
    assert adj.m_matrix(m, Y, y=y)["left_rank_one"]


def test_build_rejects_inconsistent_root_system():
    rs = build_root_system("G", 2)
    m = adj.build_adjoint_model(rs, "adjoint")
    m.class_to_root[m.space.point] = m.top_root
    with pytest.raises(CrossCheckFailed):
        adj._check_anchors(m)


def test_formula_mismatch_type():
    assert issubclass(FormulaMismatch, Exception)
