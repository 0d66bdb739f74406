from fractions import Fraction

import pytest

from jordan_spectra import exactla as la
from jordan_spectra.scalars import PHI, Sqrt5


def F(x):
    return Fraction(x)


def test_rref_and_rank():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    assert la.matrix_rank(m) == 2
    rows, pivots = la.rref(m)
    assert pivots == [0, 1]
    assert rows[0] == [F(1), F(0), F(1)]
    assert rows[1] == [F(0), F(1), F(1)]


def test_solve_unique_exact():
    a = [[F(2), F(1)], [F(1), F(3)]]
    x = la.solve_unique(a, [F(5), F(10)])
    assert x == [F(1), F(3)]
    with pytest.raises(ValueError):
        la.solve_unique([[F(1), F(2)], [F(2), F(4)]], [F(1), F(2)])


def test_solve_over_quadratic_field():
    a = [[PHI, Fraction(1)], [Fraction(1), PHI]]
    b = [PHI * PHI + 1, 2 * PHI]
    x = la.solve_unique(a, b)
    assert x == [PHI, Fraction(1)]


def test_invert_and_determinant():
    a = [[F(1), F(2)], [F(3), F(5)]]
    inv = la.invert(a)
    assert la.mat_mul(a, inv) == la.identity(2)
    assert la.determinant(a) == F(-1)
    assert la.determinant([[F(1), F(2)], [F(2), F(4)]]) == 0


def test_nullspace():
    a = [[F(1), F(1), F(0)], [F(0), F(0), F(1)]]
    basis = la.nullspace(a)
    assert len(basis) == 1
    v = basis[0]
    assert la.mat_vec(a, v) == [0, 0]
    assert v[0] == -v[1] and v[2] == 0


def test_affine_helpers():
    pts = [[F(0), F(0)], [F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert la.affine_rank(pts) == 2
    assert la.affinely_independent(pts[:3])
    assert not la.affinely_independent(pts)
    assert la.affine_basis_indices(pts) == [0, 1, 2]


def test_affine_map_from_correspondence():
    src = [[F(0), F(0)], [F(1), F(0)], [F(0), F(1)]]
    dst = [[F(1), F(1)], [F(1), F(2)], [F(0), F(1)]]
    m, t = la.affine_map_from_correspondence(src, dst)
    for s, d in zip(src, dst):
        got = [sum(mi * si for mi, si in zip(row, s)) + ti for row, ti in zip(m, t)]
        assert got == d


def test_barycentric_coordinates():
    verts = [[F(0), F(0)], [F(2), F(0)], [F(0), F(2)]]
    lam = la.barycentric_coordinates(verts, [F(1), F(1)])
    assert lam == [F(0), Fraction(1, 2), Fraction(1, 2)]
    assert la.barycentric_coordinates(verts[:2], [F(1), F(1)]) is None
    # golden-ratio point in a Q(sqrt5) segment
    seg = [[Sqrt5(0, 0)], [PHI]]
    lam = la.barycentric_coordinates(seg, [PHI / 2])
    assert lam == [Fraction(1, 2), Fraction(1, 2)]
