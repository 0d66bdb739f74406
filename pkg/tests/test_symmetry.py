"""Symmetry oracles, all derived by hand before running the code.

Group orders (affine maps permuting the vertex set):
  * simplex(n): every vertex permutation extends affinely, (n+1)!.
  * square and rectangle: affinely equivalent, dihedral order 8 (the
    rectangle picks up the axis swap composed with a rescale).
  * pentagon: dihedral order 10; hexagon: dihedral order 12 (affine maps
    preserve the boundary cycle, so only dihedral permutations survive).
  * cube, octahedron: 48; a single point: 1.

Ordered 2-frame orbits under those groups:
  * square: adjacent pairs (8) and diagonal pairs (4), so not strongly
    symmetric; pentagon: all 10 non-adjacent ordered pairs form one
    orbit; hexagon: distance-2 pairs (12) and opposite pairs (6).
  * cube: 2-frames are all 56 ordered pairs, split by Hamming distance
    into orbits 24/24/8; octahedron: 30 ordered pairs split 24/6.

A trapezoid has automorphism group of order 2 but 8 maximal flags, so it
cannot be flag-transitive.  Transporter residuals are float-level for
the matrix families; the spin transporter fixes the unit exactly since
it rotates only the vector part.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from jordan_spectra.algebra import (
    AlgebraDescriptor,
    inner,
    norm,
    unit,
)
from jordan_spectra.geometry import (
    CapExceeded,
    barycenter,
    cube,
    hexagon,
    octahedron,
    pentagon,
    polytope,
    rectangle,
    simplex,
    square,
)
from jordan_spectra.operational import enumerate_frames
from jordan_spectra.scalars import Sqrt5
from jordan_spectra.spectral import (
    random_element,
    random_jordan_frame,
    spectral_decompose,
)
from jordan_spectra.symmetry import (
    SymmetryError,
    UnsupportedFamily,
    automorphism_group,
    extend_to_maximal_frame,
    frame_flag_bijection,
    is_regular,
    is_strongly_symmetric,
    jordan_frame_transporter,
    verify_strong_symmetry_eja,
)

F = Fraction


def standard_frame(alg):
    from jordan_spectra.classification import standard_frame as sf

    return sf(alg)


# -- automorphism groups ---------------------------------------------------------


@pytest.mark.parametrize(
    "body,order",
    [
        (simplex(1), 2),
        (simplex(2), 6),
        (simplex(3), 24),
        (square(), 8),
        (rectangle(), 8),
        (pentagon(), 10),
        (hexagon(), 12),
        (cube(), 48),
        (octahedron(), 48),
        (polytope([(0, 0)]), 1),
    ],
)
def test_group_orders(body, order):
    assert len(automorphism_group(body)) == order


def test_group_contains_identity_and_inverses():
    group = automorphism_group(pentagon())
    perms = {g.permutation for g in group}
    assert tuple(range(5)) in perms
    for g in group:
        inv = tuple(sorted(range(5), key=lambda i: g.permutation[i]))
        assert inv in perms
        for h in group:
            assert g.compose(h) in perms


def test_vertex_action_is_exact():
    body = pentagon()
    for g in automorphism_group(body):
        for i, v in enumerate(body.vertices):
            image = g.apply(v)
            assert image == body.vertices[g.permutation[i]]


def test_barycenter_is_fixed_exactly():
    for body in (simplex(3), square(), pentagon(), cube()):
        center = barycenter(body)
        for g in automorphism_group(body):
            assert g.apply(center) == tuple(center)


def test_group_average_of_vertex_orbit_is_barycenter():
    # vertex-transitive bodies: averaging one orbit sweeps all vertices evenly
    for body in (simplex(2), square(), hexagon(), octahedron()):
        group = automorphism_group(body)
        d = len(body.vertices[0])
        total = [F(0)] * d
        for g in group:
            image = g.apply(body.vertices[0])
            total = [a + c for a, c in zip(total, image)]
        avg = tuple(t / F(len(group)) for t in total)
        assert avg == tuple(barycenter(body))


def test_orbit_stabilizer_products():
    for body in (square(), pentagon(), cube()):
        group = automorphism_group(body)
        n = len(body.vertices)
        for i in range(n):
            orbit = {g.permutation[i] for g in group}
            stab = [g for g in group if g.permutation[i] == i]
            assert len(orbit) * len(stab) == len(group)


def test_automorphism_cap():
    points = [(F(k), F(k * k)) for k in range(13)]  # strictly convex, 13 vertices
    with pytest.raises(CapExceeded):
        automorphism_group(polytope(points))


def test_off_hull_point_rejected():
    g = automorphism_group(simplex(2))[0]
    with pytest.raises(SymmetryError):
        g.apply((F(1), F(1), F(1)))


# -- strong symmetry -------------------------------------------------------------


def test_simplex_strongly_symmetric():
    for n in (1, 2, 3):
        report = is_strongly_symmetric(simplex(n))
        assert report.strongly_symmetric
        assert report.witness_pair is None
        for _, sizes in report.orbit_sizes_by_k:
            assert len(sizes) == 1


def test_square_not_strongly_symmetric():
    report = is_strongly_symmetric(square())
    assert not report.strongly_symmetric
    assert report.group_order == 8
    sizes = dict(report.orbit_sizes_by_k)
    assert sorted(sizes[2]) == [4, 8]
    k, fa, fb = report.witness_pair
    assert k == 2 and fa != fb


def test_pentagon_strongly_symmetric():
    report = is_strongly_symmetric(pentagon())
    assert report.strongly_symmetric
    sizes = dict(report.orbit_sizes_by_k)
    assert sizes[1] == (5,)
    assert sizes[2] == (10,)


def test_hexagon_orbit_split():
    report = is_strongly_symmetric(hexagon())
    assert not report.strongly_symmetric
    sizes = dict(report.orbit_sizes_by_k)
    assert sorted(sizes[2]) == [6, 12]


def test_cube_orbits_by_hamming_distance():
    report = is_strongly_symmetric(cube())
    assert not report.strongly_symmetric
    sizes = dict(report.orbit_sizes_by_k)
    assert sorted(sizes[2]) == [8, 24, 24]


def test_octahedron_orbits():
    report = is_strongly_symmetric(octahedron())
    assert not report.strongly_symmetric
    sizes = dict(report.orbit_sizes_by_k)
    assert sorted(sizes[2]) == [6, 24]


# -- regularity ------------------------------------------------------------------


@pytest.mark.parametrize(
    "body",
    [simplex(2), simplex(3), square(), rectangle(), pentagon(), hexagon(), cube()],
)
def test_regular_bodies(body):
    assert is_regular(body)


def test_trapezoid_not_regular():
    trap = polytope([(F(0), F(0)), (F(3), F(0)), (F(2), F(1)), (F(1), F(1))])
    assert len(automorphism_group(trap)) == 2
    assert not is_regular(trap)


# -- frame/flag bijection ---------------------------------------------------------


def test_frame_flag_bijection_simplices():
    for n, count in ((2, 6), (3, 24)):
        report = frame_flag_bijection(simplex(n))
        assert report.frames == count
        assert report.flags == count
        assert report.bijective


def test_frame_flag_bijection_rejects_non_simplex():
    with pytest.raises(SymmetryError):
        frame_flag_bijection(square())


def test_frame_flag_bijection_eja():
    alg = AlgebraDescriptor("sym_r", 3)
    report = frame_flag_bijection(standard_frame(alg))
    assert report.frames == 6 and report.flags == 6 and report.bijective
    with pytest.raises(SymmetryError):
        frame_flag_bijection((unit(alg),))


# -- transporters ----------------------------------------------------------------


def test_transporter_swaps_diagonal_frame():
    alg = AlgebraDescriptor("herm_c", 2)
    c1, c2 = standard_frame(alg)
    auto = jordan_frame_transporter(alg, (c1, c2), (c2, c1))
    assert norm(auto.apply(c1) - c2) <= 1e-12
    assert norm(auto.apply(c2) - c1) <= 1e-12


@pytest.mark.parametrize("family,param", [("sym_r", 3), ("herm_c", 3), ("herm_h", 3)])
def test_transporter_random_frames(family, param):
    alg = AlgebraDescriptor(family, param)
    fa = tuple(random_jordan_frame(alg, 11))
    fb = tuple(random_jordan_frame(alg, 22))
    auto = jordan_frame_transporter(alg, fa, fb)
    worst = max(norm(auto.apply(a) - b) for a, b in zip(fa, fb))
    assert worst <= 1e-8
    assert norm(auto.apply(unit(alg)) - unit(alg)) <= 1e-9


def test_spin_transporter_fixes_unit_exactly():
    alg = AlgebraDescriptor("spin", 5)
    fa = tuple(random_jordan_frame(alg, 5))
    fb = tuple(random_jordan_frame(alg, 6))
    auto = jordan_frame_transporter(alg, fa, fb)
    assert norm(auto.apply(unit(alg)) - unit(alg)) == 0.0
    assert max(norm(auto.apply(a) - b) for a, b in zip(fa, fb)) <= 1e-9


def test_transporter_preserves_spectra():
    alg = AlgebraDescriptor("sym_r", 3)
    auto = jordan_frame_transporter(
        alg, tuple(random_jordan_frame(alg, 1)), tuple(random_jordan_frame(alg, 2))
    )
    x = random_element(alg, 77)
    before = spectral_decompose(x).eigenvalues
    after = spectral_decompose(auto.apply(x)).eigenvalues
    assert np.max(np.abs(before - after)) <= 1e-8


def test_transporter_rejects_octonions_and_non_frames():
    with pytest.raises(UnsupportedFamily):
        alg = AlgebraDescriptor("herm_o", 3)
        jordan_frame_transporter(alg, standard_frame(alg), standard_frame(alg))
    alg = AlgebraDescriptor("sym_r", 2)
    c1, _ = standard_frame(alg)
    with pytest.raises(SymmetryError):
        jordan_frame_transporter(alg, (c1, c1), (c1, c1))


def test_extend_to_maximal_frame():
    alg = AlgebraDescriptor("sym_r", 4)
    partial = standard_frame(alg)[:2]
    frame = extend_to_maximal_frame(alg, partial)
    assert frame[:2] == partial  # untouched, not recomputed
    assert len(frame) == 4
    total = frame[0]
    for c in frame[1:]:
        total = total + c
    assert norm(total - unit(alg)) <= 1e-9


@pytest.mark.parametrize(
    "family,param,trials",
    [("sym_r", 4, 12), ("herm_c", 3, 12), ("herm_h", 3, 9), ("spin", 10, 12)],
)
def test_verify_strong_symmetry_eja(family, param, trials):
    report = verify_strong_symmetry_eja(
        AlgebraDescriptor(family, param), trials=trials, seed=3
    )
    assert report["failures"] == []
    assert report["max_residual"] <= 1e-8
    assert "sampled" in report["method"]


def test_verify_strong_symmetry_eja_rejects_octonions():
    with pytest.raises(UnsupportedFamily):
        verify_strong_symmetry_eja(AlgebraDescriptor("herm_o", 3), trials=1)


def test_spin_two_frames_antipodal():
    alg = AlgebraDescriptor("spin", 6)
    for seed in range(5):
        c1, c2 = random_jordan_frame(alg, seed)
        assert np.linalg.norm(c1.coeffs[:-1] + c2.coeffs[:-1]) <= 1e-9
        assert abs(c1.coeffs[-1] - 0.5) <= 1e-9
        assert abs(inner(c1, c2)) <= 1e-9
