"""Automorphism groups, transitivity tests, and Jordan frame transporters.

Polytope automorphisms are affine self-maps (not metric ones): a vertex
permutation is accepted iff the unique affine map sending an affine basis
of vertices to its assigned images moves every vertex onto its image,
checked exactly.  EJA transporters follow the classical constructions
(conjugation by U_B U_A^dagger for the matrix families, cf.
Faraut-Koranyi IV.2.7; a Householder reflection of the ball part for spin
factors).  The octonionic algebra is not supported: its automorphisms
live in F4 and constructing them outweighs what the checks need.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    EjaElement,
    _embed_quat_matrix,
    _unembed_quat_matrix,
    from_matrix,
    inner,
    jordan_product,
    norm,
    to_matrix,
    trace,
    unit,
)
from .exactla import affine_basis_indices, affine_map_from_correspondence, mat_vec
from .geometry import (
    CapExceeded,
    Polytope,
    chart,
    chart_vertices,
    exposed_faces,
    maximal_flags,
)
from .operational import FrameData, enumerate_frames, rank
from .spectral import is_primitive_idempotent, spectral_decompose

AUTOMORPHISM_VERTEX_CAP = 12


class SymmetryError(ValueError):
    pass


class UnsupportedFamily(SymmetryError):
    pass


# ---------------------------------------------------------------------------
# polytope automorphisms


@dataclass(frozen=True)
class PolytopeAutomorphism:
    """A vertex permutation with its induced exact affine map.

    The matrix and translation act on the body's affine chart
    coordinates (for full-dimensional bodies that is an ambient map up
    to the chart change of basis); apply() takes and returns ambient
    points of the affine hull.
    """

    permutation: tuple
    matrix: tuple
    translation: tuple
    chart: object

    def apply(self, point):
        local = self.chart.to_chart(point)
        if local is None:
            raise SymmetryError("point is off the body's affine hull")
        if not local:
            return self.chart.to_ambient(local)
        moved = mat_vec(self.matrix, local)
        moved = tuple(a + b for a, b in zip(moved, self.translation))
        return self.chart.to_ambient(moved)

    def compose(self, other: "PolytopeAutomorphism") -> tuple:
        # permutation of self applied after other
        return tuple(self.permutation[j] for j in other.permutation)


@lru_cache(maxsize=None)
def automorphism_group(poly: Polytope, cap: int = AUTOMORPHISM_VERTEX_CAP):
    """All affine self-maps permuting the vertex set, closure-verified.

    Works in exact chart coordinates so degenerate embeddings (simplices
    as unit vectors) pose no problem: candidate images of an affine
    vertex basis determine the map, which is kept iff it permutes the
    chart vertices exactly.
    """
    verts = poly.vertices
    n = len(verts)
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds the automorphism cap {cap}")
    ch = chart(poly)
    cverts = chart_vertices(poly)
    if poly.dim == 0:
        ident = PolytopeAutomorphism(
            permutation=(0,), matrix=(), translation=(), chart=ch
        )
        return (ident,)
    basis_ids = affine_basis_indices(list(cverts))
    src = [cverts[i] for i in basis_ids]
    index = {v: i for i, v in enumerate(cverts)}
    found = {}
    for images in itertools.permutations(range(n), len(basis_ids)):
        dst = [cverts[i] for i in images]
        try:
            matrix, translation = affine_map_from_correspondence(src, dst)
        except ValueError:
            continue
        matrix = _as_tuple(matrix)
        translation = tuple(translation)
        perm = []
        ok = True
        for v in cverts:
            moved = mat_vec(matrix, v)
            image = tuple(a + b for a, b in zip(moved, translation))
            j = index.get(image)
            if j is None:
                ok = False
                break
            perm.append(j)
        if not ok or len(set(perm)) != n:
            continue
        perm = tuple(perm)
        if perm not in found:
            found[perm] = PolytopeAutomorphism(
                permutation=perm, matrix=matrix, translation=translation, chart=ch
            )
    group = tuple(found[p] for p in sorted(found))
    perms = set(found)
    for g in group:
        if tuple(_invert(g.permutation)) not in perms:
            raise SymmetryError("inverse closure failed")
        for h in group:
            if g.compose(h) not in perms:
                raise SymmetryError("composition closure failed")
    return group


def _as_tuple(matrix):
    return tuple(tuple(row) for row in matrix)


def _invert(perm):
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return out


def _orbits(items, group):
    """Orbit partition of index tuples under permutation action, sorted."""
    items = sorted(items)
    seen = {}
    orbits = []
    for it in items:
        if it in seen:
            continue
        orbit = {it}
        stack = [it]
        while stack:
            cur = stack.pop()
            for g in group:
                moved = tuple(g.permutation[i] for i in cur)
                if moved not in orbit:
                    orbit.add(moved)
                    stack.append(moved)
        for member in orbit:
            seen[member] = True
        orbits.append(tuple(sorted(orbit)))
    return orbits


@dataclass(frozen=True)
class StrongSymmetryReport:
    strongly_symmetric: bool
    group_order: int
    orbit_sizes_by_k: tuple  # ((k, (sizes...)), ...)
    witness_pair: tuple | None = None  # (k, frame_a, frame_b) in distinct orbits

    def to_dict(self) -> dict:
        out = {
            "strongly_symmetric": self.strongly_symmetric,
            "group_order": self.group_order,
            "orbit_sizes_by_k": {str(k): list(s) for k, s in self.orbit_sizes_by_k},
        }
        if self.witness_pair is not None:
            k, fa, fb = self.witness_pair
            out["witness_pair"] = {"k": k, "frames": [list(fa), list(fb)]}
        return out


def is_strongly_symmetric(
    poly: Polytope, cap: int = AUTOMORPHISM_VERTEX_CAP
) -> StrongSymmetryReport:
    """Does the automorphism group act transitively on ordered k-frames?"""
    group = automorphism_group(poly, cap)
    r = rank(poly)
    sizes = []
    transitive = True
    witness = None
    for k in range(1, r + 1):
        frames = [f.indices for f in enumerate_frames(poly, k)]
        orbits = _orbits(frames, group)
        sizes.append((k, tuple(len(o) for o in orbits)))
        if len(orbits) != 1:
            transitive = False
            if witness is None:
                witness = (k, orbits[0][0], orbits[1][0])
    return StrongSymmetryReport(
        strongly_symmetric=transitive,
        group_order=len(group),
        orbit_sizes_by_k=tuple(sizes),
        witness_pair=witness,
    )


def is_regular(poly: Polytope, cap: int = AUTOMORPHISM_VERTEX_CAP) -> bool:
    """Transitivity of the automorphism group on maximal flags."""
    group = automorphism_group(poly, cap)
    chains = [
        tuple(f.indices for f in flag) for flag in maximal_flags(poly)
    ]
    lat = exposed_faces(poly)
    known = {f.indices for f in lat.faces}
    orbits = []
    seen = set()
    for chain in sorted(chains):
        if chain in seen:
            continue
        orbit = {chain}
        stack = [chain]
        while stack:
            cur = stack.pop()
            for g in group:
                moved = tuple(
                    tuple(sorted(g.permutation[i] for i in face)) for face in cur
                )
                for face in moved:
                    if face not in known:
                        raise SymmetryError("automorphism image is not a face")
                if moved not in orbit:
                    orbit.add(moved)
                    stack.append(moved)
        seen |= orbit
        orbits.append(orbit)
    return len(orbits) == 1


@dataclass(frozen=True)
class FrameFlagReport:
    frames: int
    flags: int
    bijective: bool


def frame_flag_bijection(fixture) -> FrameFlagReport:
    """Check that prefixes of maximal frames biject onto maximal flags.

    Accepts a simplex polytope, or a Jordan frame (sequence of primitive
    idempotents) whose sub-frame lattice is used combinatorially.
    """
    if isinstance(fixture, Polytope):
        if len(fixture.vertices) != fixture.dim + 1:
            raise SymmetryError("frame/flag bijection needs a simplex")
        r = rank(fixture)
        frames = [f.indices for f in enumerate_frames(fixture, r)]
        chains = {
            tuple(tuple(sorted(fr[: i + 1])) for i in range(r)) for fr in frames
        }
        flags = {
            tuple(f.indices for f in flag) for flag in maximal_flags(fixture)
        }
        return FrameFlagReport(
            frames=len(frames), flags=len(flags), bijective=chains == flags
        )
    frame = tuple(fixture)
    if not frame or not all(isinstance(c, EjaElement) for c in frame):
        raise SymmetryError("expected a polytope or a Jordan frame")
    for c in frame:
        if not is_primitive_idempotent(c, tol=1e-7):
            raise SymmetryError("not a Jordan frame")
    for a, b in itertools.combinations(frame, 2):
        if abs(inner(a, b)) > 1e-7:
            raise SymmetryError("not a Jordan frame")
    r = len(frame)
    # maximal frames of the sub-frame lattice are orderings of the frame
    orderings = list(itertools.permutations(range(r)))
    chains = {tuple(tuple(sorted(o[: i + 1])) for i in range(r)) for o in orderings}
    # maximal flags enumerated independently by walking the covering
    # relation of the subset lattice upward from the atoms
    flags = set()
    stack = [((i,),) for i in range(r)]
    while stack:
        chain = stack.pop()
        top = chain[-1]
        if len(top) == r:
            flags.add(chain)
            continue
        for i in range(r):
            if i not in top:
                stack.append(chain + (tuple(sorted(top + (i,))),))
    # each subset face carries the idempotent of its members
    for subset in {s for chain in flags for s in chain}:
        total = frame[subset[0]]
        for i in subset[1:]:
            total = total + frame[i]
        if abs(trace(total) - len(subset)) > 1e-7:
            raise SymmetryError("sub-frame face has the wrong rank")
    return FrameFlagReport(
        frames=len(orderings), flags=len(flags), bijective=chains == flags
    )


# ---------------------------------------------------------------------------
# EJA transporters


@dataclass(frozen=True)
class EjaAutomorphism:
    """Jordan automorphism acting by structured conjugation or rotation."""

    algebra: AlgebraDescriptor
    kind: str  # "conjugation" | "rotation"
    data: tuple

    def apply(self, x: EjaElement) -> EjaElement:
        if x.algebra != self.algebra:
            raise SymmetryError("element from a different algebra")
        if self.kind == "rotation":
            h = np.array(self.data)
            n = self.algebra.param
            out = np.empty(n + 1)
            out[:n] = h @ x.coeffs[:n]
            out[n] = x.coeffs[n]
            return EjaElement(self.algebra, out)
        u = np.array(self.data)
        fam = self.algebra.family
        if fam == "herm_h":
            mat = _embed_quat_matrix(to_matrix(x))
            moved = u @ mat @ u.conj().T
            return from_matrix(self.algebra, _unembed_quat_matrix(moved))
        mat = to_matrix(x)
        moved = u @ mat @ u.conj().T
        return from_matrix(self.algebra, moved)

    def linear_matrix(self) -> np.ndarray:
        """The action as a dim x dim real matrix on coefficients."""
        alg = self.algebra
        cols = []
        for i in range(alg.dim):
            basis_vec = np.zeros(alg.dim)
            basis_vec[i] = 1.0
            cols.append(self.apply(EjaElement(alg, basis_vec)).coeffs)
        return np.array(cols).T


def _fix_phase(v: np.ndarray) -> np.ndarray:
    for comp in v:
        if abs(comp) > 1e-8:
            phase = comp / abs(comp)
            return v / phase
    raise SymmetryError("zero eigenvector")


def _distinguished_columns(alg: AlgebraDescriptor, idem: EjaElement) -> np.ndarray:
    """Orthonormal column(s) spanning the idempotent's range, phase-fixed."""
    fam = alg.family
    if fam == "herm_h":
        p = _embed_quat_matrix(to_matrix(idem))
        w, vecs = np.linalg.eigh(p)
        v = _fix_phase(vecs[:, -1])
        m = alg.param
        j2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
        j = np.kron(np.eye(m), j2)
        twin = j @ np.conj(v)
        return np.stack([v, twin], axis=1)
    p = to_matrix(idem)
    w, vecs = np.linalg.eigh(p)
    v = _fix_phase(vecs[:, -1])
    return v[:, None]


def _check_jordan_frame(alg: AlgebraDescriptor, frame, tol: float = 1e-8):
    frame = tuple(frame)
    if len(frame) != alg.rank:
        raise SymmetryError("frame length differs from the rank")
    for c in frame:
        if c.algebra != alg:
            raise SymmetryError("frame element from a different algebra")
        if not is_primitive_idempotent(c, tol=tol):
            raise SymmetryError("frame element is not a primitive idempotent")
    for a, b in itertools.combinations(frame, 2):
        if abs(inner(a, b)) > tol:
            raise SymmetryError("frame elements are not orthogonal")
    total = frame[0]
    for c in frame[1:]:
        total = total + c
    if norm(total - unit(alg)) > tol:
        raise SymmetryError("frame does not sum to the unit")
    return frame


def jordan_frame_transporter(
    alg: AlgebraDescriptor, frame_a, frame_b, tol: float = 1e-8
) -> EjaAutomorphism:
    """An automorphism taking the ordered frame A onto the ordered frame B.

    Matrix families conjugate by U = U_B U_A^dagger built from the
    distinguished eigenvectors (quaternionic twins for herm_h); spin uses
    the Householder reflection of the ball part.  Verifies the residuals,
    unit preservation, trace-form orthogonality and cone preservation.
    """
    if alg.family == "herm_o":
        raise UnsupportedFamily(
            "octonionic transporters (F4 elements) are not constructed"
        )
    frame_a = _check_jordan_frame(alg, frame_a)
    frame_b = _check_jordan_frame(alg, frame_b)
    if alg.family == "spin":
        n = alg.param
        x = frame_a[0].coeffs[:n] * 2.0
        y = frame_b[0].coeffs[:n] * 2.0
        if np.linalg.norm(x - y) <= 1e-12:
            h = np.eye(n)
        else:
            d = x - y
            d = d / np.linalg.norm(d)
            h = np.eye(n) - 2.0 * np.outer(d, d)
        auto = EjaAutomorphism(algebra=alg, kind="rotation", data=_np_tuple(h))
    else:
        ua = np.concatenate(
            [_distinguished_columns(alg, c) for c in frame_a], axis=1
        )
        ub = np.concatenate(
            [_distinguished_columns(alg, c) for c in frame_b], axis=1
        )
        u = ub @ ua.conj().T
        auto = EjaAutomorphism(algebra=alg, kind="conjugation", data=_np_tuple(u))
    _verify_transporter(auto, frame_a, frame_b, tol)
    return auto


def _np_tuple(arr) -> tuple:
    return tuple(tuple(row) for row in np.asarray(arr))


def _verify_transporter(auto, frame_a, frame_b, tol):
    alg = auto.algebra
    for a, b in zip(frame_a, frame_b):
        if norm(auto.apply(a) - b) > tol:
            raise SymmetryError("transporter misses a frame element")
    e = unit(alg)
    if norm(auto.apply(e) - e) > 1e-9:
        raise SymmetryError("transporter moves the unit")
    rng = np.random.default_rng(0x5EED)
    for _ in range(3):
        x = EjaElement(alg, rng.standard_normal(alg.dim))
        y = EjaElement(alg, rng.standard_normal(alg.dim))
        if abs(inner(auto.apply(x), auto.apply(y)) - inner(x, y)) > 1e-7 * (
            1.0 + norm(x) * norm(y)
        ):
            raise SymmetryError("transporter is not orthogonal for the trace form")
        sq = jordan_product(x, x)
        eigs = spectral_decompose(auto.apply(sq)).eigenvalues
        if eigs[-1] < -1e-7 * (1.0 + norm(sq)):
            raise SymmetryError("transporter leaves the cone")


def extend_to_maximal_frame(alg: AlgebraDescriptor, partial, tol: float = 1e-8):
    """Complete orthogonal primitive idempotents to a full Jordan frame."""
    partial = tuple(partial)
    total = None
    for c in partial:
        if not is_primitive_idempotent(c, tol=tol):
            raise SymmetryError("partial frame element is not primitive")
        total = c if total is None else total + c
    rest = unit(alg) - total if total is not None else unit(alg)
    if norm(rest) <= tol:
        return partial
    dec = spectral_decompose(rest)
    extension = [
        idem for lam, idem in zip(dec.eigenvalues, dec.frame) if lam > 0.5
    ]
    frame = partial + tuple(extension)
    return _check_jordan_frame(alg, frame, tol=max(tol, 1e-7))


def verify_strong_symmetry_eja(
    alg: AlgebraDescriptor, trials: int = 100, seed: int = 0
) -> dict:
    """Randomized constructive transitivity check on ordered Jordan frames.

    Builds a transporter between fresh random frame pairs each trial
    (every third trial transports an extension of a proper sub-frame) and
    aggregates the worst residual.  Transitivity of a continuous group is
    not certified computationally; this constructive sampling stands in
    for it, which is exactly what the report states.
    """
    if alg.family == "herm_o":
        raise UnsupportedFamily(
            "octonionic transporters (F4 elements) are not constructed"
        )
    from .spectral import random_jordan_frame

    rng = np.random.default_rng(seed)
    failures = []
    worst = 0.0
    r = alg.rank
    for t in range(trials):
        fa = tuple(random_jordan_frame(alg, rng))
        fb = tuple(random_jordan_frame(alg, rng))
        label = "full"
        if t % 3 == 2 and r >= 2:
            k = 1 + int(rng.integers(r - 1))
            fa = extend_to_maximal_frame(alg, fa[:k])
            fb = extend_to_maximal_frame(alg, fb[:k])
            label = f"extended-from-{k}"
        try:
            auto = jordan_frame_transporter(alg, fa, fb)
            resid = max(norm(auto.apply(a) - b) for a, b in zip(fa, fb))
            worst = max(worst, resid)
        except SymmetryError as exc:
            failures.append({"trial": t, "kind": label, "error": str(exc)})
    return {
        "family": alg.family,
        "param": alg.param,
        "trials": trials,
        "max_residual": worst,
        "failures": failures,
        "method": "randomized constructive transporters "
        "(continuous-group transitivity is sampled, not certified)",
    }
