"""Fundamental-region sections, symmetric-space tables, and theorem drivers.

The table data (noncompact symmetric spaces with their isotropy
representations, invariant polytopes, and Euclidean Jordan algebra
annotations, following Madden-Robertson; algebra dimensions and ranks
following Faraut-Koranyi) ships as a JSON resource.  Formulas are stored
as strings like ``"(n-1)*(n+2)/2"`` and evaluated by a tiny whitelist
evaluator over exact integers, so the rows stay auditable and diffable.

``fr_polytope`` realizes the section construction: for a state space the
span of a Jordan frame meets the body in the simplex on that frame, and
for a polytope the affine span of the barycenters of a maximal flag meets
the body in the body itself exactly when the body is a simplex.  Both
drivers at the bottom aggregate per-check reports rather than raising, so
a partial failure is visible instead of fatal.

One printed annotation does not pass the dimension arithmetic: the
complex special linear row (type A_n) annotates Herm(n,C) while its
isotropy dimension matches Herm(n+1,C).  The consistency check flags this
as an open question instead of silently correcting the stored row.
"""

from __future__ import annotations

import ast
import json
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    EjaElement,
    inner,
    norm,
    to_matrix,
    unit,
    zero,
)
from .exactla import affine_basis_indices, barycentric_coordinates
from .geometry import (
    Ball,
    EjaStateSpace,
    GeometryError,
    Polytope,
    barycenter,
    cube,
    hexagon,
    octahedron,
    pentagon,
    rectangle,
    simplex,
    square,
)
from .operational import enumerate_frames, is_spectral, recheck_counterexample
from .spectral import random_element, spectral_decompose
from .symmetry import (
    SymmetryError,
    _check_jordan_frame,
    automorphism_group,
    frame_flag_bijection,
    is_regular,
    is_strongly_symmetric,
    verify_strong_symmetry_eja,
)

TABLES_ENV = "JORDAN_SPECTRA_TABLES"

_SAMPLE_PARAMS = {"sym_r": 4, "herm_c": 3, "herm_h": 3, "spin": 5, "herm_o": 3}


class ClassificationError(ValueError):
    pass


# -- table resource --------------------------------------------------------------


def tables_path() -> str:
    """Path of the active table resource (env override wins)."""
    override = os.environ.get(TABLES_ENV)
    if override:
        return override
    return str(resources.files("jordan_spectra") / "tables" / "symmetric_spaces.json")


@lru_cache(maxsize=8)
def _load_tables_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_tables(path: str | None = None) -> dict:
    """Parsed table resource; a fresh dict each call so callers may mutate."""
    return json.loads(_load_tables_file(path or tables_path()))


# -- formula evaluation ----------------------------------------------------------


def eval_formula(expr, params: dict | None = None) -> int:
    """Evaluate an integer arithmetic formula such as ``(n-1)*(n+2)/2``.

    Only +, -, *, //, /, unary minus, integer literals, and names bound in
    params are accepted; true division must come out exact.
    """
    if isinstance(expr, int):
        return expr
    bound = params or {}
    try:
        tree = ast.parse(str(expr), mode="eval")
    except SyntaxError as exc:
        raise ClassificationError("bad formula %r: %s" % (expr, exc)) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in bound:
                raise ClassificationError(
                    "formula %r needs a value for %r" % (expr, node.id)
                )
            return Fraction(int(bound[node.id]))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.FloorDiv):
                return Fraction(left // right)
            if isinstance(node.op, ast.Div):
                return left / right
        raise ClassificationError("disallowed syntax in formula %r" % (expr,))

    value = ev(tree)
    if value.denominator != 1:
        raise ClassificationError("formula %r is not integral" % (expr,))
    return int(value)


_POLY_LABEL = re.compile(r"^([A-Za-z0-9-]+)(?:\((.+)\))?$")


def _parse_polytope_label(label: str, params: dict):
    """Split "simplex(n-1)" into ("simplex", value); bare labels get None."""
    match = _POLY_LABEL.match(label)
    if not match:
        raise ClassificationError("bad polytope label %r" % label)
    name, expr = match.groups()
    return name, (eval_formula(expr, params) if expr is not None else None)


# -- table rows ------------------------------------------------------------------


@dataclass(frozen=True)
class MrTableRow:
    """One symmetric-space row: formulas stay strings until evaluated."""

    table: int
    type: str
    symmetric_space: str
    rank: str
    isotropy_dim: str
    root_space: str
    polytopes: tuple
    eja_printed: str | None
    eja: tuple | None  # (family, parameter formula)
    check_params: tuple  # ((name, value), ...)
    note: str | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "MrTableRow":
        eja = doc.get("eja")
        return cls(
            table=doc["table"],
            type=doc["type"],
            symmetric_space=doc["symmetric_space"],
            rank=str(doc["rank"]),
            isotropy_dim=str(doc["isotropy_dim"]),
            root_space=doc["root_space"],
            polytopes=tuple(doc["polytopes"]),
            eja_printed=doc.get("eja_printed"),
            eja=(eja["family"], str(eja["param"])) if eja else None,
            check_params=tuple(doc.get("check_params", {}).items()),
            note=doc.get("note"),
        )

    def to_dict(self) -> dict:
        out = {
            "table": self.table,
            "type": self.type,
            "symmetric_space": self.symmetric_space,
            "rank": self.rank,
            "isotropy_dim": self.isotropy_dim,
            "root_space": self.root_space,
            "polytopes": list(self.polytopes),
            "eja_printed": self.eja_printed,
            "eja": {"family": self.eja[0], "param": self.eja[1]} if self.eja else None,
            "check_params": dict(self.check_params),
        }
        if self.note is not None:
            out["note"] = self.note
        return out

    def evaluate(self, params: dict | None = None) -> dict:
        """Numeric rank/dimension/polytopes at params (default: check params)."""
        vals = dict(params) if params is not None else dict(self.check_params)
        polys = []
        for label in self.polytopes:
            name, value = _parse_polytope_label(label, vals)
            polys.append(name if value is None else "%s(%d)" % (name, value))
        out = {
            "type": self.type,
            "params": vals,
            "rank": eval_formula(self.rank, vals),
            "isotropy_dim": eval_formula(self.isotropy_dim, vals),
            "root_space": self.root_space,
            "polytopes": polys,
        }
        if self.eja is not None:
            family, param_expr = self.eja
            out["eja"] = {"family": family, "param": eval_formula(param_expr, vals)}
        else:
            out["eja"] = None
        return out


def mr_table_all(path: str | None = None) -> tuple:
    return tuple(MrTableRow.from_dict(doc) for doc in load_tables(path)["rows"])


def mr_table_lookup(type_label: str, path: str | None = None) -> MrTableRow:
    for row in mr_table_all(path):
        if row.type == type_label:
            return row
    known = ", ".join(r.type for r in mr_table_all(path))
    raise ClassificationError(
        "unknown symmetric-space type %r (known: %s)" % (type_label, known)
    )


def table_consistency_check(path: str | None = None) -> dict:
    """Cross-check table formulas against the implemented algebras.

    Every EJA-annotated row must satisfy isotropy dim = dim(V) - 1 and
    symmetric-space rank = rank(V) - 1 at its check parameters, and every
    simplicial row with a simplex of dimension >= 2 must carry an EJA
    annotation.  The one printed annotation that fails the arithmetic
    (type A_n) is reported under "flagged", not as a failure, together
    with the shifted reading that does satisfy it.
    """
    data = load_tables(path)
    failures: list = []
    flagged: list = []
    checked = 0

    for fam in data["families"]:
        checked += 1
        family = fam["package_family"]
        sample = _SAMPLE_PARAMS[family]
        desc = AlgebraDescriptor(family, sample)
        var = eval_formula(fam["table_var_from_param"], {"param": sample})
        binding = {"m": var, "n": var}
        dim_val = eval_formula(fam["dim"], binding)
        rank_val = eval_formula(fam["rank"], binding)
        if dim_val != desc.dim or rank_val != desc.rank:
            failures.append(
                {
                    "entry": fam["algebra"],
                    "problem": "family formulas give dim %d rank %d; package has dim %d rank %d"
                    % (dim_val, rank_val, desc.dim, desc.rank),
                }
            )

    for row in mr_table_all(path):
        checked += 1
        params = dict(row.check_params)
        rank_val = eval_formula(row.rank, params)
        dim_val = eval_formula(row.isotropy_dim, params)
        if row.eja is not None:
            family, param_expr = row.eja
            desc = AlgebraDescriptor(family, eval_formula(param_expr, params))
            if dim_val == desc.dim - 1 and rank_val == desc.rank - 1:
                pass
            elif row.table == 4 and row.type == "A_n":
                shifted = AlgebraDescriptor(family, desc.param + 1)
                entry = {
                    "type": row.type,
                    "table": row.table,
                    "question": (
                        "printed annotation %s has dim %d and rank %d, but the row "
                        "needs isotropy dim %d = dim - 1 and rank %d = rank - 1"
                        % (row.eja_printed, desc.dim, desc.rank, dim_val, rank_val)
                    ),
                }
                if dim_val == shifted.dim - 1 and rank_val == shifted.rank - 1:
                    entry["consistent_with"] = (
                        "Herm(n+1,C): dim %d - 1 = %d, rank %d - 1 = %d"
                        % (shifted.dim, dim_val, shifted.rank, rank_val)
                    )
                    flagged.append(entry)
                else:
                    failures.append(entry)
            else:
                failures.append(
                    {
                        "type": row.type,
                        "table": row.table,
                        "problem": (
                            "annotation %s has dim %d rank %d; row has isotropy %d rank %d"
                            % (row.eja_printed, desc.dim, desc.rank, dim_val, rank_val)
                        ),
                    }
                )
        for label in row.polytopes:
            name, value = _parse_polytope_label(label, params)
            if name == "simplex" and value is not None and value >= 2 and row.eja is None:
                failures.append(
                    {
                        "type": row.type,
                        "table": row.table,
                        "problem": "simplicial row %s lacks an EJA annotation" % label,
                    }
                )

    return {
        "rows_checked": checked,
        "failures": failures,
        "flagged": flagged,
        "all_pass": not failures,
    }


# -- fundamental-region sections ---------------------------------------------------


@dataclass(frozen=True)
class FrSection:
    """A section subspace basis together with its slice of the body.

    For a state space the basis is a maximal Jordan frame and the slice is
    the simplex on it (in frame coordinates); for a polytope the basis
    holds the barycenters of a maximal flag and the slice is the body.
    """

    kind: str  # "eja", "ball", or "polytope"
    basis: tuple
    polytope: Polytope


def standard_frame(alg: AlgebraDescriptor) -> tuple:
    """The diagonal Jordan frame; its sum is the unit exactly."""
    if alg.family == "spin":
        up = np.zeros(alg.dim)
        up[0] = 0.5
        up[-1] = 0.5
        down = -up
        down[-1] = 0.5
        return (EjaElement(alg, up), EjaElement(alg, down))
    out = []
    for i in range(alg.rank):
        c = np.zeros(alg.dim)
        c[i] = 1.0  # diagonal basis members come first
        out.append(EjaElement(alg, c))
    return tuple(out)


def _coerce_descriptor(body):
    if isinstance(body, AlgebraDescriptor):
        return body
    if isinstance(body, EjaStateSpace):
        return body.descriptor
    return None


def fr_section(body, frame=None, cap: int = 12) -> FrSection:
    """Section through a maximal frame (EJA/ball) or flag barycenters (polytope)."""
    desc = _coerce_descriptor(body)
    if desc is not None:
        chosen = tuple(frame) if frame is not None else standard_frame(desc)
        _check_jordan_frame(desc, chosen)
        return FrSection("eja", chosen, simplex(desc.rank - 1))
    if isinstance(body, Ball):
        e1 = tuple(
            [Fraction(1 if i == 0 else 0) for i in range(body.n)]
        )
        minus = tuple(-c for c in e1)
        from .geometry import polytope as make_polytope

        return FrSection("ball", (e1, minus), make_polytope([e1, minus]))
    if not isinstance(body, Polytope):
        raise ClassificationError("unsupported body %r" % (body,))

    report = is_strongly_symmetric(body, cap)
    verdict = is_spectral(body)
    if not (report.strongly_symmetric and verdict.spectral is True):
        raise ClassificationError(
            "fundamental-region section needs a strongly symmetric spectral "
            "body; got strongly_symmetric=%s spectral=%s"
            % (report.strongly_symmetric, verdict.spectral)
        )
    from .geometry import maximal_flags

    flag = sorted(tuple(f.indices for f in fl) for fl in maximal_flags(body))[0]
    basis = []
    for face in flag:
        if not face:
            continue
        pts = [body.vertices[i] for i in face]
        center = tuple(sum(col) / Fraction(len(pts)) for col in zip(*pts))
        basis.append(center)
    if len(affine_basis_indices(basis)) != body.dim + 1:
        raise ClassificationError("flag barycenters do not span the body")
    return FrSection("polytope", tuple(basis), body)


def fr_polytope(body, frame=None, cap: int = 12) -> Polytope:
    """The section polytope: the simplex on a maximal frame."""
    return fr_section(body, frame=frame, cap=cap).polytope


def fr_polytope_symmetry(fixture, cap: int = 12) -> tuple:
    """Automorphisms of the section simplex; must be all vertex permutations."""
    section = fixture if isinstance(fixture, FrSection) else fr_section(fixture, cap=cap)
    group = automorphism_group(section.polytope, cap)
    n = len(section.polytope.vertices)
    if len(group) != math.factorial(n):
        raise ClassificationError(
            "section symmetry group has order %d, expected %d"
            % (len(group), math.factorial(n))
        )
    return group


def _min_eigenvalue(x: EjaElement) -> float:
    alg = x.algebra
    if alg.family == "spin":
        return float(x.coeffs[-1] - np.linalg.norm(x.coeffs[:-1]))
    if alg.family in ("sym_r", "herm_c"):
        return float(np.linalg.eigvalsh(to_matrix(x))[0])
    if alg.family == "herm_o":
        # rank 3: Newton's identities give the characteristic cubic
        from .algebra import jordan_product, trace
        from .spectral import _char_cubic_roots

        x2 = jordan_product(x, x)
        p1 = trace(x)
        p2 = trace(x2)
        p3 = trace(jordan_product(x2, x))
        e2 = (p1 * p1 - p2) / 2.0
        e3 = (p1 ** 3 - 3.0 * p1 * p2 + 2.0 * p3) / 6.0
        return float(_char_cubic_roots(p1, e2, e3)[-1])
    return float(spectral_decompose(x).eigenvalues[-1])


def section_sample_check(
    section: FrSection, samples: int = 1000, seed: int = 0, tol: float = 1e-10
) -> dict:
    """Sample the section span; points inside the cone must have coordinates >= -tol.

    Frame coordinates are recovered through the trace inner product, and
    cone membership is decided from the element's eigenvalues, so the two
    sides of the comparison are computed independently.
    """
    if section.kind in ("eja", "ball") and isinstance(section.basis[0], EjaElement):
        frame = section.basis
        r = len(frame)
        rng = np.random.default_rng(seed)
        hits = 0
        worst = math.inf
        for t in range(samples):
            a = rng.standard_normal(r)
            if t % 2 == 0:
                a = np.abs(a)
            x = zero(frame[0].algebra)
            for ai, ci in zip(a, frame):
                x = x + float(ai) * ci
            if _min_eigenvalue(x) >= -1e-12 * (1.0 + float(np.max(np.abs(a)))):
                coords = [inner(x, c) for c in frame]
                worst = min(worst, min(coords))
                hits += 1
        if hits == 0:
            raise ClassificationError("no cone hits; widen the sampler")
        return {
            "samples": samples,
            "hits": hits,
            "min_coordinate": worst,
            "pass": worst >= -tol,
        }
    # polytope/ball sections with exact vertex bases: rational convex samples
    import random as _random

    rng = _random.Random(seed)
    verts = section.polytope.vertices
    hits = 0
    ok = True
    for _ in range(samples):
        weights = [Fraction(rng.randint(0, 32)) for _ in verts]
        total = sum(weights)
        if total == 0:
            continue
        weights = [w / total for w in weights]
        point = tuple(
            sum(w * v[i] for w, v in zip(weights, verts))
            for i in range(len(verts[0]))
        )
        coords = barycentric_coordinates(verts, point)
        hits += 1
        if coords is None or any(c < 0 for c in coords):
            ok = False
    return {
        "samples": samples,
        "hits": hits,
        "min_coordinate": 0.0 if ok else -1.0,
        "pass": ok,
    }


# -- theorem drivers ---------------------------------------------------------------


def _check(name, status, residual=0.0, tolerance=None, detail=None) -> dict:
    out = {"name": name, "status": status, "residual": float(residual)}
    if tolerance is not None:
        out["tolerance"] = tolerance
    if detail is not None:
        out["detail"] = detail
    return out


def _eja_battery(desc: AlgebraDescriptor, trials: int, seed: int) -> list:
    u = unit(desc)
    r = desc.rank
    checks = []

    worst_recon = 0.0
    worst_orth = 0.0
    worst_sum = 0.0
    rank_consistent = True
    for t in range(trials):
        x = random_element(desc, seed * 100003 + t)
        dec = spectral_decompose(x)
        worst_recon = max(
            worst_recon, norm(dec.reconstruct() - x) / (1.0 + norm(x))
        )
        frame = dec.frame
        if len(frame) != r:
            rank_consistent = False
        total = None
        for i, ci in enumerate(frame):
            total = ci if total is None else total + ci
            for j in range(i, len(frame)):
                target = 1.0 if i == j else 0.0
                worst_orth = max(worst_orth, abs(inner(ci, frame[j]) - target))
        worst_sum = max(worst_sum, norm(total - u))
    checks.append(
        _check(
            "spectral_decomposition",
            "pass" if worst_recon <= 1e-8 else "fail",
            worst_recon,
            1e-8,
            "%d random elements reconstructed" % trials,
        )
    )
    checks.append(
        _check(
            "frame_orthonormality",
            "pass" if worst_orth <= 1e-9 else "fail",
            worst_orth,
            1e-9,
        )
    )
    checks.append(
        _check(
            "maximal_frame_sum",
            "pass" if worst_sum <= 1e-9 else "fail",
            worst_sum,
            1e-9,
        )
    )

    data = load_tables()
    fam = next(f for f in data["families"] if f["package_family"] == desc.family)
    var = eval_formula(fam["table_var_from_param"], {"param": desc.param})
    table_rank = eval_formula(fam["rank"], {"m": var, "n": var})
    rank_ok = rank_consistent and table_rank == r
    checks.append(
        _check(
            "rank",
            "pass" if rank_ok else "fail",
            0.0 if rank_ok else 1.0,
            detail="table rank %d, descriptor rank %d" % (table_rank, r),
        )
    )

    section = fr_section(desc)
    bary = None
    for c in section.basis:
        bary = c if bary is None else bary + c
    bary_resid = norm((1.0 / r) * bary - (1.0 / r) * u)
    checks.append(
        _check(
            "frame_barycenter",
            "pass" if bary_resid <= 1e-12 else "fail",
            bary_resid,
            1e-12,
            "barycenter of the section simplex is e/rank",
        )
    )

    if desc.family == "herm_o":
        checks.append(
            _check(
                "transporters",
                "unsupported",
                detail="no constructive transporter for the octonionic family",
            )
        )
    else:
        rep = verify_strong_symmetry_eja(desc, trials=trials, seed=seed)
        t_ok = rep["max_residual"] <= 1e-8 and not rep["failures"]
        checks.append(
            _check(
                "transporters",
                "pass" if t_ok else "fail",
                rep["max_residual"],
                1e-8,
                rep["method"],
            )
        )

    sample = section_sample_check(section, samples=max(200, 10 * trials), seed=seed)
    fr_ok = sample["pass"] and section.polytope.vertices == simplex(r - 1).vertices
    checks.append(
        _check(
            "fr_polytope",
            "pass" if fr_ok else "fail",
            max(0.0, -sample["min_coordinate"]),
            1e-10,
            "simplex on a maximal frame; %d cone hits among %d span samples"
            % (sample["hits"], sample["samples"]),
        )
    )
    return checks


def _simplex_battery(n: int, trials: int, seed: int) -> list:
    body = simplex(n)
    checks = []

    verdict = is_spectral(body)
    covered = (
        verdict.spectral is True
        and verdict.covering_frame is not None
        and sorted(verdict.covering_frame) == list(range(n + 1))
    )
    checks.append(
        _check(
            "spectral",
            "pass" if covered else "fail",
            0.0 if covered else 1.0,
            detail="vertices covered by one maximal frame",
        )
    )

    counts_ok = True
    for k in range(1, n + 2):
        found = len(enumerate_frames(body, k))
        if found != math.perm(n + 1, k):
            counts_ok = False
    checks.append(
        _check(
            "frames_are_ordered_subsets",
            "pass" if counts_ok else "fail",
            0.0 if counts_ok else 1.0,
        )
    )

    report = is_strongly_symmetric(body)
    checks.append(
        _check(
            "strong_symmetry",
            "pass" if report.strongly_symmetric else "fail",
            0.0 if report.strongly_symmetric else 1.0,
            detail="group order %d" % report.group_order,
        )
    )
    regular = is_regular(body)
    checks.append(
        _check("regularity", "pass" if regular else "fail", 0.0 if regular else 1.0)
    )

    bij = frame_flag_bijection(body)
    bij_ok = bij.bijective and bij.frames == bij.flags
    checks.append(
        _check(
            "frame_flag_bijection",
            "pass" if bij_ok else "fail",
            0.0 if bij_ok else 1.0,
            detail="%d frames, %d flags" % (bij.frames, bij.flags),
        )
    )

    group = automorphism_group(body)
    center = barycenter(body)
    avg = [Fraction(0)] * (n + 1)
    for g in group:
        image = g.apply(body.vertices[0])
        avg = [a + c for a, c in zip(avg, image)]
    avg = tuple(a / Fraction(len(group)) for a in avg)
    bary_ok = avg == tuple(center)
    checks.append(
        _check(
            "barycenter_invariance",
            "pass" if bary_ok else "fail",
            0.0 if bary_ok else 1.0,
            detail="group average of a vertex orbit equals the barycenter exactly",
        )
    )

    section = fr_section(body)
    sec_ok = section.polytope.vertices == body.vertices
    sample = section_sample_check(section, samples=max(200, 10 * trials), seed=seed)
    checks.append(
        _check(
            "fr_polytope",
            "pass" if sec_ok and sample["pass"] else "fail",
            0.0 if sec_ok and sample["pass"] else 1.0,
            detail="section is the body itself",
        )
    )
    return checks


def verify_main_theorem_if_direction(target, trials: int = 100, seed: int = 0) -> dict:
    """Per-family verification battery for the forward direction.

    target is an algebra descriptor (or state space) for the Jordan side,
    or an integer n for the simplex of dimension n.  Checks that come out
    "unsupported" (octonionic transporters) do not count as failures.
    """
    desc = _coerce_descriptor(target)
    if desc is not None:
        label = "%s(%d)" % (desc.family, desc.param)
        checks = _eja_battery(desc, trials, seed)
    elif isinstance(target, int):
        if target < 1:
            raise ClassificationError("simplex dimension must be >= 1")
        label = "simplex(%d)" % target
        checks = _simplex_battery(target, trials, seed)
    else:
        raise ClassificationError(
            "target must be an algebra descriptor, state space, or simplex dimension"
        )
    return {
        "target": label,
        "trials": trials,
        "seed": seed,
        "checks": checks,
        "all_pass": all(c["status"] != "fail" for c in checks),
    }


def default_converse_catalog() -> tuple:
    return (
        ("simplex(1)", simplex(1)),
        ("simplex(2)", simplex(2)),
        ("simplex(3)", simplex(3)),
        ("simplex(4)", simplex(4)),
        ("square", square()),
        ("rectangle", rectangle()),
        ("pentagon", pentagon()),
        ("hexagon", hexagon()),
        ("cube", cube()),
        ("octahedron", octahedron()),
    )


def verify_converse_on_polytopes(catalog=None, cap: int = 12) -> dict:
    """Check sss(P) <=> P is a simplex across a polytope catalog.

    Every non-simplex entry carries an explicit witness: an orbit pair of
    same-size frames for broken strong symmetry, and a rechecked interior
    counterexample point for broken spectrality.
    """
    if catalog is None:
        catalog = default_converse_catalog()
    bodies = []
    equivalence = True
    for name, body in catalog:
        entry: dict = {"body": name}
        try:
            is_simplex = len(body.vertices) == body.dim + 1
            report = is_strongly_symmetric(body, cap)
            verdict = is_spectral(body)
        except (GeometryError, SymmetryError) as exc:
            entry["error"] = str(exc)
            bodies.append(entry)
            equivalence = False
            continue
        spectral = verdict.spectral is True
        sss = report.strongly_symmetric and spectral
        entry.update(
            {
                "is_simplex": is_simplex,
                "strongly_symmetric": report.strongly_symmetric,
                "spectral": spectral,
                "sss": sss,
                "matches": sss == is_simplex,
            }
        )
        witness: dict = {}
        if is_simplex:
            witness["covering_frame"] = list(verdict.covering_frame)
        if not report.strongly_symmetric:
            k, fa, fb = report.witness_pair
            witness["orbit_pair"] = {"k": k, "frames": [list(fa), list(fb)]}
        if not spectral:
            from .scalars import format_scalar

            point = verdict.counterexample
            witness["counterexample"] = [format_scalar(c) for c in point]
            witness["recheck"] = recheck_counterexample(body, point)
        entry["witness"] = witness
        if not entry["matches"]:
            equivalence = False
        bodies.append(entry)
    return {"bodies": bodies, "equivalence_holds": equivalence}
