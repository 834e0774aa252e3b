"""Exact lattice-point enumerators for all body kinds.

Everything is counted in lattice coefficient coordinates, so counting over
an arbitrary lattice is counting integer vectors.  Linear membership is
compiled to integer thresholds per constraint (a rational or single-radical
right-hand side rounds to the exact integer cutoff), then enumeration
sweeps the outer coordinates and solves an exact 1D slab innermost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from blichfeldt import linalg
from blichfeldt.lattice import Lattice
from blichfeldt.polytope import LatticePolytope

DEFAULT_BUDGET = 10 ** 8
POINT_RETENTION_LIMIT = 10 ** 5


class EnumerationBudgetError(RuntimeError):
    def __init__(self, budget):
        super().__init__(f"enumeration budget exceeded (budget={budget})")
        self.budget = budget


@dataclass(frozen=True)
class Body:
    """Tagged union of countable bodies over an ambient lattice."""

    kind: str                 # polytope | translated_polytope | halfopen_parallelepiped | ball
    lattice: Lattice
    polytope: LatticePolytope | None = None
    translate: tuple | None = None      # ambient rational vector
    generators: tuple | None = None     # lattice coefficient vectors
    anchor: tuple | None = None         # ambient rational vector
    center: tuple | None = None         # ambient rational vector
    radius_sq: Fraction | None = None

    @staticmethod
    def from_polytope(poly: LatticePolytope) -> "Body":
        return Body(kind="polytope", lattice=poly.lattice, polytope=poly)

    @staticmethod
    def translated(t, poly: LatticePolytope) -> "Body":
        return Body(
            kind="translated_polytope",
            lattice=poly.lattice,
            polytope=poly,
            translate=tuple(Fraction(x) for x in t),
        )

    @staticmethod
    def parallelepiped(generators, anchor=None, lattice: Lattice | None = None) -> "Body":
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if lattice is None:
            lattice = Lattice.standard(len(gens[0]))
        if anchor is None:
            anchor = (Fraction(0),) * lattice.dim
        if linalg.det_bareiss([list(g) for g in gens]) == 0:
            raise ValueError("degenerate parallelepiped")
        return Body(
            kind="halfopen_parallelepiped",
            lattice=lattice,
            generators=gens,
            anchor=tuple(Fraction(x) for x in anchor),
        )

    @staticmethod
    def ball(center, radius_sq, lattice: Lattice | None = None) -> "Body":
        center = tuple(Fraction(x) for x in center)
        if lattice is None:
            lattice = Lattice.standard(len(center))
        radius_sq = Fraction(radius_sq)
        if radius_sq <= 0:
            raise ValueError("radius_sq must be positive")
        return Body(kind="ball", lattice=lattice, center=center, radius_sq=radius_sq)

    @property
    def dim(self) -> int:
        return self.lattice.dim


@dataclass(frozen=True)
class CountResult:
    count: int
    points: tuple | None       # coefficient vectors; None above retention limit
    method: str


def ceil_sqrt_fraction(r) -> int:
    """Smallest integer >= sqrt(r) for a non-negative rational r."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    p, q = r.numerator, r.denominator
    m = isqrt(p // q)
    while m * m * q < p:
        m += 1
    return m


def _int_threshold(rhs: Fraction, strict: bool) -> int:
    """Largest integer value t with (t <= rhs) resp. (t < rhs)."""
    f = rhs.__floor__()
    if strict and f == rhs:
        return f - 1
    return f


def _enumerate_linear(constraints, box, budget, collect):
    """Integer points satisfying c.x <= t for all integer (c, t) pairs.

    Sweeps outer coordinates; the innermost coordinate is solved as an
    exact 1D slab.  Memory is O(1) in the count unless collecting.
    """
    los, his = box
    n = len(los)
    total_cells = 1
    for lo, hi in zip(los, his):
        total_cells *= max(0, hi - lo + 1)
    if total_cells > budget:
        raise EnumerationBudgetError(budget)
    if total_cells == 0:
        return 0, [] if collect else None
    count = 0
    points = [] if collect else None
    outer_ranges = [range(los[j], his[j] + 1) for j in range(1, n)]
    for rest in itertools.product(*outer_ranges):
        lb, ub = los[0], his[0]
        ok = True
        for c, t in constraints:
            rem = t - sum(c[j + 1] * rest[j] for j in range(n - 1))
            c0 = c[0]
            if c0 > 0:
                ub = min(ub, rem // c0)
            elif c0 < 0:
                lb = max(lb, -(rem // (-c0)))  # ceil(rem / c0)
            else:
                if rem < 0:
                    ok = False
                    break
            if lb > ub:
                ok = False
                break
        if not ok:
            continue
        count += ub - lb + 1
        if points is not None:
            if count <= POINT_RETENTION_LIMIT:
                points.extend((x0,) + rest for x0 in range(lb, ub + 1))
            else:
                points = None
    return count, points


def _polytope_constraints(poly: LatticePolytope, t_coeff=None):
    """Integer-threshold constraints for (t + P) in coefficient space."""
    cons = []
    for f in poly.facets:
        rhs = Fraction(f.offset)
        if t_coeff is not None:
            rhs += sum(Fraction(c) * x for c, x in zip(f.normal, t_coeff))
        cons.append((tuple(int(c) for c in f.normal), _int_threshold(rhs, False)))
    return cons


def _polytope_box(poly: LatticePolytope, t_coeff=None):
    n = poly.dim
    los, his = [], []
    for j in range(n):
        vals = [Fraction(v[j]) for v in poly.vertices]
        if t_coeff is not None:
            vals = [x + t_coeff[j] for x in vals]
        los.append(min(vals).__ceil__())
        his.append(max(vals).__floor__())
    return los, his


def count(body: Body, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Exact number of lattice points of the body."""
    if body.kind == "polytope":
        cons = _polytope_constraints(body.polytope)
        box = _polytope_box(body.polytope)
        c, pts = _enumerate_linear(cons, box, budget, collect=True)
        return CountResult(c, tuple(pts) if pts is not None else None, "enumeration")
    if body.kind == "translated_polytope":
        t_coeff = body.lattice.to_coeff(body.translate)
        cons = _polytope_constraints(body.polytope, t_coeff)
        box = _polytope_box(body.polytope, t_coeff)
        c, pts = _enumerate_linear(cons, box, budget, collect=True)
        return CountResult(c, tuple(pts) if pts is not None else None, "enumeration")
    if body.kind == "halfopen_parallelepiped":
        return count_halfopen_parallelepiped(body, budget)
    if body.kind == "ball":
        return _count_ball(body, budget)
    raise ValueError(f"unknown body kind {body.kind!r}")


def count_translate(t, poly: LatticePolytope, budget: int = DEFAULT_BUDGET) -> CountResult:
    return count(Body.translated(t, poly), budget)


def count_halfopen_parallelepiped(body: Body, budget: int = DEFAULT_BUDGET) -> CountResult:
    """Both methods: exact half-open enumeration and |det|; they must agree."""
    gens = [list(g) for g in body.generators]
    n = len(gens)
    det = linalg.det_bareiss(gens)
    if det == 0:
        raise ValueError("degenerate parallelepiped")
    t_coeff = body.lattice.to_coeff(body.anchor)
    inv = linalg.frac_inv(gens)  # columns give the rho coordinates
    cons = []
    for i in range(n):
        col = [inv[j][i] for j in range(n)]
        denom = lcm(*(x.denominator for x in col))
        ci = [int(x * denom) for x in col]
        shift = sum(Fraction(c) * t for c, t in zip(ci, t_coeff))
        # 0 <= rho_i:   -ci . x <= -shift        (closed)
        # rho_i < 1:     ci . x <  denom + shift (strict)
        cons.append((tuple(-c for c in ci), _int_threshold(-shift, False)))
        cons.append((tuple(ci), _int_threshold(Fraction(denom) + shift, True)))
    corners = []
    for mask in itertools.product((0, 1), repeat=n):
        corners.append([
            t_coeff[j] + sum(mask[i] * gens[i][j] for i in range(n)) for j in range(n)
        ])
    los = [min(c[j] for c in corners).__ceil__() for j in range(n)]
    his = [max(c[j] for c in corners).__floor__() for j in range(n)]
    cnt, pts = _enumerate_linear(cons, (los, his), budget, collect=True)
    if cnt != abs(det):
        raise ArithmeticError(
            f"parallelepiped count {cnt} disagrees with |det| = {abs(det)}"
        )
    return CountResult(cnt, tuple(pts) if pts is not None else None, "enumeration")


def _count_ball(body: Body, budget: int) -> CountResult:
    lat = body.lattice
    n = lat.dim
    cc = lat.to_coeff(body.center)
    dg = lat.dual_gram
    los, his = [], []
    for j in range(n):
        bound = ceil_sqrt_fraction(body.radius_sq * dg[j][j])
        los.append((cc[j] - bound).__ceil__())
        his.append((cc[j] + bound).__floor__())
    total_cells = 1
    for lo, hi in zip(los, his):
        total_cells *= max(0, hi - lo + 1)
    if total_cells > budget:
        raise EnumerationBudgetError(budget)
    basis = lat.basis
    center = body.center
    cnt = 0
    pts = []
    for x in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        y = [
            sum(x[i] * basis[i][k] for i in range(n)) - center[k] for k in range(n)
        ]
        if sum(v * v for v in y) <= body.radius_sq:
            cnt += 1
            if pts is not None:
                if cnt <= POINT_RETENTION_LIMIT:
                    pts.append(x)
                else:
                    pts = None
    return CountResult(cnt, tuple(pts) if pts is not None else None, "enumeration")


def inner_parallel_thresholds(poly: LatticePolytope, rho_sq):
    """Integer facet cutoffs for {z : a_i.z <= b_i - rho*||a_i||}.

    Each comparison is a rational against a single square root, so the
    cutoff is exact: t_i = b_i - ceil(sqrt(rho_sq * ||a_i||^2)).
    """
    rho_sq = Fraction(rho_sq)
    cons = []
    for i, f in enumerate(poly.facets):
        asq = poly.facet_norm_sq(i)
        t = int(f.offset) - ceil_sqrt_fraction(rho_sq * asq)
        cons.append((tuple(int(c) for c in f.normal), t))
    return cons


def count_inner_parallel(
    poly: LatticePolytope, rho_sq, budget: int = DEFAULT_BUDGET
) -> CountResult:
    """Exact count of lattice points of the inner parallel body P - rho*B."""
    cons = inner_parallel_thresholds(poly, rho_sq)
    box = _polytope_box(poly)
    cnt, pts = _enumerate_linear(cons, box, budget, collect=True)
    return CountResult(cnt, tuple(pts) if pts is not None else None, "enumeration")


def pick_quantities(poly: LatticePolytope, budget: int = DEFAULT_BUDGET):
    """(area, boundary count, interior count) of a lattice polygon.

    Pick's identity G = A + B/2 + 1 ties these together; used as a joint
    2D oracle for counting and volume.
    """
    from blichfeldt.polytope import volume
    from math import gcd

    if poly.dim != 2:
        raise ValueError("dimension unsupported")
    area = volume(poly)
    boundary = 0
    for f in poly.facets:
        a, b = (poly.vertices[i] for i in (f.vertex_ids[0], f.vertex_ids[-1]))
        boundary += gcd(abs(a[0] - b[0]), abs(a[1] - b[1]))
    g = count(Body.from_polytope(poly), budget).count
    return area, boundary, g - boundary
