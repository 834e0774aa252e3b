"""Certified checkers for the point-count inequalities, plus audits.

Each ``InequalityId`` maps to one formula with a fixed strict/non-strict
flag.  Left- and right-hand sides are assembled as exact values
(int/Fraction/RadicalSum) or adaptive enclosures and compared with
``certified_compare``; a VIOLATED verdict therefore is a certificate, not
floating-point noise.  Two ids are not theorems (CONJECTURE_1_4 is a
conjecture, WILLS_3_2 is known to fail in general): their violations are
reported as findings, never as artifact failures.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from blichfeldt import counting as ct
from blichfeldt import lattice as lt
from blichfeldt import polytope as pt
from blichfeldt.counting import Body
from blichfeldt.interval import Interval, pi, root_interval, sqrt_interval
from blichfeldt.linalg import affine_rank
from blichfeldt.radical import (
    MAX_BITS,
    Cmp,
    Inconclusive,
    RadicalSum,
    certified_compare,
)
from blichfeldt.witnesses import CorpusSpec, body_to_dict, build_corpus


class InequalityId(enum.Enum):
    BLICHFELDT_1_1 = "BLICHFELDT_1_1"
    MAIN_THM_1_1 = "MAIN_THM_1_1"
    DIM3_THM_1_2 = "DIM3_THM_1_2"
    BHW_LOWER_1_2 = "BHW_LOWER_1_2"
    TRANSLATE_LEMMA_1_3 = "TRANSLATE_LEMMA_1_3"
    GENERAL_1_3_i = "GENERAL_1_3_i"
    GENERAL_1_3_ii = "GENERAL_1_3_ii"
    CONJECTURE_1_4 = "CONJECTURE_1_4"
    WILLS_3_2 = "WILLS_3_2"
    OVERHAGEN_3_3 = "OVERHAGEN_3_3"
    MCMULLEN_SHELL = "MCMULLEN_SHELL"
    BOKOWSKI_3_4 = "BOKOWSKI_3_4"
    SKETCH_RHO_HALF = "SKETCH_RHO_HALF"
    GENERAL_THM_4_1 = "GENERAL_THM_4_1"


#: ids whose statement is not a proved theorem; VIOLATED rows are findings.
OBSERVATIONAL_IDS = frozenset({InequalityId.CONJECTURE_1_4, InequalityId.WILLS_3_2})

#: ids with a strict "<" (equality counts as a violation).
STRICT_IDS = frozenset({
    InequalityId.MAIN_THM_1_1,
    InequalityId.DIM3_THM_1_2,
    InequalityId.BHW_LOWER_1_2,
    InequalityId.CONJECTURE_1_4,
    InequalityId.SKETCH_RHO_HALF,
})

#: ids stated only over the integer lattice.
INTEGER_LATTICE_IDS = frozenset({
    InequalityId.BLICHFELDT_1_1,
    InequalityId.MAIN_THM_1_1,
    InequalityId.DIM3_THM_1_2,
    InequalityId.BHW_LOWER_1_2,
    InequalityId.TRANSLATE_LEMMA_1_3,
    InequalityId.WILLS_3_2,
    InequalityId.OVERHAGEN_3_3,
    InequalityId.MCMULLEN_SHELL,
    InequalityId.BOKOWSKI_3_4,
    InequalityId.SKETCH_RHO_HALF,
})

DIM3_IDS = frozenset({
    InequalityId.DIM3_THM_1_2,
    InequalityId.WILLS_3_2,
    InequalityId.OVERHAGEN_3_3,
    InequalityId.MCMULLEN_SHELL,
    InequalityId.BOKOWSKI_3_4,
    InequalityId.SKETCH_RHO_HALF,
})

TRANSLATED_IDS = frozenset({
    InequalityId.TRANSLATE_LEMMA_1_3,
    InequalityId.GENERAL_1_3_ii,
})

REPORT_SCHEMA_VERSION = 1


class Verdict(enum.Enum):
    HOLDS = "Holds"
    HOLDS_WITH_EQUALITY = "HoldsWithEquality"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "Inconclusive"
    HYPOTHESIS_UNMET = "HypothesisUnmet"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class InequalityReport:
    id: InequalityId
    body_description: str
    verdict: Verdict
    lhs: object = None
    rhs: object = None
    tightness: Interval | None = None   # enclosure of rhs - lhs
    precision_bits: int | None = None
    note: str = ""
    payload: dict = field(default_factory=dict)


def format_value(v, bits: int = 128) -> str:
    """Auditable text form: exact rationals as p/q, reals as [lo, hi]@bits."""
    if v is None:
        return ""
    if isinstance(v, int):
        return f"{v}/1"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, RadicalSum):
        if v.is_rational:
            return format_value(v.as_fraction())
        e = v.enclosure(bits)
        return f"[{e.lo}, {e.hi}]@{bits}"
    if isinstance(v, Interval):
        return f"[{v.lo}, {v.hi}]@{bits}"
    e = v(bits)
    return f"[{e.lo}, {e.hi}]@{bits}"


def _enclose(v, bits: int = 128) -> Interval:
    if isinstance(v, (int, Fraction)):
        return Interval.point(v)
    if isinstance(v, RadicalSum):
        return v.enclosure(bits)
    if isinstance(v, Interval):
        return v
    return v(bits)


def _is_integer_lattice(lat: lt.Lattice) -> bool:
    """True when the lattice equals Z^n as a point set."""
    return (
        all(x.denominator == 1 for row in lat.basis for x in row)
        and lat.determinant == 1
    )


def _sqrt_n(n: int) -> RadicalSum:
    return RadicalSum.sqrt(n)


def _inner_count(poly, rho_sq, budget):
    return ct.count_inner_parallel(poly, rho_sq, budget=budget).count


def _rho3_enclosure(bits: int) -> Interval:
    """(3 / (4 pi))^(1/3): the radius making the unit-ball volume 1."""
    return root_interval(Interval.point(Fraction(3, 4)) / pi(bits + 16), 3, bits)


_key = id  # builtin id(); the name is shadowed inside check()


def _cached(cache, key, fn):
    if cache is None:
        return fn()
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def check(
    id: InequalityId,
    body: Body,
    description: str = "",
    budget: int = ct.DEFAULT_BUDGET,
    max_bits: int = MAX_BITS,
    cache: dict | None = None,
) -> InequalityReport:
    """Evaluate one inequality on one body with a certified comparison.

    ``cache`` (optional) memoizes counts and measures across ids for the
    same body objects; callers own its lifetime.
    """
    desc = description or f"{body.kind} n={body.dim}"

    def unmet(reason):
        return InequalityReport(id, desc, Verdict.HYPOTHESIS_UNMET, note=reason)

    def out_of_scope(reason):
        return InequalityReport(id, desc, Verdict.OUT_OF_SCOPE, note=reason)

    if body.kind not in ("polytope", "translated_polytope"):
        return out_of_scope(f"body kind {body.kind!r} not supported by checkers")
    if (id in TRANSLATED_IDS) != (body.kind == "translated_polytope"):
        if id in TRANSLATED_IDS:
            return unmet("requires a translated lattice polytope")
        return unmet("stated for untranslated bodies")

    lat = body.lattice
    n = body.dim
    poly = body.polytope
    if id in INTEGER_LATTICE_IDS and not _is_integer_lattice(lat):
        return unmet("stated over the integer lattice only")
    if id in DIM3_IDS and n != 3:
        return unmet("stated for dimension 3 only")
    if id is InequalityId.GENERAL_THM_4_1 and n > lt.MU_MAX_DIM:
        return out_of_scope("covering-radius computation limited to n <= 4")

    result = _cached(
        cache, ("count", _key(body)), lambda: ct.count(body, budget=budget)
    )
    g = result.count
    payload: dict = {"count": g}

    if id in TRANSLATED_IDS:
        if lat.contains(body.translate):
            return unmet("translate lies in the lattice")
    else:
        # full-dimensionality of K cap Lambda, certified from the point set
        if result.points is None or affine_rank(result.points) != n:
            return unmet("dim(K cap Lambda) < n")

    vol = _cached(cache, ("vol", _key(poly)), lambda: pt.volume(poly))
    payload["volume"] = vol
    note = ""

    def surface():
        return _cached(cache, ("surf", _key(poly)), lambda: pt.surface_area(poly))

    def intrinsic():
        return _cached(
            cache, ("iv3", _key(poly)), lambda: pt.intrinsic_volumes_3d(poly)
        )

    if id is InequalityId.BLICHFELDT_1_1:
        lhs, rhs = g, Fraction(math.factorial(n)) * vol + n
    elif id is InequalityId.GENERAL_1_3_i:
        lhs = g
        rhs = Fraction(math.factorial(n)) * vol / lat.determinant + n
    elif id is InequalityId.TRANSLATE_LEMMA_1_3:
        lhs, rhs = g, Fraction(math.factorial(n)) * vol
    elif id is InequalityId.GENERAL_1_3_ii:
        lhs = g
        rhs = Fraction(math.factorial(n)) * vol / lat.determinant
    elif id is InequalityId.MAIN_THM_1_1:
        F = surface()
        payload["surface_area"] = F
        lhs = g
        rhs = vol + (_sqrt_n(n) + 1) * Fraction(math.factorial(n - 1), 2) * F
    elif id is InequalityId.DIM3_THM_1_2:
        F = surface()
        payload["surface_area"] = F
        lhs, rhs = g, F * 2 + vol
    elif id is InequalityId.BHW_LOWER_1_2:
        F = surface()
        payload["surface_area"] = F
        lhs, rhs = vol - F * Fraction(1, 2), g
    elif id is InequalityId.CONJECTURE_1_4:
        F = surface()
        payload["surface_area"] = F
        det_sub = lt.min_hyperplane_sublattice_det(lat)
        lhs = g
        rhs = vol / lat.determinant + Fraction(math.factorial(n - 1)) * (F / det_sub)
        note = "conjecture/observational"
    elif id is InequalityId.GENERAL_THM_4_1:
        F = surface()
        payload["surface_area"] = F
        det_sub = lt.min_hyperplane_sublattice_det(lat)
        mu = lt.inhomogeneous_minimum(lat)
        lam_star = RadicalSum.sqrt(lt.shortest_vector(lt.polar_lattice(lat)).length_sq)
        factor = mu * lam_star + 1
        # the transference-style product, normalized by dimension; recorded
        # for survey purposes, never bounded against a universal constant
        payload["mu_lambda_over_n"] = (mu * lam_star) / n
        lhs = g
        rhs = vol / lat.determinant + factor * Fraction(math.factorial(n - 1)) * (
            F / det_sub
        )
    elif id in (InequalityId.WILLS_3_2, InequalityId.OVERHAGEN_3_3):
        iv = intrinsic()
        base = iv.v2 + (Fraction(1) + iv.v3)   # RadicalSum
        lhs = g
        if isinstance(iv.v1, RadicalSum):
            rhs = iv.v1 + base
        else:
            v1 = iv.v1
            rhs = lambda bits: v1(bits) + base.enclosure(bits)  # noqa: E731
        payload["v2"] = iv.v2
        if id is InequalityId.WILLS_3_2:
            note = "conjecture/observational"
    elif id is InequalityId.MCMULLEN_SHELL:
        F = surface()
        payload["surface_area"] = F
        inner = _inner_count(poly, Fraction(1, 3), budget)
        payload["inner_count"] = inner
        lhs, rhs = g - inner, F + 2
    elif id is InequalityId.BOKOWSKI_3_4:
        lhs = g
        rhs = lambda bits: pt.steiner_volume(poly, _rho3_enclosure, bits)  # noqa: E731
    elif id is InequalityId.SKETCH_RHO_HALF:
        F = surface()
        payload["surface_area"] = F
        lhs = g

        def rhs(bits, F=F, vol=vol):
            factor = (_rho3_enclosure(bits) + Interval.point(Fraction(1, 2))) * 2
            return Interval.point(vol) + factor * F.enclosure(bits)

        note = "proof sketch only"
    else:  # pragma: no cover
        raise ValueError(f"unhandled id {id}")

    cmp = certified_compare(lhs, rhs, max_bits=max_bits)
    if isinstance(cmp, Inconclusive):
        return InequalityReport(
            id, desc, Verdict.INCONCLUSIVE, lhs, rhs,
            precision_bits=cmp.precision_bits, note=note, payload=payload,
        )
    if cmp is Cmp.GREATER:
        verdict = Verdict.VIOLATED
    elif cmp is Cmp.EQUAL:
        verdict = (
            Verdict.VIOLATED if id in STRICT_IDS else Verdict.HOLDS_WITH_EQUALITY
        )
    else:
        verdict = Verdict.HOLDS
    slack = _enclose(rhs) - _enclose(lhs)
    return InequalityReport(
        id, desc, verdict, lhs, rhs, tightness=slack, note=note, payload=payload
    )


# ---------------------------------------------------------------------------
# boundary-layer audit (integer lattice only)


@dataclass(frozen=True)
class FacetAudit:
    facet_index: int
    gamma: int
    prism_count: int
    layer_counts: tuple
    prism_bound_ok: bool            # strict per-prism bound
    layer_bounds_ok: bool


@dataclass(frozen=True)
class AuditRecord:
    total: int
    l1_count: int
    l2_count: int
    l1_volume_ok: bool              # (a)
    l2_covered_ok: bool             # (b)
    prisms_ok: bool                 # (c) all facets
    vertex_count_ok: bool           # (d)
    layers_ok: bool                 # (e) all facets
    partition_ok: bool              # #L1 + #L2 = G
    facets: tuple

    @property
    def all_ok(self) -> bool:
        return (
            self.l1_volume_ok and self.l2_covered_ok and self.prisms_ok
            and self.vertex_count_ok and self.layers_ok and self.partition_ok
        )


def _l1_norm(v) -> int:
    return sum(abs(int(x)) for x in v)


def boundary_layer_audit(
    poly: pt.LatticePolytope, budget: int = ct.DEFAULT_BUDGET
) -> AuditRecord:
    """Check the shell-decomposition counting argument facet by facet.

    L1 holds the points whose unit cube stays inside P; every other point
    must land in some facet prism Q_i, and each prism decomposes into
    lattice layers whose counts obey the per-layer bounds.
    """
    lat = poly.lattice
    if not _is_integer_lattice(lat):
        raise ValueError("audit requires the integer lattice")
    n = poly.dim
    result = ct.count(Body.from_polytope(poly), budget=budget)
    if result.points is None:
        raise ct.EnumerationBudgetError(budget)
    points = result.points
    g = result.count
    vol = pt.volume(poly)
    facets = poly.facets

    def in_l1(z):
        for f in facets:
            l1 = _l1_norm(f.normal)
            # a.z <= b - |a|_1/2, integer left side
            if sum(c * x for c, x in zip(f.normal, z)) > int(f.offset) - (l1 + 1) // 2:
                return False
        return True

    l1_pts = [z for z in points if in_l1(z)]
    l2_pts = [z for z in points if not in_l1(z)]

    def facet_norm_sq(i):
        return sum(Fraction(c) * c for c in facets[i].normal)

    def project_in_facet(i, z):
        """Orthogonal projection of z onto aff(F_i) must lie in F_i."""
        f = facets[i]
        asq = facet_norm_sq(i)
        slack = (int(f.offset) - sum(c * x for c, x in zip(f.normal, z))) / asq
        p = [Fraction(x) + slack * c for x, c in zip(z, f.normal)]
        return all(
            sum(Fraction(c) * xi for c, xi in zip(h.normal, p)) <= h.offset
            for h in facets
        )

    def in_prism(i, z):
        f = facets[i]
        gamma = -(-_l1_norm(f.normal) // 2) - 1
        az = sum(c * x for c, x in zip(f.normal, z))
        return int(f.offset) - gamma <= az <= int(f.offset) and project_in_facet(i, z)

    l2_covered = all(any(in_prism(i, z) for i in range(len(facets))) for z in l2_pts)

    facet_audits = []
    prisms_ok = True
    layers_ok = True
    for i, f in enumerate(facets):
        gamma = -(-_l1_norm(f.normal) // 2) - 1
        normalized, _ = pt.facet_lattice_volume(poly, i)
        # candidates: lattice points of the slab under the facet
        cons = [
            (tuple(int(c) for c in f.normal), int(f.offset)),
            (tuple(-int(c) for c in f.normal), -(int(f.offset) - gamma)),
        ]
        los, his = ct._polytope_box(poly)
        los = [lo - gamma for lo in los]
        his = [hi + gamma for hi in his]
        _, slab = ct._enumerate_linear(cons, (los, his), budget, collect=True)
        if slab is None:
            raise ct.EnumerationBudgetError(budget)
        members = [z for z in slab if project_in_facet(i, z)]
        layer_counts = []
        for j in range(gamma + 1):
            level = int(f.offset) - j
            layer_counts.append(
                sum(
                    1
                    for z in members
                    if sum(c * x for c, x in zip(f.normal, z)) == level
                )
            )
        prism_count = sum(layer_counts)
        bound = (_sqrt_n(n) + 1) * Fraction(math.factorial(n - 1), 2) * (
            RadicalSum.rational(normalized) * RadicalSum.sqrt(facet_norm_sq(i))
        ) + (n - 1)
        prism_ok = certified_compare(prism_count, bound) is Cmp.LESS
        layer_ok = True
        per_layer = Fraction(math.factorial(n - 1)) * normalized
        for j, cnt in enumerate(layer_counts):
            limit = per_layer + (n - 1 if j == 0 else 0)
            if cnt > limit:
                layer_ok = False
        facet_audits.append(FacetAudit(
            facet_index=i, gamma=gamma, prism_count=prism_count,
            layer_counts=tuple(layer_counts), prism_bound_ok=prism_ok,
            layer_bounds_ok=layer_ok,
        ))
        prisms_ok = prisms_ok and prism_ok
        layers_ok = layers_ok and layer_ok

    f0, gcounts = pt.vertex_facet_counts(poly)
    vertex_ok = sum(f0) >= len(gcounts) + len(facets) * (n - 1)

    return AuditRecord(
        total=g,
        l1_count=len(l1_pts),
        l2_count=len(l2_pts),
        l1_volume_ok=len(l1_pts) <= vol,
        l2_covered_ok=l2_covered,
        prisms_ok=prisms_ok,
        vertex_count_ok=vertex_ok,
        layers_ok=layers_ok,
        partition_ok=len(l1_pts) + len(l2_pts) == g,
        facets=tuple(facet_audits),
    )


# ---------------------------------------------------------------------------
# inner-parallel chain consistency (dimension 3)


def ceil_sqrt_over_pi(q: Fraction, max_bits: int = MAX_BITS) -> int:
    """Smallest integer >= sqrt(q / pi) for a positive rational q.

    sqrt(q/pi) is irrational, so enclosure refinement always separates it
    from the nearest integers.
    """
    bits = 64
    while bits <= max_bits:
        iv = sqrt_interval(Interval.point(q) / pi(bits), bits)
        lo = -((-iv.lo.numerator) // iv.lo.denominator)  # ceil
        hi = -((-iv.hi.numerator) // iv.hi.denominator)
        if lo == hi:
            return lo
        bits *= 2
    raise ArithmeticError("could not separate sqrt(q/pi) from an integer")


def count_inner_parallel_pi(
    poly: pt.LatticePolytope, budget: int = ct.DEFAULT_BUDGET
) -> int:
    """G(P - pi^(-1/2) * B): facet cutoffs b_i - ceil(sqrt(||a_i||^2 / pi))."""
    cons = []
    for i, f in enumerate(poly.facets):
        asq = poly.facet_norm_sq(i)
        t = int(f.offset) - ceil_sqrt_over_pi(asq)
        cons.append((tuple(int(c) for c in f.normal), t))
    box = ct._polytope_box(poly)
    cnt, _ = ct._enumerate_linear(cons, box, budget, collect=False)
    return cnt


def chain_consistency(poly: pt.LatticePolytope, budget: int = ct.DEFAULT_BUDGET):
    """The two inner-body counts used back-to-back in the 3D proof.

    Returns (count at rho = 3^(-1/2), count at rho = pi^(-1/2)); the first
    must not exceed the second because 3 > pi makes its radius larger.
    """
    a = ct.count_inner_parallel(poly, Fraction(1, 3), budget=budget).count
    b = count_inner_parallel_pi(poly, budget=budget)
    return a, b


# ---------------------------------------------------------------------------
# corpus runner


@dataclass(frozen=True)
class CorpusRow:
    index: int
    name: str
    report: InequalityReport


@dataclass(frozen=True)
class CorpusReport:
    rows: tuple
    summary: dict        # id value -> {"verdicts": {...}, "min_slack": .., "max_slack": ..}
    violations: tuple    # (row, reloadable body dict)


def run_corpus(
    spec: CorpusSpec,
    ids,
    budget: int = ct.DEFAULT_BUDGET,
    max_bits: int = MAX_BITS,
) -> CorpusReport:
    """Every id against every corpus entry, deterministically ordered."""
    entries = build_corpus(spec)
    rows = []
    violations = []
    summary: dict = {}
    for entry in entries:
        cache: dict = {}
        for id in ids:
            try:
                report = check(
                    id, entry.body, description=entry.name,
                    budget=budget, max_bits=max_bits, cache=cache,
                )
            except ct.EnumerationBudgetError as exc:
                report = InequalityReport(
                    id, entry.name, Verdict.OUT_OF_SCOPE, note=str(exc)
                )
            row = CorpusRow(index=entry.index, name=entry.name, report=report)
            rows.append(row)
            s = summary.setdefault(
                id.value, {"verdicts": {}, "min_slack": None, "max_slack": None}
            )
            s["verdicts"][report.verdict.value] = (
                s["verdicts"].get(report.verdict.value, 0) + 1
            )
            if report.tightness is not None:
                mid = report.tightness.mid
                if s["min_slack"] is None or mid < s["min_slack"]:
                    s["min_slack"] = mid
                if s["max_slack"] is None or mid > s["max_slack"]:
                    s["max_slack"] = mid
            if report.verdict is Verdict.VIOLATED:
                violations.append((row, body_to_dict(entry.body)))
    return CorpusReport(rows=tuple(rows), summary=summary, violations=tuple(violations))


def soundness_failures(report: CorpusReport):
    """VIOLATED rows on proved (non-observational) ids: always bugs."""
    return [
        row
        for row in report.rows
        if row.report.verdict is Verdict.VIOLATED
        and row.report.id not in OBSERVATIONAL_IDS
    ]


def report_to_csv(report: CorpusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([
        "index", "body", "id", "verdict", "lhs", "rhs", "slack_lo", "slack_hi", "note",
    ])
    for row in report.rows:
        r = row.report
        t = r.tightness
        writer.writerow([
            row.index, row.name, r.id.value, r.verdict.value,
            format_value(r.lhs), format_value(r.rhs),
            str(t.lo) if t else "", str(t.hi) if t else "", r.note,
        ])
    return buf.getvalue()


def report_to_json(report: CorpusReport) -> str:
    def row_payload(row):
        r = row.report
        out = {
            "index": row.index,
            "body": row.name,
            "id": r.id.value,
            "verdict": r.verdict.value,
            "lhs": format_value(r.lhs),
            "rhs": format_value(r.rhs),
            "note": r.note,
        }
        if r.tightness is not None:
            out["slack"] = {"lo": str(r.tightness.lo), "hi": str(r.tightness.hi)}
        if r.precision_bits is not None:
            out["precision_bits"] = r.precision_bits
        return out

    doc = {
        "schema": REPORT_SCHEMA_VERSION,
        "rows": [row_payload(row) for row in report.rows],
        "summary": {
            key: {
                "verdicts": val["verdicts"],
                "min_slack": str(val["min_slack"]) if val["min_slack"] is not None else None,
                "max_slack": str(val["max_slack"]) if val["max_slack"] is not None else None,
            }
            for key, val in sorted(report.summary.items())
        },
        "violations": [
            {"index": row.index, "body": row.name, "id": row.report.id.value,
             "body_spec": body_dict}
            for row, body_dict in report.violations
        ],
    }
    return json.dumps(doc, indent=2)
