"""Singularity analysis of projective hypersurfaces over Q.

Computes the singular-locus dimension from the Jacobian ideal, verifies and
classifies user-supplied rational singular points (node = nondegenerate chart
Hessian), and certifies completeness of the point list by exact degree
accounting: in every affine chart, the Artinian quotient degree of the
dehomogenized Jacobian ideal must equal the number of verified nodes visible
there.  Points are verified, never discovered; a missing or irrational
singular point shows up as a chart-count mismatch and yields complete=False.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ToolError
from .idealcalc import buchberger, projective_dimension, standard_monomials
from .linalg import exact_rank
from .polyring import MultiPoly, dehomogenize

__all__ = [
    "NODE",
    "NON_NODE_ISOLATED",
    "UNVERIFIED",
    "ProjectivePoint",
    "SingularError",
    "SingularityReport",
    "analyze_singularities",
    "extendability",
    "jacobian_ideal",
]


class SingularError(ToolError):
    code = "singular.invalid"


NODE = "node"
NON_NODE_ISOLATED = "non-node-isolated"
UNVERIFIED = "unverified"


class ProjectivePoint:
    """Point of projective space, stored with first nonzero coordinate = 1."""

    __slots__ = ("coordinates",)

    def __init__(self, coordinates):
        vals = tuple(Fraction(c) for c in coordinates)
        if not vals:
            raise SingularError("projective point needs at least one coordinate")
        pivot = next((v for v in vals if v), None)
        if pivot is None:
            raise SingularError("projective point must have a nonzero coordinate")
        self.coordinates = tuple(v / pivot for v in vals)

    @property
    def chart(self) -> int:
        """Index of the first nonzero coordinate (normalized to 1)."""
        return next(i for i, v in enumerate(self.coordinates) if v)

    def __len__(self) -> int:
        return len(self.coordinates)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash(self.coordinates)

    def __lt__(self, other) -> bool:
        return self.coordinates < other.coordinates

    def as_strings(self) -> list:
        return [str(c) for c in self.coordinates]

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coordinates) + ")"

    def __repr__(self) -> str:
        return f"ProjectivePoint{self}"


@dataclass(frozen=True)
class SingularityReport:
    """Outcome of analyze_singularities.

    `complete` certifies that the listed nodes account for the entire
    Jacobian scheme (each with local multiplicity 1); `chart_degrees` are the
    per-chart Artinian quotient degrees backing that certificate.
    """

    locus_dimension: int
    jacobian_quotient_degree: int | None
    points: tuple
    complete: bool
    chart_degrees: tuple | None = None
    notes: tuple = ()

    def nodes(self) -> list:
        return [pt for pt, cls in self.points if cls == NODE]

    def to_json_dict(self) -> dict:
        return {
            "locus_dimension": self.locus_dimension,
            "jacobian_quotient_degree": self.jacobian_quotient_degree,
            "points": [
                {"coordinates": pt.as_strings(), "classification": cls}
                for pt, cls in self.points
            ],
            "complete": self.complete,
            "chart_degrees": list(self.chart_degrees) if self.chart_degrees else None,
            "notes": list(self.notes),
        }


def _validate_hypersurface(f: MultiPoly) -> None:
    if f.is_zero:
        raise SingularError("the zero polynomial does not define a hypersurface")
    if not f.is_homogeneous:
        raise SingularError("hypersurface equation must be homogeneous")
    if f.degree < 1:
        raise SingularError("hypersurface equation must have degree >= 1")


def jacobian_ideal(f: MultiPoly) -> list:
    """All first partial derivatives of f, in variable order."""
    _validate_hypersurface(f)
    return [f.partial_derivative(i) for i in range(f.arity)]


def _singular_locus_dimension(f: MultiPoly, partials) -> int:
    gb = buchberger([*partials, f])
    return projective_dimension(gb)


def _chart_hessian_rank(partials, point: ProjectivePoint) -> int:
    """Rank of the Hessian at the point, restricted to the point's chart.

    Substituting x_chart = 1 is affine, so chart second partials equal the
    full second partials evaluated at the normalized coordinates; the chart
    row/column is simply deleted.
    """
    arity = len(point)
    coords = point.coordinates
    chart = point.chart
    hessian = [
        [partials[j].partial_derivative(k).evaluate(coords) for k in range(arity)]
        for j in range(arity)
    ]
    reduced = [
        [hessian[j][k] for k in range(arity) if k != chart]
        for j in range(arity)
        if j != chart
    ]
    return exact_rank(reduced)


def analyze_singularities(f: MultiPoly, candidate_points=()) -> SingularityReport:
    """Locus dimension, point verification/classification, completeness.

    Candidates must lie on V(f) (error otherwise).  A candidate where some
    partial is nonzero is not an error: it is flagged in `notes` and left
    unverified.  Node classification requires all partials to vanish and the
    chart Hessian to have full rank, both exactly over Q.
    """
    partials = jacobian_ideal(f)
    arity = f.arity
    locus = _singular_locus_dimension(f, partials)

    classified = []
    notes = []
    for pt in sorted(set(candidate_points)):
        if len(pt) != arity:
            raise SingularError(
                f"candidate {pt} has {len(pt)} coordinates, expected {arity}"
            )
        if f.evaluate(pt.coordinates) != 0:
            raise SingularError(f"candidate {pt} does not lie on the hypersurface")
        gradient = [g.evaluate(pt.coordinates) for g in partials]
        if any(gradient):
            classified.append((pt, UNVERIFIED))
            notes.append(f"candidate {pt} is a smooth point (nonzero gradient)")
            continue
        if locus > 0:
            classified.append((pt, UNVERIFIED))
            continue
        rank = _chart_hessian_rank(partials, pt)
        classified.append((pt, NODE if rank == arity - 1 else NON_NODE_ISOLATED))

    if locus > 0:
        if candidate_points:
            notes.append(
                "singular locus is positive-dimensional; no point classification attempted"
            )
        return SingularityReport(
            locus_dimension=locus,
            jacobian_quotient_degree=None,
            points=tuple(classified),
            complete=False,
            chart_degrees=None,
            notes=tuple(notes),
        )

    # degree accounting per affine chart
    chart_degrees = []
    for chart in range(arity):
        chart_gens = [dehomogenize(g, chart) for g in partials if not g.is_zero]
        gb = buchberger(chart_gens)
        chart_degrees.append(len(standard_monomials(gb)))

    nodes = [pt for pt, cls in classified if cls == NODE]
    visible = [sum(1 for pt in nodes if pt.coordinates[c]) for c in range(arity)]
    at_infinity = [len(nodes) - v for v in visible]
    degree = min(d + extra for d, extra in zip(chart_degrees, at_infinity))
    complete = all(cls == NODE for _, cls in classified) and all(
        d == v for d, v in zip(chart_degrees, visible)
    )
    return SingularityReport(
        locus_dimension=locus,
        jacobian_quotient_degree=degree,
        points=tuple(classified),
        complete=complete,
        chart_degrees=tuple(chart_degrees),
        notes=tuple(notes),
    )


def extendability(f: MultiPoly) -> bool:
    """Whether V(f) in P^{N-1} is a hyperplane section of a smooth hypersurface.

    Equivalent criterion: the singular locus has dimension <= 0 (isolated
    singularities or smooth).  Only the locus dimension is computed here;
    use analyze_singularities for the full certificate.
    """
    partials = jacobian_ideal(f)
    return _singular_locus_dimension(f, partials) <= 0
