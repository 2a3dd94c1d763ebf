"""Verdict engine: Betti palindromicity, local IH dimensions, obstructions.

The logic is strictly one-directional.  A failed palindromicity test rules
out a flat regular compactification (or one with irreducible fibers); a
passed test rules out nothing, and NO_OBSTRUCTION_FOUND never asserts that a
compactification exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ToolError

__all__ = [
    "UNKNOWN",
    "BettiVector",
    "BudgetLine",
    "CorobResult",
    "DISCLAIMER",
    "Hypotheses",
    "IHProfile",
    "InputInconsistentError",
    "ObstructError",
    "ObstructionVerdict",
    "Outcome",
    "Witness",
    "budget_check",
    "corob_check",
    "ih_from_betti",
    "is_palindromic",
    "is_weakly_palindromic",
    "verdict",
    "verdict_report",
]


class ObstructError(ToolError):
    code = "obstruct.invalid"


class HypothesisError(ObstructError):
    code = "obstruct.hypothesis"


class InputInconsistentError(ObstructError):
    """A negative Betti difference contradicts the asserted hypotheses."""

    code = "obstruct.input_inconsistent"


#: Marker for an unknown middle Betti number (never consulted by verdicts).
UNKNOWN = None

DISCLAIMER = (
    "One-directional check: the verdicts rule compactifications out; "
    "NO_OBSTRUCTION_FOUND does not assert that a compactification exists."
)


@dataclass(frozen=True)
class BettiVector:
    """b_0..b_{2n} of an n-dimensional section; the middle entry may be UNKNOWN."""

    n: int
    entries: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ObstructError(f"dimension must be a positive integer, got {self.n!r}")
        entries = tuple(self.entries)
        if len(entries) != 2 * self.n + 1:
            raise ObstructError(
                f"expected {2 * self.n + 1} entries for dimension {self.n}, got {len(entries)}"
            )
        for m, value in enumerate(entries):
            if value is UNKNOWN:
                if m != self.n:
                    raise ObstructError("only the middle entry may be UNKNOWN")
                continue
            if not isinstance(value, int) or value < 0:
                raise ObstructError(f"b_{m} must be a nonnegative integer, got {value!r}")
        if entries[0] < 1:
            raise ObstructError("b_0 must be at least 1")
        object.__setattr__(self, "entries", entries)

    def b(self, m: int):
        """b_m, reading entries outside [0, 2n] as 0."""
        if m < 0 or m > 2 * self.n:
            return 0
        return self.entries[m]

    @property
    def middle(self):
        return self.entries[self.n]

    def with_middle(self, value) -> "BettiVector":
        entries = list(self.entries)
        entries[self.n] = value
        return BettiVector(self.n, tuple(entries))

    def to_json(self) -> list:
        return list(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join("?" if v is UNKNOWN else str(v) for v in self.entries) + ")"


class Witness(NamedTuple):
    """A failed comparison b_{n+k} vs b_{n-k}."""

    k: int
    b_plus: int
    b_minus: int


@dataclass(frozen=True)
class Hypotheses:
    """Caller-asserted mathematical hypotheses; the tool cannot prove them."""

    H_nonconstant: bool
    abelian_scheme: bool

    def to_json_dict(self) -> dict:
        return {"H_nonconstant": self.H_nonconstant, "abelian_scheme": self.abelian_scheme}


@dataclass(frozen=True)
class IHProfile:
    """dim IH^j for j = 1..n; index 0 is None (not computed from Betti data)."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(self.dims)
        if not dims or dims[0] is not None:
            raise ObstructError("IHProfile.dims[0] must be None (IH^0 is not computed)")
        if any(not isinstance(d, int) or d < 0 for d in dims[1:]):
            raise ObstructError("IH dimensions must be nonnegative integers")
        object.__setattr__(self, "dims", dims)

    def to_json(self) -> list:
        return list(self.dims)


def _witnesses(b: BettiVector, min_k: int) -> tuple:
    out = []
    for k in range(min_k, b.n + 1):
        plus, minus = b.b(b.n + k), b.b(b.n - k)
        if plus != minus:
            out.append(Witness(k, plus, minus))
    return tuple(out)


def is_palindromic(b: BettiVector) -> bool:
    """b_{n+k} == b_{n-k} for all k >= 1 (the middle entry is never consulted)."""
    return not _witnesses(b, 1)


def is_weakly_palindromic(b: BettiVector) -> bool:
    """b_{n+k} == b_{n-k} for all k > 1."""
    return not _witnesses(b, 2)


def ih_from_betti(b: BettiVector, H_nonconstant: bool) -> IHProfile:
    """Local IH dimensions at the section's parameter point, from Betti differences.

    dim IH^k = b_{n+k} - b_{n-k} for k >= 1.  Requires the non-constancy
    hypothesis; any negative difference is an inconsistency error, never a
    clamped value.  IH^0 is not derivable this way and is reported as None.
    """
    if not H_nonconstant:
        raise HypothesisError(
            "refusing to apply the Betti-difference formula: "
            "it requires the non-constant variation hypothesis (H_nonconstant=true)"
        )
    dims = [None]
    for k in range(1, b.n + 1):
        diff = b.b(b.n + k) - b.b(b.n - k)
        if diff < 0:
            raise InputInconsistentError(
                f"b_{b.n + k} - b_{b.n - k} = {diff} < 0 contradicts the asserted hypotheses"
            )
        dims.append(diff)
    return IHProfile(tuple(dims))


class Outcome(enum.Enum):
    NO_OBSTRUCTION_FOUND = "NO_OBSTRUCTION_FOUND"
    NO_IRREDUCIBLE_FIBER_COMPACTIFICATION = "NO_IRREDUCIBLE_FIBER_COMPACTIFICATION"
    NO_FLAT_COMPACTIFICATION = "NO_FLAT_COMPACTIFICATION"

    @property
    def strength(self) -> int:
        order = [
            Outcome.NO_OBSTRUCTION_FOUND,
            Outcome.NO_IRREDUCIBLE_FIBER_COMPACTIFICATION,
            Outcome.NO_FLAT_COMPACTIFICATION,
        ]
        return order.index(self)


@dataclass(frozen=True)
class ObstructionVerdict:
    weakly_palindromic: bool
    palindromic: bool
    verdict: Outcome
    evidence: tuple
    hypotheses: Hypotheses
    disclaimer: str = DISCLAIMER


def verdict(b: BettiVector, hypotheses: Hypotheses) -> ObstructionVerdict:
    """Decide the obstruction outcome for a section's Betti vector.

    Both hypothesis flags must be asserted true by the caller; the middle
    Betti entry is never consulted.
    """
    if not hypotheses.H_nonconstant or not hypotheses.abelian_scheme:
        missing = [
            name
            for name, ok in [
                ("H_nonconstant", hypotheses.H_nonconstant),
                ("abelian_scheme", hypotheses.abelian_scheme),
            ]
            if not ok
        ]
        raise HypothesisError(
            "refusing to emit a verdict: the obstruction corollaries require "
            f"hypotheses asserted true, missing: {', '.join(missing)}"
        )
    all_witnesses = _witnesses(b, 1)
    weak_witnesses = tuple(w for w in all_witnesses if w.k > 1)
    weakly = not weak_witnesses
    pal = not all_witnesses
    if not weakly:
        outcome = Outcome.NO_FLAT_COMPACTIFICATION
        evidence = weak_witnesses
    elif not pal:
        outcome = Outcome.NO_IRREDUCIBLE_FIBER_COMPACTIFICATION
        evidence = all_witnesses
    else:
        outcome = Outcome.NO_OBSTRUCTION_FOUND
        evidence = ()
    return ObstructionVerdict(
        weakly_palindromic=weakly,
        palindromic=pal,
        verdict=outcome,
        evidence=evidence,
        hypotheses=hypotheses,
    )


def verdict_report(b: BettiVector, hypotheses: Hypotheses) -> dict:
    """Verdict plus IH profile in the wire JSON schema."""
    v = verdict(b, hypotheses)
    ih = ih_from_betti(b, hypotheses.H_nonconstant)
    return {
        "verdict": v.verdict.value,
        "weakly_palindromic": v.weakly_palindromic,
        "palindromic": v.palindromic,
        "ih_dims": ih.to_json(),
        "witnesses": [
            {"k": w.k, "b_plus": w.b_plus, "b_minus": w.b_minus} for w in v.evidence
        ],
        "hypotheses": hypotheses.to_json_dict(),
        "disclaimer": v.disclaimer,
    }


class VanishingWitness(NamedTuple):
    """Nonvanishing table entry that triggers an exclusion."""

    j: int
    k: int
    dim: int
    reason: str


@dataclass(frozen=True)
class CorobResult:
    flat_excluded: bool
    irreducible_excluded: bool
    witnesses: tuple

    def to_json_dict(self) -> dict:
        return {
            "flat_excluded": self.flat_excluded,
            "irreducible_excluded": self.irreducible_excluded,
            "witnesses": [
                {"j": w.j, "k": w.k, "dim": w.dim, "reason": w.reason}
                for w in self.witnesses
            ],
        }


def corob_check(ih_table: dict, n: int) -> CorobResult:
    """Vanishing checks on a table (j, k) -> dim IH^j_s(R^k).

    Flat compactifications force all entries with j+k > 2n to vanish;
    irreducible fibers additionally force IH^j(R^{2n-j}) = 0 for j > 0 and
    IH^0(R^{2n}) = 1.  The (0, 2n) entry is only tested when supplied:
    absence means "not asserted", since the local-invariant dimension is
    always at least 1 and cannot honestly be 0.
    """
    witnesses = []
    flat_excluded = False
    for (j, k), dim in sorted(ih_table.items()):
        if dim < 0:
            raise ObstructError(f"table entry ({j}, {k}) is negative")
        if j + k > 2 * n and dim:
            flat_excluded = True
            witnesses.append(VanishingWitness(j, k, dim, "nonzero with j+k > 2n"))
    irreducible_excluded = flat_excluded
    for (j, k), dim in sorted(ih_table.items()):
        if j > 0 and j + k == 2 * n and dim:
            irreducible_excluded = True
            witnesses.append(
                VanishingWitness(j, k, dim, "nonzero with j > 0 and j+k = 2n")
            )
    top = ih_table.get((0, 2 * n))
    if top is not None and top != 1:
        irreducible_excluded = True
        witnesses.append(
            VanishingWitness(0, 2 * n, top, "local invariants of R^{2n} not 1-dimensional")
        )
    return CorobResult(flat_excluded, irreducible_excluded, tuple(witnesses))


class BudgetLine(NamedTuple):
    """Per-degree comparison of summed IH dimensions against a fiber budget."""

    total: int
    budget: object  # int, or None when the fiber entry is UNKNOWN
    ok: object  # bool, or None when the budget is unknown
    slack: object  # budget - total when comparable


def budget_check(ih_by_jk: dict, fiber_betti: BettiVector) -> dict:
    """For each degree m: sum of dim IH^j(R^k) over j+k = m must fit in b_m.

    Returns {m: BudgetLine}.  Degrees come from the fiber vector's full range
    plus any table keys outside it (their budget is then 0).
    """
    totals: dict = {}
    for (j, k), dim in ih_by_jk.items():
        if dim < 0:
            raise ObstructError(f"table entry ({j}, {k}) is negative")
        totals[j + k] = totals.get(j + k, 0) + dim
    degrees = sorted(set(range(0, 2 * fiber_betti.n + 1)) | set(totals))
    out = {}
    for m in degrees:
        total = totals.get(m, 0)
        budget = fiber_betti.b(m)
        if budget is UNKNOWN:
            out[m] = BudgetLine(total, None, None, None)
        else:
            out[m] = BudgetLine(total, budget, total <= budget, budget - total)
    return out
