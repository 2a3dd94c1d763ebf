"""Gröbner bases (Buchberger) and staircase queries over Q.

Supplies the commutative-algebra engine behind the singularity certificates:
reduced bases, normal forms, standard-monomial enumeration (Artinian quotient
dimensions), and Krull dimension of projective zero sets via the leading-term
ideal.  Intended scale is small ideals (a handful of variables, low degree);
no F4/F5, no modular tricks.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ToolError
from .polyring import (
    Monomial,
    MultiPoly,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

__all__ = [
    "GroebnerBasis",
    "IdealError",
    "MonomialOrder",
    "buchberger",
    "leading_monomial",
    "normal_form",
    "projective_dimension",
    "standard_monomials",
]


class IdealError(ToolError):
    code = "idealcalc.invalid"


class MonomialOrder(enum.Enum):
    """Global monomial orders; GREVLEX is the default everywhere."""

    GREVLEX = "grevlex"
    LEX = "lex"

    def key(self, m: Monomial):
        """Sort key: m1 > m2 in the order iff key(m1) > key(m2)."""
        if self is MonomialOrder.LEX:
            return m
        # graded, ties broken by smallest trailing exponent difference
        return (sum(m), tuple(-e for e in reversed(m)))


def leading_monomial(p: MultiPoly, order: MonomialOrder) -> Monomial:
    if p.is_zero:
        raise IdealError("zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


def _monic(p: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lc = p.terms[leading_monomial(p, order)]
    return p if lc == 1 else p * (1 / lc)


def _reduce_full(p: MultiPoly, reducers, order: MonomialOrder) -> MultiPoly:
    """Full normal form of p against (lead monomial, poly) reducers."""
    work = dict(p.terms)
    remainder: dict = {}
    zero = Fraction(0)
    while work:
        m = max(work, key=order.key)
        c = work[m]
        for lm, g in reducers:
            if monomial_divides(lm, m):
                shift = monomial_div(m, lm)
                factor = c / g.terms[lm]
                for gm, gc in g.terms.items():
                    key = monomial_mul(gm, shift)
                    v = work.get(key, zero) - factor * gc
                    if v:
                        work[key] = v
                    elif key in work:
                        del work[key]
                break
        else:
            remainder[m] = c
            del work[m]
    return MultiPoly(p.arity, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    l = monomial_lcm(lf, lg)
    mf = MultiPoly(f.arity, {monomial_div(l, lf): 1 / f.terms[lf]})
    mg = MultiPoly(g.arity, {monomial_div(l, lg): 1 / g.terms[lg]})
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis: monic generators, no redundant terms."""

    generators: tuple
    order: MonomialOrder

    @property
    def arity(self) -> int:
        return self.generators[0].arity

    def leading_monomials(self) -> list:
        return [leading_monomial(g, self.order) for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def serialize(self) -> str:
        lines = [f"order: {self.order.value}"]
        lines.extend(str(g) for g in self.generators)
        return "\n".join(lines) + "\n"


def buchberger(gens, order: MonomialOrder = MonomialOrder.GREVLEX) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by `gens`.

    Uses a degree-sorted pair queue with both classical pair-skipping
    criteria (coprime leading terms, chain).  Coefficients are reduced
    Fractions after every elementary step.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise IdealError("need at least one nonzero generator")
    arity = gens[0].arity
    if any(g.arity != arity for g in gens):
        raise IdealError("generators live in different rings")

    basis = []
    for g in gens:
        g = _monic(g, order)
        if g not in basis:
            basis.append(g)
    leads = [leading_monomial(g, order) for g in basis]

    pending = set()
    queue: list = []
    for i in range(len(basis)):
        for j in range(i):
            pair = (j, i)
            pending.add(pair)
            heapq.heappush(queue, (sum(monomial_lcm(leads[j], leads[i])), pair))

    while queue:
        _, pair = heapq.heappop(queue)
        if pair not in pending:
            continue
        pending.discard(pair)
        i, j = pair
        li, lj = leads[i], leads[j]
        l = monomial_lcm(li, lj)
        # coprime leading terms: S-polynomial reduces to zero
        if l == monomial_mul(li, lj):
            continue
        # chain criterion: some k divides the lcm and both cross pairs are done
        skip = False
        for k in range(len(basis)):
            if k in pair or not monomial_divides(leads[k], l):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pending and pjk not in pending:
                skip = True
                break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j], order)
        r = _reduce_full(s, list(zip(leads, basis)), order)
        if r.is_zero:
            continue
        r = _monic(r, order)
        basis.append(r)
        leads.append(leading_monomial(r, order))
        t = len(basis) - 1
        for k in range(t):
            pair = (k, t)
            pending.add(pair)
            heapq.heappush(queue, (sum(monomial_lcm(leads[k], leads[t])), pair))

    return GroebnerBasis(tuple(_autoreduce(basis, order)), order)


def _autoreduce(basis, order: MonomialOrder):
    # minimalize: drop generators whose lead is divisible by another's lead
    ordered = sorted(basis, key=lambda g: order.key(leading_monomial(g, order)))
    minimal = []
    minimal_leads = []
    for g in ordered:
        lm = leading_monomial(g, order)
        if any(monomial_divides(l, lm) for l in minimal_leads):
            continue
        minimal.append(g)
        minimal_leads.append(lm)
    # tail-reduce each generator against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = [
                (minimal_leads[k], minimal[k]) for k in range(len(minimal)) if k != i
            ]
            r = _monic(_reduce_full(minimal[i], others, order), order)
            if r != minimal[i]:
                minimal[i] = r
                changed = True
    minimal.sort(key=lambda g: order.key(leading_monomial(g, order)), reverse=True)
    return minimal


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Unique remainder of p modulo the ideal: no term divisible by a lead."""
    if p.arity != gb.arity:
        raise IdealError(f"arity mismatch: {p.arity} vs {gb.arity}")
    reducers = list(zip(gb.leading_monomials(), gb.generators))
    return _reduce_full(p, reducers, gb.order)


def standard_monomials(gb: GroebnerBasis, cap=None) -> list:
    """Monomials under the staircase, by degree (quotient basis when finite).

    Without `cap` the staircase must be finite (Artinian quotient); the list
    length is then the quotient's vector-space dimension.  With `cap`, all
    standard monomials of degree <= cap are returned.
    """
    leads = gb.leading_monomials()
    arity = gb.arity
    if any(sum(lm) == 0 for lm in leads):
        return []  # unit ideal
    if cap is None:
        finite = all(
            any(lm[i] and sum(lm) == lm[i] for lm in leads) for i in range(arity)
        )
        if not finite:
            raise IdealError("staircase is infinite; supply a degree cap")
    out = []
    level = [(0,) * arity]
    degree = 0
    while level and (cap is None or degree <= cap):
        out.extend(level)
        degree += 1
        if cap is not None and degree > cap:
            break
        nxt = set()
        for m in level:
            for i in range(arity):
                bumped = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if not any(monomial_divides(lm, bumped) for lm in leads):
                    nxt.add(bumped)
        level = sorted(nxt, reverse=True)
    return out


def projective_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the projective zero set; -1 when it is empty.

    Computed as (size of the largest variable subset independent modulo the
    leading-term ideal) - 1, searching subsets largest-first.  Exhaustive in
    the arity, which is fine at this package's working scale.
    """
    if any(not g.is_homogeneous for g in gb.generators):
        raise IdealError("projective dimension needs homogeneous generators")
    leads = gb.leading_monomials()
    if any(sum(lm) == 0 for lm in leads):
        return -1  # unit ideal: empty cone
    arity = gb.arity
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in leads]
    for size in range(arity, 0, -1):
        for subset in combinations(range(arity), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size - 1
    return -1  # only the empty subset is independent: cone is the origin
