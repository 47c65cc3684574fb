"""Quasi-particle monomials, their enumeration and the exact rank audits.

A monomial is a product of Heisenberg modes, charge-1 factors and charge-2
factors with negative indices; the admissible ones satisfy residue, gap
and boundary constraints whose generating function matches the graded
dimension of the level-3 module.  The audits check, degree by degree and
entirely over Q(w), that the admissible monomial vectors are independent
and that they already span everything the unrestricted monomials reach.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elim import Eliminator, vector_to_row
from .errors import BudgetError, PreconditionError
from .lattice import ALPHA
from .level3 import Level3, TensorVector
from .qseries import minimal_energy, product_side


@dataclass(frozen=True)
class QPMonomial:
    """heis/c1/c2 carry the mode indices, ascending, all negative."""

    heis: tuple = ()
    c1: tuple = ()
    c2: tuple = ()

    # -- statistics ------------------------------------------------------

    def color_type(self):
        return (len(self.c1), len(self.c2))

    def total_charge(self):
        return len(self.c1) + 2 * len(self.c2)

    def degree(self):
        """Total scaled degree: sum of |index| over all factors."""
        return -(sum(self.heis) + sum(self.c1) + sum(self.c2))

    def degree_type(self):
        return (self.c1, self.c2)

    # -- validity ---------------------------------------------------------

    def ordering_ok(self):
        return all(
            list(part) == sorted(part) and all(i < 0 for i in part)
            for part in (self.heis, self.c1, self.c2)
        )

    def residues_ok(self):
        return all(i % 6 in (1, 5) for i in (-j for j in self.heis)) and all(
            k % 3 == 0 for k in self.c2
        )

    def differences_ok(self):
        return all(
            self.c1[p] <= self.c1[p + 1] - 4 for p in range(len(self.c1) - 1)
        ) and all(self.c2[p] <= self.c2[p + 1] - 12 for p in range(len(self.c2) - 1))

    def initial_ok(self):
        t = len(self.c2)
        if self.c1 and self.c1[-1] > -2 - 6 * t:
            return False
        if self.c2 and self.c2[-1] > -6:
            return False
        return True

    def is_valid(self):
        return (
            self.ordering_ok()
            and self.residues_ok()
            and self.differences_ok()
            and self.initial_ok()
        )

    def label(self):
        bits = [f"a({i})" for i in self.heis]
        bits += [f"x1({j})" for j in self.c1]
        bits += [f"x2({k})" for k in self.c2]
        return "*".join(bits) if bits else "1"


# -- enumeration ----------------------------------------------------------


def _descending_lists(budget, start, gap, residue_mod=None):
    """Ascending index lists (i1 <= ... <= last <= start), adjacent entries
    at least `gap` apart, total |index| <= budget; yields tuples."""
    out = [()]

    def rec(last_allowed, remaining, acc):
        k = last_allowed
        while -k <= remaining:
            if residue_mod is None or k % residue_mod == 0:
                acc.append(k)
                out.append(tuple(reversed(acc)))
                rec(k - gap, remaining + k, acc)
                acc.pop()
            k -= 1
        return

    rec(start, budget, [])
    return out


def _heis_partitions(n):
    """Ascending tuples of negative indices = -(+-1 mod 6 parts), summing to -n."""
    parts = [p for p in range(1, n + 1) if p % 6 in (1, 5)]

    def rec(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for p in parts:
            if p > remaining or p > max_part:
                break
            for rest in rec(remaining - p, p):
                yield rest + (p,)

    if n == 0:
        return [()]
    return [tuple(-p for p in reversed(s)) for s in rec(n, n)]


def enumerate_basis_monomials(n):
    """All admissible monomials of total scaled degree n, deterministically
    ordered.  Charge-2 lists are pruned by their minimal energy 6t^2 and
    charge-1 lists by 2s^2 + 6st."""
    if n < 0:
        raise PreconditionError("degree must be nonnegative")
    out = []
    for c2 in _descending_lists(n, -6, 12, residue_mod=3):
        t = len(c2)
        k_deg = -sum(c2)
        for c1 in _descending_lists(n - k_deg, -2 - 6 * t, 4):
            j_deg = -sum(c1)
            for heis in _heis_partitions(n - k_deg - j_deg):
                out.append(QPMonomial(heis=heis, c1=c1, c2=c2))
    out.sort(key=paper_sort_key)
    return out


def enumerate_unrestricted_monomials(n):
    """The PBW spanning family at degree n: Heisenberg modes (indices
    = +-1 mod 6) times arbitrary sorted charge-1 factors, no gap or
    boundary conditions.  Charge-2 factors are omitted: they are limits of
    charge-1 products, so they add nothing to the span."""
    out = []
    for j_deg in range(n + 1):
        for c1 in _partitions_all(j_deg):
            for heis in _heis_partitions(n - j_deg):
                out.append(QPMonomial(heis=heis, c1=c1, c2=()))
    return out


def _partitions_all(n):
    """Ascending tuples of negative indices summing to -n (all partitions)."""

    def rec(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for p in range(1, min(remaining, max_part) + 1):
            for rest in rec(remaining - p, p):
                yield rest + (p,)

    if n == 0:
        return [()]
    return [tuple(-p for p in reversed(s)) for s in rec(n, n)]


# -- the linear order ------------------------------------------------------


def _revlex_key(t):
    """Key for 'less in reverse lexicographic order': compare right to
    left, a proper prefix (after reversal) counting as smaller.  Lengths
    only differ in the Heisenberg tiebreak, where any fixed convention
    gives a total order."""
    return tuple(reversed(t))


def _revlex_less(u, v):
    return _revlex_key(u) < _revlex_key(v)


def compare_order(m: QPMonomial, mp: QPMonomial) -> int:
    """The paper-facing order on monomials: -1 when m <= m' strictly, 0 on
    equality, +1 otherwise.  Greater total charge compares as prior, then
    color-type and degree-type in reverse lexicographic order, and equal
    quasi-particle parts are broken by the Heisenberg degree-type."""
    if m == mp:
        return 0
    c, cp = m.total_charge(), mp.total_charge()
    if c != cp:
        return -1 if c > cp else 1
    ct, ctp = m.color_type(), mp.color_type()
    if ct != ctp:
        return -1 if _revlex_less(ct, ctp) else 1
    dt, dtp = m.c1 + m.c2, mp.c1 + mp.c2
    if dt != dtp:
        return -1 if _revlex_less(dt, dtp) else 1
    return -1 if _revlex_less(m.heis, mp.heis) else 1


def paper_sort_key(m: QPMonomial):
    """Sort key realizing `compare_order` (prior monomials first)."""
    return (
        -m.total_charge(),
        _revlex_key(m.color_type()),
        _revlex_key(m.c1 + m.c2),
        _revlex_key(m.heis),
    )


def intuitive_compare(m: QPMonomial, mp: QPMonomial) -> int:
    """compare_order with the sign flipped on strict comparisons, so that
    lower charge comes first; avoids sign confusion in reports."""
    return -compare_order(m, mp)


# -- monomial application and audits ---------------------------------------


def apply_monomial(ctx: Level3, m: QPMonomial) -> TensorVector:
    """Right-to-left application to the highest weight vector: first the
    charge-2 factors, then charge-1, then the Heisenberg modes."""
    w = TensorVector.vacuum()
    for k in reversed(m.c2):
        w = ctx.x2(k, w)
        if not w:
            return w
    for j in reversed(m.c1):
        w = ctx.x1(j, w)
        if not w:
            return w
    for i in reversed(m.heis):
        w = ctx.heis3(ALPHA, i, w)
        if not w:
            return w
    return w


def rank_of(ctx: Level3, vectors, degree: int) -> int:
    """Exact rank of homogeneous tensor vectors of the given degree."""
    index_of = {s: i for i, s in enumerate(ctx.graded_component_basis(degree))}
    elim = Eliminator()
    for v in vectors:
        if v and v.degree() != degree:
            raise PreconditionError("rank_of requires homogeneous vectors of the degree")
        elim.add(vector_to_row(v, index_of))
    return elim.rank


@dataclass
class RankAudit:
    degree: int
    restricted_count: int
    character_coefficient: int
    restricted_rank: int
    unrestricted_rank: int
    ambient_dimension: int
    verdict: bool

    def to_json(self):
        return {
            "degree": self.degree,
            "restricted_count": self.restricted_count,
            "character_coefficient": self.character_coefficient,
            "restricted_rank": self.restricted_rank,
            "unrestricted_rank": self.unrestricted_rank,
            "ambient_dimension": self.ambient_dimension,
            "verdict": "pass" if self.verdict else "fail",
        }


def rank_audit(ctx: Level3, n: int, max_dim: int = 5000) -> RankAudit:
    """Audit one degree: the admissible count must equal the character
    coefficient, the admissible vectors must be independent, the
    unrestricted family must have the same rank, and the admissible span
    must contain every unrestricted vector (span equality, not just equal
    dimensions)."""
    component = ctx.graded_component_basis(n)
    if len(component) > max_dim:
        raise BudgetError(
            f"component dimension {len(component)} at degree {n} exceeds budget {max_dim}"
        )
    index_of = {s: i for i, s in enumerate(component)}
    coeff = product_side(n)[n]

    restricted_rows = [
        vector_to_row(apply_monomial(ctx, m), index_of)
        for m in enumerate_basis_monomials(n)
    ]
    elim_r = Eliminator()
    for row in restricted_rows:
        elim_r.add(dict(row))
    restricted_rank = elim_r.rank

    elim_u = Eliminator()
    for m in enumerate_unrestricted_monomials(n):
        elim_u.add(vector_to_row(apply_monomial(ctx, m), index_of))
    unrestricted_rank = elim_u.rank

    # span containment: no admissible vector may escape the PBW span
    escaped = sum(1 for row in restricted_rows if elim_u.add(dict(row)))

    verdict = (
        restricted_rank == len(restricted_rows) == coeff == unrestricted_rank
        and escaped == 0
    )
    return RankAudit(
        degree=n,
        restricted_count=len(restricted_rows),
        character_coefficient=coeff,
        restricted_rank=restricted_rank,
        unrestricted_rank=unrestricted_rank,
        ambient_dimension=len(component),
        verdict=verdict,
    )


def bivariate_census(nmax: int):
    """Counts of admissible (c1, c2)-only monomials by (degree, color-type).

    Returns dict[(n1, n2)] -> list of counts indexed by degree 0..nmax.
    """
    table = {}
    for m in enumerate_basis_monomials_range(nmax):
        if m.heis:
            continue
        key = m.color_type()
        row = table.setdefault(key, [0] * (nmax + 1))
        row[m.degree()] += 1
    # color types reachable within the bound but unused still get rows
    n1 = 0
    while minimal_energy(n1, 0) <= nmax:
        n2 = 0
        while minimal_energy(n1, n2) <= nmax:
            table.setdefault((n1, n2), [0] * (nmax + 1))
            n2 += 1
        n1 += 1
    return table


def enumerate_basis_monomials_range(nmax: int):
    for n in range(nmax + 1):
        yield from enumerate_basis_monomials(n)
