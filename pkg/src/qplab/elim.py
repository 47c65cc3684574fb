"""Exact Gaussian elimination over Q(w).

Rows are sparse dictionaries keyed by column index.  Stored pivot rows are
scaled to integer coordinates (a, b) meaning a + b*w, and elimination uses
fraction-free cross-multiplication followed by content removal, which
keeps entries small without leaving exact arithmetic.  Each pivot column
is chosen as the entry of smallest coefficient size (ties broken by column
index); rows are always reduced against pivots in creation order, oldest
first, so reduction terminates even though pivot rows are not
back-substituted against later pivots.

With origin tracking on, each pivot row also remembers its expression over
the original input vectors, so a successful span test can report exact
coordinates.  Tracking costs rational arithmetic and is meant for modest
components.
"""

from __future__ import annotations

from math import gcd

from .errors import BudgetError
from .scalars import CycScalar

_CZERO = CycScalar(0)
_CONE = CycScalar(1)


def _int_mul(x, y):
    a1, b1 = x
    a2, b2 = y
    return (a1 * a2 - b1 * b2, a1 * b2 + a2 * b1 + b1 * b2)


def _row_from_scalars(row) -> dict:
    """Clear denominators: dict col -> CycScalar to dict col -> (int, int)."""
    lcm = 1
    for c in row.values():
        for d in (c.a.denominator, c.b.denominator):
            lcm = lcm // gcd(lcm, d) * d
    out = {}
    for k, c in row.items():
        a = c.a.numerator * (lcm // c.a.denominator)
        b = c.b.numerator * (lcm // c.b.denominator)
        if a or b:
            out[k] = (a, b)
    return out


def _content_reduce(row: dict) -> dict:
    g = 0
    for a, b in row.values():
        g = gcd(gcd(g, a), b)
        if g == 1:
            return row
    if g <= 1:
        return row
    return {k: (a // g, b // g) for k, (a, b) in row.items()}


def _coeff_size(entry) -> int:
    a, b = entry
    return a.bit_length() + b.bit_length()


class Eliminator:
    """Incremental row reduction; feed vectors, read off rank and spans."""

    def __init__(self, track_origins: bool = False):
        self.pivots = {}      # pivot column -> integer row
        self.created = {}     # pivot column -> creation index
        self.origins = {} if track_origins else None
        self.count_in = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _oldest_pivot_in(self, row):
        hit = None
        when = None
        for c in row:
            t = self.created.get(c)
            if t is not None and (when is None or t < when):
                hit, when = c, t
        return hit

    def _reduce_int_row(self, row: dict) -> dict:
        while row:
            hit = self._oldest_pivot_in(row)
            if hit is None:
                return row
            piv = self.pivots[hit]
            lp, lr = piv[hit], row[hit]
            new = {}
            for k in row.keys() | piv.keys():
                x = row.get(k)
                y = piv.get(k)
                if x is None:
                    a, b = _int_mul(lr, y)
                    v = (-a, -b)
                elif y is None:
                    v = _int_mul(lp, x)
                else:
                    a1, b1 = _int_mul(lp, x)
                    a2, b2 = _int_mul(lr, y)
                    v = (a1 - a2, b1 - b2)
                if v != (0, 0):
                    new[k] = v
            row = _content_reduce(new)
        return row

    def _store_pivot(self, int_row: dict):
        col = min(int_row, key=lambda k: (_coeff_size(int_row[k]), k))
        self.pivots[col] = int_row
        self.created[col] = len(self.created)
        return col

    def add(self, row: dict) -> bool:
        """Reduce a CycScalar row against the pivots; True when it extends
        the span (i.e. the row is independent of everything added so far)."""
        self.count_in += 1
        if self.origins is not None:
            return self._add_tracked(row)
        reduced = self._reduce_int_row(_content_reduce(_row_from_scalars(row)))
        if not reduced:
            return False
        self._store_pivot(reduced)
        return True

    def contains(self, row: dict) -> bool:
        """Span membership without changing the eliminator state."""
        return not self._reduce_int_row(_content_reduce(_row_from_scalars(row)))

    # -- origin-tracked variant (rational arithmetic) ----------------------

    def _reduce_fraction_row(self, row: dict):
        """Reduce a CycScalar row; returns (residual, combo) with
        row = residual + sum over pivot columns of combo[col] * pivot_row."""
        row = dict(row)
        combo = {}
        while True:
            hit = self._oldest_pivot_in(row)
            if hit is None:
                return row, combo
            piv = self.pivots[hit]
            pa, pb = piv[hit]
            factor = row[hit] / CycScalar(pa, pb)
            for k, (a, b) in piv.items():
                cur = row.get(k, _CZERO) - factor * CycScalar(a, b)
                if cur:
                    row[k] = cur
                else:
                    row.pop(k, None)
            combo[hit] = combo.get(hit, _CZERO) + factor

    def _add_tracked(self, row: dict) -> bool:
        residual, combo = self._reduce_fraction_row(row)
        if not residual:
            return False
        index = self.count_in - 1
        expr = {index: _CONE}
        for pcol, f in combo.items():
            for idx, g in self.origins[pcol].items():
                cur = expr.get(idx, _CZERO) - f * g
                if cur:
                    expr[idx] = cur
                else:
                    expr.pop(idx, None)
        int_row = _content_reduce(_row_from_scalars(residual))
        col = self._store_pivot(int_row)
        a, b = int_row[col]
        scale = CycScalar(a, b) / residual[col]
        self.origins[col] = {idx: g * scale for idx, g in expr.items()}
        return True

    def membership(self, target: dict):
        """Span membership of `target`; with origin tracking returns exact
        coordinates over the original vectors when the answer is yes."""
        residual, combo = self._reduce_fraction_row(target)
        if residual:
            return False, None
        if self.origins is None:
            return True, None
        coords = {}
        for pcol, f in combo.items():
            for idx, g in self.origins[pcol].items():
                cur = coords.get(idx, _CZERO) + f * g
                if cur:
                    coords[idx] = cur
                else:
                    coords.pop(idx, None)
        return True, coords


def rank_of_rows(rows, max_dim: int | None = None) -> int:
    elim = Eliminator()
    for row in rows:
        if max_dim is not None and len(row) > max_dim:
            raise BudgetError(f"row width {len(row)} exceeds budget {max_dim}")
        elim.add(row)
    return elim.rank


def vector_to_row(vec, index_of: dict) -> dict:
    """Translate a TensorVector/FockVector into a sparse coordinate row."""
    return {index_of[s]: c for s, c in vec.items()}
