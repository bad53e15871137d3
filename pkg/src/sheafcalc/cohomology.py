"""Exact sheaf-cohomology dimensions on projective 3-space.

Atoms are handled by the closed Bott formula; declared short exact sequences
are handled by an interval-propagating dimension chaser over the induced long
exact sequence.  The chaser never guesses the rank of a connecting map: when
a rank is genuinely undetermined the answer stays an interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chow import (
    P3,
    ChernData,
    ThreefoldData,
    chi_at_twist,
    comb0,
    line_chern,
    ses_third,
    twist_chern,
)
from .errors import DomainError, Inconsistent, NotComputable

DIM = 3  # complex dimension of the ambient threefolds


@dataclass(frozen=True)
class DimEntry:
    """One cohomology dimension: known exactly, boxed in an interval, or unknown.

    Stored as a closed interval [lo, hi]; hi is None only in the canonical
    unknown entry [0, infinity).
    """

    lo: int
    hi: int | None

    def __post_init__(self):
        if self.lo < 0:
            raise DomainError("dimension lower bound must be >= 0")
        if self.hi is not None and self.hi < self.lo:
            raise DomainError("dimension interval is empty")
        if self.hi is None and self.lo != 0:
            raise DomainError("half-bounded entries are not representable")

    @staticmethod
    def known(n: int) -> "DimEntry":
        return DimEntry(n, n)

    @staticmethod
    def bounded(lo: int, hi: int) -> "DimEntry":
        return DimEntry(lo, hi)

    @staticmethod
    def unknown() -> "DimEntry":
        return DimEntry(0, None)

    @property
    def status(self) -> str:
        if self.hi is None:
            return "unknown"
        if self.hi == self.lo:
            return "known"
        return "bounded"

    @property
    def is_known(self) -> bool:
        return self.hi is not None and self.hi == self.lo

    @property
    def value(self) -> int:
        if not self.is_known:
            raise DomainError(f"entry {self} has no exact value")
        return self.lo

    def contains(self, n: int) -> bool:
        return self.lo <= n and (self.hi is None or n <= self.hi)

    def __add__(self, other: "DimEntry") -> "DimEntry":
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return _entry_of_interval(self.lo + other.lo, hi)

    def __str__(self):
        if self.hi is None:
            return "?"
        if self.hi == self.lo:
            return str(self.lo)
        return f"{self.lo}..{self.hi}"


def _entry_of_interval(lo: int, hi: int | None) -> DimEntry:
    # A half-bounded interval is reported as unknown: the table type only
    # distinguishes exact values, finite boxes and no information.
    if hi is None:
        return DimEntry.unknown()
    return DimEntry(lo, hi)


@dataclass
class CohomTable:
    """Map (i, twist) -> DimEntry for one sheaf, with its Chern data attached.

    The Chern data makes the Euler characteristic of every twist available to
    the chaser as an exact cross-check.
    """

    X: ThreefoldData
    chern: ChernData
    entries: dict[tuple[int, int], DimEntry] = field(default_factory=dict)
    label: str = ""

    def entry(self, i: int, t: int) -> DimEntry:
        return self.entries.get((i, t), DimEntry.unknown())

    def twists(self) -> list[int]:
        return sorted({t for (_, t) in self.entries})

    def chi(self, t: int) -> int:
        return chi_at_twist(self.chern, t, self.X)

    def column(self, t: int) -> tuple[DimEntry, ...]:
        return tuple(self.entry(i, t) for i in range(DIM + 1))

    def check_chi(self) -> None:
        """Raise Inconsistent if an all-known column contradicts chi."""
        for t in self.twists():
            col = self.column(t)
            if all(e.is_known for e in col):
                alt = sum((-1) ** i * col[i].value for i in range(DIM + 1))
                if alt != self.chi(t):
                    raise Inconsistent(
                        f"column at twist {t} sums to {alt}, chi is {self.chi(t)}"
                    )


# ---------------------------------------------------------------------------
# Closed formulas on P^3.


def bott_h(p: int, q: int, t: int) -> int:
    """h^q of the p-th twisted cotangent power on P^3, by the Bott formula."""
    if not (0 <= p <= DIM and 0 <= q <= DIM):
        raise DomainError(f"(p, q) = ({p}, {q}) out of range 0..{DIM}")
    if q == p and t == 0:
        return 1
    if q == 0 and t > p:
        return comb0(t + DIM - p, t) * comb0(t - 1, p)
    if q == DIM and t < p - DIM:
        return comb0(-t + p, -t) * comb0(-t - 1, DIM - p)
    return 0


def line_h(X: ThreefoldData, i: int, t: int) -> int:
    """h^i(O(t)): exact on P^3; elsewhere only the vanishing h^1 is known."""
    if X.is_p3:
        return bott_h(0, i, t)
    if i == 1 and X.h1_line_vanishing:
        return 0
    raise NotComputable(
        f"h^{i} of line bundles is not computable on '{X.name}'"
    )


def serre_tangent_h(q: int, t: int) -> int:
    """h^q of the twisted tangent bundle of P^3, through Serre duality."""
    return bott_h(1, DIM - q, -t - 4)


def omega_chern(p: int) -> ChernData:
    """Chern data of the p-th cotangent power on P^3."""
    if p == 0:
        return line_chern(0)
    if p == 1:
        return ChernData(3, -4, 6, -4)
    if p == 2:
        # second power = tangent bundle twisted by the canonical class
        return twist_chern(ChernData(3, 4, 6, 4), -4, P3)
    if p == 3:
        return line_chern(-4)
    raise DomainError(f"p = {p} out of range 0..{DIM}")


# ---------------------------------------------------------------------------
# Ready-made all-known tables for the atoms of the expression language.


def _filled_table(chern, label, values, lo, hi) -> CohomTable:
    entries = {}
    for t in range(lo, hi + 1):
        for i in range(DIM + 1):
            entries[(i, t)] = DimEntry.known(values(i, t))
    return CohomTable(P3, chern, entries, label)


def line_table(s: int, lo: int, hi: int) -> CohomTable:
    return _filled_table(
        line_chern(s), f"O({s})", lambda i, t: bott_h(0, i, s + t), lo, hi
    )


def omega1_table(lo: int, hi: int) -> CohomTable:
    return _filled_table(
        omega_chern(1), "Omega1", lambda i, t: bott_h(1, i, t), lo, hi
    )


def tangent_table(lo: int, hi: int) -> CohomTable:
    return _filled_table(
        ChernData(3, 4, 6, 4), "TX", lambda i, t: serre_tangent_h(i, t), lo, hi
    )


# ---------------------------------------------------------------------------
# The long-exact-sequence dimension chaser.
#
# For a short exact sequence A -> B -> C the twelve cohomology dimensions at a
# fixed twist sit in an exact chain x0 .. x11 (A^0, B^0, C^0, A^1, ...).
# Writing r[k] for the rank of the k-th map (r[0] = r[12] = 0 at the closed
# ends), exactness says x[k] = r[k] + r[k+1].  The chaser runs interval
# propagation over these equations plus the per-sheaf Euler characteristic,
# intersecting only, so it is sound, monotone and idempotent by construction.

_INF = None


def _iv_meet(a, b):
    lo = max(a[0], b[0])
    if a[1] is None:
        hi = b[1]
    elif b[1] is None:
        hi = a[1]
    else:
        hi = min(a[1], b[1])
    if hi is not None and lo > hi:
        raise Inconsistent("dimension propagation derived an empty interval")
    return (lo, hi)


def _iv_add(a, b):
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return (a[0] + b[0], hi)


def _iv_sub(a, b):
    # lower bound needs b's upper bound; unbounded b gives no information;
    # a negative upper bound is left in place for the meet to flag as empty
    lo = 0 if b[1] is None else max(0, a[0] - b[1])
    hi = None if a[1] is None else a[1] - b[0]
    return (lo, hi)


def _sig_add(a, b):
    # signed intervals: None means unbounded on that side
    lo = None if a[0] is None or b[0] is None else a[0] + b[0]
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return (lo, hi)


def _sig_neg(a):
    return (None if a[1] is None else -a[1], None if a[0] is None else -a[0])


def _chase_single_twist(xs, chis):
    """Narrow 12 dimension intervals constrained by one long exact sequence.

    xs: list of 12 (lo, hi) intervals in chain order; chis: the three exact
    Euler characteristics.  Returns the narrowed intervals.
    """
    xs = list(xs)
    rs = [(0, 0)] + [(0, _INF)] * 11 + [(0, 0)]
    changed = True
    while changed:
        changed = False

        def narrow(store, idx, new):
            nonlocal changed
            met = _iv_meet(store[idx], new)
            if met != store[idx]:
                store[idx] = met
                changed = True

        for k in range(12):
            narrow(xs, k, _iv_add(rs[k], rs[k + 1]))
            narrow(rs, k, _iv_sub(xs[k], rs[k + 1]))
            narrow(rs, k + 1, _iv_sub(xs[k], rs[k]))
        for j in range(3):
            # chi constraint per sheaf: x[j] - x[3+j] + x[6+j] - x[9+j] = chi_j
            for pos in range(4):
                sign = (-1) ** pos
                acc = (sign * chis[j], sign * chis[j])
                for k in range(4):
                    if k == pos:
                        continue
                    cell = xs[3 * k + j]
                    # solving for x_pos moves x_k across with sign -(-1)^k(-1)^pos
                    term = cell if (k - pos) % 2 == 1 else _sig_neg(cell)
                    acc = _sig_add(acc, term)
                lo = 0 if acc[0] is None else max(0, acc[0])
                narrow(xs, 3 * pos + j, (lo, acc[1]))
    return xs


def les_chase(
    tables: tuple[CohomTable, CohomTable, CohomTable],
) -> tuple[CohomTable, CohomTable, CohomTable]:
    """Propagate dimension constraints through a declared exact sequence.

    Takes the (already twisted) tables of the three terms and returns narrowed
    copies.  Entries are only ever tightened; an empty interval raises
    Inconsistent, signalling that the input data cannot sit in any exact
    sequence.
    """
    ta, tb, tc = tables
    X = ta.X
    if not (tb.X == X and tc.X == X):
        raise DomainError("the three tables must live on the same threefold")
    twists = sorted({t for table in tables for t in table.twists()})
    out = [dict(table.entries) for table in tables]
    for t in twists:
        xs = []
        for i in range(DIM + 1):
            for table in tables:
                e = table.entry(i, t)
                xs.append((e.lo, e.hi))
        chis = tuple(table.chi(t) for table in tables)
        narrowed = _chase_single_twist(xs, chis)
        for i in range(DIM + 1):
            for j in range(3):
                lo, hi = narrowed[3 * i + j]
                out[j][(i, t)] = _entry_of_interval(lo, hi)
    return tuple(
        CohomTable(table.X, table.chern, entries, table.label)
        for table, entries in zip(tables, out)
    )


# ---------------------------------------------------------------------------
# The cohomology of the tangent sheaf of a generic degree-d distribution,
# obtained from the sequence  0 -> O(-2d) -> Omega1(2-d) -> F -> 0.


def dist_sequence_tables(d: int, lo: int, hi: int) -> tuple[CohomTable, CohomTable, CohomTable]:
    """Tables of the defining sequence of a generic degree-d tangent sheaf,
    with the quotient left for the chaser to fill in."""
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    ta = line_table(-2 * d, lo, hi)
    tb = _shifted_omega1_table(2 - d, lo, hi)
    chern_f = ses_third(ta.chern, tb.chern, None, P3)
    tc = CohomTable(P3, chern_f, {}, f"F(d={d})")
    return ta, tb, tc


def _shifted_omega1_table(s: int, lo: int, hi: int) -> CohomTable:
    return _filled_table(
        twist_chern(omega_chern(1), s, P3),
        f"Omega1({s})",
        lambda i, t: bott_h(1, i, s + t),
        lo,
        hi,
    )


def generic_dist_cohom(d: int, p: int) -> dict[int, DimEntry]:
    """All four cohomology dimensions of F(p) for a generic degree-d
    distribution on P^3.

    h^0 and h^1 are closed forms valid for every p; h^2 and h^3 are closed
    forms for p >= d-4 and fall back to the sequence chaser below that, where
    an undetermined connecting map can leave them boxed.
    """
    if d < 0:
        raise DomainError(f"degree must be >= 0, got {d}")
    h0 = max(0, bott_h(1, 0, p + 2 - d) - comb0(p - 2 * d + 3, 3))
    h1 = 1 if p == d - 2 else 0
    result = {0: DimEntry.known(h0), 1: DimEntry.known(h1)}
    if p >= d - 4:
        result[2] = DimEntry.known(comb0(2 * d - p - 1, 3))
        result[3] = DimEntry.known(0)
        return result
    chased = les_chase(dist_sequence_tables(d, p, p))[2]
    result[2] = chased.entry(2, p)
    result[3] = chased.entry(3, p)
    return result
