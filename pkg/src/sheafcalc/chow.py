"""Exact numerical intersection theory on Picard-rank-one threefolds.

All classes are encoded by the integers that survive pairing against powers
of the ample generator H: a sheaf is (rank, c1, c2.H, deg c3), a graded class
is four exact rationals (coefficients of 1, H, H^2, H^3).  Every operation is
a pure function over immutable values; nothing here ever touches floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

from .errors import (
    ArityError,
    DomainError,
    MissingInvariant,
    NonIntegralChernClass,
    NonIntegralChi,
    UnsupportedRank,
)

TX_STABLE = "stable"
TX_SEMISTABLE = "semistable"
TX_UNKNOWN = "unknown"
_TX_FLAGS = (TX_STABLE, TX_SEMISTABLE, TX_UNKNOWN)

MAX_RANK = 3  # twist/dual expansions are only needed (and coded) up to rank 3


def comb0(n: int, k: int) -> int:
    """Binomial coefficient clamped to 0 for n < k (including negative n)."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _gbinom(n: int, k: int) -> int:
    """Generalized binomial coefficient, exact for negative n as well."""
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class ThreefoldData:
    """Numerical profile of a smooth projective threefold with Pic = Z.H.

    h3 is the degree H^3; cX, c2TX_H, c3TX are c1(TX), c2(TX).H and deg c3(TX);
    rhoX is the smallest twist t with nonzero sections of the twisted cotangent
    bundle, gammaX the smallest twist making it globally generated.  Either may
    be None when not known, in which case operations needing them refuse to run.
    """

    name: str
    h3: int
    cX: int
    c2TX_H: int
    c3TX: int
    rhoX: int | None = None
    gammaX: int | None = None
    tx_stable: str = TX_UNKNOWN
    h1_line_vanishing: bool = True

    def __post_init__(self):
        if self.h3 < 1:
            raise DomainError(f"h3 must be >= 1, got {self.h3}")
        if self.rhoX is not None and self.rhoX < 1:
            raise DomainError(f"rhoX must be >= 1, got {self.rhoX}")
        if (
            self.rhoX is not None
            and self.gammaX is not None
            and self.gammaX < self.rhoX
        ):
            # global generation forces a nonzero section, so gamma >= rho
            raise DomainError(
                f"gammaX={self.gammaX} < rhoX={self.rhoX} is impossible"
            )
        if self.tx_stable not in _TX_FLAGS:
            raise DomainError(f"tx_stable must be one of {_TX_FLAGS}")
        if self.rhoX is not None:
            if self.tx_stable == TX_STABLE and not self.cX < 3 * self.rhoX:
                raise DomainError(
                    f"stable tangent bundle needs cX < 3*rhoX, got "
                    f"cX={self.cX}, rhoX={self.rhoX}"
                )
            if self.tx_stable == TX_SEMISTABLE and not self.cX <= 3 * self.rhoX:
                raise DomainError(
                    f"semistable tangent bundle needs cX <= 3*rhoX, got "
                    f"cX={self.cX}, rhoX={self.rhoX}"
                )

    @property
    def tangent_chern(self) -> "ChernData":
        return ChernData(3, self.cX, self.c2TX_H, self.c3TX)

    @property
    def is_p3(self) -> bool:
        """Whether the numerical profile is the one of projective 3-space."""
        return (self.h3, self.cX, self.c2TX_H, self.c3TX) == (1, 4, 6, 4)

    def require_rho(self) -> int:
        if self.rhoX is None:
            raise MissingInvariant(f"rhoX is not recorded for '{self.name}'")
        return self.rhoX

    def require_gamma(self) -> int:
        if self.gammaX is None:
            raise MissingInvariant(f"gammaX is not recorded for '{self.name}'")
        return self.gammaX


@dataclass(frozen=True)
class ChernData:
    """(rank, c1, c2.H, deg c3) of a sheaf, all exact integers."""

    rank: int
    c1: int
    n2: int
    n3: int

    def __post_init__(self):
        for field in ("rank", "c1", "n2", "n3"):
            if not isinstance(getattr(self, field), int):
                raise DomainError(f"{field} must be an integer")
        if self.rank < 0:
            raise DomainError(f"rank must be >= 0, got {self.rank}")

    def triple(self) -> tuple[int, int, int]:
        return (self.c1, self.n2, self.n3)


def line_chern(t: int) -> ChernData:
    """Chern data of the line bundle O(t)."""
    return ChernData(1, t, 0, 0)


ZERO_SHEAF = ChernData(0, 0, 0, 0)


@dataclass(frozen=True)
class ChowClass:
    """Graded rational class a0 + a1.H + a2.H^2 + a3.H^3, truncated in degree 3."""

    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction

    @staticmethod
    def of(a0, a1=0, a2=0, a3=0) -> "ChowClass":
        return ChowClass(Fraction(a0), Fraction(a1), Fraction(a2), Fraction(a3))

    @staticmethod
    def exp_divisor(t: int) -> "ChowClass":
        """exp(t.H) = 1 + tH + t^2/2 H^2 + t^3/6 H^3."""
        return ChowClass.of(1, t, Fraction(t * t, 2), Fraction(t**3, 6))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        return ChowClass(
            self.a0 + other.a0,
            self.a1 + other.a1,
            self.a2 + other.a2,
            self.a3 + other.a3,
        )

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return ChowClass(
            self.a0 - other.a0,
            self.a1 - other.a1,
            self.a2 - other.a2,
            self.a3 - other.a3,
        )

    def __mul__(self, other: "ChowClass") -> "ChowClass":
        u, v = self, other
        return ChowClass(
            u.a0 * v.a0,
            u.a0 * v.a1 + u.a1 * v.a0,
            u.a0 * v.a2 + u.a1 * v.a1 + u.a2 * v.a0,
            u.a0 * v.a3 + u.a1 * v.a2 + u.a2 * v.a1 + u.a3 * v.a0,
        )

    def top_degree(self, h3: int) -> Fraction:
        """Degree of the codimension-3 piece: pairing H^3 against the class."""
        return self.a3 * h3


def chern_to_ch(c: ChernData, X: ThreefoldData) -> ChowClass:
    """Chern character of a sheaf with the given Chern data.

    Valid for any rank on a threefold since only c1..c3 enter ch_0..ch_3.
    """
    h3 = X.h3
    return ChowClass(
        Fraction(c.rank),
        Fraction(c.c1),
        Fraction(c.c1**2 * h3 - 2 * c.n2, 2 * h3),
        Fraction(c.c1**3 * h3 - 3 * c.c1 * c.n2 + 3 * c.n3, 6 * h3),
    )


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegralChernClass(f"{what} = {x} is not an integer")
    return int(x)


def ch_to_chern(ch: ChowClass, X: ThreefoldData) -> ChernData:
    """Invert chern_to_ch via Newton's identities; bit-exact round trip.

    Raises NonIntegralChernClass when the input cannot come from an actual
    sheaf on X (non-integer rank or Chern numbers), which is how inconsistent
    declared exact sequences are detected.
    """
    h3 = X.h3
    rank = _as_int(ch.a0, "rank")
    if rank < 0:
        raise NonIntegralChernClass(f"rank = {rank} is negative")
    c1 = _as_int(ch.a1, "c1")
    n2 = _as_int(Fraction(c1**2, 2) * h3 - ch.a2 * h3, "c2.H")
    n3 = _as_int(
        2 * ch.a3 * h3 - Fraction(c1**3 * h3 - 3 * c1 * n2, 3), "deg c3"
    )
    return ChernData(rank, c1, n2, n3)


def todd_class(X: ThreefoldData) -> ChowClass:
    """td(X) = 1 + c1/2 + (c1^2 + c2)/12 + c1.c2/24, as a graded class."""
    h3 = X.h3
    return ChowClass(
        Fraction(1),
        Fraction(X.cX, 2),
        Fraction(X.cX**2 * h3 + X.c2TX_H, 12 * h3),
        Fraction(X.cX * X.c2TX_H, 24 * h3),
    )


def _chi_of_ch(ch: ChowClass, X: ThreefoldData) -> int:
    val = (ch * todd_class(X)).top_degree(X.h3)
    if val.denominator != 1:
        raise NonIntegralChi(f"chi = {val} is not an integer on '{X.name}'")
    return int(val)


def hrr_chi(c: ChernData, X: ThreefoldData) -> int:
    """Euler characteristic chi(E) = deg(ch(E).td(X))_3, exactly."""
    return _chi_of_ch(chern_to_ch(c, X), X)


def chi_at_twist(c: ChernData, t: int, X: ThreefoldData) -> int:
    """chi of the sheaf twisted by O(t), computed in the graded ring.

    Unlike twist_chern this has no rank cap: twisting is multiplication by
    exp(t.H) at the Chern-character level.
    """
    return _chi_of_ch(chern_to_ch(c, X) * ChowClass.exp_divisor(t), X)


def _check_rank(c: ChernData, op: str) -> None:
    if c.rank > MAX_RANK:
        raise UnsupportedRank(f"{op} supports rank <= {MAX_RANK}, got {c.rank}")


def twist_chern(c: ChernData, t: int, X: ThreefoldData) -> ChernData:
    """Chern data of the sheaf twisted by O(t); ranks up to 3 only.

    Generalized binomials keep the expansion consistent with Chern-character
    conjugation down to the degenerate rank-0 case.
    """
    _check_rank(c, "twist_chern")
    r, h3 = c.rank, X.h3
    return ChernData(
        r,
        c.c1 + r * t,
        c.n2 + (r - 1) * t * c.c1 * h3 + _gbinom(r, 2) * t * t * h3,
        c.n3
        + (r - 2) * t * c.n2
        + _gbinom(r - 1, 2) * t * t * c.c1 * h3
        + _gbinom(r, 3) * t**3 * h3,
    )


def dual_chern(c: ChernData) -> ChernData:
    """Formal dual: odd Chern classes flip sign.  Exact for locally free
    sheaves; rank-2 reflexive sheaves should use reflexive_dual_rank2, whose
    c3 does not flip."""
    _check_rank(c, "dual_chern")
    return ChernData(c.rank, -c.c1, c.n2, -c.n3)


def reflexive_dual_rank2(c: ChernData) -> ChernData:
    """Dual of a rank-2 reflexive sheaf: isomorphic to the sheaf twisted by
    -c1, so (2, c1, n2, n3) -> (2, -c1, n2, n3).  Independent of the threefold
    because the twist corrections to c2.H cancel exactly at t = -c1."""
    if c.rank != 2:
        raise UnsupportedRank(
            f"reflexive_dual_rank2 needs rank 2, got {c.rank}"
        )
    return ChernData(2, -c.c1, c.n2, c.n3)


def ses_third(
    a: ChernData | None,
    b: ChernData | None,
    c: ChernData | None,
    X: ThreefoldData,
) -> ChernData:
    """Third term of a short exact sequence 0 -> a -> b -> c -> 0.

    Exactly two of the three terms must be given; the missing one is recovered
    from additivity of the Chern character and must be integral.
    """
    known = [x is not None for x in (a, b, c)]
    if known.count(True) != 2:
        raise ArityError(
            "exactly two of the three sequence terms must be given"
        )
    if b is None:
        ch = chern_to_ch(a, X) + chern_to_ch(c, X)
    elif a is None:
        ch = chern_to_ch(b, X) - chern_to_ch(c, X)
    else:
        ch = chern_to_ch(b, X) - chern_to_ch(a, X)
    return ch_to_chern(ch, X)


def sum_chern(parts: list[ChernData], X: ThreefoldData) -> ChernData:
    """Whitney sum via additivity of the Chern character."""
    ch = ChowClass.of(0)
    for p in parts:
        ch = ch + chern_to_ch(p, X)
    return ch_to_chern(ch, X)


# ---------------------------------------------------------------------------
# Shipped presets and the JSON preset interface.

P3 = ThreefoldData("p3", 1, 4, 6, 4, rhoX=2, gammaX=2, tx_stable=TX_STABLE)
QUINTIC = ThreefoldData(
    "quintic", 5, 0, 50, -200, rhoX=2, gammaX=2, tx_stable=TX_STABLE
)
QUADRIC = ThreefoldData(
    "quadric", 2, 3, 8, 4, rhoX=None, gammaX=None, tx_stable=TX_UNKNOWN
)

PRESETS = {"p3": P3, "quintic": QUINTIC, "quadric": QUADRIC}

_SCHEMA = {
    "name": (str,),
    "h3": (int,),
    "cX": (int,),
    "c2TX_H": (int,),
    "c3TX": (int,),
    "rhoX": (int, type(None)),
    "gammaX": (int, type(None)),
    "tx_stable": (str,),
    "h1_line_vanishing": (bool,),
}


def threefold_from_dict(doc: dict) -> ThreefoldData:
    """Validate and build a ThreefoldData from its JSON document form."""
    if not isinstance(doc, dict):
        raise DomainError("threefold document must be a JSON object")
    missing = sorted(set(_SCHEMA) - set(doc))
    if missing:
        raise DomainError(f"threefold document missing keys: {missing}")
    extra = sorted(set(doc) - set(_SCHEMA))
    if extra:
        raise DomainError(f"threefold document has unknown keys: {extra}")
    for key, types in _SCHEMA.items():
        value = doc[key]
        if isinstance(value, bool) and bool not in types:
            raise DomainError(f"key '{key}' has wrong type {type(value).__name__}")
        if not isinstance(value, types):
            raise DomainError(f"key '{key}' has wrong type {type(value).__name__}")
    return ThreefoldData(
        name=doc["name"],
        h3=doc["h3"],
        cX=doc["cX"],
        c2TX_H=doc["c2TX_H"],
        c3TX=doc["c3TX"],
        rhoX=doc["rhoX"],
        gammaX=doc["gammaX"],
        tx_stable=doc["tx_stable"],
        h1_line_vanishing=doc["h1_line_vanishing"],
    )


def threefold_to_dict(X: ThreefoldData) -> dict:
    """Inverse of threefold_from_dict, with the documented key order."""
    return {
        "name": X.name,
        "h3": X.h3,
        "cX": X.cX,
        "c2TX_H": X.c2TX_H,
        "c3TX": X.c3TX,
        "rhoX": X.rhoX,
        "gammaX": X.gammaX,
        "tx_stable": X.tx_stable,
        "h1_line_vanishing": X.h1_line_vanishing,
    }


def load_threefold(path: str | Path) -> ThreefoldData:
    """Load a threefold profile from a JSON preset file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read threefold file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON in threefold file: {exc}") from exc
    return threefold_from_dict(doc)
