"""A small expression language for sheaves built from atoms and declared
short exact sequences.

Grammar (whitespace-insensitive)::

    expr  := term ("+" term)*
    term  := "twist" "(" expr "," int ")"
           | "dual" "(" expr ")"
           | "rdual" "(" expr ")"
           | "coker" "(" expr "->" expr ")"
           | "ker" "(" expr "->" expr ")"
           | atom
    atom  := "O" "(" int ")" | "TX" [ "(" int ")" ] | "Omega1" [ "(" int ")" ]
           | ident

``TX(t)`` and ``Omega1(t)`` are shorthand for twists.  A kernel or cokernel
node declares that an exact sequence with unspecified maps exists; the engine
evaluates the numerical consequences and never checks that a map does.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import cohomology as coh
from .chow import (
    P3,
    ChernData,
    ThreefoldData,
    dual_chern,
    line_chern,
    reflexive_dual_rank2,
    ses_third,
    sum_chern,
    twist_chern,
)
from .cohomology import CohomTable, DimEntry, les_chase
from .errors import (
    DomainError,
    DslSyntaxError,
    NotComputable,
    RankError,
    UnknownIdentifier,
    UnsupportedRank,
)


class SheafExpr:
    """Base class of all expression nodes."""


@dataclass(frozen=True)
class AtomO(SheafExpr):
    t: int


@dataclass(frozen=True)
class AtomTX(SheafExpr):
    pass


@dataclass(frozen=True)
class AtomOmega1(SheafExpr):
    pass


@dataclass(frozen=True)
class AtomNamed(SheafExpr):
    name: str


@dataclass(frozen=True)
class Twist(SheafExpr):
    base: SheafExpr
    t: int


@dataclass(frozen=True)
class Dual(SheafExpr):
    base: SheafExpr
    reflexive_rank2: bool = False


@dataclass(frozen=True)
class Sum(SheafExpr):
    left: SheafExpr
    right: SheafExpr


@dataclass(frozen=True)
class Coker(SheafExpr):
    sub: SheafExpr
    ambient: SheafExpr


@dataclass(frozen=True)
class Ker(SheafExpr):
    ambient: SheafExpr
    quotient: SheafExpr


@dataclass(frozen=True)
class NamedDecl:
    """A user-declared sheaf: Chern data plus optional known dimensions."""

    name: str
    chern: ChernData
    cohom_hints: dict = field(default_factory=dict)  # (i, twist) -> int

    def __post_init__(self):
        if self.chern.rank > 3:
            raise UnsupportedRank(
                f"declared sheaf '{self.name}' has rank {self.chern.rank} > 3"
            )


_KEYWORDS = {"O", "TX", "Omega1", "twist", "dual", "rdual", "coker", "ker"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<arrow>->)|(?P<sym>[(),+]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            at = len(src) - len(stripped)
            raise DslSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.next()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text if text is not None else kind
            raise DslSyntaxError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        return tok

    def expect_sym(self, sym):
        kind = "arrow" if sym == "->" else "sym"
        return self.expect(kind, sym)

    def parse_int(self) -> int:
        tok = self.next()
        if tok[0] != "int":
            raise DslSyntaxError(f"expected an integer, found {tok[1]!r}", tok[2])
        return int(tok[1])

    def parse_expr(self) -> SheafExpr:
        node = self.parse_term()
        while self.peek()[:2] == ("sym", "+"):
            self.next()
            node = Sum(node, self.parse_term())
        return node

    def parse_term(self) -> SheafExpr:
        tok = self.next()
        if tok[0] != "ident":
            raise DslSyntaxError(f"expected a sheaf term, found {tok[1]!r}", tok[2])
        word = tok[1]
        if word == "O":
            self.expect_sym("(")
            t = self.parse_int()
            self.expect_sym(")")
            return AtomO(t)
        if word in ("TX", "Omega1"):
            atom = AtomTX() if word == "TX" else AtomOmega1()
            if self.peek()[:2] == ("sym", "("):
                self.next()
                t = self.parse_int()
                self.expect_sym(")")
                return Twist(atom, t)
            return atom
        if word == "twist":
            self.expect_sym("(")
            base = self.parse_expr()
            self.expect_sym(",")
            t = self.parse_int()
            self.expect_sym(")")
            return Twist(base, t)
        if word in ("dual", "rdual"):
            self.expect_sym("(")
            base = self.parse_expr()
            self.expect_sym(")")
            return Dual(base, reflexive_rank2=(word == "rdual"))
        if word in ("coker", "ker"):
            self.expect_sym("(")
            first = self.parse_expr()
            self.expect_sym("->")
            second = self.parse_expr()
            self.expect_sym(")")
            if word == "coker":
                return Coker(sub=first, ambient=second)
            return Ker(ambient=first, quotient=second)
        return AtomNamed(word)


def parse(src: str) -> SheafExpr:
    """Parse a sheaf expression; raises SyntaxError-named DslSyntaxError with
    the byte offset of the first offending token."""
    if not src.strip():
        raise DslSyntaxError("empty expression", 0)
    parser = _Parser(src)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise DslSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return node


def pretty(e: SheafExpr) -> str:
    """Canonical text form; parse(pretty(e)) == e for parser-produced trees."""
    if isinstance(e, AtomO):
        return f"O({e.t})"
    if isinstance(e, AtomTX):
        return "TX"
    if isinstance(e, AtomOmega1):
        return "Omega1"
    if isinstance(e, AtomNamed):
        return e.name
    if isinstance(e, Twist):
        if isinstance(e.base, (AtomTX, AtomOmega1)):
            return f"{pretty(e.base)}({e.t})"
        return f"twist({pretty(e.base)}, {e.t})"
    if isinstance(e, Dual):
        op = "rdual" if e.reflexive_rank2 else "dual"
        return f"{op}({pretty(e.base)})"
    if isinstance(e, Sum):
        return f"{pretty(e.left)} + {pretty(e.right)}"
    if isinstance(e, Coker):
        return f"coker({pretty(e.sub)} -> {pretty(e.ambient)})"
    if isinstance(e, Ker):
        return f"ker({pretty(e.ambient)} -> {pretty(e.quotient)})"
    raise DomainError(f"not a sheaf expression: {e!r}")


def _decl(env, name: str) -> NamedDecl:
    if env is None or name not in env:
        raise UnknownIdentifier(f"no declaration for sheaf '{name}'")
    return env[name]


def chern_of(
    e: SheafExpr, X: ThreefoldData = P3, env: dict[str, NamedDecl] | None = None
) -> ChernData:
    """Compositional Chern-data evaluation of an expression on X."""
    if isinstance(e, AtomO):
        return line_chern(e.t)
    if isinstance(e, AtomTX):
        return X.tangent_chern
    if isinstance(e, AtomOmega1):
        return dual_chern(X.tangent_chern)
    if isinstance(e, AtomNamed):
        return _decl(env, e.name).chern
    if isinstance(e, Twist):
        return twist_chern(chern_of(e.base, X, env), e.t, X)
    if isinstance(e, Dual):
        base = chern_of(e.base, X, env)
        if e.reflexive_rank2:
            return reflexive_dual_rank2(base)
        return dual_chern(base)
    if isinstance(e, Sum):
        return sum_chern([chern_of(e.left, X, env), chern_of(e.right, X, env)], X)
    if isinstance(e, Coker):
        sub = chern_of(e.sub, X, env)
        ambient = chern_of(e.ambient, X, env)
        if ambient.rank - sub.rank < 0:
            raise RankError(
                f"coker would have rank {ambient.rank - sub.rank} < 0"
            )
        return ses_third(sub, ambient, None, X)
    if isinstance(e, Ker):
        ambient = chern_of(e.ambient, X, env)
        quotient = chern_of(e.quotient, X, env)
        if ambient.rank - quotient.rank < 0:
            raise RankError(
                f"ker would have rank {ambient.rank - quotient.rank} < 0"
            )
        return ses_third(None, ambient, quotient, X)
    raise DomainError(f"not a sheaf expression: {e!r}")


def _locally_free_shape(e: SheafExpr) -> bool:
    """Whether the expression is locally free by construction, so Serre
    duality may be applied to its plain dual."""
    if isinstance(e, (AtomO, AtomTX, AtomOmega1)):
        return True
    if isinstance(e, Twist):
        return _locally_free_shape(e.base)
    if isinstance(e, Dual):
        return not e.reflexive_rank2 and _locally_free_shape(e.base)
    if isinstance(e, Sum):
        return _locally_free_shape(e.left) and _locally_free_shape(e.right)
    return False


def _add_tables(a: CohomTable, b: CohomTable, chern, label) -> CohomTable:
    entries = {}
    for key in sorted(set(a.entries) | set(b.entries)):
        entries[key] = a.entries.get(key, DimEntry.unknown()) + b.entries.get(
            key, DimEntry.unknown()
        )
    return CohomTable(a.X, chern, entries, label)


def cohom_of(
    e: SheafExpr,
    twist_range: tuple[int, int],
    X: ThreefoldData = P3,
    env: dict[str, NamedDecl] | None = None,
) -> CohomTable:
    """Cohomology table of the expression over the inclusive twist range.

    Entries are exact at atoms (Bott formula) and propagated through declared
    sequences by the dimension chaser; whatever a connecting map leaves
    undetermined stays an interval.  Only available on P^3.
    """
    if not X.is_p3:
        raise NotComputable(f"cohomology tables are only exact on p3, not '{X.name}'")
    lo, hi = twist_range
    if lo > hi:
        raise DomainError(f"empty twist range {lo}..{hi}")
    table = _cohom_walk(e, lo, hi, X, env)
    return CohomTable(table.X, table.chern, table.entries, pretty(e))


def _cohom_walk(e, lo, hi, X, env) -> CohomTable:
    if isinstance(e, AtomO):
        return coh.line_table(e.t, lo, hi)
    if isinstance(e, AtomTX):
        return coh.tangent_table(lo, hi)
    if isinstance(e, AtomOmega1):
        return coh.omega1_table(lo, hi)
    if isinstance(e, AtomNamed):
        decl = _decl(env, e.name)
        entries = {}
        for t in range(lo, hi + 1):
            for i in range(4):
                hint = decl.cohom_hints.get((i, t))
                entries[(i, t)] = (
                    DimEntry.unknown() if hint is None else DimEntry.known(hint)
                )
        return CohomTable(X, decl.chern, entries, decl.name)
    if isinstance(e, Twist):
        inner = _cohom_walk(e.base, lo + e.t, hi + e.t, X, env)
        entries = {
            (i, t - e.t): entry for (i, t), entry in inner.entries.items()
        }
        return CohomTable(X, twist_chern(inner.chern, e.t, X), entries)
    if isinstance(e, Dual):
        base_chern = chern_of(e.base, X, env)
        if e.reflexive_rank2:
            shift = -base_chern.c1
            inner = _cohom_walk(e.base, lo + shift, hi + shift, X, env)
            entries = {
                (i, t - shift): entry for (i, t), entry in inner.entries.items()
            }
            return CohomTable(X, reflexive_dual_rank2(base_chern), entries)
        chern = dual_chern(base_chern)
        if _locally_free_shape(e.base):
            # h^i(E*(t)) = h^(3-i)(E(-t-4)) by Serre duality
            inner = _cohom_walk(e.base, -hi - 4, -lo - 4, X, env)
            entries = {
                (3 - i, -t - 4): entry
                for (i, t), entry in inner.entries.items()
            }
            return CohomTable(X, chern, entries)
        # duals of non-locally-free shapes get no dimension information
        return CohomTable(X, chern, {})
    if isinstance(e, Sum):
        left = _cohom_walk(e.left, lo, hi, X, env)
        right = _cohom_walk(e.right, lo, hi, X, env)
        chern = sum_chern([left.chern, right.chern], X)
        return _add_tables(left, right, chern, "")
    if isinstance(e, (Coker, Ker)):
        chern = chern_of(e, X, env)  # also performs the rank check
        if isinstance(e, Coker):
            ta = _cohom_walk(e.sub, lo, hi, X, env)
            tb = _cohom_walk(e.ambient, lo, hi, X, env)
            tc = CohomTable(X, chern, {})
            return les_chase((ta, tb, tc))[2]
        ta = CohomTable(X, chern, {})
        tb = _cohom_walk(e.ambient, lo, hi, X, env)
        tc = _cohom_walk(e.quotient, lo, hi, X, env)
        return les_chase((ta, tb, tc))[0]
    raise DomainError(f"not a sheaf expression: {e!r}")


def parse_batch(text: str) -> list[SheafExpr]:
    """Parse a batch document: one expression per line, '#' starts a comment."""
    exprs = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            exprs.append(parse(stripped))
    return exprs
