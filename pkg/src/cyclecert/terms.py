"""Many-sorted first-order syntax: terms, literals, clauses, clause sets.

The distinguished parameter ``eta`` is a nullary syntactic entity of sort
``nat``.  It is never quantified and the entailment engine treats it as a
frozen constant.  Numerals are kept in canonical successor-tower form.
All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import Counter
from typing import Iterable, Mapping, Sequence, Union

NAT = "nat"
EQ = "="

ZERO_NAME = "0"
SUCC_NAME = "s"


class SortError(Exception):
    """Raised when a term, literal or clause is not sort-correct."""


@dataclass(frozen=True)
class Var:
    name: str
    sort: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Param:
    """The distinguished free parameter of sort nat, printed as ``eta``."""

    def __str__(self) -> str:
        return "eta"


PARAM = Param()


@dataclass(frozen=True)
class App:
    name: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, Param, App]

ZERO = App(ZERO_NAME)


def succ(t: Term) -> Term:
    return App(SUCC_NAME, (t,))


def succ_tower(t: Term, n: int) -> Term:
    """s^n applied to t."""
    if n < 0:
        raise ValueError("successor tower height must be non-negative")
    for _ in range(n):
        t = succ(t)
    return t


def numeral(n: int) -> Term:
    """The canonical numeral s^n(0)."""
    if n < 0:
        raise ValueError("numerals exist for natural numbers only")
    return succ_tower(ZERO, n)


def numeral_value(t: Term) -> int | None:
    """Inverse of numeral, or None if t is not a canonical numeral."""
    n = 0
    while isinstance(t, App) and t.name == SUCC_NAME:
        n += 1
        t = t.args[0]
    if isinstance(t, App) and t.name == ZERO_NAME and not t.args:
        return n
    return None


def term_vars(t: Term) -> list[Var]:
    """Variables of t in first-occurrence order (duplicates removed)."""
    out: list[Var] = []
    _collect_vars(t, out)
    return out


def _collect_vars(t: Term, out: list[Var]) -> None:
    if isinstance(t, Var):
        if t not in out:
            out.append(t)
    elif isinstance(t, App):
        for a in t.args:
            _collect_vars(a, out)


def term_size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def term_depth(t: Term) -> int:
    if isinstance(t, App) and t.args:
        return 1 + max(term_depth(a) for a in t.args)
    return 1


def contains_param(t: Term) -> bool:
    if isinstance(t, Param):
        return True
    if isinstance(t, App):
        return any(contains_param(a) for a in t.args)
    return False


def replace_param(t: Term, value: Term) -> Term:
    if isinstance(t, Param):
        return value
    if isinstance(t, App):
        return App(t.name, tuple(replace_param(a, value) for a in t.args))
    return t


def apply_subst(sub: Mapping[Var, Term], t: Term) -> Term:
    if isinstance(t, Var):
        return sub.get(t, t)
    if isinstance(t, App):
        return App(t.name, tuple(apply_subst(sub, a) for a in t.args))
    return t


def compose_subst(first: Mapping[Var, Term], second: Mapping[Var, Term]) -> dict[Var, Term]:
    """Substitution applying `first` then `second`, composition-normalized."""
    out: dict[Var, Term] = {v: apply_subst(second, t) for v, t in first.items()}
    for v, t in second.items():
        if v not in out:
            out[v] = t
    return {v: t for v, t in out.items() if t != v}


@dataclass(frozen=True)
class Literal:
    positive: bool
    pred: str
    args: tuple[Term, ...]

    @property
    def is_equation(self) -> bool:
        return self.pred == EQ

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.pred, self.args)

    def __str__(self) -> str:
        if self.is_equation:
            op = "=" if self.positive else "!="
            return f"{self.args[0]} {op} {self.args[1]}"
        body = self.pred if not self.args else f"{self.pred}({', '.join(str(a) for a in self.args)})"
        return body if self.positive else f"~{body}"


def literal_vars(lit: Literal) -> list[Var]:
    out: list[Var] = []
    for a in lit.args:
        _collect_vars(a, out)
    return out


def apply_subst_literal(sub: Mapping[Var, Term], lit: Literal) -> Literal:
    return Literal(lit.positive, lit.pred, tuple(apply_subst(sub, a) for a in lit.args))


def replace_param_literal(lit: Literal, value: Term) -> Literal:
    return Literal(lit.positive, lit.pred, tuple(replace_param(a, value) for a in lit.args))


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals; all variables implicitly universal, eta free.

    The empty clause denotes falsum.  Construct through :func:`make_clause`
    so duplicate literals are dropped and variable names are canonical.
    """

    literals: tuple[Literal, ...]

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def __str__(self) -> str:
        if not self.literals:
            return "$false"
        body = " | ".join(str(l) for l in self.literals)
        vs = clause_vars(self)
        if vs:
            binders = ", ".join(f"{v.name}:{v.sort}" for v in vs)
            return f"forall {binders}, {body}"
        return body


def clause_vars(c: Clause) -> list[Var]:
    out: list[Var] = []
    for lit in c.literals:
        for a in lit.args:
            _collect_vars(a, out)
    return out


def make_clause(literals: Iterable[Literal]) -> Clause:
    """Canonical clause: duplicate literals removed, variables renamed x0, x1, ..."""
    seen: list[Literal] = []
    for lit in literals:
        if lit not in seen:
            seen.append(lit)
    renaming: dict[Var, Term] = {}
    for lit in seen:
        for v in literal_vars(lit):
            if v not in renaming:
                renaming[v] = Var(f"x{len(renaming)}", v.sort)
    return Clause(tuple(apply_subst_literal(renaming, l) for l in seen))


def clause_size(c: Clause) -> int:
    return sum(1 + sum(term_size(a) for a in lit.args) for lit in c.literals)


def clause_depth(c: Clause) -> int:
    depths = [term_depth(a) for lit in c.literals for a in lit.args]
    return max(depths, default=0)


@dataclass(frozen=True)
class ClauseSet:
    """A finite conjunction of clauses; equality is order-insensitive."""

    clauses: tuple[Clause, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClauseSet):
            return NotImplemented
        return Counter(self.clauses) == Counter(other.clauses)

    def __hash__(self) -> int:
        return hash(frozenset(Counter(self.clauses).items()))

    def __iter__(self):
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.clauses)


def clause_set(clauses: Iterable[Clause]) -> ClauseSet:
    return ClauseSet(tuple(clauses))


def substitute_parameter(s: ClauseSet, t: Term) -> ClauseSet:
    """Replace every occurrence of eta by t.

    t must be of sort nat and must not use variable names bound in s.
    """
    bad = term_vars(t)
    if bad:
        clashing = {v.name for c in s for v in clause_vars(c)}
        for v in bad:
            if v.name in clashing:
                raise ValueError(f"substituted term captures clause variable {v.name}")
    return ClauseSet(tuple(
        Clause(tuple(replace_param_literal(l, t) for l in c.literals)) for c in s
    ))


@dataclass(frozen=True)
class Signature:
    """Sorts plus typed function and predicate symbols.

    nat, 0 and s are always present.  Equality is available at every sort
    and is not declared.  Declaration order of function symbols doubles as
    the ordering precedence of the entailment engine.
    """

    sorts: tuple[str, ...] = (NAT,)
    functions: Mapping[str, tuple[tuple[str, ...], str]] = field(
        default_factory=lambda: {ZERO_NAME: ((), NAT), SUCC_NAME: ((NAT,), NAT)}
    )
    predicates: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @staticmethod
    def base() -> "Signature":
        return Signature()

    def has_sort(self, name: str) -> bool:
        return name in self.sorts

    def with_sort(self, name: str) -> "Signature":
        if name in self.sorts:
            raise SortError(f"duplicate sort {name}")
        return Signature(self.sorts + (name,), dict(self.functions), dict(self.predicates))

    def with_function(self, name: str, args: Sequence[str], result: str) -> "Signature":
        if name in self.functions or name in self.predicates:
            raise SortError(f"duplicate symbol {name}")
        for s in (*args, result):
            if s not in self.sorts:
                raise SortError(f"unknown sort {s} in declaration of {name}")
        fns = dict(self.functions)
        fns[name] = (tuple(args), result)
        return Signature(self.sorts, fns, dict(self.predicates))

    def with_predicate(self, name: str, args: Sequence[str]) -> "Signature":
        if name in self.functions or name in self.predicates or name == EQ:
            raise SortError(f"duplicate symbol {name}")
        for s in args:
            if s not in self.sorts:
                raise SortError(f"unknown sort {s} in declaration of {name}")
        preds = dict(self.predicates)
        preds[name] = tuple(args)
        return Signature(self.sorts, dict(self.functions), preds)

    def fresh_function_name(self, prefix: str) -> str:
        i = 0
        while f"{prefix}{i}" in self.functions or f"{prefix}{i}" in self.predicates:
            i += 1
        return f"{prefix}{i}"

    def sort_of(self, t: Term) -> str:
        if isinstance(t, Param):
            return NAT
        if isinstance(t, Var):
            if t.sort not in self.sorts:
                raise SortError(f"variable {t.name} has unknown sort {t.sort}")
            return t.sort
        decl = self.functions.get(t.name)
        if decl is None:
            raise SortError(f"unknown function symbol {t.name}")
        arg_sorts, result = decl
        if len(arg_sorts) != len(t.args):
            raise SortError(f"{t.name} expects {len(arg_sorts)} arguments, got {len(t.args)}")
        for expected, a in zip(arg_sorts, t.args):
            actual = self.sort_of(a)
            if actual != expected:
                raise SortError(f"argument of {t.name} has sort {actual}, expected {expected}")
        return result

    def validate_literal(self, lit: Literal) -> None:
        if lit.is_equation:
            if len(lit.args) != 2:
                raise SortError("equality takes exactly two arguments")
            left, right = (self.sort_of(a) for a in lit.args)
            if left != right:
                raise SortError(f"equation between sorts {left} and {right}")
            return
        decl = self.predicates.get(lit.pred)
        if decl is None:
            raise SortError(f"unknown predicate symbol {lit.pred}")
        if len(decl) != len(lit.args):
            raise SortError(f"{lit.pred} expects {len(decl)} arguments, got {len(lit.args)}")
        for expected, a in zip(decl, lit.args):
            actual = self.sort_of(a)
            if actual != expected:
                raise SortError(f"argument of {lit.pred} has sort {actual}, expected {expected}")

    def validate_clause(self, c: Clause) -> None:
        for lit in c.literals:
            self.validate_literal(lit)

    def validate_clause_set(self, s: ClauseSet) -> None:
        for c in s:
            self.validate_clause(c)
