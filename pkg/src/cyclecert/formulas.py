"""Full first-order formulas, negation of clause sets, induction formulas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .terms import (
    EQ,
    NAT,
    PARAM,
    App,
    Clause,
    ClauseSet,
    Literal,
    Param,
    Term,
    Var,
    apply_subst,
    clause_vars,
    numeral,
    replace_param,
    succ,
    succ_tower,
    term_vars,
)


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        if self.pred == EQ:
            return f"{self.args[0]} = {self.args[1]}"
        if not self.args:
            return self.pred
        return f"{self.pred}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        if isinstance(self.body, Atom) and self.body.pred == EQ:
            return f"{self.body.args[0]} != {self.body.args[1]}"
        return f"~{_wrap(self.body)}"


@dataclass(frozen=True)
class And:
    items: tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " & ".join(_wrap(f) for f in self.items) + ")"


@dataclass(frozen=True)
class Or:
    items: tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " | ".join(_wrap(f) for f in self.items) + ")"


@dataclass(frozen=True)
class Imp:
    lhs: "Formula"
    rhs: "Formula"

    def __str__(self) -> str:
        return f"({_wrap(self.lhs)} => {_wrap(self.rhs)})"


@dataclass(frozen=True)
class Iff:
    lhs: "Formula"
    rhs: "Formula"

    def __str__(self) -> str:
        return f"({_wrap(self.lhs)} <=> {_wrap(self.rhs)})"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"

    def __str__(self) -> str:
        return f"forall {self.var.name}:{self.var.sort}, {_wrap(self.body)}"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"

    def __str__(self) -> str:
        return f"exists {self.var.name}:{self.var.sort}, {_wrap(self.body)}"


Formula = Union[Top, Bottom, Atom, Not, And, Or, Imp, Iff, Forall, Exists]


def _wrap(f: Formula) -> str:
    if isinstance(f, (Atom, Top, Bottom, Not)):
        return str(f)
    return f"({str(f)[1:-1]})" if isinstance(f, (And, Or, Imp, Iff)) else f"({f})"


def conj(items: Sequence[Formula]) -> Formula:
    """Flattened conjunction; empty gives true, singleton is unwrapped."""
    flat: list[Formula] = []
    for f in items:
        if isinstance(f, And):
            flat.extend(f.items)
        elif isinstance(f, Top):
            continue
        else:
            flat.append(f)
    if any(isinstance(f, Bottom) for f in flat):
        return Bottom()
    if not flat:
        return Top()
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(items: Sequence[Formula]) -> Formula:
    """Flattened disjunction; empty gives false, singleton is unwrapped."""
    flat: list[Formula] = []
    for f in items:
        if isinstance(f, Or):
            flat.extend(f.items)
        elif isinstance(f, Bottom):
            continue
        else:
            flat.append(f)
    if any(isinstance(f, Top) for f in flat):
        return Top()
    if not flat:
        return Bottom()
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def disjuncts(f: Formula) -> list[Formula]:
    return list(f.items) if isinstance(f, Or) else [f]


def atoms(f: Formula) -> list[Atom]:
    out: list[Atom] = []
    _walk_atoms(f, out)
    return out


def _walk_atoms(f: Formula, out: list[Atom]) -> None:
    if isinstance(f, Atom):
        out.append(f)
    elif isinstance(f, Not):
        _walk_atoms(f.body, out)
    elif isinstance(f, (And, Or)):
        for g in f.items:
            _walk_atoms(g, out)
    elif isinstance(f, (Imp, Iff)):
        _walk_atoms(f.lhs, out)
        _walk_atoms(f.rhs, out)
    elif isinstance(f, (Forall, Exists)):
        _walk_atoms(f.body, out)


def free_vars(f: Formula) -> list[Var]:
    out: list[Var] = []
    _free_vars(f, (), out)
    return out


def _free_vars(f: Formula, bound: tuple[Var, ...], out: list[Var]) -> None:
    if isinstance(f, Atom):
        for a in f.args:
            for v in term_vars(a):
                if v not in bound and v not in out:
                    out.append(v)
    elif isinstance(f, Not):
        _free_vars(f.body, bound, out)
    elif isinstance(f, (And, Or)):
        for g in f.items:
            _free_vars(g, bound, out)
    elif isinstance(f, (Imp, Iff)):
        _free_vars(f.lhs, bound, out)
        _free_vars(f.rhs, bound, out)
    elif isinstance(f, (Forall, Exists)):
        _free_vars(f.body, bound + (f.var,), out)


def map_terms(f: Formula, fn) -> Formula:
    """Rebuild f applying fn to every atom argument term."""
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(fn(a) for a in f.args))
    if isinstance(f, Not):
        return Not(map_terms(f.body, fn))
    if isinstance(f, And):
        return And(tuple(map_terms(g, fn) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(map_terms(g, fn) for g in f.items))
    if isinstance(f, Imp):
        return Imp(map_terms(f.lhs, fn), map_terms(f.rhs, fn))
    if isinstance(f, Iff):
        return Iff(map_terms(f.lhs, fn), map_terms(f.rhs, fn))
    if isinstance(f, Forall):
        return Forall(f.var, map_terms(f.body, fn))
    if isinstance(f, Exists):
        return Exists(f.var, map_terms(f.body, fn))
    return f


def substitute_vars(f: Formula, sub: Mapping[Var, Term]) -> Formula:
    """Substitute free variables; bound variables shadow the substitution."""
    if isinstance(f, (Forall, Exists)):
        inner = {v: t for v, t in sub.items() if v != f.var}
        for t in inner.values():
            if f.var in term_vars(t):
                raise ValueError(f"substitution would capture {f.var.name}")
        body = substitute_vars(f.body, inner)
        return type(f)(f.var, body)
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(apply_subst(sub, a) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute_vars(f.body, sub))
    if isinstance(f, And):
        return And(tuple(substitute_vars(g, sub) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(substitute_vars(g, sub) for g in f.items))
    if isinstance(f, Imp):
        return Imp(substitute_vars(f.lhs, sub), substitute_vars(f.rhs, sub))
    if isinstance(f, Iff):
        return Iff(substitute_vars(f.lhs, sub), substitute_vars(f.rhs, sub))
    return f


def substitute_param_formula(f: Formula, value: Term) -> Formula:
    return map_terms(f, lambda t: replace_param(t, value))


def nnf(f: Formula) -> Formula:
    """Negation normal form with implications and equivalences removed."""
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, And):
        return conj([nnf(g) for g in f.items])
    if isinstance(f, Or):
        return disj([nnf(g) for g in f.items])
    if isinstance(f, Imp):
        return disj([nnf(Not(f.lhs)), nnf(f.rhs)])
    if isinstance(f, Iff):
        return conj([
            disj([nnf(Not(f.lhs)), nnf(f.rhs)]),
            disj([nnf(Not(f.rhs)), nnf(f.lhs)]),
        ])
    if isinstance(f, Forall):
        return Forall(f.var, nnf(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, nnf(f.body))
    g = f.body
    if isinstance(g, Atom):
        return f
    if isinstance(g, Top):
        return Bottom()
    if isinstance(g, Bottom):
        return Top()
    if isinstance(g, Not):
        return nnf(g.body)
    if isinstance(g, And):
        return disj([nnf(Not(h)) for h in g.items])
    if isinstance(g, Or):
        return conj([nnf(Not(h)) for h in g.items])
    if isinstance(g, Imp):
        return conj([nnf(g.lhs), nnf(Not(g.rhs))])
    if isinstance(g, Iff):
        return nnf(Not(conj([
            disj([Not(g.lhs), g.rhs]),
            disj([Not(g.rhs), g.lhs]),
        ])))
    if isinstance(g, Forall):
        return Exists(g.var, nnf(Not(g.body)))
    return Forall(g.var, nnf(Not(g.body)))


def is_nnf(f: Formula) -> bool:
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    if isinstance(f, Not):
        return isinstance(f.body, Atom)
    if isinstance(f, (And, Or)):
        return all(is_nnf(g) for g in f.items)
    if isinstance(f, (Forall, Exists)):
        return is_nnf(f.body)
    return False


def is_sigma1(f: Formula) -> bool:
    """Existential formulas: negation normal form without universal quantifiers."""
    if not is_nnf(f):
        return False
    return not _has_forall(f)


def _has_forall(f: Formula) -> bool:
    if isinstance(f, Forall):
        return True
    if isinstance(f, Not):
        return _has_forall(f.body)
    if isinstance(f, (And, Or)):
        return any(_has_forall(g) for g in f.items)
    if isinstance(f, Exists):
        return _has_forall(f.body)
    return False


def literal_to_formula(lit: Literal) -> Formula:
    a = Atom(lit.pred, lit.args)
    return a if lit.positive else Not(a)


def clause_to_formula(c: Clause) -> Formula:
    body = disj([literal_to_formula(l) for l in c.literals])
    for v in reversed(clause_vars(c)):
        body = Forall(v, body)
    return body


def clause_set_to_formula(s: ClauseSet) -> Formula:
    return conj([clause_to_formula(c) for c in s])


def negate_clause_set(s: ClauseSet) -> Formula:
    """NNF negation of a clause set: a disjunction of existential conjunctions.

    Contains no universal quantifier; eta stays free.
    """
    parts: list[Formula] = []
    for c in s:
        inner = conj([literal_to_formula(l.negated()) for l in c.literals])
        for v in reversed(clause_vars(c)):
            inner = Exists(v, inner)
        parts.append(inner)
    return disj(parts)


def induction_instance(x: Var, psi: Formula) -> Formula:
    """The structural induction axiom for psi at x.

    psi(0) -> (forall x (psi(x) -> psi(s x))) -> forall x psi(x), universally
    closed over the remaining free variables of psi.
    """
    if x.sort != NAT:
        raise ValueError("induction variable must have sort nat")
    base = substitute_vars(psi, {x: App("0")})
    step = Forall(x, Imp(psi, substitute_vars(psi, {x: succ(x)})))
    out: Formula = Imp(base, Imp(step, Forall(x, psi)))
    for v in reversed([v for v in free_vars(psi) if v != x]):
        out = Forall(v, out)
    return out


def case_distinction(n: int, x: Var) -> Formula:
    """Case split on x: equal to one of the first n numerals, or an n-fold successor."""
    if n < 0:
        raise ValueError("number of cases must be non-negative")
    y = Var("y", NAT) if x.name != "y" else Var("y'", NAT)
    cases: list[Formula] = [Atom(EQ, (x, numeral(i))) for i in range(n)]
    cases.append(Exists(y, Atom(EQ, (x, succ_tower(y, n)))))
    return disj(cases)
