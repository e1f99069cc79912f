"""Unification, one-way matching and clause subsumption.

eta is frozen: it unifies and matches only with itself, like an
uninterpreted constant, although variables may be bound to terms
containing it.
"""

from __future__ import annotations

from typing import Mapping

from .terms import (
    App,
    Clause,
    Literal,
    Param,
    Term,
    Var,
    apply_subst,
    apply_subst_literal,
)

Subst = dict[Var, Term]


def _walk(t: Term, sub: Mapping[Var, Term]) -> Term:
    while isinstance(t, Var) and t in sub:
        t = sub[t]
    return t


def _occurs(v: Var, t: Term, sub: Mapping[Var, Term]) -> bool:
    t = _walk(t, sub)
    if t == v:
        return True
    if isinstance(t, App):
        return any(_occurs(v, a, sub) for a in t.args)
    return False


def mgu(t1: Term, t2: Term, sub: Subst | None = None) -> Subst | None:
    """Most general unifier extending sub, or None."""
    sub = dict(sub) if sub is not None else {}
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, sub), _walk(b, sub)
        if a == b:
            continue
        if isinstance(a, Var):
            if _occurs(a, b, sub):
                return None
            sub[a] = b
        elif isinstance(b, Var):
            if _occurs(b, a, sub):
                return None
            sub[b] = a
        elif isinstance(a, App) and isinstance(b, App):
            if a.name != b.name or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
        else:
            return None
    return sub


def resolve_subst(sub: Subst) -> Subst:
    """Fully apply internal bindings so the substitution is idempotent."""
    out: Subst = {}
    for v in sub:
        t = apply_subst_full(sub, v)
        if t != v:
            out[v] = t
    return out


def apply_subst_full(sub: Mapping[Var, Term], t: Term) -> Term:
    t = _walk(t, sub)
    if isinstance(t, App):
        return App(t.name, tuple(apply_subst_full(sub, a) for a in t.args))
    return t


def apply_full_literal(sub: Mapping[Var, Term], lit: Literal) -> Literal:
    return Literal(lit.positive, lit.pred, tuple(apply_subst_full(sub, a) for a in lit.args))


def mgu_atoms(l1: Literal, l2: Literal) -> Subst | None:
    """Unify the atoms of two literals, ignoring polarity."""
    if l1.pred != l2.pred or len(l1.args) != len(l2.args):
        return None
    sub: Subst | None = {}
    for a, b in zip(l1.args, l2.args):
        sub = mgu(a, b, sub)
        if sub is None:
            return None
    return sub


def match_term(pattern: Term, target: Term, sub: Subst | None = None) -> Subst | None:
    """One-way matching: bind pattern variables so pattern equals target."""
    sub = dict(sub) if sub is not None else {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            if p in sub:
                if sub[p] != t:
                    return None
            else:
                sub[p] = t
        elif isinstance(p, Param):
            if not isinstance(t, Param):
                return None
        elif isinstance(p, App):
            if not isinstance(t, App) or p.name != t.name or len(p.args) != len(t.args):
                return None
            stack.extend(zip(p.args, t.args))
    return sub


def match_literal(pattern: Literal, target: Literal, sub: Subst | None = None) -> Subst | None:
    if pattern.positive != target.positive or pattern.pred != target.pred:
        return None
    if len(pattern.args) != len(target.args):
        return None
    sub = dict(sub) if sub is not None else {}
    for p, t in zip(pattern.args, target.args):
        found = match_term(p, t, sub)
        if found is None:
            return None
        sub = found
    return sub


def subsumes(c: Clause, d: Clause) -> bool:
    """True iff one substitution maps c's literals onto a sub-multiset of d's."""
    if len(c.literals) > len(d.literals):
        return False
    return _subsume_from(list(c.literals), list(d.literals), {}, used=set())


def _subsume_from(pending: list[Literal], targets: list[Literal], sub: Subst, used: set[int]) -> bool:
    if not pending:
        return True
    head, rest = pending[0], pending[1:]
    for i, t in enumerate(targets):
        if i in used:
            continue
        extended = match_literal(head, t, sub)
        if extended is not None:
            if _subsume_from(rest, targets, extended, used | {i}):
                return True
    return False


def rename_clause(c: Clause, prefix: str) -> Clause:
    """Rename all clause variables with the given prefix (standardize apart)."""
    renaming: dict[Var, Term] = {}
    lits = []
    for lit in c.literals:
        for a in lit.args:
            for v in _term_vars(a):
                if v not in renaming:
                    renaming[v] = Var(f"{prefix}{len(renaming)}", v.sort)
        lits.append(apply_subst_literal(renaming, lit))
    return Clause(tuple(lits))


def _term_vars(t: Term) -> list[Var]:
    if isinstance(t, Var):
        return [t]
    if isinstance(t, App):
        out: list[Var] = []
        for a in t.args:
            for v in _term_vars(a):
                if v not in out:
                    out.append(v)
        return out
    return []
