"""Clause normal form: NNF, standardization, Skolemization, distribution.

Free variables other than eta are read universally, matching clause
semantics.  Fresh Skolem symbols are recorded in the returned signature.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    And,
    Atom,
    Bottom,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Top,
    free_vars,
    nnf,
)
from .terms import (
    App,
    Clause,
    ClauseSet,
    Literal,
    Signature,
    Term,
    Var,
    apply_subst,
    make_clause,
)


@dataclass
class ClausifyResult:
    clauses: ClauseSet
    signature: Signature


def clausify(f: Formula, sig: Signature, skolem_prefix: str = "sk") -> ClausifyResult:
    """Equisatisfiable clause set for f; eta is left free."""
    g = nnf(f)
    g = _standardize(g, {}, _NameGen())
    matrix, sig = _skolemize(g, (), sig, skolem_prefix)
    lists = _distribute(matrix)
    if lists is None:
        clauses: tuple[Clause, ...] = ()
    else:
        clauses = tuple(make_clause(lits) for lits in lists)
    return ClausifyResult(ClauseSet(clauses), sig)


class _NameGen:
    def __init__(self) -> None:
        self.n = 0

    def fresh(self, sort: str) -> Var:
        v = Var(f"v{self.n}", sort)
        self.n += 1
        return v


def _standardize(f: Formula, renaming: dict[Var, Term], gen: _NameGen) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(apply_subst(renaming, a) for a in f.args))
    if isinstance(f, Not):
        return Not(_standardize(f.body, renaming, gen))
    if isinstance(f, And):
        return And(tuple(_standardize(g, renaming, gen) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(_standardize(g, renaming, gen) for g in f.items))
    if isinstance(f, (Forall, Exists)):
        fresh = gen.fresh(f.var.sort)
        inner = dict(renaming)
        inner[f.var] = fresh
        return type(f)(fresh, _standardize(f.body, inner, gen))
    return f


def _skolemize(
    f: Formula, universals: tuple[Var, ...], sig: Signature, prefix: str
) -> tuple[Formula, Signature]:
    if isinstance(f, (Atom, Top, Bottom, Not)):
        return f, sig
    if isinstance(f, And):
        items = []
        for g in f.items:
            g2, sig = _skolemize(g, universals, sig, prefix)
            items.append(g2)
        return And(tuple(items)), sig
    if isinstance(f, Or):
        items = []
        for g in f.items:
            g2, sig = _skolemize(g, universals, sig, prefix)
            items.append(g2)
        return Or(tuple(items)), sig
    if isinstance(f, Forall):
        body, sig = _skolemize(f.body, universals + (f.var,), sig, prefix)
        return body, sig
    if isinstance(f, Exists):
        deps = tuple(v for v in universals if v in free_vars(f.body))
        name = sig.fresh_function_name(prefix)
        sig = sig.with_function(name, [v.sort for v in deps], f.var.sort)
        witness: Term = App(name, deps)
        body = _replace_var(f.body, f.var, witness)
        return _skolemize(body, universals, sig, prefix)
    raise ValueError(f"formula not in negation normal form: {f!r}")


def _replace_var(f: Formula, var: Var, value: Term) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(apply_subst({var: value}, a) for a in f.args))
    if isinstance(f, Not):
        return Not(_replace_var(f.body, var, value))
    if isinstance(f, And):
        return And(tuple(_replace_var(g, var, value) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(_replace_var(g, var, value) for g in f.items))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, _replace_var(f.body, var, value))
    return f


def _distribute(f: Formula) -> list[list[Literal]] | None:
    """CNF as lists of literals; None encodes the valid formula (no clauses)."""
    if isinstance(f, Top):
        return None
    if isinstance(f, Bottom):
        return [[]]
    if isinstance(f, Atom):
        return [[Literal(True, f.pred, f.args)]]
    if isinstance(f, Not):
        assert isinstance(f.body, Atom)
        return [[Literal(False, f.body.pred, f.body.args)]]
    if isinstance(f, And):
        out: list[list[Literal]] = []
        for g in f.items:
            sub = _distribute(g)
            if sub is not None:
                out.extend(sub)
        return out if out else None
    if isinstance(f, Or):
        parts = [_distribute(g) for g in f.items]
        clauses: list[list[Literal]] = [[]]
        for p in parts:
            if p is None:
                return None
            clauses = [c + d for c in clauses for d in p]
        return clauses
    raise ValueError(f"unexpected connective after skolemization: {f!r}")
