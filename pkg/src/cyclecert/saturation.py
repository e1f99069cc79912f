"""Refutation-based entailment oracle under explicit resource budgets.

Given-clause saturation with binary resolution, positive factoring,
equality resolution and paramodulation, guarded by a Knuth-Bendix-style
ordering with all symbol weights 1 and precedence given by declaration
order.  Redundancy control is tautology deletion plus forward subsumption.

Counter-satisfiability is only ever reported on true saturation; any run
that discards a conclusion (depth cap) or exhausts a budget reports
unknown instead.  Proved verdicts carry a replayable derivation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from collections import Counter
from enum import Enum
from typing import Iterable, Sequence

from .clausify import clausify
from .formulas import Exists, Forall, Formula, Not, clause_to_formula, free_vars
from .terms import (
    EQ,
    App,
    Clause,
    ClauseSet,
    Literal,
    Param,
    Signature,
    Term,
    Var,
    clause_depth,
    clause_size,
    make_clause,
    term_size,
)
from .unify import (
    Subst,
    apply_full_literal,
    apply_subst_full,
    mgu,
    mgu_atoms,
    rename_clause,
    resolve_subst,
    subsumes,
)

PARAM_PRECEDENCE = 10**9
_PRED_OFFSET = 10**6


class Verdict(Enum):
    PROVED = "proved"
    COUNTER_SATISFIABLE = "counter-satisfiable"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Budget:
    max_generated_clauses: int = 5000
    max_depth: int = 12
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        if self.max_generated_clauses <= 0 or self.max_depth <= 0:
            raise ValueError("budget limits must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class Step:
    """One derivation step; non-input steps keep the renamed premises used."""

    idx: int
    clause: Clause
    rule: str
    parents: tuple[int, ...] = ()
    premises: tuple[Clause, ...] = ()
    lit_indices: tuple[int, ...] = ()
    position: tuple[int, ...] | None = None
    from_left: bool | None = None
    unifier: tuple[tuple[str, str], ...] = ()


@dataclass
class EntailmentVerdict:
    verdict: Verdict
    derivation: tuple[Step, ...] = ()
    generated: int = 0
    kept: int = 0
    note: str = ""
    saturated_clauses: tuple[Clause, ...] = ()

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED


@dataclass
class GoalCheck:
    goal: Clause
    route: str  # "subsumption" or "engine"
    verdict: Verdict
    detail: EntailmentVerdict | None = None


@dataclass
class SetEntailmentVerdict:
    verdict: Verdict
    legs: tuple[GoalCheck, ...]
    generated: int

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED


def _build_precedence(sig: Signature) -> dict[str, int]:
    prec = {EQ: -1}
    for i, name in enumerate(sig.functions):
        prec[name] = i
    for i, name in enumerate(sig.predicates):
        prec[name] = _PRED_OFFSET + i
    return prec


def _var_counts(t: Term, counts: Counter) -> None:
    if isinstance(t, Var):
        counts[t] += 1
    elif isinstance(t, App):
        for a in t.args:
            _var_counts(a, counts)


def _covers(big: Counter, small: Counter) -> bool:
    return all(big[v] >= n for v, n in small.items())


def kbo_greater(s: Term, t: Term, prec: dict[str, int]) -> bool:
    """Strict Knuth-Bendix comparison, all weights 1."""
    if s == t:
        return False
    cs: Counter = Counter()
    ct: Counter = Counter()
    _var_counts(s, cs)
    _var_counts(t, ct)
    if not _covers(cs, ct):
        return False
    ws, wt = term_size(s), term_size(t)
    if ws != wt:
        return ws > wt
    if isinstance(s, Var) or isinstance(t, Var):
        return False
    ps = PARAM_PRECEDENCE if isinstance(s, Param) else prec.get(s.name, 0)
    pt = PARAM_PRECEDENCE if isinstance(t, Param) else prec.get(t.name, 0)
    if ps != pt:
        return ps > pt
    if isinstance(s, Param) or isinstance(t, Param):
        return False
    for a, b in zip(s.args, t.args):
        if a != b:
            return kbo_greater(a, b, prec)
    return False


def _atom_weight(lit: Literal) -> int:
    return 1 + sum(term_size(a) for a in lit.args)


def atom_greater(l1: Literal, l2: Literal, prec: dict[str, int]) -> bool:
    """KBO on atoms, predicates compared by precedence above functions."""
    if (l1.pred, l1.args) == (l2.pred, l2.args):
        return False
    c1: Counter = Counter()
    c2: Counter = Counter()
    for a in l1.args:
        _var_counts(a, c1)
    for a in l2.args:
        _var_counts(a, c2)
    if not _covers(c1, c2):
        return False
    w1, w2 = _atom_weight(l1), _atom_weight(l2)
    if w1 != w2:
        return w1 > w2
    p1, p2 = prec.get(l1.pred, 0), prec.get(l2.pred, 0)
    if p1 != p2:
        return p1 > p2
    for a, b in zip(l1.args, l2.args):
        if a != b:
            return kbo_greater(a, b, prec)
    return False


def lit_greater(l1: Literal, l2: Literal, prec: dict[str, int]) -> bool:
    if (l1.pred, l1.args) == (l2.pred, l2.args):
        return (not l1.positive) and l2.positive
    return atom_greater(l1, l2, prec)


def _is_maximal(lits: Sequence[Literal], i: int, sub: Subst, prec: dict[str, int]) -> bool:
    li = apply_full_literal(sub, lits[i])
    for j, lj in enumerate(lits):
        if j == i:
            continue
        if lit_greater(apply_full_literal(sub, lj), li, prec):
            return False
    return True


def _is_tautology(c: Clause) -> bool:
    for lit in c.literals:
        if lit.positive and lit.is_equation and lit.args[0] == lit.args[1]:
            return True
        if lit.positive and lit.negated() in c.literals:
            return True
    return False


def _nonvar_positions(t: Term, path: tuple[int, ...]) -> Iterable[tuple[tuple[int, ...], Term]]:
    if isinstance(t, Var):
        return
    yield path, t
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            yield from _nonvar_positions(a, path + (i,))


def _replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    assert isinstance(t, App)
    i = path[0]
    args = list(t.args)
    args[i] = _replace_at(args[i], path[1:], new)
    return App(t.name, tuple(args))


def _literal_positions(lit: Literal) -> Iterable[tuple[tuple[int, ...], Term]]:
    for i, a in enumerate(lit.args):
        yield from _nonvar_positions(a, (i,))


def _replace_in_literal(lit: Literal, path: tuple[int, ...], new: Term) -> Literal:
    args = list(lit.args)
    args[path[0]] = _replace_at(args[path[0]], path[1:], new)
    return Literal(lit.positive, lit.pred, tuple(args))


def _render_subst(sub: Subst) -> tuple[tuple[str, str], ...]:
    return tuple(sorted((v.name, str(t)) for v, t in resolve_subst(sub).items()))


class _Prover:
    def __init__(self, sig: Signature, budget: Budget):
        self.prec = _build_precedence(sig)
        self.budget = budget
        self.steps: list[Step] = []
        self.alive: list[int] = []
        self.generated = 0
        self.incomplete = False

    def run(self, clauses: Sequence[Clause]) -> EntailmentVerdict:
        start = time.monotonic()
        unprocessed: list[int] = []
        processed: list[int] = []
        for c in clauses:
            c = make_clause(c.literals)
            if _is_tautology(c):
                continue
            if any(subsumes(self.steps[i].clause, c) for i in self.alive):
                continue
            idx = len(self.steps)
            self.steps.append(Step(idx, c, "input"))
            self.alive.append(idx)
            unprocessed.append(idx)
            if c.is_empty:
                return self._proved(idx)

        pick = 0
        while unprocessed:
            if self.generated >= self.budget.max_generated_clauses:
                return self._verdict(Verdict.UNKNOWN, "budget exhausted (generated clauses)")
            if self.budget.max_seconds is not None and time.monotonic() - start > self.budget.max_seconds:
                return self._verdict(Verdict.UNKNOWN, "budget exhausted (wall clock)")
            given = self._select(unprocessed, pick)
            pick += 1
            unprocessed.remove(given)
            processed.append(given)
            for conclusion in self._inferences(given, processed):
                self.generated += 1
                new = make_clause(conclusion.clause.literals)
                if clause_depth(new) > self.budget.max_depth:
                    self.incomplete = True
                    continue
                if _is_tautology(new):
                    continue
                if any(subsumes(self.steps[i].clause, new) for i in self.alive):
                    continue
                idx = len(self.steps)
                step = Step(idx, new, conclusion.rule, conclusion.parents,
                            conclusion.premises, conclusion.lit_indices,
                            conclusion.position, conclusion.from_left, conclusion.unifier)
                self.steps.append(step)
                self.alive.append(idx)
                unprocessed.append(idx)
                if new.is_empty:
                    return self._proved(idx)
                if self.generated >= self.budget.max_generated_clauses:
                    return self._verdict(Verdict.UNKNOWN, "budget exhausted (generated clauses)")
        if self.incomplete:
            return self._verdict(Verdict.UNKNOWN, "depth cap discarded conclusions")
        return self._verdict(Verdict.COUNTER_SATISFIABLE, "saturated")

    def _select(self, unprocessed: list[int], pick: int) -> int:
        if pick % 2 == 0:
            return min(unprocessed, key=lambda i: (clause_size(self.steps[i].clause), i))
        return min(unprocessed)

    def _inferences(self, given: int, processed: list[int]):
        g = self.steps[given].clause
        yield from self._factorings(given, g)
        yield from self._equality_resolutions(given, g)
        for p in processed:
            c = self.steps[p].clause
            renamed = rename_clause(c, "r")
            yield from self._resolutions(given, g, p, renamed)
            yield from self._resolutions(p, renamed, given, g)
            yield from self._paramodulations(given, g, p, renamed)
            yield from self._paramodulations(p, renamed, given, g)

    def _factorings(self, idx: int, c: Clause):
        lits = c.literals
        for i in range(len(lits)):
            if not lits[i].positive:
                continue
            for j in range(i + 1, len(lits)):
                if not lits[j].positive:
                    continue
                sub = mgu_atoms(lits[i], lits[j])
                if sub is None:
                    continue
                if not _is_maximal(lits, i, sub, self.prec):
                    continue
                new = [apply_full_literal(sub, l) for l in lits]
                yield _Conclusion(Clause(tuple(new)), "factor", (idx,), (c,), (i, j),
                                  unifier=_render_subst(sub))

    def _equality_resolutions(self, idx: int, c: Clause):
        lits = c.literals
        for i, lit in enumerate(lits):
            if lit.positive or not lit.is_equation:
                continue
            sub = mgu(lit.args[0], lit.args[1])
            if sub is None:
                continue
            if not _is_maximal(lits, i, sub, self.prec):
                continue
            new = [apply_full_literal(sub, l) for j, l in enumerate(lits) if j != i]
            yield _Conclusion(Clause(tuple(new)), "eqres", (idx,), (c,), (i,),
                              unifier=_render_subst(sub))

    def _resolutions(self, pi: int, pc: Clause, ni: int, nc: Clause):
        """Resolve a positive literal of pc against a negative literal of nc."""
        for i, li in enumerate(pc.literals):
            if not li.positive:
                continue
            for j, lj in enumerate(nc.literals):
                if lj.positive or lj.pred != li.pred:
                    continue
                sub = mgu_atoms(li, lj)
                if sub is None:
                    continue
                if not _is_maximal(pc.literals, i, sub, self.prec):
                    continue
                if not _is_maximal(nc.literals, j, sub, self.prec):
                    continue
                new = [apply_full_literal(sub, l) for k, l in enumerate(pc.literals) if k != i]
                new += [apply_full_literal(sub, l) for k, l in enumerate(nc.literals) if k != j]
                yield _Conclusion(Clause(tuple(new)), "resolve", (pi, ni), (pc, nc), (i, j),
                                  unifier=_render_subst(sub))

    def _paramodulations(self, si: int, sc: Clause, ti: int, tc: Clause):
        """Rewrite with a positive equation of sc inside a literal of tc."""
        for i, li in enumerate(sc.literals):
            if not li.positive or not li.is_equation:
                continue
            for from_left in (True, False):
                l, r = li.args if from_left else (li.args[1], li.args[0])
                for j, lj in enumerate(tc.literals):
                    for path, sub_term in _literal_positions(lj):
                        sub = mgu(l, sub_term)
                        if sub is None:
                            continue
                        if kbo_greater(apply_subst_full(sub, r), apply_subst_full(sub, l), self.prec):
                            continue
                        if not _is_maximal(sc.literals, i, sub, self.prec):
                            continue
                        if not _is_maximal(tc.literals, j, sub, self.prec):
                            continue
                        rewritten = _replace_in_literal(lj, path, r)
                        new = [apply_full_literal(sub, l2) for k, l2 in enumerate(sc.literals) if k != i]
                        new += [apply_full_literal(sub, rewritten if k == j else l2)
                                for k, l2 in enumerate(tc.literals)]
                        yield _Conclusion(Clause(tuple(new)), "paramod", (si, ti), (sc, tc),
                                          (i, j), path, from_left, _render_subst(sub))

    def _proved(self, empty_idx: int) -> EntailmentVerdict:
        needed = set()
        stack = [empty_idx]
        while stack:
            i = stack.pop()
            if i in needed:
                continue
            needed.add(i)
            stack.extend(self.steps[i].parents)
        derivation = tuple(self.steps[i] for i in sorted(needed))
        return EntailmentVerdict(Verdict.PROVED, derivation, self.generated,
                                 len(self.alive), "refutation found",
                                 tuple(self.steps[i].clause for i in self.alive))

    def _verdict(self, v: Verdict, note: str) -> EntailmentVerdict:
        return EntailmentVerdict(v, (), self.generated, len(self.alive), note,
                                 tuple(self.steps[i].clause for i in self.alive))


@dataclass
class _Conclusion:
    clause: Clause
    rule: str
    parents: tuple[int, ...]
    premises: tuple[Clause, ...]
    lit_indices: tuple[int, ...]
    position: tuple[int, ...] | None = None
    from_left: bool | None = None
    unifier: tuple[tuple[str, str], ...] = ()


def saturate(s: ClauseSet, sig: Signature, budget: Budget | None = None) -> EntailmentVerdict:
    """Saturate s; proved means falsum was derived within the budget."""
    return _Prover(sig, budget or Budget()).run(tuple(s))


def entails(s: ClauseSet, goal: Clause, sig: Signature, budget: Budget | None = None) -> EntailmentVerdict:
    """Check s |= goal by saturating s together with the Skolemized negation of goal."""
    res = clausify(Not(clause_to_formula(goal)), sig)
    combined = tuple(s) + tuple(res.clauses)
    return _Prover(res.signature, budget or Budget()).run(combined)


def prove_formula(premises: ClauseSet, goal: Formula, sig: Signature,
                  budget: Budget | None = None) -> EntailmentVerdict:
    """Check premises |= goal for an arbitrary formula goal.

    Free variables of the goal other than eta are universally closed
    before negating.
    """
    closed = goal
    for v in reversed(free_vars(goal)):
        closed = Forall(v, closed)
    res = clausify(Not(closed), sig)
    combined = tuple(premises) + tuple(res.clauses)
    return _Prover(res.signature, budget or Budget()).run(combined)


def entails_set(s: ClauseSet, t: ClauseSet, sig: Signature,
                budget: Budget | None = None) -> SetEntailmentVerdict:
    """Check s |= c for every clause c of t.

    A goal clause subsumed by a member of s is proved without the engine.
    Proved only if every leg proves; unknown if any leg is unknown;
    counter-satisfiable otherwise.
    """
    budget = budget or Budget()
    legs: list[GoalCheck] = []
    generated = 0
    for goal in t:
        if any(subsumes(c, goal) for c in s):
            legs.append(GoalCheck(goal, "subsumption", Verdict.PROVED))
            continue
        ev = entails(s, goal, sig, budget)
        generated += ev.generated
        legs.append(GoalCheck(goal, "engine", ev.verdict, ev))
    if all(l.verdict is Verdict.PROVED for l in legs):
        overall = Verdict.PROVED
    elif any(l.verdict is Verdict.UNKNOWN for l in legs):
        overall = Verdict.UNKNOWN
    else:
        overall = Verdict.COUNTER_SATISFIABLE
    return SetEntailmentVerdict(overall, tuple(legs), generated)


def replay_derivation(ev: EntailmentVerdict, inputs: ClauseSet) -> bool:
    """Re-run every recorded step of a proved derivation.

    Leaves must be input clauses; each inference is recomputed from the
    recorded premises and must reproduce the recorded clause.
    """
    if not ev.proved:
        return False
    input_clauses = [make_clause(c.literals) for c in inputs]
    by_idx = {step.idx: step for step in ev.derivation}
    for step in ev.derivation:
        if step.rule == "input":
            if step.clause not in input_clauses:
                return False
            continue
        if any(p not in by_idx for p in step.parents):
            return False
        recomputed = _recompute(step)
        if recomputed is None or make_clause(recomputed.literals) != step.clause:
            return False
    if not ev.derivation or not ev.derivation[-1].clause.is_empty:
        return False
    return True


def _recompute(step: Step) -> Clause | None:
    if step.rule == "factor":
        (c,) = step.premises
        i, j = step.lit_indices
        sub = mgu_atoms(c.literals[i], c.literals[j])
        if sub is None:
            return None
        return Clause(tuple(apply_full_literal(sub, l) for l in c.literals))
    if step.rule == "eqres":
        (c,) = step.premises
        (i,) = step.lit_indices
        lit = c.literals[i]
        if lit.positive or not lit.is_equation:
            return None
        sub = mgu(lit.args[0], lit.args[1])
        if sub is None:
            return None
        return Clause(tuple(apply_full_literal(sub, l) for k, l in enumerate(c.literals) if k != i))
    if step.rule == "resolve":
        pc, nc = step.premises
        i, j = step.lit_indices
        li, lj = pc.literals[i], nc.literals[j]
        if not li.positive or lj.positive:
            return None
        sub = mgu_atoms(li, lj)
        if sub is None:
            return None
        new = [apply_full_literal(sub, l) for k, l in enumerate(pc.literals) if k != i]
        new += [apply_full_literal(sub, l) for k, l in enumerate(nc.literals) if k != j]
        return Clause(tuple(new))
    if step.rule == "paramod":
        sc, tc = step.premises
        i, j = step.lit_indices
        li = sc.literals[i]
        if not li.positive or not li.is_equation or step.position is None:
            return None
        l, r = li.args if step.from_left else (li.args[1], li.args[0])
        lj = tc.literals[j]
        target = lj.args[step.position[0]]
        for p in step.position[1:]:
            if not isinstance(target, App):
                return None
            target = target.args[p]
        sub = mgu(l, target)
        if sub is None:
            return None
        rewritten = _replace_in_literal(lj, step.position, r)
        new = [apply_full_literal(sub, l2) for k, l2 in enumerate(sc.literals) if k != i]
        new += [apply_full_literal(sub, rewritten if k == j else l2)
                for k, l2 in enumerate(tc.literals)]
        return Clause(tuple(new))
    return None
