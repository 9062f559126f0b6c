"""Independent brute-force oracles used to validate the engine.

Everything here works directly from the definitions by exhaustive
truth-table evaluation and subset enumeration, with no dependency on
the SAT/HS-tree code paths it is used to check. Only usable for small
inputs (roughly <= 12 atoms, |K| <= 10).
"""

from itertools import chain, combinations, product

from diagseq.formula import And, Atom, Const, Iff, Implies, Not, Or, atoms_of


def eval_formula(f, assignment):
    if isinstance(f, Atom):
        return assignment[f.name]
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not eval_formula(f.child, assignment)
    if isinstance(f, And):
        return all(eval_formula(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(eval_formula(c, assignment) for c in f.children)
    if isinstance(f, Implies):
        return (not eval_formula(f.lhs, assignment)) or eval_formula(f.rhs, assignment)
    if isinstance(f, Iff):
        return eval_formula(f.lhs, assignment) == eval_formula(f.rhs, assignment)
    raise TypeError(f)


def all_assignments(formulas):
    names = sorted(set().union(*[atoms_of(f) for f in formulas])) if formulas else []
    for bits in product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def tt_satisfiable(formulas):
    formulas = list(formulas)
    return any(all(eval_formula(f, a) for f in formulas) for a in all_assignments(formulas))


def tt_entails(formulas, goal):
    formulas = list(formulas)
    return all(eval_formula(goal, a)
               for a in all_assignments(formulas + [goal])
               if all(eval_formula(f, a) for f in formulas))


def tt_valid_diagnosis(dpi, removed_labels):
    removed = set(removed_labels)
    present = [f for l, f in dpi.k if l not in removed]
    context = present + list(dpi.b.formulas) + list(dpi.p.formulas)
    if not tt_satisfiable(context):
        return False
    return not any(tt_entails(context, n) for n in dpi.n.formulas)


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def tt_minimal_diagnoses(dpi):
    """All minimal diagnoses, as frozensets of K labels."""
    valid = [frozenset(s) for s in powerset(dpi.k.labels) if tt_valid_diagnosis(dpi, s)]
    return {d for d in valid if not any(o < d for o in valid)}


def tt_is_conflict(dpi, labels):
    subset = set(labels)
    present = [f for l, f in dpi.k if l in subset]
    context = present + list(dpi.b.formulas) + list(dpi.p.formulas)
    if not tt_satisfiable(context):
        return True
    return any(tt_entails(context, n) for n in dpi.n.formulas)


def tt_minimal_conflicts(dpi):
    conflicts = [frozenset(s) for s in powerset(dpi.k.labels) if tt_is_conflict(dpi, s)]
    return {c for c in conflicts if not any(o < c for o in conflicts)}


def minimal_hitting_sets(sets):
    """All minimal hitting sets of a family of label sets, by enumeration."""
    universe = sorted(set().union(*sets)) if sets else []
    hitting = [frozenset(s) for s in powerset(universe)
               if all(frozenset(s) & c for c in sets)]
    return {h for h in hitting if not any(o < h for o in hitting)}
