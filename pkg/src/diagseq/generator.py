"""Random generation of solvable propositional DPIs with controllable
diagnostic structure.

Each requested conflict is planted as an implication ladder over fresh
atoms (start fact, implication chain, negated cap) spread over a group
of axiom slots; the conjunction of a complete group derives a
contradiction while every proper subgroup stays consistent, so the
planted groups are exactly the minimal conflicts of the instance and
the minimal diagnoses are their minimal hitting sets. Axioms shared by
several groups conjoin their per-group roles. Axioms outside every
group get filler formulas satisfied by the all-true assignment, which
keeps them out of every conflict while adding operator variety for the
sub-component fault model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dpi import DPI, SentenceSet
from .errors import InfeasibleParams
from .formula import And, Atom, Formula, Iff, Implies, Not, Or
from .probmodel import DistKind, FaultModel, build_fault_model, make_spec
from .seeds import derive_seed


@dataclass(frozen=True)
class GeneratorParams:
    n_axioms: int
    n_atoms: int
    n_conflicts: int
    conflict_size_range: tuple[int, int]
    seed: int


def generate_dpi(params: GeneratorParams) -> DPI:
    lo, hi = params.conflict_size_range
    if lo < 1 or hi < lo:
        raise InfeasibleParams(f"bad conflict size range {params.conflict_size_range}")
    if params.n_conflicts < 1:
        raise InfeasibleParams("n_conflicts must be >= 1")
    if params.n_axioms < hi:
        raise InfeasibleParams(f"n_axioms={params.n_axioms} cannot hold a conflict of size {hi}")
    if params.n_atoms < 2:
        raise InfeasibleParams("n_atoms must be >= 2 for filler formulas")

    rng = random.Random(f"dpi:{params.seed}")
    groups = _sample_groups(rng, params.n_axioms, params.n_conflicts, lo, hi)

    roles: dict[int, list[Formula]] = {i: [] for i in range(params.n_axioms)}
    for gi, group in enumerate(groups):
        for role_pos, slot in enumerate(group):
            roles[slot].append(_ladder_role(gi, role_pos, len(group)))

    filler_atoms = [f"a{i}" for i in range(1, params.n_atoms + 1)]
    formulas: list[Formula] = []
    for i in range(params.n_axioms):
        if roles[i]:
            fs = roles[i]
            base = fs[0] if len(fs) == 1 else And(tuple(fs))
            formulas.append(_decorate(rng, base, filler_atoms))
        else:
            formulas.append(_filler(rng, filler_atoms))
    background = _cross_links(rng, groups)
    return DPI(SentenceSet.auto(formulas, prefix="ax"),
               SentenceSet.auto(background, prefix="b"))


def _cross_links(rng: random.Random, groups: list[tuple[int, ...]]) -> list[Formula]:
    """Background implications between ladder atoms of distinct groups.

    Links always point from a lower-indexed group to a higher-indexed one,
    so no derivation re-enters its source group. Sources must own their
    start slot exclusively and destinations their cap slot, which keeps
    every cross-group conflict from nesting inside a single planted group:
    the groups stay subset-minimal conflicts while the extra cross-group
    minimal conflicts enrich the diagnosis structure.
    """
    links: list[Formula] = []
    if len(groups) < 3:
        return links  # tiny instances keep the pure cross-product structure
    slot_groups: dict[int, set[int]] = {}
    for gi, g in enumerate(groups):
        for slot in g:
            slot_groups.setdefault(slot, set()).add(gi)
    sources = [gi for gi, g in enumerate(groups)
               if len(g) >= 2 and slot_groups[g[0]] == {gi}]
    sinks = [gi for gi, g in enumerate(groups)
             if len(g) >= 2 and slot_groups[g[-1]] == {gi}]
    pairs = [(s, d) for s in sources for d in sinks if s < d]
    if not pairs:
        return links
    for _ in range(len(groups)):
        src, dst = pairs[rng.randrange(len(pairs))]
        j = rng.randrange(len(groups[src]) - 1)
        k = rng.randrange(len(groups[dst]) - 1)
        links.append(Implies(Atom(f"c{src}_{j}"), Atom(f"c{dst}_{k}")))
    return links


def _sample_groups(rng: random.Random, n_axioms: int, n_conflicts: int,
                   lo: int, hi: int) -> list[tuple[int, ...]]:
    """Axiom-slot groups, none a subset of another (so every planted group
    stays a minimal conflict)."""
    groups: list[tuple[int, ...]] = []
    attempts = 0
    while len(groups) < n_conflicts:
        attempts += 1
        if attempts > 1000 * n_conflicts:
            raise InfeasibleParams("could not place conflict groups without subset overlap")
        size = rng.randint(lo, hi)
        cand = tuple(sorted(rng.sample(range(n_axioms), size)))
        cset = set(cand)
        if any(cset <= set(g) or cset >= set(g) for g in groups):
            continue
        groups.append(cand)
    return groups


def _ladder_role(group_index: int, role_pos: int, size: int) -> Formula:
    """Role formula at a ladder position: start atom, chain implication,
    or negated cap; a size-1 group is a self-contradictory axiom."""
    u = lambda j: Atom(f"c{group_index}_{j}")
    if size == 1:
        return And((u(0), Not(u(0))))
    if role_pos == 0:
        return u(0)
    if role_pos == size - 1:
        return Not(u(size - 2))
    return Implies(u(role_pos - 1), u(role_pos))


def _decorate(rng: random.Random, base: Formula, atoms: list[str]) -> Formula:
    """Conjoin up to three inert side conditions onto a conflict axiom.

    Decorations are satisfied by the all-true filler assignment, so they
    never enter a conflict; they exist to spread the axioms' operator
    multiplicities, which a biased fault distribution turns into a wide
    range of axiom fault probabilities.
    """
    n_pads = rng.choice((0, 0, 2, 4, 6, 8))
    for _ in range(n_pads):
        a, b = (Atom(x) for x in rng.sample(atoms, 2))
        shape = rng.randrange(5)
        if shape == 0:
            pad: Formula = a
        elif shape == 1:
            pad = Or((a, b))
        elif shape == 2:
            pad = Or((a, Not(b)))
        elif shape == 3:
            pad = Iff(a, b)
        else:
            pad = Implies(a, b)
        base = And((base, pad))
    return base


def _filler(rng: random.Random, atoms: list[str]) -> Formula:
    a, b = (Atom(x) for x in rng.sample(atoms, 2))
    shape = rng.randrange(5)
    if shape == 0:
        return Implies(a, b)
    if shape == 1:
        return Or((a, b))
    if shape == 2:
        return Or((a, Not(b)))
    if shape == 3:
        return Iff(a, b)
    c = Atom(rng.choice(atoms))
    return Implies(And((a, b)), c)


def instantiate_fault_models(dpi: DPI, kinds, prob_choices: int, master_seed: int) -> list[FaultModel]:
    """One FaultModel per (distribution kind, probability choice), with
    seeds derived deterministically and distinct across pairs."""
    models = []
    for kind in kinds:
        kind = DistKind(kind)
        for choice in range(prob_choices):
            seed = derive_seed(master_seed, "fault-model", kind.value, choice)
            models.append(build_fault_model(dpi.k, make_spec(kind, seed)))
    return models
