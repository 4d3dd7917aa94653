"""The semantic category: Kleisli-op morphisms with the run-tree trace,
its Int completion, and the interpretation of terms."""
from __future__ import annotations

from .arena import Arena, solve
from .intcat import IntCategory, IntMorphism, IntObject
from .kleisli import (SemMorphism, kleisli_compose, kleisli_identity, kleisli_swap,
                      kleisli_tensor, minimal_sets)
from .preord import CarrierMismatch
from .roles import Role
from .terms import Term, Valuation, interpret, max_priority, typecheck


def run_tree_arena(l: int, r: SemMorphism) -> tuple[Arena, dict, set]:
    """Arena whose ∃-winning strategies from ``("root", a)`` are run-trees for
    ``a``.  Returns the arena (terminals not yet decided), the terminal node
    of each reachable leaf summary ``(m, b)``, and that set of summaries."""
    arena = Arena()
    terminals: dict = {}
    todo = []

    def exists_node(node, q, x):
        if node in arena.owner:
            return
        arena.add_node(node, Role.E, q)
        todo.append((node, x))

    for a in range(r.n_src - l):
        exists_node(("root", a), 0, l + a)
    while todo:
        node, x = todo.pop()
        m = node[2] if node[0] == "E" else 0
        for xs in sorted(r.antichains[x], key=sorted):
            choice = ("A", m, xs)
            if choice not in arena.owner:
                arena.add_node(choice, Role.A, 0)
                for q, y in sorted(xs):
                    m2 = max(m, q)
                    if y < l:
                        child = ("E", q, m2, y)
                        exists_node(child, q, y)
                    else:
                        child = ("T", m2, y - l)
                        if child not in arena.owner:
                            arena.add_node(child, Role.E, 0)
                            terminals[(m2, y - l)] = child
                    arena.add_move(choice, child)
            arena.add_move(node, choice)
    return arena, terminals, set(terminals)


def tr_gm(l: int, r: SemMorphism) -> SemMorphism:
    """Trace over the first ``l`` indices of source and target."""
    if l > r.n_src or l > r.n_dst:
        raise CarrierMismatch(f"cannot trace {l} out of {r.n_src}->{r.n_dst}")
    if l == 0:
        return r
    arena, terminals, universe = run_tree_arena(l, r)
    cache: dict = {}

    def winners(t: frozenset) -> dict:
        if t not in cache:
            arena.terminal = {node: (Role.E if s in t else Role.A)
                              for s, node in terminals.items()}
            cache[t] = solve(arena)
        return cache[t]

    families = [minimal_sets(universe, lambda t, a=a: winners(t)[("root", a)] is Role.E)
                for a in range(r.n_src - l)]
    return SemMorphism(r.n_src - l, r.n_dst - l, r.max_rank, tuple(families))


class SemCategory:
    """Kleisli-op morphisms over discrete index sets; objects are sizes."""

    def __init__(self, max_rank: int):
        self.max_rank = max_rank

    def dom(self, f: SemMorphism) -> int:
        return f.n_src

    def cod(self, f: SemMorphism) -> int:
        return f.n_dst

    def identity(self, n: int) -> SemMorphism:
        return kleisli_identity(n, self.max_rank)

    def compose(self, f, g):
        return kleisli_compose(f, g)

    def tensor(self, f, g):
        return kleisli_tensor(f, g)

    def swap(self, m: int, n: int):
        return kleisli_swap(m, n, self.max_rank)

    def trace(self, l: int, f):
        return tr_gm(l, f)

    def equal(self, f, g) -> bool:
        return f == g


def sem_category(max_rank: int) -> SemCategory:
    return SemCategory(max_rank)


def sem_int(max_rank: int) -> IntCategory:
    return IntCategory(SemCategory(max_rank))


def generator_relation(n_in: int, n_out: int, role: Role, prio: int,
                       max_rank: int) -> SemMorphism:
    """Denotation of a single node reached from every entry and leading to every exit."""
    if role is Role.E:
        family = frozenset(frozenset([(prio, j)]) for j in range(n_out))
    else:
        family = frozenset([frozenset((prio, j) for j in range(n_out))])
    return SemMorphism(n_in, n_out, max_rank, (family,) * n_in)


def sem_valuation(max_rank: int) -> Valuation:
    cat = sem_int(max_rank)

    def gen(w: str, u: str, role: Role, prio: int) -> IntMorphism:
        dom = IntObject(w.count("r"), w.count("l"))
        cod = IntObject(u.count("r"), u.count("l"))
        body = generator_relation(dom.pos + cod.neg, cod.pos + dom.neg, role, prio, max_rank)
        return IntMorphism(dom, cod, body)

    return Valuation(cat, IntObject(1, 0), gen)


def interpret_sem(t: Term, max_rank: int | None = None) -> IntMorphism:
    m = max_priority(t) if max_rank is None else max_rank
    typecheck(t, m)
    return interpret(t, sem_valuation(m))
