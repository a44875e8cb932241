"""Finite groups as multiplication tables, plus homomorphisms, actions,
quotients, sections and 2-cocycles.

Elements are dense indices into a name list; index 0 is always the identity.
The permutation-composition convention throughout is (a*b)(x) = a(b(x)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .report import CheckReport


class GroupConstructionError(ValueError):
    pass

class NotAssociative(GroupConstructionError):
    pass

class NoIdentityAtZero(GroupConstructionError):
    pass

class MissingInverse(GroupConstructionError):
    pass

class NotLatinSquare(GroupConstructionError):
    pass

class NotSubgroup(GroupConstructionError):
    pass

class NotNormal(GroupConstructionError):
    pass

class OrderBoundExceeded(GroupConstructionError):
    pass

class CocycleIdentityViolated(GroupConstructionError):
    pass


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    __slots__ = ("names", "table", "inv")

    def __init__(self, names, table, inv):
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        self.inv = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, seq) -> int:
        acc = 0
        for x in seq:
            acc = self.table[acc][x]
        return acc

    def conj(self, p: int, x: int) -> int:
        """p * x * p^-1."""
        return self.table[self.table[p][x]][self.inv[p]]

    def commutator(self, g: int, h: int) -> int:
        """g * h * g^-1 * h^-1."""
        return self.product((g, h, self.inv[g], self.inv[h]))

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in self.elements() for b in self.elements())

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and self.names == other.names and self.table == other.table)

    def __hash__(self):
        return hash((self.names, self.table))

    def __repr__(self):
        return f"FiniteGroup({'{'}{', '.join(self.names)}{'}'})"

    def to_json(self):
        return {"names": list(self.names), "table": [list(r) for r in self.table]}


def check_group_table(names, table) -> CheckReport:
    """Report-based validation of a multiplication table: shape, identity at
    index 0, Latin square, two-sided inverses, and full associativity."""
    report = CheckReport("group table")
    names = tuple(str(n) for n in names)
    n = len(names)
    table = tuple(tuple(row) for row in table)
    bad = []
    if len(table) != n or any(len(row) != n for row in table):
        bad.append(("table", f"must be {n}x{n}"))
    elif any(not (0 <= x < n) for row in table for x in row):
        bad.append(("table", "entry out of range"))
    if len(set(names)) != n:
        bad.append(("names", "element names must be distinct"))
    report.add("well_formed", bad)
    if bad:
        return report
    fails = [(names[a], "index 0 is not a two-sided identity")
             for a in range(n) if table[0][a] != a or table[a][0] != a]
    report.add("identity_at_zero", fails)
    fails = [(names[a], "row or column repeats an element") for a in range(n)
             if len(set(table[a])) != n or len({table[b][a] for b in range(n)}) != n]
    report.add("latin_square", fails)
    fails = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == 0), None)
        if b is None or table[b][a] != 0:
            fails.append((names[a], "no two-sided inverse"))
    report.add("inverses", fails)
    fails = []
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    fails.append((f"({names[a]},{names[b]},{names[c]})",
                                  "associativity fails"))
    report.add("associativity", fails)
    return report


_GROUP_ERRORS = {
    "well_formed": GroupConstructionError,
    "identity_at_zero": NoIdentityAtZero,
    "latin_square": NotLatinSquare,
    "inverses": MissingInverse,
    "associativity": NotAssociative,
}


def make_group(names, table) -> FiniteGroup:
    """Validate a multiplication table and return the group."""
    report = check_group_table(names, table)
    fail = report.first_failure()
    if fail is not None:
        raise _GROUP_ERRORS[fail.axiom](f"{fail.instance}: {fail.detail}")
    names = tuple(str(n) for n in names)
    table = tuple(tuple(row) for row in table)
    n = len(names)
    inv = [next(b for b in range(n) if table[a][b] == 0) for a in range(n)]
    return FiniteGroup(names, table, inv)


def trivial_group() -> FiniteGroup:
    return make_group(["e"], [[0]])


def cyclic_group(n: int) -> FiniteGroup:
    names = ["0"] + [str(k) for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_group(names, table)


def _perm_compose(a, b):
    # (a*b)(x) = a(b(x)); perms are tuples over range(k)
    return tuple(a[b[x]] for x in range(len(a)))


def permutation_group(perms, names) -> FiniteGroup:
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(a, b)] for b in perms] for a in perms]
    return make_group(names, table)


def symmetric_group_3() -> FiniteGroup:
    """S3 acting on {1,2,3}; element order: e, (12), (13), (23), (123), (132)."""
    perms = [
        (0, 1, 2),   # e
        (1, 0, 2),   # (12)
        (2, 1, 0),   # (13)
        (0, 2, 1),   # (23)
        (1, 2, 0),   # (123): 1->2, 2->3, 3->1
        (2, 0, 1),   # (132): 1->3, 3->2, 2->1
    ]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return make_group(names, [[perms.index(_perm_compose(a, b)) for b in perms] for a in perms])


@dataclass(frozen=True)
class GroupHomomorphism:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def kernel(self) -> tuple[int, ...]:
        return tuple(x for x in self.source.elements() if self.map[x] == 0)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def to_json(self):
        return {"map": list(self.map)}


def check_homomorphism(h: GroupHomomorphism) -> CheckReport:
    report = CheckReport("homomorphism")
    bad = []
    if len(h.map) != h.source.order or any(not (0 <= y < h.target.order) for y in h.map):
        bad.append(("shape", "map length or index out of range"))
        report.add("well_formed", bad)
        return report
    report.add_pass("well_formed")
    name = h.source.names
    fails = []
    if h.map[0] != 0:
        fails.append(("e", "identity not sent to identity"))
    for i in h.source.elements():
        for j in h.source.elements():
            lhs = h.map[h.source.mul(i, j)]
            rhs = h.target.mul(h.map[i], h.map[j])
            if lhs != rhs:
                fails.append((f"({name[i]},{name[j]})",
                              f"f(ij)={h.target.names[lhs]} but f(i)f(j)={h.target.names[rhs]}"))
    report.add("homomorphism", fails)
    return report


def hom(source: FiniteGroup, target: FiniteGroup, mapping) -> GroupHomomorphism:
    h = GroupHomomorphism(source, target, tuple(mapping))
    rep = check_homomorphism(h)
    if not rep.ok:
        fail = rep.first_failure()
        raise GroupConstructionError(f"not a homomorphism at {fail.instance}: {fail.detail}")
    return h


def identity_hom(g: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(g, g, tuple(g.elements()))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(source, target, (0,) * source.order)


def compose_homs(outer: GroupHomomorphism, inner: GroupHomomorphism) -> GroupHomomorphism:
    if inner.target is not outer.source and inner.target != outer.source:
        raise ValueError("homomorphisms do not compose")
    return GroupHomomorphism(inner.source, outer.target,
                             tuple(outer.map[x] for x in inner.map))


@dataclass(frozen=True)
class GroupAction:
    """Left action of `actor` on `space` by group automorphisms."""

    actor: FiniteGroup
    space: FiniteGroup
    table: tuple[tuple[int, ...], ...]

    def act(self, p: int, c: int) -> int:
        return self.table[p][c]

    def to_json(self):
        return {"table": [list(r) for r in self.table]}


def check_action(act: GroupAction) -> CheckReport:
    report = CheckReport("group action")
    actor, space, table = act.actor, act.space, act.table
    if len(table) != actor.order or any(len(r) != space.order for r in table):
        report.add("well_formed", [("shape", "table shape mismatch")])
        return report
    report.add_pass("well_formed")
    fails = [(space.names[c], "identity acts nontrivially")
             for c in space.elements() if table[0][c] != c]
    report.add("identity_acts_trivially", fails)
    fails = []
    for p in actor.elements():
        for q in actor.elements():
            pq = actor.mul(p, q)
            for c in space.elements():
                if table[pq][c] != table[p][table[q][c]]:
                    fails.append((f"({actor.names[p]},{actor.names[q]},{space.names[c]})",
                                  "^(pq)c != ^p(^q c)"))
    report.add("action_compatible", fails)
    fails = []
    for p in actor.elements():
        row = table[p]
        if len(set(row)) != space.order:
            fails.append((actor.names[p], "not a bijection"))
            continue
        for c in space.elements():
            for d in space.elements():
                if row[space.mul(c, d)] != space.mul(row[c], row[d]):
                    fails.append((f"({actor.names[p]},{space.names[c]},{space.names[d]})",
                                  "^p(cd) != ^pc ^pd"))
    report.add("acts_by_automorphisms", fails)
    return report


def action(actor: FiniteGroup, space: FiniteGroup, table) -> GroupAction:
    act = GroupAction(actor, space, tuple(tuple(r) for r in table))
    rep = check_action(act)
    if not rep.ok:
        fail = rep.first_failure()
        raise GroupConstructionError(f"invalid action ({fail.axiom}) at {fail.instance}")
    return act


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
    return action(actor, space, [list(space.elements()) for _ in actor.elements()])


def conjugation_action(g: FiniteGroup) -> GroupAction:
    """g acting on itself by ^p c = p c p^-1."""
    return action(g, g, [[g.conj(p, c) for c in g.elements()] for p in g.elements()])


# --- subgroups, quotients ------------------------------------------------

def is_subgroup(g: FiniteGroup, members) -> bool:
    members = set(members)
    if 0 not in members or not members <= set(g.elements()):
        return False
    return all(g.mul(a, b) in members for a in members for b in members) and \
        all(g.inv[a] in members for a in members)


def subgroup_closure(g: FiniteGroup, gens) -> tuple[int, ...]:
    members = {0, *gens}
    frontier = list(members)
    while frontier:
        a = frontier.pop()
        for b in list(members):
            for x in (g.mul(a, b), g.mul(b, a), g.inv[a]):
                if x not in members:
                    members.add(x)
                    frontier.append(x)
    return tuple(sorted(members))


def is_normal(g: FiniteGroup, members) -> bool:
    members = set(members)
    return all(g.conj(p, a) in members for p in g.elements() for a in members)


def restrict_subgroup(g: FiniteGroup, members) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup on `members` as a FiniteGroup, plus its inclusion indices."""
    if not is_subgroup(g, members):
        raise NotSubgroup(f"{sorted(members)} is not a subgroup")
    members = tuple(sorted(members))
    pos = {m: i for i, m in enumerate(members)}
    table = [[pos[g.mul(a, b)] for b in members] for a in members]
    sub = make_group([g.names[m] for m in members], table)
    return sub, members


def quotient_group(g: FiniteGroup, members) -> tuple[FiniteGroup, GroupHomomorphism]:
    """Quotient by a normal subgroup, with the projection homomorphism."""
    if not is_subgroup(g, members):
        raise NotSubgroup(f"{sorted(members)} is not a subgroup")
    if not is_normal(g, members):
        raise NotNormal(f"{sorted(members)} is not normal")
    members = tuple(sorted(members))
    cosets = []
    coset_of = [None] * g.order
    for a in g.elements():
        if coset_of[a] is not None:
            continue
        coset = tuple(sorted(g.mul(a, m) for m in members))
        for x in coset:
            coset_of[x] = len(cosets)
        cosets.append(coset)
    # identity coset contains 0 and is found first, so it gets index 0
    names = [f"[{g.names[c[0]]}]" for c in cosets]
    table = [[coset_of[g.mul(a[0], b[0])] for b in cosets] for a in cosets]
    quot = make_group(names, table)
    return quot, hom(g, quot, coset_of)


# --- automorphisms --------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismGroup:
    """Aut(G) with each element's underlying permutation of G."""

    group: FiniteGroup
    base: FiniteGroup
    perms: tuple[tuple[int, ...], ...]
    embedding: GroupHomomorphism  # G -> Aut(G) by inner automorphisms
    standard_action: GroupAction  # Aut(G) acting on G


def _element_orders(g: FiniteGroup) -> list[int]:
    orders = []
    for a in g.elements():
        x, k = a, 1
        while x != 0:
            x = g.mul(x, a)
            k += 1
        orders.append(k)
    return orders


def _automorphism_perms(g: FiniteGroup) -> list[tuple[int, ...]]:
    n = g.order
    orders = _element_orders(g)
    found = []

    def consistent(partial, k, img):
        # images known for 0..k-1 plus the candidate m(k) = img
        def m(x):
            return partial[x] if x < k else img
        for a in range(k + 1):
            for x, y in ((a, k), (k, a)):
                xy = g.table[x][y]
                if xy <= k and g.table[m(x)][m(y)] != m(xy):
                    return False
        for a in range(k):
            for b in range(k):
                if g.table[a][b] == k and g.table[partial[a]][partial[b]] != img:
                    return False
        return True

    def extend(partial):
        k = len(partial)
        if k == n:
            found.append(tuple(partial))
            return
        used = set(partial)
        for img in range(n):
            if img in used or orders[img] != orders[k]:
                continue
            if consistent(partial, k, img):
                extend(partial + [img])

    extend([0])
    return sorted(found)


def automorphism_group(g: FiniteGroup, order_bound: int = 12) -> AutomorphismGroup:
    """Aut(g) by brute-force search over bijections fixing the identity."""
    if g.order > order_bound:
        raise OrderBoundExceeded(f"|G| = {g.order} exceeds bound {order_bound}")
    perms = _automorphism_perms(g)
    index = {p: i for i, p in enumerate(perms)}
    names = [f"a{i}" for i in range(len(perms))]
    table = [[index[_perm_compose(a, b)] for b in perms] for a in perms]
    aut = make_group(names, table)
    inner = tuple(index[tuple(g.conj(x, y) for y in g.elements())] for x in g.elements())
    alpha = hom(g, aut, inner)
    std = action(aut, g, [list(p) for p in perms])
    return AutomorphismGroup(aut, g, tuple(perms), alpha, std)


# --- sections and 2-cocycles ----------------------------------------------

@dataclass(frozen=True)
class Section:
    """A set-theoretic section of a surjective homomorphism, with s(1)=1."""

    projection: GroupHomomorphism
    choice: tuple[int, ...]

    def __call__(self, t: int) -> int:
        return self.choice[t]


def section(projection: GroupHomomorphism, choice=None) -> Section:
    if not projection.is_surjective():
        raise GroupConstructionError("section requires a surjective projection")
    if choice is None:
        choice = [min(x for x in projection.source.elements() if projection.map[x] == t)
                  for t in projection.target.elements()]
    choice = tuple(choice)
    if choice[0] != 0:
        raise GroupConstructionError("section must send identity to identity")
    for t in projection.target.elements():
        if projection.map[choice[t]] != t:
            raise GroupConstructionError(f"q(s({projection.target.names[t]})) != it")
    return Section(projection, choice)


@dataclass(frozen=True)
class TwoCocycle:
    """Normalized kernel-valued 2-cocycle f(g,h) = s(g)s(h)s(gh)^-1 of a section.

    `values` holds kernel-subgroup indices; `lift_action` gives the
    conjugation action n |-> s(g) n s(g)^-1 in kernel indices, which is what
    the twisted cocycle identity is stated with.
    """

    base: FiniteGroup            # G, the target of the projection
    kernel: FiniteGroup          # N = ker q as its own group
    kernel_members: tuple[int, ...]
    values: tuple[tuple[int, ...], ...]
    lift_action: tuple[tuple[int, ...], ...]


def cocycle_from_section(sec: Section) -> TwoCocycle:
    q = sec.projection
    P, G = q.source, q.target
    kernel_members = q.kernel()
    N, members = restrict_subgroup(P, kernel_members)
    pos = {m: i for i, m in enumerate(members)}
    values = []
    for g in G.elements():
        row = []
        for h in G.elements():
            x = P.product((sec(g), sec(h), P.inv[sec(G.mul(g, h))]))
            if x not in pos:
                raise CocycleIdentityViolated("cocycle value escaped the kernel")
            row.append(pos[x])
        values.append(tuple(row))
    lift = []
    for g in G.elements():
        lift.append(tuple(pos[P.conj(sec(g), m)] for m in members))
    coc = TwoCocycle(G, N, members, tuple(values), tuple(lift))
    # normalization and the twisted identity are theorems; violation = bug
    for g in G.elements():
        if coc.values[0][g] != 0 or coc.values[g][0] != 0:
            raise CocycleIdentityViolated("cocycle is not normalized")
    for g in G.elements():
        for h in G.elements():
            for k in G.elements():
                lhs = N.mul(coc.values[g][h], coc.values[G.mul(g, h)][k])
                rhs = N.mul(coc.lift_action[g][coc.values[h][k]], coc.values[g][G.mul(h, k)])
                if lhs != rhs:
                    raise CocycleIdentityViolated(
                        f"identity fails at ({G.names[g]},{G.names[h]},{G.names[k]})")
    return coc
