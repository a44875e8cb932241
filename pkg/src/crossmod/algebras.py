"""Crossed C-algebras: representation, the full axiom checker, group-algebra
constructions, the boxed composition identities, morphisms (same base or over
a crossed-module morphism), pullback, pushforward, and adjunction transposes.

An algebra is stored gradewise: structure constants per grade pair, the
pairing per grade against its inverse grade, and the action per (actor,
grade). Graded multiplication landing in the product grade is therefore
unrepresentable to violate; everything else is an explicit, exhaustively
checkable axiom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .crossed_modules import CrossedModule, CrossedModuleMorphism, identity_morphism
from .linalg import (
    Matrix,
    RowSpace,
    SingularMatrixError,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_sub,
    zero_vector,
)
from .report import CheckReport


class SingularTheta(ValueError):
    pass


class RhoIllDefined(ValueError):
    pass


class DoesNotFactor(ValueError):
    pass


class SectionRequired(ValueError):
    pass


class CrossedCAlgebra:
    """A graded algebra over the base group of a crossed module, with pairing
    rho, action phi, and the distinguished units indexed by the top group."""

    def __init__(self, name, cm: CrossedModule, field, dims, basis_names,
                 mul, unit, rho, phi, tilde):
        self.name = name
        self.cm = cm
        self.field = field
        self.dims = tuple(dims)
        self.basis_names = tuple(tuple(ns) for ns in basis_names)
        self.mul = mul        # (g, h) -> [i][j][k] structure constants
        self.unit = tuple(unit)
        self.rho = rho        # g -> Matrix dims[g] x dims[g^-1]
        self.phi = phi        # (h, g) -> Matrix dims[hgh^-1] x dims[g]
        self.tilde = tuple(tuple(v) for v in tilde)  # c -> vector in grade d(c)

    # -- shape helpers ------------------------------------------------------

    @property
    def P(self):
        return self.cm.base

    @property
    def C(self):
        return self.cm.top

    @property
    def space(self):
        from .linalg import GradedSpace
        return GradedSpace(self.P.order, self.dims, self.basis_names)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def grade_offsets(self):
        offs, acc = [], 0
        for d in self.dims:
            offs.append(acc)
            acc += d
        return offs

    def mul_block(self, g: int, h: int):
        return self.mul[(g, h)]

    def rho_mat(self, g: int) -> Matrix:
        return self.rho[g]

    def phi_mat(self, h: int, g: int) -> Matrix:
        return self.phi[(h, g)]

    # -- arithmetic on homogeneous vectors -----------------------------------

    def multiply(self, g: int, x, h: int, y):
        """Product of x in grade g with y in grade h; lands in grade g*h."""
        f = self.field
        block = self.mul[(g, h)]
        gh = self.P.mul(g, h)
        out = [f.zero] * self.dims[gh]
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if f.is_zero(yj):
                    continue
                coeff = f.mul(xi, yj)
                for k, s in enumerate(block[i][j]):
                    if not f.is_zero(s):
                        out[k] = f.add(out[k], f.mul(coeff, s))
        return tuple(out)

    def mul_matrix(self, g: int, h: int) -> Matrix:
        """Multiplication L_g (x) L_h -> L_{gh} as a matrix on the pair basis."""
        f = self.field
        dg, dh = self.dims[g], self.dims[h]
        dgh = self.dims[self.P.mul(g, h)]
        block = self.mul[(g, h)]
        data = [[f.zero] * (dg * dh) for _ in range(dgh)]
        for i in range(dg):
            for j in range(dh):
                for k in range(dgh):
                    data[k][i * dh + j] = block[i][j][k]
        return Matrix(f, data, cols=dg * dh)

    def left_mul_matrix(self, g: int, a, h: int) -> Matrix:
        """Matrix of x |-> a*x with a in grade g, acting L_h -> L_{gh}."""
        f = self.field
        block = self.mul[(g, h)]
        dgh = self.dims[self.P.mul(g, h)]
        data = [[f.zero] * self.dims[h] for _ in range(dgh)]
        for i, ai in enumerate(a):
            if f.is_zero(ai):
                continue
            for j in range(self.dims[h]):
                for k in range(dgh):
                    data[k][j] = f.add(data[k][j], f.mul(ai, block[i][j][k]))
        return Matrix(f, data, cols=self.dims[h])

    def right_mul_matrix(self, h: int, b, g: int) -> Matrix:
        """Matrix of x |-> x*b with b in grade h, acting L_g -> L_{gh}."""
        f = self.field
        block = self.mul[(g, h)]
        dgh = self.dims[self.P.mul(g, h)]
        data = [[f.zero] * self.dims[g] for _ in range(dgh)]
        for i in range(self.dims[g]):
            for j, bj in enumerate(b):
                if f.is_zero(bj):
                    continue
                for k in range(dgh):
                    data[k][i] = f.add(data[k][i], f.mul(bj, block[i][j][k]))
        return Matrix(f, data, cols=self.dims[g])

    def pairing(self, g: int, x, y):
        """rho(x, y) for x in grade g, y in grade g^-1."""
        f = self.field
        acc = f.zero
        mat = self.rho[g]
        for i, xi in enumerate(x):
            if f.is_zero(xi):
                continue
            for j, yj in enumerate(y):
                acc = f.add(acc, f.mul(f.mul(xi, yj), mat.data[i][j]))
        return acc

    def apply_phi(self, h: int, g: int, x):
        return self.phi[(h, g)].apply(x)

    def __repr__(self):
        return f"CrossedCAlgebra({self.name} over {self.cm.name}, dims={self.dims})"


def same_structure(a: CrossedCAlgebra, b: CrossedCAlgebra) -> bool:
    """Identical structure constants (names aside): the round-trip contract."""
    if a.field != b.field or a.dims != b.dims:
        return False
    if a.unit != b.unit or a.tilde != b.tilde:
        return False
    if any(a.mul[key] != b.mul[key] for key in a.mul):
        return False
    if any(a.rho[g] != b.rho[g] for g in a.P.elements()):
        return False
    return all(a.phi[key] == b.phi[key] for key in a.phi)


# --------------------------------------------------------------------------
# the axiom checker
# --------------------------------------------------------------------------

def _well_formed(L: CrossedCAlgebra) -> list[tuple[str, str]]:
    P, C, f = L.P, L.C, L.field
    bad = []
    if len(L.dims) != P.order:
        return [("dims", "one dimension per base element required")]
    for g in P.elements():
        for h in P.elements():
            block = L.mul.get((g, h))
            gh = P.mul(g, h)
            if block is None:
                bad.append((f"mul({P.names[g]},{P.names[h]})", "missing block"))
                continue
            if len(block) != L.dims[g] or any(len(row) != L.dims[h] for row in block) or \
               any(len(cell) != L.dims[gh] for row in block for cell in row):
                bad.append((f"mul({P.names[g]},{P.names[h]})", "bad shape"))
    if len(L.unit) != L.dims[0]:
        bad.append(("unit", "wrong length"))
    for g in P.elements():
        m = L.rho.get(g)
        if m is None or m.shape() != (L.dims[g], L.dims[P.inv[g]]):
            bad.append((f"rho({P.names[g]})", "bad shape"))
    for h in P.elements():
        for g in P.elements():
            m = L.phi.get((h, g))
            if m is None or m.shape() != (L.dims[P.conj(h, g)], L.dims[g]):
                bad.append((f"phi({P.names[h]},{P.names[g]})", "bad shape"))
    if len(L.tilde) != C.order:
        bad.append(("tilde", "one vector per top element required"))
    else:
        for c in C.elements():
            if len(L.tilde[c]) != L.dims[L.cm.d(c)]:
                bad.append((f"tilde({C.names[c]})", "vector not in grade d(c)"))
    return bad


def check_crossed_algebra(L: CrossedCAlgebra) -> CheckReport:
    """Every axiom family, exhaustively; the report carries the first
    counterexample instance per family."""
    report = CheckReport(f"crossed algebra {L.name}")
    shape = _well_formed(L)
    report.add("well_formed", shape)
    if shape:
        return report
    P, C, f = L.P, L.C, L.field
    nonzero = [g for g in P.elements() if L.dims[g] > 0]

    fails = []
    for g in nonzero:
        for i in range(L.dims[g]):
            e = unit_vector(f, L.dims[g], i)
            if L.multiply(0, L.unit, g, e) != e:
                fails.append((f"1*{L.basis_names[g][i]}", "left unit fails"))
            if L.multiply(g, e, 0, L.unit) != e:
                fails.append((f"{L.basis_names[g][i]}*1", "right unit fails"))
    report.add("unit", fails)

    fails = []
    for g, h, k in itertools.product(nonzero, repeat=3):
        for i in range(L.dims[g]):
            ei = unit_vector(f, L.dims[g], i)
            for j in range(L.dims[h]):
                ej = unit_vector(f, L.dims[h], j)
                ij = L.multiply(g, ei, h, ej)
                gh = P.mul(g, h)
                for l in range(L.dims[k]):
                    el = unit_vector(f, L.dims[k], l)
                    lhs = L.multiply(gh, ij, k, el)
                    rhs = L.multiply(g, ei, P.mul(h, k), L.multiply(h, ej, k, el))
                    if lhs != rhs:
                        fails.append(
                            (f"({L.basis_names[g][i]},{L.basis_names[h][j]},{L.basis_names[k][l]})",
                             "associativity fails"))
    report.add("associativity", fails)

    fails = []
    for g in P.elements():
        if L.rho[g] != L.rho[P.inv[g]].transpose():
            fails.append((f"g={P.names[g]}", "rho_g != transpose(rho_{g^-1})"))
    report.add("rho_symmetric", fails)

    fails = []
    for g in P.elements():
        if L.dims[g] != L.dims[P.inv[g]]:
            fails.append((f"g={P.names[g]}", "paired grades have different dimensions"))
            continue
        try:
            L.rho[g].inverse()
        except SingularMatrixError:
            fails.append((f"g={P.names[g]}", "rho block is singular"))
    report.add("rho_nondegenerate", fails)

    fails = []
    for g, h in itertools.product(nonzero, repeat=2):
        ghinv = P.inv[P.mul(g, h)]
        if L.dims[ghinv] == 0:
            continue
        for i in range(L.dims[g]):
            ei = unit_vector(f, L.dims[g], i)
            for j in range(L.dims[h]):
                ej = unit_vector(f, L.dims[h], j)
                for k in range(L.dims[ghinv]):
                    ek = unit_vector(f, L.dims[ghinv], k)
                    lhs = L.pairing(P.mul(g, h), L.multiply(g, ei, h, ej), ek)
                    rhs = L.pairing(g, ei, L.multiply(h, ej, ghinv, ek))
                    if lhs != rhs:
                        fails.append(
                            (f"({L.basis_names[g][i]},{L.basis_names[h][j]},{L.basis_names[ghinv][k]})",
                             "rho(ab,c) != rho(a,bc)"))
    report.add("rho_invariant", fails)

    fails = []
    for g in P.elements():
        if L.phi[(0, g)] != Matrix.identity(f, L.dims[g]):
            fails.append((f"g={P.names[g]}", "phi_1 is not the identity"))
    for h in P.elements():
        for k in P.elements():
            hk = P.mul(h, k)
            for g in nonzero:
                if L.phi[(h, P.conj(k, g))] @ L.phi[(k, g)] != L.phi[(hk, g)]:
                    fails.append((f"(h={P.names[h]},k={P.names[k]},g={P.names[g]})",
                                  "phi_h phi_k != phi_hk"))
    report.add("phi_homomorphism", fails)

    fails = []
    for h in P.elements():
        if L.phi[(h, 0)].apply(L.unit) != L.unit:
            fails.append((f"h={P.names[h]}", "phi_h(1) != 1"))
        for g1, g2 in itertools.product(nonzero, repeat=2):
            g12 = P.mul(g1, g2)
            for i in range(L.dims[g1]):
                ei = unit_vector(f, L.dims[g1], i)
                for j in range(L.dims[g2]):
                    ej = unit_vector(f, L.dims[g2], j)
                    lhs = L.phi[(h, g12)].apply(L.multiply(g1, ei, g2, ej))
                    rhs = L.multiply(P.conj(h, g1), L.apply_phi(h, g1, ei),
                                     P.conj(h, g2), L.apply_phi(h, g2, ej))
                    if lhs != rhs:
                        fails.append(
                            (f"(h={P.names[h]},{L.basis_names[g1][i]},{L.basis_names[g2][j]})",
                             "phi_h(xy) != phi_h(x) phi_h(y)"))
    report.add("phi_multiplicative", fails)

    fails = []
    for h in P.elements():
        for g in P.elements():
            lhs = L.phi[(h, g)].transpose() @ L.rho[P.conj(h, g)] @ L.phi[(h, P.inv[g])]
            if lhs != L.rho[g]:
                fails.append((f"(h={P.names[h]},g={P.names[g]})",
                              "phi_h does not preserve rho"))
    report.add("phi_isometry", fails)

    fails = []
    for g in P.elements():
        if L.phi[(g, g)] != Matrix.identity(f, L.dims[g]):
            fails.append((f"g={P.names[g]}", "phi_g is not the identity on L_g"))
    report.add("phi_fixes_own_grade", fails)

    fails = []
    for g, h in itertools.product(nonzero, repeat=2):
        for i in range(L.dims[g]):
            a = unit_vector(f, L.dims[g], i)
            fa = L.apply_phi(h, g, a)
            for j in range(L.dims[h]):
                b = unit_vector(f, L.dims[h], j)
                if L.multiply(P.conj(h, g), fa, h, b) != L.multiply(h, b, g, a):
                    fails.append((f"(a={L.basis_names[g][i]},b={L.basis_names[h][j]})",
                                  "phi_h(a)b != ba"))
    report.add("twisted_commutativity", fails)

    # the trace condition compares the two cuttings of the labeled torus; it
    # is checked over grade pairs that both carry states (with the empty-cut
    # instances included, the boundary-group algebra of a non-surjective
    # boundary map would fail it, contradicting its construction)
    fails = []
    for g in P.elements():
        for h in P.elements():
            comm = P.commutator(g, h)
            if L.dims[comm] == 0 or L.dims[g] == 0 or L.dims[h] == 0:
                continue
            hgh = P.conj(h, g)
            ghg = P.conj(g, h)
            for t in range(L.dims[comm]):
                c = unit_vector(f, L.dims[comm], t)
                m1 = L.left_mul_matrix(comm, c, hgh) @ L.phi[(h, g)]
                m2 = L.phi[(P.inv[g], ghg)] @ L.left_mul_matrix(comm, c, h)
                if m1.trace() != m2.trace():
                    fails.append((f"(g={P.names[g]},h={P.names[h]},c={L.basis_names[comm][t]})",
                                  "trace axiom fails"))
    report.add("trace", fails)

    fails = []
    if L.tilde[0] != L.unit:
        fails.append(("c=1", "tilde(1) != 1"))
    report.add("tilde_unit", fails)

    fails = []
    for c2 in C.elements():
        for c in C.elements():
            prod = C.mul(c2, c)
            lhs = L.tilde[prod]
            rhs = L.multiply(L.cm.d(c2), L.tilde[c2], L.cm.d(c), L.tilde[c])
            if lhs != rhs:
                fails.append((f"(c'={C.names[c2]},c={C.names[c]})",
                              "tilde(c'c) != tilde(c') tilde(c)"))
    report.add("tilde_multiplicative", fails)

    fails = []
    for h in P.elements():
        for c in C.elements():
            if L.apply_phi(h, L.cm.d(c), L.tilde[c]) != L.tilde[L.cm.action(h, c)]:
                fails.append((f"(h={P.names[h]},c={C.names[c]})",
                              "phi_h(tilde c) != tilde(^h c)"))
    report.add("tilde_equivariant", fails)

    return report


# --------------------------------------------------------------------------
# group-algebra constructions
# --------------------------------------------------------------------------

def group_algebra_C(cm: CrossedModule, field, name=None) -> CrossedCAlgebra:
    """Basis e_c graded by the boundary; products multiply in the top group,
    the pairing picks out inverses, the action permutes basis labels, and
    each distinguished unit is its own basis vector."""
    C, P, f = cm.top, cm.base, field
    members = [[c for c in C.elements() if cm.d(c) == p] for p in P.elements()]
    pos = {}
    for p in P.elements():
        for i, c in enumerate(members[p]):
            pos[c] = i
    dims = [len(m) for m in members]
    basis_names = [[f"e_{C.names[c]}" for c in members[p]] for p in P.elements()]
    mul = {}
    for g in P.elements():
        for h in P.elements():
            gh = P.mul(g, h)
            block = [[[f.one if C.mul(a, b) == t else f.zero for t in members[gh]]
                      for b in members[h]] for a in members[g]]
            mul[(g, h)] = block
    unit = tuple(f.one if c == 0 else f.zero for c in members[0])
    rho = {}
    for g in P.elements():
        ginv = P.inv[g]
        rho[g] = Matrix(f, [[f.one if C.inv[a] == b else f.zero for b in members[ginv]]
                            for a in members[g]], cols=dims[ginv])
    phi = {}
    for h in P.elements():
        for g in P.elements():
            tgt = P.conj(h, g)
            phi[(h, g)] = Matrix(f, [[f.one if cm.action(h, a) == b else f.zero
                                      for a in members[g]] for b in members[tgt]],
                                 cols=dims[g])
    tilde = []
    for c in C.elements():
        vec = [f.zero] * dims[cm.d(c)]
        vec[pos[c]] = f.one
        tilde.append(tuple(vec))
    return CrossedCAlgebra(name or f"K[C]({cm.name})", cm, f, dims, basis_names,
                           mul, unit, rho, phi, tilde)


def group_algebra_P(cm: CrossedModule, field, name=None) -> CrossedCAlgebra:
    """One basis vector e_g per base element; the action conjugates labels
    and the distinguished units are tilde(c) = e_{d(c)}."""
    P, C, f = cm.base, cm.top, field
    dims = [1] * P.order
    basis_names = [[f"e_{P.names[g]}"] for g in P.elements()]
    mul = {(g, h): [[[f.one]]] for g in P.elements() for h in P.elements()}
    rho = {g: Matrix(f, [[f.one]]) for g in P.elements()}
    phi = {(h, g): Matrix(f, [[f.one]]) for h in P.elements() for g in P.elements()}
    tilde = [(f.one,) for _ in C.elements()]
    return CrossedCAlgebra(name or f"K[P]({cm.name})", cm, f, dims, basis_names,
                           mul, (f.one,), rho, phi, tilde)


# --------------------------------------------------------------------------
# theta and the boxed identities
# --------------------------------------------------------------------------

def theta(L: CrossedCAlgebra, c: int, g: int) -> Matrix:
    """Left multiplication by tilde(c), as a matrix L_g -> L_{d(c) g}.

    Always invertible on a valid algebra; a singular result signals an axiom
    violation upstream."""
    m = L.left_mul_matrix(L.cm.d(c), L.tilde[c], g)
    if m.rows != m.cols:
        raise SingularTheta(
            f"theta({L.C.names[c]},{L.P.names[g]}) maps dim {m.cols} to dim {m.rows}")
    try:
        m.inverse()
    except SingularMatrixError as exc:
        raise SingularTheta(
            f"theta({L.C.names[c]},{L.P.names[g]}) is singular") from exc
    return m


def _theta_raw(L: CrossedCAlgebra, c: int, g: int) -> Matrix:
    return L.left_mul_matrix(L.cm.d(c), L.tilde[c], g)


def check_boxed_identities(L: CrossedCAlgebra) -> CheckReport:
    """The four composition identities relating theta, the product, rho and
    phi, swept over every (c, c', g, h) in the crossed module."""
    report = CheckReport(f"boxed identities for {L.name}")
    P, C, f = L.P, L.C, L.field
    d = L.cm.d

    fails = []
    for c2 in C.elements():
        for c in C.elements():
            for g in P.elements():
                lhs = _theta_raw(L, C.mul(c2, c), g)
                rhs = _theta_raw(L, c2, P.mul(d(c), g)) @ _theta_raw(L, c, g)
                if lhs != rhs:
                    fails.append((f"(c'={C.names[c2]},c={C.names[c]},g={P.names[g]})",
                                  "theta(c'c,g) != theta(c',dc*g) theta(c,g)"))
    report.add("theta_composition", fails)

    fails = []
    for c in C.elements():
        for g in P.elements():
            lhs = L.right_mul_matrix(d(c), L.tilde[c], g)
            gc = L.cm.action(g, c)
            rhs = L.left_mul_matrix(d(gc), L.tilde[gc], g)
            if lhs != rhs:
                fails.append((f"(c={C.names[c]},g={P.names[g]})",
                              "x tilde(c) != tilde(^g c) x"))
    report.add("theta_translation", fails)

    fails = []
    for c in C.elements():
        for g in P.elements():
            dcg = P.mul(d(c), g)
            lhs = _theta_raw(L, c, g).transpose() @ L.rho[dcg]
            cg = L.cm.action(P.inv[g], c)
            rhs = L.rho[g] @ _theta_raw(L, cg, P.inv[dcg])
            if lhs != rhs:
                fails.append((f"(c={C.names[c]},g={P.names[g]})",
                              "rho(tilde(c) x, y) != rho(x, tilde(^{g^-1}c) y)"))
    report.add("theta_rho", fails)

    fails = []
    for c in C.elements():
        for g in P.elements():
            for h in P.elements():
                lhs = L.phi[(h, P.mul(d(c), g))] @ _theta_raw(L, c, g)
                rhs = _theta_raw(L, L.cm.action(h, c), P.conj(h, g)) @ L.phi[(h, g)]
                if lhs != rhs:
                    fails.append((f"(c={C.names[c]},g={P.names[g]},h={P.names[h]})",
                                  "phi_h theta(c,g) != theta(^h c, ^h g) phi_h"))
    report.add("theta_phi", fails)

    return report


def aut_square_check(L: CrossedCAlgebra) -> CheckReport:
    """Pointwise verification that tilde and phi form a morphism into the
    units/automorphisms crossed module of L, without enumerating Aut(L):
    each tilde(c) is a unit, conjugation by tilde(c) equals phi_{d(c)} on
    every grade, and tilde is action-equivariant."""
    report = CheckReport(f"units/automorphisms square for {L.name}")
    P, C, f = L.P, L.C, L.field
    d = L.cm.d

    fails = []
    for c in C.elements():
        cinv = C.inv[c]
        left = L.multiply(d(c), L.tilde[c], d(cinv), L.tilde[cinv])
        right = L.multiply(d(cinv), L.tilde[cinv], d(c), L.tilde[c])
        if left != L.unit or right != L.unit:
            fails.append((f"c={C.names[c]}", "tilde(c) is not a unit"))
    report.add("tilde_units", fails)

    fails = []
    for c in C.elements():
        cinv = C.inv[c]
        for g in P.elements():
            # x |-> tilde(c) x tilde(c)^-1, using tilde(c^-1) as the inverse
            inner = L.right_mul_matrix(d(cinv), L.tilde[cinv], P.mul(d(c), g)) @ \
                _theta_raw(L, c, g)
            if inner != L.phi[(d(c), g)]:
                fails.append((f"(c={C.names[c]},g={P.names[g]})",
                              "conjugation by tilde(c) != phi_{d(c)}"))
    report.add("delta_tilde_equals_phi_boundary", fails)

    fails = []
    for p in P.elements():
        for c in C.elements():
            if L.apply_phi(p, d(c), L.tilde[c]) != L.tilde[L.cm.action(p, c)]:
                fails.append((f"(p={P.names[p]},c={C.names[c]})",
                              "phi_p(tilde c) != tilde(^p c)"))
    report.add("square_equivariance", fails)
    return report


# --------------------------------------------------------------------------
# morphisms
# --------------------------------------------------------------------------

@dataclass
class CrossedAlgebraMorphism:
    """A grade-respecting algebra map over a crossed-module morphism.

    The pairing condition is required gradewise: rho'(theta a, theta b) =
    rho(a, b) for a, b in inverse grades of the source (the reading under
    which the pullback/pushforward transposes are bijections)."""

    over: CrossedModuleMorphism
    source: CrossedCAlgebra
    target: CrossedCAlgebra
    blocks: dict  # p -> Matrix dims'[f0(p)] x dims[p]

    def f0(self, p: int) -> int:
        return self.over.f_base.map[p]

    def f1(self, c: int) -> int:
        return self.over.f_top.map[c]

    def apply(self, p: int, x):
        return self.blocks[p].apply(x)


def check_algebra_morphism(m: CrossedAlgebraMorphism) -> CheckReport:
    report = CheckReport("crossed algebra morphism")
    L, Lp = m.source, m.target
    P, C, f = L.P, L.C, L.field
    bad = []
    for p in P.elements():
        blk = m.blocks.get(p)
        want = (Lp.dims[m.f0(p)], L.dims[p])
        if blk is None or blk.shape() != want:
            bad.append((f"p={P.names[p]}", f"block shape should be {want}"))
    report.add("block_shapes", bad)
    if bad:
        return report

    report.add("unit_preserved",
               [] if m.apply(0, L.unit) == Lp.unit else [("1", "theta(1) != 1'")])

    fails = []
    for g in P.elements():
        for h in P.elements():
            gh = P.mul(g, h)
            for i in range(L.dims[g]):
                ei = unit_vector(f, L.dims[g], i)
                for j in range(L.dims[h]):
                    ej = unit_vector(f, L.dims[h], j)
                    lhs = m.apply(gh, L.multiply(g, ei, h, ej))
                    rhs = Lp.multiply(m.f0(g), m.apply(g, ei), m.f0(h), m.apply(h, ej))
                    if lhs != rhs:
                        fails.append((f"({L.basis_names[g][i]},{L.basis_names[h][j]})",
                                      "theta(xy) != theta(x) theta(y)"))
    report.add("multiplicative", fails)

    fails = []
    for g in P.elements():
        lhs = m.blocks[g].transpose() @ Lp.rho[m.f0(g)] @ m.blocks[P.inv[g]]
        if lhs != L.rho[g]:
            fails.append((f"g={P.names[g]}", "pairing not preserved gradewise"))
    report.add("rho_preserved", fails)

    fails = []
    for h in P.elements():
        for g in P.elements():
            lhs = Lp.phi[(m.f0(h), m.f0(g))] @ m.blocks[g]
            rhs = m.blocks[P.conj(h, g)] @ L.phi[(h, g)]
            if lhs != rhs:
                fails.append((f"(h={P.names[h]},g={P.names[g]})",
                              "phi'_{f0 h} theta != theta phi_h"))
    report.add("phi_compatible", fails)

    fails = []
    for c in C.elements():
        if m.apply(L.cm.d(c), L.tilde[c]) != Lp.tilde[m.f1(c)]:
            fails.append((f"c={C.names[c]}", "theta(tilde c) != tilde'(f1 c)"))
    report.add("tilde_compatible", fails)
    return report


def is_isomorphism(m: CrossedAlgebraMorphism) -> bool:
    for p in m.source.P.elements():
        blk = m.blocks[p]
        if blk.rows != blk.cols:
            return False
        try:
            blk.inverse()
        except SingularMatrixError:
            return False
    return True


def identity_algebra_morphism(L: CrossedCAlgebra) -> CrossedAlgebraMorphism:
    blocks = {p: Matrix.identity(L.field, L.dims[p]) for p in L.P.elements()}
    return CrossedAlgebraMorphism(identity_morphism(L.cm), L, L, blocks)


# --------------------------------------------------------------------------
# pullback
# --------------------------------------------------------------------------

def pullback(fmor: CrossedModuleMorphism, Lp: CrossedCAlgebra, name=None) -> CrossedCAlgebra:
    """Re-grade an algebra over the target along the base map: grade p gets a
    copy of the target's grade f0(p); the pairing vanishes between non-inverse
    source grades by construction."""
    if Lp.cm != fmor.target:
        raise ValueError("algebra is not over the morphism's target")
    src = fmor.source
    f0 = fmor.f_base.map
    f1 = fmor.f_top.map
    P, f = src.base, Lp.field
    dims = [Lp.dims[f0[p]] for p in P.elements()]
    basis_names = [[f"{nm}@{P.names[p]}" for nm in Lp.basis_names[f0[p]]]
                   for p in P.elements()]
    mul = {(g, h): Lp.mul[(f0[g], f0[h])] for g in P.elements() for h in P.elements()}
    rho = {g: Lp.rho[f0[g]] for g in P.elements()}
    phi = {(h, g): Lp.phi[(f0[h], f0[g])] for h in P.elements() for g in P.elements()}
    tilde = [Lp.tilde[f1[c]] for c in src.top.elements()]
    return CrossedCAlgebra(name or f"pullback({Lp.name})", src, f, dims,
                           basis_names, mul, Lp.unit, rho, phi, tilde)


# --------------------------------------------------------------------------
# the section/cocycle isomorphism K[P] ~ q*(K[G])
# --------------------------------------------------------------------------

def kp_iso_witness(cm: CrossedModule, field, sec=None):
    """The isomorphism e_p |-> (e_{q(p)})_n between the base group algebra and
    the pullback of the quotient group algebra, where p = n s(q(p)).

    Verifies that the witness is an isomorphism of crossed algebras over the
    identity, and that multiplication in the pullback follows the section's
    twisted cocycle law. Returns the witness morphism.
    """
    from .crossed_modules import quotient_morphism
    from .groups import cocycle_from_section, section as make_section

    qmor = quotient_morphism(cm)
    q = qmor.f_base
    if sec is None:
        sec = make_section(q)
    elif sec.projection.map != q.map or sec.projection.target.names != q.target.names:
        raise SectionRequired("section must split the canonical projection of the quotient")
    else:
        sec = make_section(q, sec.choice)
    coc = cocycle_from_section(sec)
    KG = group_algebra_P(qmor.target, field, name=f"K[G]({cm.name})")
    pulled = pullback(qmor, KG, name=f"q*(K[G])({cm.name})")
    KP = group_algebra_P(cm, field)
    blocks = {p: Matrix.identity(field, 1) for p in cm.base.elements()}
    witness = CrossedAlgebraMorphism(identity_morphism(cm), KP, pulled, blocks)
    rep = check_algebra_morphism(witness)
    if not rep.ok:
        fail = rep.first_failure()
        raise AssertionError(f"witness is not a morphism: {fail.axiom} at {fail.instance}")
    if not is_isomorphism(witness):
        raise AssertionError("witness blocks are not invertible")
    verify_cocycle_multiplication(cm, q, sec, coc, pulled)
    return witness


def verify_cocycle_multiplication(cm, q, sec, coc, pulled):
    """Check (e_{g1})_{n1} (e_{g2})_{n2} = (e_{g1g2})_{n1 ^{s(g1)}n2 f(g1,g2)}
    for every pair of basis units of the pullback algebra."""
    P, G = cm.base, q.target
    f = pulled.field

    def nPart(p):
        return P.mul(p, P.inv[sec(q.map[p])])

    for p1 in P.elements():
        for p2 in P.elements():
            g1, g2 = q.map[p1], q.map[p2]
            n1, n2 = nPart(p1), nPart(p2)
            fval = coc.kernel_members[coc.values[g1][g2]]
            n = P.mul(P.mul(n1, P.conj(sec(g1), n2)), fval)
            expected_grade = P.mul(n, sec(G.mul(g1, g2)))
            if P.mul(p1, p2) != expected_grade:
                raise AssertionError(
                    f"cocycle law fails at ({P.names[p1]},{P.names[p2]})")
            prod = pulled.multiply(p1, (f.one,), p2, (f.one,))
            if prod != (f.one,):
                raise AssertionError(
                    f"pullback product is not the unit basis vector at ({P.names[p1]},{P.names[p2]})")


# --------------------------------------------------------------------------
# pushforward
# --------------------------------------------------------------------------

class PushforwardData:
    """The quotient algebra along a morphism together with the ideal data
    needed to factor morphisms through it."""

    def __init__(self, fmor, source, algebra, members, offsets, class_dim, spans):
        self.fmor = fmor
        self.source = source
        self.algebra = algebra
        self.members = members      # q -> [p with f0(p) = q]
        self.offsets = offsets      # q -> {p: offset}
        self.class_dim = class_dim  # q -> total dim of the class block
        self.spans = spans          # q -> RowSpace (the ideal, per class)

    def embed(self, q, p, vec):
        field = self.source.field
        out = [field.zero] * self.class_dim[q]
        o = self.offsets[q][p]
        for i, x in enumerate(vec):
            out[o + i] = x
        return tuple(out)

    def components(self, q, vec):
        L = self.source
        return {p: tuple(vec[self.offsets[q][p]:self.offsets[q][p] + L.dims[p]])
                for p in self.members[q]}

    def project(self, q, vec):
        return self.spans[q].quotient_coords(vec)

    def lift(self, q, coords):
        return self.spans[q].quotient_lift(coords)

    def ideal_dim(self, q) -> int:
        return self.spans[q].dim


def concentrate_representative(data: PushforwardData, q, vec, p):
    """A representative of vec + ideal supported in the single grade p, or
    None if the class has no such representative."""
    L = data.source
    field = L.field
    span = data.spans[q]
    if not span.basis:
        comps = data.components(q, vec)
        return vec if all(vec_is_zero(field, comps[r]) for r in data.members[q]
                          if r != p) else None
    other = [i for r in data.members[q] if r != p
             for i in range(data.offsets[q][r], data.offsets[q][r] + L.dims[r])]
    mat = Matrix(field, [[row[i] for row in span.basis] for i in other],
                 cols=len(span.basis))
    rhs = tuple(field.neg(vec[i]) for i in other)
    coeffs = mat.solve(rhs)
    if coeffs is None:
        return None
    out = list(vec)
    for coeff, row in zip(coeffs, span.basis):
        for i, x in enumerate(row):
            out[i] = field.add(out[i], field.mul(coeff, x))
    return tuple(out)


def _ideal_grade_slice(data: PushforwardData, q, p):
    """A basis of the single-grade slice (ideal at class q) intersect L_p,
    as grade-p coordinate vectors."""
    L = data.source
    field = L.field
    span = data.spans[q]
    if not span.basis:
        return []
    other = [i for r in data.members[q] if r != p
             for i in range(data.offsets[q][r], data.offsets[q][r] + L.dims[r])]
    outside = Matrix(field, [[row[i] for row in span.basis] for i in other],
                     cols=len(span.basis))
    slice_vectors = []
    for combo in outside.nullspace():
        vec = [field.zero] * data.class_dim[q]
        for coeff, row in zip(combo, span.basis):
            for i, x in enumerate(row):
                vec[i] = field.add(vec[i], field.mul(coeff, x))
        slice_vectors.append(data.components(q, tuple(vec))[p])
    return slice_vectors


def pushforward_rho_via_grade(data: PushforwardData, q, p):
    """The quotient pairing matrix at grade q computed through the matched
    representative pair (p, p^-1); None when some class cannot be
    concentrated in grade p, or when in-grade representative freedom pairs
    nontrivially (the value would depend on the representative). All usable
    p must agree."""
    L = data.source
    field = L.field
    P = L.P
    Q = data.fmor.target.base
    qinv = Q.inv[q]
    pinv = P.inv[p]
    dim_q = data.class_dim[q] - data.spans[q].dim
    dim_qinv = data.class_dim[qinv] - data.spans[qinv].dim
    reps_a, reps_b = [], []
    for k in range(dim_q):
        rep = concentrate_representative(
            data, q, data.lift(q, unit_vector(field, dim_q, k)), p)
        if rep is None:
            return None
        reps_a.append(data.components(q, rep)[p])
    for k in range(dim_qinv):
        rep = concentrate_representative(
            data, qinv, data.lift(qinv, unit_vector(field, dim_qinv, k)), pinv)
        if rep is None:
            return None
        reps_b.append(data.components(qinv, rep)[pinv])
    # representatives inside L_p are free up to the in-grade ideal slice;
    # the pairing is independent of that freedom only if the slices pair to
    # zero against everything a representative can be
    slice_a = _ideal_grade_slice(data, q, p)
    slice_b = _ideal_grade_slice(data, qinv, pinv)
    for w in slice_a:
        for y in reps_b + slice_b:
            if not field.is_zero(L.pairing(p, w, y)):
                return None
    for w in slice_b:
        for x in reps_a:
            if not field.is_zero(L.pairing(p, x, w)):
                return None
    return Matrix(field, [[L.pairing(p, a, b) for b in reps_b] for a in reps_a],
                  cols=dim_qinv)


def pushforward_ideal(fmor: CrossedModuleMorphism, L: CrossedCAlgebra) -> PushforwardData:
    """The defining ideal of the pushforward: generated by phi_n(a) - a
    (n in ker f0) and tilde(b) - 1 (b in ker f1), closed under left/right
    products with every basis vector, kept per target-grade class (the
    generators are homogeneous for the target grading)."""
    if L.cm != fmor.source:
        raise ValueError("algebra is not over the morphism's source")
    tgt = fmor.target
    P, Q, C, D = fmor.source.base, tgt.base, fmor.source.top, tgt.top
    f0, f1 = fmor.f_base.map, fmor.f_top.map
    field = L.field
    if set(f1) != set(D.elements()):
        raise ValueError("pushforward requires the top map to be surjective")

    members = {q: [p for p in P.elements() if f0[p] == q] for q in Q.elements()}
    offsets, class_dim = {}, {}
    for qq in Q.elements():
        off, acc = {}, 0
        for p in members[qq]:
            off[p] = acc
            acc += L.dims[p]
        offsets[qq] = off
        class_dim[qq] = acc
    spans = {qq: RowSpace(field, class_dim[qq]) for qq in Q.elements()}
    data = PushforwardData(fmor, L, None, members, offsets, class_dim, spans)

    generators = []
    for n in (p for p in members[0] if p != 0):
        for p in P.elements():
            npn = P.conj(n, p)
            for i in range(L.dims[p]):
                e = unit_vector(field, L.dims[p], i)
                vec = vec_sub(field,
                              data.embed(f0[p], npn, L.apply_phi(n, p, e)),
                              data.embed(f0[p], p, e))
                generators.append((f0[p], vec))
    for b in (c for c in C.elements() if f1[c] == 0 and c != 0):
        db = L.cm.d(b)
        vec = vec_sub(field,
                      data.embed(0, db, L.tilde[b]),
                      data.embed(0, 0, L.unit))
        generators.append((0, vec))

    queue = [(qq, vec) for qq, vec in generators if spans[qq].add(vec)]
    basis_units = [(r, j, unit_vector(field, L.dims[r], j))
                   for r in P.elements() for j in range(L.dims[r])]
    while queue:
        qq, vec = queue.pop()
        comps = data.components(qq, vec)
        for r, _, e in basis_units:
            qr_left = Q.mul(f0[r], qq)
            out = [field.zero] * class_dim[qr_left]
            for p in members[qq]:
                prod = L.multiply(r, e, p, comps[p])
                o = offsets[qr_left][P.mul(r, p)]
                for i, x in enumerate(prod):
                    out[o + i] = field.add(out[o + i], x)
            out = tuple(out)
            if not vec_is_zero(field, out) and spans[qr_left].add(out):
                queue.append((qr_left, out))
            qr_right = Q.mul(qq, f0[r])
            out = [field.zero] * class_dim[qr_right]
            for p in members[qq]:
                prod = L.multiply(p, comps[p], r, e)
                o = offsets[qr_right][P.mul(p, r)]
                for i, x in enumerate(prod):
                    out[o + i] = field.add(out[o + i], x)
            out = tuple(out)
            if not vec_is_zero(field, out) and spans[qr_right].add(out):
                queue.append((qr_right, out))
    return data


def pushforward_data(fmor: CrossedModuleMorphism, L: CrossedCAlgebra, name=None) -> PushforwardData:
    """The pushforward algebra: the source quotiented by the defining ideal,
    regraded over the target base group.

    Requires f1 surjective; for target grades outside the image of f0 the
    action is extended by the identity, and the final axiom check decides
    validity. Raises RhoIllDefined when the quotient pairing genuinely
    depends on representatives (the construction does not exist then; see
    the CM-Mod group algebra for a concrete instance).
    """
    data = pushforward_ideal(fmor, L)
    members, offsets, class_dim, spans = (data.members, data.offsets,
                                          data.class_dim, data.spans)
    tgt = fmor.target
    P, Q, C, D = fmor.source.base, tgt.base, fmor.source.top, tgt.top
    f0, f1 = fmor.f_base.map, fmor.f_top.map
    field = L.field

    dims_new = [class_dim[qq] - spans[qq].dim for qq in Q.elements()]
    basis_names = [[f"{Q.names[qq]}#{k}" for k in range(dims_new[qq])]
                   for qq in Q.elements()]

    def lifts(qq):
        return [data.lift(qq, unit_vector(field, dims_new[qq], k))
                for k in range(dims_new[qq])]

    mul_new = {}
    for q1 in Q.elements():
        for q2 in Q.elements():
            q12 = Q.mul(q1, q2)
            block = []
            for a in lifts(q1):
                comps_a = data.components(q1, a)
                row = []
                for b in lifts(q2):
                    comps_b = data.components(q2, b)
                    out = [field.zero] * class_dim[q12]
                    for p1 in members[q1]:
                        for p2 in members[q2]:
                            prod = L.multiply(p1, comps_a[p1], p2, comps_b[p2])
                            o = offsets[q12][P.mul(p1, p2)]
                            for i, x in enumerate(prod):
                                out[o + i] = field.add(out[o + i], x)
                    row.append(list(data.project(q12, tuple(out))))
                block.append(row)
            mul_new[(q1, q2)] = block

    unit_new = data.project(0, data.embed(0, 0, L.unit))

    # pairing via matched representative pairs (p, p^-1); representative
    # independence (every usable grade gives the same matrix) is the
    # well-definedness guarantee and is checked here
    rho_new = {}
    for qq in Q.elements():
        candidates = [(p, pushforward_rho_via_grade(data, qq, p))
                      for p in members[qq]]
        usable = [(p, mat) for p, mat in candidates if mat is not None]
        if dims_new[qq] == 0 and not usable:
            rho_new[qq] = Matrix.zeros(field, 0, dims_new[Q.inv[qq]])
            continue
        if not usable:
            raise RhoIllDefined(
                f"no representative grade realizes the pairing in class {Q.names[qq]}")
        first = usable[0][1]
        if any(mat != first for _, mat in usable[1:]):
            raise RhoIllDefined(
                f"pairing depends on the representative grade in class {Q.names[qq]}")
        rho_new[qq] = first

    phi_new = {}
    for qa in Q.elements():
        reps = members[qa]
        for qq in Q.elements():
            qc = Q.conj(qa, qq)
            if not reps:
                if qc != qq or dims_new[qc] != dims_new[qq]:
                    raise ValueError(
                        f"cannot extend the action to {Q.names[qa]} outside the image")
                phi_new[(qa, qq)] = Matrix.identity(field, dims_new[qq])
                continue
            candidates = []
            for pa in reps:
                cols = []
                for a in lifts(qq):
                    comps_a = data.components(qq, a)
                    out = [field.zero] * class_dim[qc]
                    for p in members[qq]:
                        img = L.apply_phi(pa, p, comps_a[p])
                        o = offsets[qc][P.conj(pa, p)]
                        for i, x in enumerate(img):
                            out[o + i] = field.add(out[o + i], x)
                    cols.append(data.project(qc, tuple(out)))
                candidates.append(Matrix(field, [[col[k] for col in cols]
                                                 for k in range(dims_new[qc])],
                                         cols=dims_new[qq]))
            if any(cand != candidates[0] for cand in candidates[1:]):
                raise ValueError(
                    f"action on the quotient depends on the representative of {Q.names[qa]}")
            phi_new[(qa, qq)] = candidates[0]

    tilde_new = []
    for d in D.elements():
        choices = [c for c in C.elements() if f1[c] == d]
        qd = tgt.d(d)
        images = {data.project(qd, data.embed(qd, L.cm.d(c), L.tilde[c]))
                  for c in choices}
        if len(images) != 1:
            raise ValueError(
                f"tilde on the quotient depends on the lift of {D.names[d]}")
        tilde_new.append(images.pop())

    algebra = CrossedCAlgebra(name or f"push({L.name})", tgt, field, dims_new,
                              basis_names, mul_new, unit_new, rho_new, phi_new,
                              tilde_new)
    rep = check_crossed_algebra(algebra)
    if not rep.ok:
        fail = rep.first_failure()
        raise ValueError(f"pushforward is not a crossed algebra: "
                         f"{fail.axiom} at {fail.instance}")
    data.algebra = algebra
    return data


def pushforward(fmor: CrossedModuleMorphism, L: CrossedCAlgebra, name=None) -> CrossedCAlgebra:
    return pushforward_data(fmor, L, name).algebra


# --------------------------------------------------------------------------
# adjunction transposes
# --------------------------------------------------------------------------

def transpose_to_pullback(m: CrossedAlgebraMorphism) -> CrossedAlgebraMorphism:
    """Re-view a morphism over f as a morphism into the pullback (same blocks)."""
    pulled = pullback(m.over, m.target)
    return CrossedAlgebraMorphism(identity_morphism(m.source.cm), m.source,
                                  pulled, dict(m.blocks))


def untranspose_from_pullback(m2: CrossedAlgebraMorphism, fmor: CrossedModuleMorphism,
                              Lp: CrossedCAlgebra) -> CrossedAlgebraMorphism:
    """Inverse of transpose_to_pullback: same blocks, target re-graded back."""
    return CrossedAlgebraMorphism(fmor, m2.source, Lp, dict(m2.blocks))


def transpose_from_pushforward(m: CrossedAlgebraMorphism,
                               data: PushforwardData | None = None) -> CrossedAlgebraMorphism:
    """Factor a morphism over f through the pushforward of its source.

    Raises DoesNotFactor if the morphism does not kill the defining ideal
    (impossible for a valid morphism over f)."""
    if data is None:
        data = pushforward_data(m.over, m.source)
    L, Lp = m.source, m.target
    field = L.field
    Q = m.over.target.base

    def image_of_class_vector(qq, vec):
        comps = data.components(qq, vec)
        out = zero_vector(field, Lp.dims[qq])
        for p in data.members[qq]:
            out = vec_add(field, out, m.blocks[p].apply(comps[p]))
        return out

    for qq in Q.elements():
        for kvec in data.spans[qq].basis:
            if not vec_is_zero(field, image_of_class_vector(qq, kvec)):
                raise DoesNotFactor(
                    f"morphism does not kill the ideal in class {Q.names[qq]}")

    blocks = {}
    fL = data.algebra
    for qq in Q.elements():
        cols = [image_of_class_vector(qq, data.lift(qq, unit_vector(field, fL.dims[qq], k)))
                for k in range(fL.dims[qq])]
        blocks[qq] = Matrix(field, [[col[i] for col in cols]
                                    for i in range(Lp.dims[qq])], cols=fL.dims[qq])
    return CrossedAlgebraMorphism(identity_morphism(m.over.target), fL, Lp, blocks)


def untranspose_to_pushforward(m2: CrossedAlgebraMorphism, fmor: CrossedModuleMorphism,
                               L: CrossedCAlgebra,
                               data: PushforwardData | None = None) -> CrossedAlgebraMorphism:
    """Inverse of transpose_from_pushforward: precompose with the quotient map."""
    if data is None:
        data = pushforward_data(fmor, L)
    field = L.field
    f0 = fmor.f_base.map
    blocks = {}
    for p in L.P.elements():
        qq = f0[p]
        cols = []
        for i in range(L.dims[p]):
            coords = data.project(qq, data.embed(qq, p, unit_vector(field, L.dims[p], i)))
            cols.append(m2.blocks[qq].apply(coords))
        blocks[p] = Matrix(field, [[col[k] for col in cols]
                                   for k in range(m2.target.dims[qq])], cols=L.dims[p])
    return CrossedAlgebraMorphism(fmor, L, m2.target, blocks)


def morphisms_equal(a: CrossedAlgebraMorphism, b: CrossedAlgebraMorphism) -> bool:
    return all(a.blocks[p] == b.blocks[p] for p in a.source.P.elements())


# --------------------------------------------------------------------------
# bounded exhaustive morphism enumeration (small prime fields)
# --------------------------------------------------------------------------

def enumerate_algebra_morphisms(fmor: CrossedModuleMorphism, L: CrossedCAlgebra,
                                Lp: CrossedCAlgebra, max_entries: int = 20):
    """All crossed algebra morphisms L -> Lp over fmor, by exhausting every
    grade-block matrix over a finite field. Witness-based checking makes
    search over Q unbounded, so this requires a prime field."""
    field = L.field
    if not hasattr(field, "p"):
        raise ValueError("exhaustive morphism search needs a finite prime field")
    f0 = fmor.f_base.map
    shapes = [(p, Lp.dims[f0[p]], L.dims[p]) for p in L.P.elements()]
    total = sum(r * c for _, r, c in shapes)
    if total > max_entries:
        raise ValueError(f"{total} free entries exceeds bound {max_entries}")
    found = []
    for assignment in itertools.product(range(field.p), repeat=total):
        blocks, k = {}, 0
        for p, r, c in shapes:
            blocks[p] = Matrix(field, [[assignment[k + i * c + j] for j in range(c)]
                                       for i in range(r)], cols=c)
            k += r * c
        m = CrossedAlgebraMorphism(fmor, L, Lp, blocks)
        if check_algebra_morphism(m).ok:
            found.append(m)
    return found
