"""The evaluator: a crossed algebra induces a symmetric monoidal assignment
on formal boundaries and layered cobordism expressions. Strict conventions
throughout: tensor bases are Kronecker-ordered (left factor most
significant), so functoriality and monoidality are exact matrix identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebras import CrossedCAlgebra, check_crossed_algebra
from .formal_maps import (
    Cap,
    CobordismExpression,
    Copants,
    Cup,
    Cyl,
    Disc,
    FormalBoundary,
    Id,
    Pants,
    Swap,
    TypecheckFailed,
    circuit_normalize,
    expression,
    piece_source,
    piece_target,
    typecheck,
)
from .linalg import Matrix, SingularMatrixError, TensorSpace
from .report import CheckReport


class SingularRho(ValueError):
    pass


class GradeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FormalHQFT:
    algebra: CrossedCAlgebra

    @property
    def cm(self):
        return self.algebra.cm

    @property
    def field(self):
        return self.algebra.field


def make_hqft(algebra: CrossedCAlgebra) -> FormalHQFT:
    rep = check_crossed_algebra(algebra)
    if not rep.ok:
        fail = rep.first_failure()
        raise ValueError(f"not a crossed algebra: {fail.axiom} at {fail.instance}")
    return FormalHQFT(algebra)


@dataclass(frozen=True)
class EvaluatedMap:
    source: FormalBoundary
    target: FormalBoundary
    matrix: Matrix


def state_space(tau: FormalHQFT, b: FormalBoundary) -> TensorSpace:
    """Ordered tensor of the grade summands; the empty boundary is the field."""
    L = tau.algebra
    factors = []
    for circ in b.circuits:
        g = circuit_normalize(L.P, circ).labels[0]
        factors.append((g, L.dims[g]))
    return TensorSpace(tuple(factors))


def eval_piece(tau: FormalHQFT, piece) -> EvaluatedMap:
    L = tau.algebra
    cm, f = L.cm, L.field
    P = L.P
    src = piece_source(piece, cm)
    tgt = piece_target(piece, cm)
    match piece:
        case Disc(c):
            mat = Matrix.column(f, L.tilde[c])
        case Cyl(c, g, h):
            hinv = P.inv[h]
            conj = P.conj(hinv, g)
            mat = L.left_mul_matrix(cm.d(c), L.tilde[c], conj) @ L.phi[(hinv, g)]
        case Pants(c, g1, g2):
            g12 = P.mul(g1, g2)
            mat = L.left_mul_matrix(cm.d(c), L.tilde[c], g12) @ L.mul_matrix(g1, g2)
        case Cap(g):
            d1, d2 = L.dims[g], L.dims[P.inv[g]]
            mat = Matrix(f, [[L.rho[g].data[i][j] for i in range(d1) for j in range(d2)]],
                         cols=d1 * d2)
        case Cup(g):
            ginv = P.inv[g]
            try:
                co = L.rho[ginv].inverse()
            except SingularMatrixError as exc:
                raise SingularRho(f"pairing at grade {P.names[ginv]} is singular") from exc
            column = [[co.data[k][l]] for k in range(L.dims[g]) for l in range(L.dims[ginv])]
            mat = Matrix(f, column, cols=1)
        case Id(g):
            mat = Matrix.identity(f, L.dims[g])
        case Swap(g1, g2):
            d1, d2 = L.dims[g1], L.dims[g2]
            mat = Matrix.zeros(f, d2 * d1, d1 * d2)
            data = [list(row) for row in mat.data]
            for i in range(d1):
                for j in range(d2):
                    data[j * d1 + i][i * d2 + j] = f.one
            mat = Matrix(f, data, cols=d1 * d2)
        case Copants(g1, g2):
            g12 = P.mul(g1, g2)
            first = eval_piece(tau, Cup(g1)).matrix.kron(Matrix.identity(f, L.dims[g12]))
            second = Matrix.identity(f, L.dims[g1]).kron(
                eval_piece(tau, Pants(0, P.inv[g1], g12)).matrix)
            mat = second @ first
        case _:
            raise TypeError(f"not a piece: {piece!r}")
    return EvaluatedMap(FormalBoundary.of(*[[g] for g in src]),
                        FormalBoundary.of(*[[g] for g in tgt]), mat)


def eval_expression(tau: FormalHQFT, e: CobordismExpression) -> EvaluatedMap:
    """Kronecker product across each layer, matrix product across layers."""
    rep = typecheck(e)
    if not rep.ok:
        fail = rep.first_failure()
        raise TypecheckFailed(f"{fail.axiom} at {fail.instance}: {fail.detail}")
    f = tau.field
    total = Matrix.identity(f, state_space(tau, e.source).dim)
    for layer in e.layers:
        layer_mat = Matrix.identity(f, 1)
        for piece in layer:
            layer_mat = layer_mat.kron(eval_piece(tau, piece).matrix)
        total = layer_mat @ total
    return EvaluatedMap(e.source, e.target, total)


def extract_algebra(tau: FormalHQFT) -> CrossedCAlgebra:
    """Read the algebra back off the evaluator: multiplication from pants,
    pairing from caps, action from cylinders, units from discs."""
    L = tau.algebra
    cm, f, P, C = L.cm, L.field, L.P, L.C
    dims = [state_space(tau, FormalBoundary.of([g])).dim for g in P.elements()]
    mul = {}
    for g in P.elements():
        for h in P.elements():
            m = eval_piece(tau, Pants(0, g, h)).matrix
            gh = P.mul(g, h)
            mul[(g, h)] = [[[m.data[k][i * dims[h] + j] for k in range(dims[gh])]
                            for j in range(dims[h])] for i in range(dims[g])]
    unit = tuple(row[0] for row in eval_piece(tau, Disc(0)).matrix.data)
    rho = {}
    for g in P.elements():
        m = eval_piece(tau, Cap(g)).matrix
        ginv = P.inv[g]
        rho[g] = Matrix(f, [[m.data[0][i * dims[ginv] + j] for j in range(dims[ginv])]
                            for i in range(dims[g])], cols=dims[ginv])
    phi = {}
    for h in P.elements():
        for g in P.elements():
            phi[(h, g)] = eval_piece(tau, Cyl(0, g, P.inv[h])).matrix
    tilde = [tuple(row[0] for row in eval_piece(tau, Disc(c)).matrix.data)
             for c in C.elements()]
    return CrossedCAlgebra(f"extracted({L.name})", cm, f, dims, L.basis_names,
                           mul, unit, rho, phi, tilde)


def trace_axiom_probe(tau: FormalHQFT, g: int, h: int, c_vec):
    """Both traces of the torus-compatibility condition, for a vector in the
    commutator grade; they agree on a valid algebra."""
    L = tau.algebra
    P = L.P
    comm = P.commutator(g, h)
    if len(c_vec) != L.dims[comm]:
        raise GradeMismatch(
            f"vector of length {len(c_vec)} is not in grade {P.names[comm]}")
    m1 = L.left_mul_matrix(comm, c_vec, P.conj(h, g)) @ L.phi[(h, g)]
    m2 = L.phi[(P.inv[g], P.conj(g, h))] @ L.left_mul_matrix(comm, c_vec, h)
    return m1.trace(), m2.trace()


# --------------------------------------------------------------------------
# built-in equivalence-invariance families
# --------------------------------------------------------------------------

def check_equivalence_invariance(tau: FormalHQFT) -> CheckReport:
    """Expression pairs related by the generated moves evaluate equally:
    (a) disc into cylinder vs the acted disc; (b) cylinders into pants vs the
    single relabeled pants; (c) the two whiskering orders; (d) the two
    pairing composites."""
    report = CheckReport(f"equivalence invariance for {tau.algebra.name}")
    L = tau.algebra
    cm, P, C = L.cm, L.P, L.C
    d = cm.d

    fails = []
    for c in C.elements():
        for h in P.elements():
            e1 = expression(cm, [], [[Disc(c)], [Cyl(0, d(c), h)]],
                            [P.conj(P.inv[h], d(c))])
            ch = cm.action(P.inv[h], c)
            e2 = expression(cm, [], [[Disc(ch)]], [d(ch)])
            if eval_expression(tau, e1).matrix != eval_expression(tau, e2).matrix:
                fails.append((f"(c={C.names[c]},h={P.names[h]})",
                              "disc+cylinder != acted disc"))
    report.add("family_a_disc_cylinder", fails)

    fails = []
    for c1 in C.elements():
        for c2 in C.elements():
            for g1 in P.elements():
                for g2 in P.elements():
                    k1, k2 = P.mul(d(c1), g1), P.mul(d(c2), g2)
                    e1 = expression(cm, [g1, g2],
                                    [[Cyl(c1, g1, 0), Cyl(c2, g2, 0)],
                                     [Pants(0, k1, k2)]],
                                    [P.mul(k1, k2)])
                    cc = C.mul(c1, cm.action(g1, c2))
                    e2 = expression(cm, [g1, g2], [[Pants(cc, g1, g2)]],
                                    [P.product((d(cc), g1, g2))])
                    if eval_expression(tau, e1).matrix != eval_expression(tau, e2).matrix:
                        fails.append(
                            (f"(c1={C.names[c1]},c2={C.names[c2]},g1={P.names[g1]},g2={P.names[g2]})",
                             "two cylinders into pants != semidirect pants"))
    report.add("family_b_pants_reduction", fails)

    fails = []
    for c in C.elements():
        for g1 in P.elements():
            for g2 in P.elements():
                out = P.product((g1, d(c), g2))
                e1 = expression(cm, [g1, g2],
                                [[Id(g1), Cyl(c, g2, 0)], [Pants(0, g1, P.mul(d(c), g2))]],
                                [out])
                gc = cm.action(g1, c)
                e2 = expression(cm, [g1, g2],
                                [[Pants(0, g1, g2)], [Cyl(gc, P.mul(g1, g2), 0)]],
                                [out])
                e3 = expression(cm, [g1, g2],
                                [[Cyl(gc, g1, 0), Id(g2)], [Pants(0, P.mul(d(gc), g1), g2)]],
                                [out])
                m1 = eval_expression(tau, e1).matrix
                m2 = eval_expression(tau, e2).matrix
                m3 = eval_expression(tau, e3).matrix
                if not (m1 == m2 == m3):
                    fails.append((f"(c={C.names[c]},g1={P.names[g1]},g2={P.names[g2]})",
                                  "whiskering orders disagree"))
    report.add("family_c_whiskering", fails)

    fails = []
    for c in C.elements():
        for g in P.elements():
            dcg = P.mul(d(c), g)
            y = P.inv[dcg]
            e1 = expression(cm, [g, y], [[Cyl(c, g, 0), Id(y)], [Cap(dcg)]], [])
            cginv = cm.action(P.inv[g], c)
            e2 = expression(cm, [g, y], [[Id(g), Cyl(cginv, y, 0)], [Cap(g)]], [])
            if eval_expression(tau, e1).matrix != eval_expression(tau, e2).matrix:
                fails.append((f"(c={C.names[c]},g={P.names[g]})",
                              "pairing composites disagree"))
    report.add("family_d_pairing", fails)
    return report


# --------------------------------------------------------------------------
# randomized well-typed expressions
# --------------------------------------------------------------------------

def random_expression(tau: FormalHQFT, rng: random.Random, source=None,
                      max_depth: int = 4, max_width: int = 3) -> CobordismExpression:
    """A random well-typed expression from a (possibly random) source."""
    L = tau.algebra
    cm, P, C = L.cm, L.P, L.C
    if source is None:
        source = [rng.randrange(P.order) for _ in range(rng.randint(0, max_width))]
    cur = list(source)
    layers = []
    for _ in range(rng.randint(1, max_depth)):
        layer = []
        out = []
        i = 0
        if not cur and rng.random() < 0.8:
            piece = Disc(rng.randrange(C.order)) if rng.random() < 0.5 \
                else Cup(rng.randrange(P.order))
            layer.append(piece)
            out.extend(piece_target(piece, cm))
        while i < len(cur):
            if len(out) < max_width - 1 and rng.random() < 0.15:
                piece = Disc(rng.randrange(C.order))
                layer.append(piece)
                out.extend(piece_target(piece, cm))
            g = cur[i]
            two = i + 1 < len(cur)
            roll = rng.random()
            if two and roll < 0.35:
                g2 = cur[i + 1]
                if P.mul(g, g2) == 0 and rng.random() < 0.5:
                    piece = Cap(g)
                elif rng.random() < 0.5:
                    piece = Swap(g, g2)
                else:
                    piece = Pants(rng.randrange(C.order), g, g2)
                layer.append(piece)
                out.extend(piece_target(piece, cm))
                i += 2
                continue
            if roll < 0.55 and len(out) + 2 <= max_width and len(cur) < max_width:
                g1 = rng.randrange(P.order)
                piece = Copants(g1, P.mul(P.inv[g1], g))
            elif roll < 0.8:
                piece = Cyl(rng.randrange(C.order), g, rng.randrange(P.order))
            else:
                piece = Id(g)
            layer.append(piece)
            out.extend(piece_target(piece, cm))
            i += 1
        layers.append(layer)
        cur = out
    return expression(cm, source, layers, cur)
