import random
from itertools import product

import pytest

from polproj.forms import hermitian, quadratic, symplectic
from polproj.gf import gf
from polproj.linalg import join, meet, span
from polproj.permgrp import identity
from polproj.polar import LOWER, UPPER, NotOpposite, build
from polproj.proj import (REVERSING, Chain, DegenerateD, NotAdmissible, Singular, admissible,
                          apply_matrix, char2_conic_elation, conic_points, elation_fixes_line,
                          elation_matrix, elation_preserves_conic, evaluate_chain,
                          extract_homology_factor, fixed_residue_points, homology_quadruple,
                          is_hyperplane_fixing, loop3_hyperplane, perspectivity, plane_points,
                          reflection_loop, shorten_chain, two_reflection_decomposition_check)
from polproj.verify import Groupoid, _four_loop_draw, _three_loop_draw, standard_subspace


@pytest.fixture(scope="module")
def w32():
    return build(symplectic(gf(2), 2))


@pytest.fixture(scope="module")
def w52():
    return build(symplectic(gf(2), 3))


def test_perspectivity_between_opposite_lines_is_a_bijection(w32):
    P = w32
    lines = P.singular_subspaces_vec(2)
    M1 = lines[0]
    for M2 in lines:
        if not P.is_opposite(M1, M2):
            continue
        m = perspectivity(P, M1, M2, LOWER)
        assert len(set(m.values())) == len(m) == 3
        back = perspectivity(P, M2, M1, LOWER)
        assert all(back[y] == x for x, y in m.items())


def test_perspectivity_needs_opposition(w32):
    P = w32
    L = P.singular_subspaces_vec(2)[0]
    with pytest.raises(NotOpposite):
        perspectivity(P, L, L, LOWER)


def _opposite_chain(P, F, k, rng):
    hops = [F]
    for _ in range(k - 1):
        cands = [x for x in P.points if P.is_opposite(hops[-1], x)]
        hops.append(rng.choice(cands))
    last = [x for x in P.points if P.is_opposite(hops[-1], x) and P.is_opposite(x, F)]
    hops.append(rng.choice(last))
    return hops + [F]


def test_chain_inverse_and_composition(w52):
    P = w52
    p = P.points[0]
    R = P.residue(p, UPPER)
    rng = random.Random(4)
    a = Chain(R, _opposite_chain(P, p, 2, rng))
    b = Chain(R, _opposite_chain(P, p, 3, rng))
    ea, eb = evaluate_chain(a, P), evaluate_chain(b, P)
    assert (ea * evaluate_chain(a.reversed(), P)).is_identity()
    ab = evaluate_chain(a.then(b), P)
    assert ab == ea * eb
    assert ab.parity == (a.length + b.length) % 2


def test_shorten_chain_keeps_the_projectivity(w52):
    P = w52
    p = P.points[0]
    R = P.residue(p, UPPER)
    rng = random.Random(11)
    for _ in range(5):
        hops = _opposite_chain(P, p, 4, rng)
        short = shorten_chain(P, hops)
        assert len(short) <= len(hops)
        if (len(short) - len(hops)) % 2 == 0:
            assert evaluate_chain(Chain(R, short), P) == evaluate_chain(Chain(R, hops), P)


def _D_oracle(S, v0, w0, t, u):
    # the homology factor written out coordinate by coordinate
    F = S.field
    s = S.sigma

    def g(x0, tt):
        return F.add(F.neg(S.g0(x0, x0)), F.sub(tt, s[tt]))

    f0 = F.add(S.g0(w0, v0), s[S.g0(v0, w0)])
    return F.add(F.add(F.mul(g(w0, u), g(v0, t)), f0), 1)


@pytest.mark.parametrize("make", [lambda: quadratic(gf(3), 2, 1), lambda: hermitian(gf(9), 2),
                                  lambda: hermitian(gf(4), 2, odd_dim=True),
                                  lambda: quadratic(gf(3), 2, 2)],
                         ids=["Q(4,3)", "H(3,9)", "H(4,4)", "Q-(5,3)"])
def test_homology_factor_equals_formula(make):
    S = make()
    P = build(S)
    F = S.field
    checked = 0
    vs = list(product(F.elements, repeat=S.corank))
    for v0, w0 in product(vs, repeat=2):
        for t, u in product(F.elements, repeat=2):
            D = _D_oracle(S, v0, w0, t, u)
            if D == 0:
                with pytest.raises(DegenerateD):
                    homology_quadruple(P, v0, w0, t, u)
                continue
            cp = evaluate_chain(homology_quadruple(P, v0, w0, t, u), P)
            assert cp.type_action != REVERSING
            assert extract_homology_factor(cp) == D
            checked += 1
    assert checked > 0


def test_odd_loops_of_a_maximal_are_dualities(w52):
    P = w52
    G = Groupoid(P, standard_subspace(P.spec, 3), LOWER)
    g = G.graph
    b = g.neighbours(g.root)[0]
    c = next(c for c in g.neighbours(b) if g.opposite(g.root, c))
    cp = G.perm_of_hops([g.nodes[b], g.nodes[c]])
    assert cp.odd and cp.type_action == REVERSING


# reflections

@pytest.fixture(scope="module")
def w53():
    return build(symplectic(gf(3), 3))


def test_length_three_loop_fixes_a_hyperplane(w53):
    P = w53
    p1 = P.points[0]
    rng = random.Random(2)
    for _ in range(4):
        p2 = rng.choice([x for x in P.points if P.is_opposite(p1, x)])
        p3 = rng.choice([x for x in P.points if P.is_opposite(p1, x) and P.is_opposite(p2, x)])
        cp = evaluate_chain(Chain(P.residue(p1, UPPER), [p1, p2, p3, p1]), P)
        hyp = loop3_hyperplane(P, p1, p2, p3)
        assert set(hyp) <= set(fixed_residue_points(cp))
        assert is_hyperplane_fixing(cp)


def test_reflection_loop_maps_k_to_k_prime(w53):
    P = w53
    F = P.field
    p1 = standard_subspace(P.spec, 1)
    p2 = next(x for x in P.points if P.is_opposite(p1, x))
    gamma = meet(P.perp(p1), P.perp(p2))
    rng = random.Random(5)
    done = 0
    for _ in range(30):
        y = rng.choice([v for v in gamma.vectors() if any(v)])
        ys = span(F, P.n, y)
        H = meet(gamma, P.perp(ys))
        ks = [x for x in P.points_of(gamma) if meet(x, H).dim == 0]
        k = rng.choice(ks)
        kks = [x for x in P.points_of(join(k, ys))
               if x != k and meet(x, H).dim == 0 and P.spec.bilinear(k.rows[0], x.rows[0])]
        if not kks:
            continue
        kk = kks[0]
        cp = evaluate_chain(reflection_loop(P, p1, p2, H, k, kk), P)
        act = cp.point_action()
        assert act[join(p1, k)] == join(p1, kk)
        assert all(act[x] == x for x in P.residue(p1, UPPER).points if meet(x, H).dim == 1)
        done += 1
    assert done >= 5


def test_products_of_two_reflections():
    # Res(p) of Q(6,3) is Q(4,3); its reflections sit on the 121 - 40 = 81 non-singular points
    P = build(quadratic(gf(3), 3, 1))
    G = Groupoid(P, standard_subspace(P.spec, 1), UPPER)
    rng = random.Random(8)
    draw3 = _three_loop_draw(G)
    refl = set()
    for _ in range(2000):
        cp = draw3(rng)
        if cp is not None:
            refl.add(cp)
        if len(refl) == 81:
            break
    assert len(refl) == 81
    refl = sorted(refl, key=lambda x: x.perm)
    draw4 = _four_loop_draw(G, True)
    found = 0
    while found < 5:
        theta = draw4(rng)
        if theta is None:
            continue
        assert two_reflection_decomposition_check(theta, refl)["found"]
        found += 1


# characteristic 2 conic elation

@pytest.mark.parametrize("q", [2, 4])
def test_conic_elation_exhaustive(q):
    F = gf(q)
    assert len(conic_points(F)) == q + 1
    for k, a, b in product(F.elements, repeat=3):
        if F.add(1, F.mul(a, F.mul(b, b))) == 0:
            with pytest.raises(Singular):
                char2_conic_elation(F, k, a, b)
            continue
        M = elation_matrix(F, a, b)
        assert elation_preserves_conic(F, M)
        if admissible(F, k, a, b):
            assert elation_fixes_line(F, char2_conic_elation(F, k, a, b), k)
        else:
            with pytest.raises(NotAdmissible):
                char2_conic_elation(F, k, a, b)


def test_conic_elation_special_parameters():
    F = gf(4)
    pts = plane_points(F)
    ident = elation_matrix(F, 3, 0)
    assert all(apply_matrix(F, ident, v) == v for v in pts)
    # a = 0 moves points and fixes the line Z = 0 instead of any X = kZ
    M = elation_matrix(F, 0, 1)
    assert any(apply_matrix(F, M, v) != v for v in pts)
    assert all(apply_matrix(F, M, v) == v for v in pts if v[2] == 0)
    with pytest.raises(Singular):
        elation_matrix(gf(2), 1, 1)


def test_two_reflection_check_trivial():
    class Id:
        perm = identity(3)

        def is_identity(self):
            return True

    assert two_reflection_decomposition_check(Id(), [])["trivial"]
