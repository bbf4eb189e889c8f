import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polproj.forms import hermitian, quadratic, symplectic
from polproj.gf import gf
from polproj.linalg import is_subspace_of
from polproj.polar import (LOWER, UPPER, BadDimension, NotOpposite, TooLarge, build,
                           geometric_hyperplane_check)


def n_points(kind, r, q, corank=0):
    # closed-form point counts of the classical polar spaces
    if kind == "Sp":
        return (q ** (2 * r) - 1) // (q - 1)
    if kind == "O" and corank == 1:
        return (q ** (2 * r) - 1) // (q - 1)
    if kind == "O":
        return (q ** (r + 1) + 1) * (q ** r - 1) // (q - 1)
    n = 2 * r + corank
    return (q ** n - (-1) ** n) * (q ** (n - 1) - (-1) ** (n - 1)) // (q * q - 1)


def n_maximals(kind, r, q, corank=0):
    # product of (q^(i-1+e) + 1); Hermitian spaces use q^2 with e = 1/2 or 3/2
    if kind == "U":
        return _prod(q ** (2 * i - 1 + 2 * corank) + 1 for i in range(1, r + 1))
    e = 2 if corank == 2 else 1
    return _prod(q ** (i - 1 + e) + 1 for i in range(1, r + 1))


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


CASES = [
    ("Sp", 2, 2, 0, lambda: symplectic(gf(2), 2)),
    ("Sp", 2, 3, 0, lambda: symplectic(gf(3), 2)),
    ("Sp", 3, 2, 0, lambda: symplectic(gf(2), 3)),
    ("Sp", 3, 3, 0, lambda: symplectic(gf(3), 3)),
    ("O", 2, 3, 1, lambda: quadratic(gf(3), 2, 1)),
    ("O", 3, 3, 1, lambda: quadratic(gf(3), 3, 1)),
    ("O", 2, 2, 2, lambda: quadratic(gf(2), 2, 2)),
    ("O", 3, 2, 2, lambda: quadratic(gf(2), 3, 2)),
    ("U", 2, 2, 0, lambda: hermitian(gf(4), 2)),
    ("U", 2, 2, 1, lambda: hermitian(gf(4), 2, odd_dim=True)),
    ("U", 3, 2, 0, lambda: hermitian(gf(4), 3)),
]


@pytest.mark.parametrize("kind,r,q,c,make", CASES, ids=[f"{c[0]}{c[1]}-{c[2]}-{c[3]}" for c in CASES])
def test_point_and_maximal_counts(kind, r, q, c, make):
    P = build(make())
    assert len(P.points) == n_points(kind, r, q, c)
    assert len(P.singular_subspaces_vec(r)) == n_maximals(kind, r, q, c)
    assert P.singular_subspaces_vec(r + 1) == []


def test_residue_sizes():
    # upper residue of a point is the polar space one rank lower
    W = build(symplectic(gf(3), 3))
    p = W.points[0]
    R = W.residue(p, UPPER)
    assert len(R.points) == n_points("Sp", 2, 3) and len(R.chambers) == 160
    M = W.singular_subspaces_vec(3)[0]
    L = W.residue(M, LOWER)
    assert len(L.points) == 13 and len(L.chambers) == 52
    Q = build(quadratic(gf(2), 3, 2))
    R = Q.residue(Q.points[0], UPPER)
    assert len(R.points) == n_points("O", 2, 2, 2) and len(R.chambers) == 135
    assert W.residue(M, UPPER).is_empty()


@pytest.fixture(scope="module")
def w52():
    return build(symplectic(gf(2), 3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, 3]))
def test_opposition_is_symmetric_and_projections_are_inverse(w52, seed, m):
    P = w52
    rng = random.Random(seed)
    subs = P.singular_subspaces_vec(m)
    U, V = rng.choice(subs), rng.choice(subs)
    assert P.is_opposite(U, V) == P.is_opposite(V, U)
    if not P.is_opposite(U, V):
        return
    side = UPPER if m < P.rank else LOWER
    for x in P.residue(U, side).elements:
        if side == UPPER:
            y = P._up(V, x)
            assert is_subspace_of(V, y) and y.dim == x.dim
            assert P._up(U, y) == x
        else:
            y = P._down(V, x)
            assert is_subspace_of(y, V) and y.dim == m - x.dim
            assert P._down(U, y) == x


def test_opposite_points_are_non_collinear(w52):
    P = w52
    for i in (0, 5, 17):
        p = P.points[i]
        for j, x in enumerate(P.points):
            collinear = bool(P.neighbours[i] >> j & 1)
            assert P.is_opposite(p, x) == (not collinear)


def test_projection_errors(w52):
    P = w52
    p = P.points[0]
    with pytest.raises(NotOpposite):
        P.project_lower(p, p, p)
    with pytest.raises(BadDimension):
        P.is_opposite(p, P.singular_subspaces_vec(2)[0])
    with pytest.raises(TooLarge):
        build(symplectic(gf(3), 3), point_cap=100)


def test_perp_of_a_point_is_a_geometric_hyperplane(w52):
    P = w52
    R = P.residue(P.points[0], UPPER)
    x = R.points[3]
    # residue points collinear (in the residue) with x form x's perp, a hyperplane
    lines_thru = [L for L in R.lines if is_subspace_of(x, L)]
    perp_x = {y for L in lines_thru for y in R.points_on(L)}
    assert geometric_hyperplane_check(R, perp_x)
    assert not geometric_hyperplane_check(R, [x])
