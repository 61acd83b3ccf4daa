"""Vertex-valence counts against a brute-force ribbon graph oracle.

The oracle enumerates all perfect matchings of the half-edges, glues
faces by composing the matching with the fixed rotation at each vertex,
reads the genus off the Euler count, and keeps connected gluings only.
It is independent of the edge-contraction recursion under test.
"""

import itertools
from fractions import Fraction

import pytest

from quantcurve.catalan import c02_closed, catalan_closed, catalan_general, z_series
from quantcurve.polyseries import TruncSeries


def matchings(points):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, other in enumerate(rest):
        pair = (first, other)
        for tail in matchings(rest[:i] + rest[i + 1 :]):
            yield (pair,) + tail


def cycle_count(perm):
    seen, cycles = set(), 0
    for start in perm:
        if start in seen:
            continue
        cycles += 1
        while start not in seen:
            seen.add(start)
            start = perm[start]
    return cycles


def brute_count(g, mu):
    """Connected gluings of labeled vertices with valences mu and genus g."""
    total = sum(mu)
    if total % 2:
        return 0
    rotation, label = {}, 0
    vertex_of = {}
    for v, m in enumerate(mu):
        block = list(range(label, label + m))
        for i, h in enumerate(block):
            rotation[h] = block[(i + 1) % m]
            vertex_of[h] = v
        label += m
    count = 0
    for match in matchings(tuple(range(total))):
        alpha = {}
        for a, b in match:
            alpha[a], alpha[b] = b, a
        # connectivity over vertices linked by an edge
        parent = list(range(len(mu)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in match:
            ra, rb = find(vertex_of[a]), find(vertex_of[b])
            parent[ra] = rb
        if len({find(v) for v in range(len(mu))}) != 1:
            continue
        faces = cycle_count({h: rotation[alpha[h]] for h in alpha})
        if len(mu) - total // 2 + faces == 2 - 2 * g:
            count += 1
    return count


def test_one_vertex_matches_closed_form():
    for m in range(0, 7):
        assert catalan_general(0, 1, (2 * m,)) == catalan_closed(m)
    assert [catalan_closed(m) for m in range(6)] == [1, 1, 2, 5, 14, 42]


def test_one_vertex_against_oracle():
    # all genera at once: the counts over genus must exhaust (2m-1)!!
    for m in range(1, 5):
        seen = 0
        for g in range(0, m // 2 + 1):
            c = catalan_general(g, 1, (2 * m,))
            assert c == brute_count(g, (2 * m,))
            seen += c
        assert seen == len(list(matchings(tuple(range(2 * m)))))


def test_two_vertex_against_oracle():
    cases = [(0, (1, 1)), (0, (2, 2)), (0, (2, 4)), (0, (3, 3)),
             (1, (2, 2)), (1, (3, 3)), (1, (2, 4)), (0, (3, 5))]
    for g, mu in cases:
        assert catalan_general(g, 2, mu) == brute_count(g, mu)


def test_three_vertex_spot_check():
    assert catalan_general(0, 3, (1, 1, 2)) == brute_count(0, (1, 1, 2))
    assert catalan_general(0, 3, (2, 2, 2)) == brute_count(0, (2, 2, 2))


def test_two_vertex_closed_form():
    for mu1, mu2 in itertools.product(range(1, 6), repeat=2):
        if (mu1 + mu2) % 2 == 0:
            assert catalan_general(0, 2, (mu1, mu2)) == c02_closed(mu1, mu2)
    assert c02_closed(3, 5) == 45


def test_symmetry_and_parity():
    assert catalan_general(1, 2, (4, 2)) == catalan_general(1, 2, (2, 4))
    assert catalan_general(0, 2, (1, 2)) == 0
    assert catalan_general(1, 1, (3,)) == 0


def test_seed_and_zero_entries():
    assert catalan_general(0, 1, (0,)) == 1
    assert catalan_general(0, 2, (0, 2)) == 0


def test_harer_zagier_one_vertex_column():
    # genus distribution of the 105 matchings on 8 points
    assert catalan_general(0, 1, (8,)) == 14
    assert catalan_general(1, 1, (8,)) == 70
    assert catalan_general(2, 1, (8,)) == 21


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        catalan_general(0, 1, (-2,))


def test_generating_series_functional_equation():
    # x z(x) = 1 + z(x)^2 in descending powers of x
    z = z_series(9)
    lhs = z.shift(-1)
    rhs = TruncSeries.one(z.trunc - 1) + (z * z).truncate(z.trunc - 1)
    assert lhs.coeffs == rhs.coeffs
