"""Matrices shared by the test modules."""

import math
import random

from toric_ed.intlinalg import identity, matmul

OCTAHEDRON = [
    [1, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1],
]

# normal toric surface in P^5: a lattice quadrangle with two non-vertex points
QUADRANGLE = [
    [1, 0, 1, 2, 3, 1],
    [0, 1, 1, 1, 1, 2],
    [1, 1, 1, 1, 1, 1],
]

P1P1_O22 = [
    [0, 0, 0, 1, 1, 1, 2, 2, 2],
    [0, 1, 2, 0, 1, 2, 0, 1, 2],
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
]

VERONESE = [
    [2, 1, 1, 0, 0, 0],
    [0, 1, 0, 2, 1, 0],
    [0, 0, 1, 0, 1, 2],
]

SEGRE_P1_P2 = [
    [1, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
]


def rational_normal_curve(degree):
    return [list(range(degree + 1)), [1] * (degree + 1)]


def random_configuration(rng: random.Random, max_d=4, max_n=8, hi=4):
    """Random homogeneous configuration: rows in [0, hi] plus a row of ones."""
    d = rng.randint(2, max_d)
    n = rng.randint(d, max_n)
    rows = [[rng.randint(0, hi) for _ in range(n)] for _ in range(d - 1)]
    return rows + [[1] * n]


def random_unimodular(rng: random.Random, size, steps=12):
    u = identity(size)
    for _ in range(steps):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i == j:
            u[i] = [-x for x in u[i]]
            continue
        f = rng.choice([-2, -1, 1, 2])
        u[i] = [a + f * b for a, b in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u


def transform(u, m):
    return matmul(u, m)


def permute_columns(m, perm):
    return [[row[p] for p in perm] for row in m]


def random_hypersurface(rng: random.Random, max_n=5, max_entry=6):
    """Random valid (left, right) exponent split with equal sums and gcd 1."""
    while True:
        n = rng.randint(2, max_n)
        r = rng.randint(1, n - 1)
        left = [rng.randint(1, max_entry) for _ in range(r)]
        total = sum(left)
        m = n - r
        if not m <= total <= m * max_entry:
            continue
        right = [1] * m
        for _ in range(total - m):
            open_slots = [i for i in range(m) if right[i] < max_entry]
            right[rng.choice(open_slots)] += 1
        if math.gcd(*left, *right) == 1:
            return left, right
