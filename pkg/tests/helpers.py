"""Shared helpers for the test suite (independent oracles and corpora)."""

import random

from realzk.bitsets import popcount
from realzk.complexes import SimplicialComplex


def det_bareiss(a):
    """Fraction-free determinant; independent oracle for unimodularity."""
    a = [[int(x) for x in row] for row in a]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def downward_closed_complexes(m):
    """Every simplicial complex on [m], by brute-force enumeration over
    downward-closed families of nonempty subsets."""
    nonempty = list(range(1, 1 << m))
    out = []
    for code in range(1 << len(nonempty)):
        family = {nonempty[i] for i in range(len(nonempty)) if code >> i & 1}
        closed = True
        for s in family:
            sub = s
            while sub and closed:
                sub = (sub - 1) & s
                if sub and sub not in family:
                    closed = False
            if not closed:
                break
        if not closed:
            continue
        simplices = tuple(sorted(family | {0}, key=lambda s: (popcount(s), s)))
        out.append(SimplicialComplex(m=m, simplices=simplices))
    return out


def random_corpus_schedule(counts=(80, 70, 50), master_seed=20250809):
    """Deterministic (m, density, seed) schedule for the random corpus."""
    rng = random.Random(master_seed)
    schedule = []
    for m, count in zip((5, 6, 7), counts):
        for _ in range(count):
            schedule.append((m, round(rng.uniform(0.15, 0.8), 3), rng.randrange(10**9)))
    return schedule
