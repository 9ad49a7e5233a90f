"""sum over good alpha (|alpha| <= D) of kappa_alpha^2 / alpha! for the rank-one
spiked Wigner model with a Rademacher prior.

kappa_alpha is the joint cumulant of x = X_12 and one copy of X_ij per edge copy
of alpha, where X = sqrt(lam/n) u u^T. Mixed moments come from enumerating
u in {-1,+1}^n; cumulants from the set-partition formula.
"""
import itertools
import math
from fractions import Fraction

import sympy as sp
from sympy.utilities.iterables import multiset_partitions


def good(alpha):
    if not alpha:
        return True
    bar = list(alpha) + [(1, 2)]
    verts = {v for e in alpha for v in e}
    if 1 not in verts or 2 not in verts:
        return False
    deg = {}
    for i, j in bar:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    if any(d < 2 for d in deg.values()):
        return False
    # connectivity of bar
    allv = set(deg)
    seen, stack = {1}, [1]
    while stack:
        v = stack.pop()
        for i, j in bar:
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return seen == allv


def cumulant_sum(n, D, lam):
    slots = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    us = list(itertools.product([-1, 1], repeat=n))
    scale = sp.sqrt(sp.Rational(lam) / n)

    def moment(edges):
        tot = 0
        for u in us:
            p = 1
            for i, j in edges:
                p *= u[i - 1] * u[j - 1]
            tot += p
        return sp.Rational(tot, len(us)) * scale ** len(edges)

    def kappa(edges):
        items = [(1, 2)] + list(edges)
        idx = list(range(len(items)))
        total = 0
        for part in multiset_partitions(idx):
            b = len(part)
            term = (-1) ** (b - 1) * math.factorial(b - 1)
            for block in part:
                term *= moment([items[k] for k in block])
            total += term
        return sp.nsimplify(total)

    total = 0
    count = 0
    for d in range(1, D + 1):
        for combo in itertools.combinations_with_replacement(slots, d):
            if not good(combo):
                continue
            count += 1
            fact = 1
            for e in set(combo):
                fact *= math.factorial(combo.count(e))
            total += kappa(combo) ** 2 / fact
    return sp.nsimplify(total), count


if __name__ == "__main__":
    val, count = cumulant_sum(4, 2, Fraction(1, 2))
    print("n=4 D=2 lam=1/2 m=1 rademacher: sum =", val, "=", sp.N(val, 20), "over", count, "good alpha")
