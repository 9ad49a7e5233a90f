"""Degree-D correlation for the planted submatrix model by least squares on raw
monomials of Y, with moments computed exactly in rational arithmetic.

Y_ij = lam * theta_i * theta_j + Z_ij (i <= j), theta_i ~ Bern(rho), x = theta_1.
"""
import itertools
from fractions import Fraction

import sympy as sp


def gaussian_moment(k):
    if k % 2:
        return 0
    out = 1
    for j in range(k - 1, 0, -2):
        out *= j
    return out


def corr(n, D, lam, rho):
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    monos = [()]
    for d in range(1, D + 1):
        monos += list(itertools.combinations_with_replacement(range(len(slots)), d))

    thetas = list(itertools.product([0, 1], repeat=n))
    weights = [rho ** sum(t) * (1 - rho) ** (n - sum(t)) for t in thetas]

    def moment(mono, with_x=False):
        total = Fraction(0)
        counts = {}
        for s in mono:
            counts[s] = counts.get(s, 0) + 1
        for t, w in zip(thetas, weights):
            if with_x and t[0] == 0:
                continue
            val = Fraction(1)
            for s, k in counts.items():
                i, j = slots[s]
                a = lam * t[i] * t[j]
                # E (a + Z)^k = sum_r binom(k, r) a^(k-r) E Z^r
                val *= sum(sp.binomial(k, r) * a ** (k - r) * gaussian_moment(r) for r in range(k + 1))
            total += w * val
        return total

    G = sp.Matrix(len(monos), len(monos), lambda a, b: moment(monos[a] + monos[b]))
    c = sp.Matrix([moment(m, with_x=True) for m in monos])
    ex2 = rho
    sol = G.LUsolve(c)
    return sp.sqrt((c.T * sol)[0] / ex2)


if __name__ == "__main__":
    for D in (1, 2):
        v = corr(3, D, Fraction(1), Fraction(1, 2))
        print(f"n=3 D={D} lam=1 rho=1/2 corr = {sp.nsimplify(v)} = {sp.N(v, 20)}")
