"""Second moment of the k = 0 tree estimator f = sum_alpha Y^alpha for the
planted submatrix model, by direct enumeration of theta in {0,1}^n.

For k = 0 the family is every pair of edges {1,a}, {1,b} with 2 <= a < b <= n.
Noise is Gaussian, so an edge used twice contributes E(a + Z)^2 = a^2 + 1.
"""
import itertools
from fractions import Fraction


def family(n):
    return [frozenset({(1, a), (1, b)}) for a, b in itertools.combinations(range(2, n + 1), 2)]


def second_moment(n, lam, rho):
    trees = family(n)
    total = Fraction(0)
    for t in itertools.product([0, 1], repeat=n):
        th = {i + 1: t[i] for i in range(n)}
        w = rho ** sum(t) * (1 - rho) ** (n - sum(t))
        for a in trees:
            for b in trees:
                val = Fraction(1)
                for e in a | b:
                    s = lam * th[e[0]] * th[e[1]]
                    val *= s * s + 1 if (e in a and e in b) else s
                total += w * val
    return total


def first_moment(n, lam, rho):
    return len(family(n)) * lam ** 2 * rho ** 3


if __name__ == "__main__":
    lam, rho = Fraction(1, 2), Fraction(3, 10)
    m2 = second_moment(6, lam, rho)
    print("n=6 k=0 lam=1/2 rho=3/10 E f^2 =", m2, "=", float(m2))
    print("E f x =", first_moment(6, lam, rho), "=", float(first_moment(6, lam, rho)))
