#!/usr/bin/env python3
"""Brute-force oracle used to freeze expected values in the C++ tests.

Everything here enumerates raw binary matrices / strings directly and never
uses the closed-form counting the library implements.
"""
import itertools
from math import comb


def all_matrices(M, x):
    n = len(x)
    for bits in itertools.product((0, 1), repeat=M * n):
        rows = [bits[i * n:(i + 1) * n] for i in range(M)]
        if all(sum(r[j] for r in rows) == x[j] for j in range(n)):
            yield tuple(rows)


def deletion_ball(M, x):
    out = set()
    for X in all_matrices(M, x):
        for k in range(M):
            for h in range(len(x)):
                row = X[k][:h] + X[k][h + 1:]
                out.add(X[:k] + (row,) + X[k + 1:])
    return out


def vt_size(M, n, a):
    return sum(1 for v in itertools.product(range(M + 1), repeat=n)
               if sum((j + 1) * v[j] for j in range(n)) % (n + 1) == a)


def lcs(a, b):
    d = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a)):
        for j in range(len(b)):
            d[i + 1][j + 1] = d[i][j] + 1 if a[i] == b[j] else max(d[i][j + 1], d[i + 1][j])
    return d[-1][-1]


def max_independent(vertices, confusable):
    best = 0
    n = len(vertices)
    adj = [[confusable(vertices[i], vertices[j]) for j in range(n)] for i in range(n)]

    def rec(cands, size):
        nonlocal best
        if size + len(cands) <= best:
            return
        if not cands:
            best = max(best, size)
            return
        v = cands[0]
        rec([u for u in cands[1:] if not adj[v][u]], size + 1)
        rec(cands[1:], size)

    rec(list(range(n)), 0)
    return best


def binary_D(n, t):
    words = list(itertools.product((0, 1), repeat=n))
    return max_independent(words, lambda a, b: a != b and lcs(a, b) >= n - t)


def a_l1(M, n, t):
    vs = list(itertools.product(range(M + 1), repeat=n))
    return max_independent(vs, lambda a, b: a != b and sum(abs(p - q) for p, q in zip(a, b)) < 2 * t + 1)


if __name__ == "__main__":
    print("reps(3,5,3,2)", sum(1 for _ in all_matrices(5, (3, 5, 3, 2))))
    print("avg M=2 n=2 numerator/denominator",
          sum(sum(1 for _ in all_matrices(2, v)) for v in itertools.product(range(3), repeat=2)), 9)
    print("|B1D((1,1))| M=2", len(deletion_ball(2, (1, 1))))
    print("|B1D((2,1,0))| M=3", len(deletion_ball(3, (2, 1, 0))))
    print("|B1D((3,5,3,2))| M=5 (formula-free sum over deletions)")
    # direct but feasible: 1000 reps * 20 deletions
    print("   ", len(deletion_ball(5, (3, 5, 3, 2))))
    for M, n in ((2, 3), (3, 3)):
        print(f"|C1D(0)| M={M} n={n}", vt_size(M, n, 0))
    for M in range(1, 4):
        for n in range(1, 5):
            print(f"max_a VT M={M} n={n}", max(vt_size(M, n, a) for a in range(n + 1)))
    for n in range(1, 7):
        print(f"D({n},1) =", binary_D(n, 1))
    print("D(4,2) =", binary_D(4, 2))
    for M, n, t in ((2, 1, 1), (3, 2, 1), (4, 2, 1), (3, 3, 1), (4, 2, 2)):
        print(f"A_L1 M={M} n={n} t={t}", a_l1(M, n, t))
    # inner shortened Hamming, column j has value j (1-indexed)
    n = 7
    ham = [b for b in itertools.product((0, 1), repeat=n)
           if __import__("functools").reduce(lambda s, j: s ^ ((j + 1) if b[j] else 0), range(n), 0) == 0]
    count = sum(1 for v in itertools.product(range(4), repeat=n)
                if all(e % 2 == 0 for e in v) and tuple((e // 2) % 2 for e in v) in set(ham))
    print("|LS| M=3 t=1 n=7", count)
