"""Counts minimal 2-covers of S = (a^m b)^2 a^m by equal-length substrings.

Independent of the Rust oracle: it works on sets of covered positions and
checks minimality by dropping each member. Prints `m k count` lines.
"""
from itertools import combinations


def covered(s, w):
    pos = set()
    for i in range(len(s) - len(w) + 1):
        if s[i:i + len(w)] == w:
            pos.update(range(i, i + len(w)))
    return frozenset(pos)


def count(s, lam, k):
    n = len(s)
    words = sorted({s[i:i + k] for i in range(n - k + 1)})
    cov = {w: covered(s, w) for w in words}
    full = frozenset(range(n))
    total = 0
    for group in combinations(words, lam):
        if frozenset().union(*(cov[w] for w in group)) != full:
            continue
        if all(frozenset().union(*(cov[w] for w in group if w != x)) != full for x in group):
            total += 1
    return total


if __name__ == "__main__":
    for m in (3, 4, 5):
        s = ("a" * m + "b") * 2 + "a" * m
        n = len(s)
        for k in range(2, n):
            if k * 2 < n:
                print(m, k, count(s, 2, k))
