"""Independent brute-force oracles the tests check the library against.

Everything here goes through itertools and raw index subsets, deliberately
sharing no code path with the library's pruned searches.
"""
import itertools


def oracle_contains(word, sig):
    """Containment by scanning every index subset."""
    n, s = len(word), len(sig)
    if s > n:
        return False
    for idx in itertools.combinations(range(n), s):
        sub = [word[i] for i in idx]
        ranks = tuple(sorted(sub).index(v) + 1 for v in sub)
        if ranks == sig:
            return True
    return False


def oracle_maj(word):
    return sum(i + 1 for i in range(len(word) - 1) if word[i] > word[i + 1])


def oracle_avoiders(n, patterns):
    """All avoiders of length n, by filtering the full symmetric group."""
    out = []
    for w in itertools.permutations(range(1, n + 1)):
        if not any(oracle_contains(w, p) for p in patterns):
            out.append(w)
    return out


def oracle_rows(patterns, max_n):
    """Counts by (length, major index), rows n = 1..max_n."""
    rows = []
    for n in range(1, max_n + 1):
        row = [0] * (n * (n - 1) // 2 + 1)
        for w in oracle_avoiders(n, patterns):
            row[oracle_maj(w)] += 1
        rows.append(row)
    return rows


def compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in compositions(total - v, parts - 1):
            yield (v,) + rest
