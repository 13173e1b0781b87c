"""Independent reference computations used to freeze expected values.

Nothing here imports the code under test except plain data types.
"""

from collections import Counter, deque
from fractions import Fraction
from itertools import product


def exact_rank(rows):
    """Rank over Q(i) by Gaussian elimination; entries are ints, Fractions,
    or (re, im) pairs of those."""
    def c(x):
        if isinstance(x, tuple):
            return (Fraction(x[0]), Fraction(x[1]))
        return (Fraction(x), Fraction(0))

    def mul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def inv(a):
        n = a[0] * a[0] + a[1] * a[1]
        return (a[0] / n, -a[1] / n)

    m = [[c(x) for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    cols = len(m[0])
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != (0, 0)), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        iv = inv(m[rank][col])
        m[rank] = [mul(x, iv) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != (0, 0):
                f = m[r][col]
                m[r] = [(x[0] - mul(f, y)[0], x[1] - mul(f, y)[1]) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def bfs_components(nodes, edges):
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, count = set(), 0
    for v in nodes:
        if v in seen:
            continue
        count += 1
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            for w in adj[x] - seen:
                seen.add(w)
                queue.append(w)
    return count


def glued_components_bruteforce(n, m, edges, glued):
    """Components of the glued product computed on raw points: points over a
    glued base point are joined by an explicit edge."""
    nodes = [(i, y) for i in range(1, n + 1) for y in range(1, m + 1)]
    es = [((i, a), (i, b)) for i in range(1, n + 1) for a, b in edges]
    es += [((1, y), (i, y)) for y in glued for i in range(2, n + 1)]
    return bfs_components(nodes, es)


def coassoc_words(n, i, j):
    """Both sides of coassociativity on a(i,j), enumerated literally."""
    lhs = Counter()
    for k in range(1, n + 1):          # Delta(a_ij) = sum_k a_ik (x) a_kj
        for l in range(1, n + 1):      # expand the first leg
            lhs[((i, l), (l, k), (k, j))] += 1
    rhs = Counter()
    for k in range(1, n + 1):
        for l in range(1, n + 1):      # expand the second leg
            rhs[((i, k), (k, l), (l, j))] += 1
    return lhs, rhs


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]
