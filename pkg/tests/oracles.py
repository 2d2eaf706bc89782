"""Brute-force reference implementations.

These deliberately share no code with the package: plain set arithmetic and
itertools enumeration, slow but obviously correct at tiny sizes.
"""

from fractions import Fraction
from itertools import combinations, product

import numpy as np
from scipy.optimize import linprog


def tau_brute(n, edges):
    edges = [set(e) for e in edges]
    if not edges:
        return 0
    for size in range(n + 1):
        for s in combinations(range(n), size):
            ss = set(s)
            if all(e & ss for e in edges):
                return size
    raise AssertionError("an edge with no vertices cannot be covered")


def has_cover_brute(edges, k):
    """Some set of at most k vertices meets every edge."""
    edges = [set(e) for e in edges]
    verts = sorted(set().union(*edges)) if edges else []
    for size in range(min(k, len(verts)) + 1):
        for s in combinations(verts, size):
            if all(e & set(s) for e in edges):
                return True
    return not edges


def nu_brute(edges):
    edges = [frozenset(e) for e in edges]
    best = 0
    for size in range(1, len(edges) + 1):
        for fam in combinations(edges, size):
            if sum(len(e) for e in fam) == len(frozenset().union(*fam)):
                best = size
                break
        else:
            break
    return best


def cp_brute(edges, k, ell):
    """Every family of at most k edges has a cover of size at most ell."""
    for size in range(1, min(k, len(edges)) + 1):
        for fam in combinations(edges, size):
            if not has_cover_brute(fam, ell):
                return False
    return True


def first_violating_k(edges, ell):
    for k in range(1, len(edges) + 1):
        if not cp_brute(edges, k, ell):
            return k
    return None


def transversal_brute(parts, edges):
    for choice in product(*parts):
        s = set(choice)
        if all(s & set(e) for e in edges):
            return choice
    return None


def pcp_brute(parts, edges, k):
    for size in range(1, min(k, len(edges)) + 1):
        for fam in combinations(edges, size):
            if transversal_brute(parts, fam) is None:
                return False
    return True


def intersecting_level_brute(edges):
    sets = [set(e) for e in edges]
    level = 0
    for t in range(1, len(sets) + 1):
        if all(set.intersection(*fam) for fam in combinations(sets, t)):
            level = t
        else:
            break
    return level


def common_neighbour_depth_brute(n, edges, self_adjacent):
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    if self_adjacent:
        for v in range(n):
            nbrs[v].add(v)
    depth = 0
    for k in range(1, n + 1):
        ok = all(any(set(s) <= nbrs[w] for w in range(n)) for s in combinations(range(n), k))
        if not ok:
            break
        depth = k
    return depth


def tau_star_linprog(n, edges):
    """Fractional cover number as a float via scipy's HiGHS."""
    if not edges:
        return 0.0
    a = np.zeros((len(edges), n))
    for i, e in enumerate(edges):
        for v in e:
            a[i, v] = 1.0
    res = linprog(np.ones(n), A_ub=-a, b_ub=-np.ones(len(edges)), bounds=[(0, None)] * n, method="highs")
    assert res.status == 0
    return res.fun


def components_brute(n, coloured_edges, colour):
    """Connected components of one colour class by repeated search."""
    adj = {v: set() for v in range(n)}
    for u, v, c in coloured_edges:
        if c == colour:
            adj[u].add(v)
            adj[v].add(u)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def component_cover_brute(n, r, coloured_edges):
    """Fewest monochromatic components whose union is every vertex."""
    comps = {c for colour in range(1, r + 1) for c in components_brute(n, coloured_edges, colour)}
    comps = list(comps)
    everything = set(range(n))
    for size in range(0, len(comps) + 1):
        for fam in combinations(comps, size):
            if set().union(*fam) == everything:
                return size
    raise AssertionError("unreachable")


def alpha_brute(n, pairs):
    adj = {frozenset(p) for p in pairs}
    for size in range(n, 0, -1):
        for s in combinations(range(n), size):
            if not any(frozenset(q) in adj for q in combinations(s, 2)):
                return size
    return 0


def binomial_ratio(a, b):
    return Fraction(a, b)
