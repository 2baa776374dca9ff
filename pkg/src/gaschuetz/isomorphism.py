"""Isomorphism testing by fingerprints plus generator-image backtracking.

Fingerprints (order profile, center, derived series, class structure)
settle most pairs; survivors go through a DFS over generator images,
pruned by word-order signatures and certified by the graph-subgroup
criterion, exactly as in the automorphism search but across two groups.
"""

from __future__ import annotations

from .group import FiniteGroup, reduce_generators
from .perm import identity_images, mult, perm_order
from .structure import (
    center,
    conjugacy_classes,
    derived_series,
    is_abelian,
)


def group_fingerprint(G: FiniteGroup) -> tuple:
    got = G._cache.get("fingerprint")
    if got is not None:
        return got
    orders = sorted(perm_order(t) for t in G.element_tuples)
    classes = conjugacy_classes(G)
    class_stats = sorted((len(c), perm_order(c[0])) for c in classes)
    fp = (
        G.order,
        tuple(orders),
        center(G).order,
        tuple(S.order for S in derived_series(G)),
        tuple(class_stats),
        is_abelian(G),
    )
    G._cache["fingerprint"] = fp
    return fp


def _element_invariants(G: FiniteGroup):
    inv = {}
    for cls in conjugacy_classes(G):
        size = len(cls)
        for t in cls:
            inv[t] = (perm_order(t), size)
    return inv


def _word_sig(a, b):
    ab = mult(a, b)
    return (
        perm_order(ab),
        perm_order(mult(ab, b)),
        perm_order(mult(a, ab)),
        perm_order(mult(ab, mult(ab, b))),
    )


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.order != H.order:
        return False
    if group_fingerprint(G) != group_fingerprint(H):
        return False
    if is_abelian(G):
        # same element-order profile already implies isomorphism
        return True
    n = G.order
    gens = reduce_generators(set(G.element_tuples), G.degree)
    inv_g = _element_invariants(G)
    inv_h = _element_invariants(H)
    candidates = [
        sorted(t for t in H.element_tuples if inv_h[t] == inv_g[g]) for g in gens
    ]
    if any(not c for c in candidates):
        return False
    m = len(gens)
    sigs = [[_word_sig(gens[i], gens[j]) for j in range(m)] for i in range(m)]
    dg, dh = G.degree, H.degree
    g_ident = identity_images(dg)
    h_ident = identity_images(dh)

    def validate(imgs):
        table = {g_ident: h_ident}
        frontier = [(g_ident, h_ident)]
        pairs = list(zip(gens, imgs))
        while frontier:
            new = []
            for x, fx in frontier:
                for g, h in pairs:
                    y = mult(x, g)
                    fy = mult(fx, h)
                    known = table.get(y)
                    if known is None:
                        table[y] = fy
                        new.append((y, fy))
                    elif known != fy:
                        return False
            frontier = new
        return len(table) == n and len(set(table.values())) == n

    def dfs(level, imgs):
        if level == m:
            return validate(imgs)
        for x in candidates[level]:
            ok = True
            for i in range(level):
                if _word_sig(imgs[i], x) != sigs[i][level]:
                    ok = False
                    break
            if ok and dfs(level + 1, imgs + [x]):
                return True
        return False

    return dfs(0, [])
