"""Complement existence for normal subgroups, by generator-lift search.

Given N normal in G, pick a small generating set q_1, ..., q_m of
Q = G/N and enumerate lift tuples (x_1, ..., x_m) with x_i in the fiber
of q_i.  The subgroup generated by a tuple always covers G modulo N, so
it is a complement iff its closure avoids N - {1}.  Completeness: any
complement L meets each fiber in exactly one point, and those points
generate L.

Two sound prunings keep the space small:
  * a lift x_i must satisfy |x_i| = |q_i| (complements project
    isomorphically onto Q);
  * the first lift only needs to range over N-conjugacy orbit
    representatives of its fiber, since conjugating a complement by
    elements of N permutes fibers pointwise.
The reported search space is the size of the space the run logically
covered (the full fiber product); ``examined`` counts tuples actually
touched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .errors import NotNormalError, PreconditionError
from .group import FiniteGroup, close_set, is_normal, is_subgroup
from .perm import Permutation, identity_images, inverse, mult, perm_order
from .structure import quotient


@dataclass(frozen=True)
class Embedding:
    """N <= H <= G with N normal in G: the shape every splitting question takes."""

    G: FiniteGroup
    H: FiniteGroup
    N: FiniteGroup

    def validate(self):
        if not is_subgroup(self.N, self.H) or not is_subgroup(self.H, self.G):
            raise PreconditionError("embedding requires N <= H <= G")
        if not is_normal(self.N, self.G):
            raise PreconditionError("embedding requires N normal in G")
        return self


@dataclass
class ComplementReport:
    exists: bool
    complement: FiniteGroup | None
    search_space: int
    examined: int
    method: str = "lift-search"
    evidence: list = field(default_factory=list)


def small_generating_set(Q: FiniteGroup) -> list[Permutation]:
    """A short generating list for Q, deterministic.

    Starts from the declared generators, drops redundant ones, and when
    more than four remain tries a greedy rebuild from high-order
    elements.
    """
    if Q.order == 1:
        return []
    ident = identity_images(Q.degree)
    gens = []
    for g in Q._raw_gens:
        if g != ident and g not in gens:
            gens.append(g)
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for g in list(gens):
            rest = [x for x in gens if x != g]
            if rest and len(close_set(rest, Q.degree)) == Q.order:
                gens = rest
                changed = True
                break
    if len(gens) > 4:
        rebuilt = _greedy_generators(Q)
        if len(rebuilt) < len(gens):
            gens = rebuilt
    return [Permutation._wrap(g) for g in gens]


def _greedy_generators(Q: FiniteGroup):
    ranked = sorted(Q.element_tuples, key=lambda t: (-perm_order(t), t))
    gens = [ranked[0]]
    current = close_set(gens, Q.degree)
    while len(current) < Q.order:
        best = None
        best_size = len(current)
        tried = 0
        for cand in ranked:
            if cand in current:
                continue
            size = len(close_set(gens + [cand], Q.degree))
            if size > best_size:
                best, best_size = cand, size
                if size == Q.order:
                    break
            tried += 1
            if tried >= 48:
                break
        if best is None:
            best = next(c for c in ranked if c not in current)
        gens.append(best)
        current = close_set(gens, Q.degree)
    return gens


def _orbit_reps(candidates, N: FiniteGroup):
    """Representatives of the N-conjugation orbits on the candidate list."""
    conj = [(g, inverse(g)) for g in N._raw_gens]
    cand_set = set(candidates)
    reps = []
    seen = set()
    for t in sorted(candidates):
        if t in seen:
            continue
        orbit = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for x in frontier:
                for g, ginv in conj:
                    y = mult(mult(g, x), ginv)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        if not orbit <= cand_set:
            # conjugation must preserve the fiber and the order filter
            raise AssertionError("orbit left the candidate fiber")
        seen |= orbit
        reps.append(t)
    return reps


def _search(G, N, *, collect_all=False, orbit_reduce=True):
    """Core lift-tuple search.  Returns (report, all_found)."""
    if not is_normal(N, G):
        raise NotNormalError("complement search requires N normal in G")
    degree = G.degree
    ident = identity_images(degree)
    index = G.order // N.order
    if N.order == 1:
        K = FiniteGroup.from_raw(degree, G._raw_gens, order=G.order)
        report = ComplementReport(True, K, 1, 1)
        return report, [K]
    if index == 1:
        K = FiniteGroup.from_raw(degree, [], elements={ident})
        report = ComplementReport(True, K, 1, 1)
        return report, [K]
    Q, proj = quotient(G, N)
    qgens = small_generating_set(Q)
    m = len(qgens)
    fibers = [proj.fiber(q) for q in qgens]
    full_space = prod(len(f) for f in fibers)
    filtered = []
    for q, fiber in zip(qgens, fibers):
        want = q.order()
        filtered.append([x for x in fiber if perm_order(x) == want])
    forbidden = frozenset(t for t in N.element_tuples if t != ident)
    found = []
    found_keys = set()
    examined = 0

    if any(not f for f in filtered):
        report = ComplementReport(False, None, full_space, 0)
        return report, []

    level_candidates = list(filtered)
    if orbit_reduce and not collect_all:
        level_candidates[0] = _orbit_reps(filtered[0], N)

    first_report = None

    def verify(K_elems, lifts):
        K = FiniteGroup.from_raw(degree, list(lifts), elements=K_elems)
        if K.order != index:
            return None
        if any(t != ident and t in N.element_set for t in K_elems):
            return None
        # K N = G by orders: |K||N| / |K meet N| = |G|
        return K

    def dfs(level, lifts, closed):
        nonlocal examined, first_report
        for x in level_candidates[level]:
            trial = close_set(
                lifts + [x],
                degree,
                seed=closed,
                forbidden=forbidden,
                abort_over=index,
            )
            if level + 1 == m:
                examined += 1
            if trial is None:
                continue
            if level + 1 == m:
                K = verify(trial, lifts + [x])
                if K is None:
                    continue
                if first_report is None:
                    first_report = ComplementReport(
                        True, K, full_space, examined
                    )
                key = K.element_set
                if key not in found_keys:
                    found_keys.add(key)
                    found.append(K)
                if not collect_all:
                    return True
            else:
                if dfs(level + 1, lifts + [x], trial):
                    return True
        return False

    dfs(0, [], {ident})
    if first_report is not None:
        first_report.examined = examined
        return first_report, found
    report = ComplementReport(False, None, full_space, examined)
    return report, []


def find_complement(
    G: FiniteGroup, N: FiniteGroup, *, contained_in_hint: FiniteGroup | None = None
) -> ComplementReport:
    """Decide whether N has a complement in G; sound and complete.

    contained_in_hint: a normal subgroup R known (by the caller's
    theorem) to lie in some conjugate of every complement.  The search
    then runs in G/R over complements of NR/R and verifies each pullback
    directly, so a wrong hint can produce a false negative only if the
    caller's containment premise was itself false; positives are always
    re-verified.  When R meets N, no pullback can avoid N and
    nonexistence follows immediately from the premise.
    """
    if contained_in_hint is None or contained_in_hint.order == 1:
        report, _ = _search(G, N)
        return report
    R = contained_in_hint
    if not is_normal(R, G):
        raise NotNormalError("the containment hint must be normal in G")
    if not is_normal(N, G):
        raise NotNormalError("complement search requires N normal in G")
    Q, proj = quotient(G, R)
    nbar = Q.generated_subgroup([proj(g).images for g in N._raw_gens])
    rep, found = _search(Q, nbar, collect_all=True, orbit_reduce=False)
    meet = R.element_set & N.element_set
    ident = identity_images(G.degree)
    for kbar in found:
        # the full preimage of kbar: kernel generators plus one lift each
        lifts = list(R._raw_gens)
        for q in kbar._raw_gens:
            lifts.append(proj.fiber(q)[0])
        K = G.generated_subgroup(lifts)
        if K.order != kbar.order * R.order:
            continue
        if len(K.element_set & N.element_set) == 1:
            return ComplementReport(
                True, K, rep.search_space, rep.examined,
                method="quotient-reduced lift-search",
            )
    evidence = []
    if len(meet) > 1:
        evidence.append(
            "the hinted subgroup meets N, so no complement can contain it"
        )
    evidence.append(
        f"{len(found)} quotient complement(s), none pulling back clear of N"
    )
    return ComplementReport(
        False, None, rep.search_space, rep.examined,
        method="quotient-reduced lift-search", evidence=evidence,
    )


def find_complement_in(H: FiniteGroup, N: FiniteGroup) -> ComplementReport:
    """Same decision relative to a subgroup H >= N (N must be normal in H)."""
    return find_complement(H, N)


def exhaustive_search(G: FiniteGroup, N: FiniteGroup):
    """Full enumeration: (report, every complement), no orbit shortcuts."""
    report, found = _search(G, N, collect_all=True, orbit_reduce=False)
    return report, sorted(found, key=lambda K: K.element_tuples)


def all_complements(G: FiniteGroup, N: FiniteGroup) -> list[FiniteGroup]:
    """All complements of N in G, from the exhaustive lift enumeration."""
    return exhaustive_search(G, N)[1]


def complements_conjugate(G: FiniteGroup, N: FiniteGroup) -> bool:
    """Whether all complements of N in G form a single conjugacy class."""
    comps = all_complements(G, N)
    if not comps:
        return False
    keys = {K.element_set for K in comps}
    first = comps[0]
    orbit = {first.element_set}
    frontier = [first.element_tuples]
    gens = [(g, inverse(g)) for g in G._raw_gens]
    while frontier:
        nxt = []
        for elems in frontier:
            for g, ginv in gens:
                conj = frozenset(mult(mult(g, t), ginv) for t in elems)
                if conj not in orbit:
                    orbit.add(conj)
                    nxt.append(tuple(sorted(conj)))
        frontier = nxt
    return keys <= orbit
