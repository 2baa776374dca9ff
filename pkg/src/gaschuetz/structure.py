"""Characteristic subgroups, Sylow theory, quotients, and predicates.

Commutator convention: [x, y] = x y x^-1 y^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from . import config
from .errors import GroupError, NotNormalError, NotPrimeError
from .group import (
    FiniteGroup,
    Homomorphism,
    close_set,
    is_normal,
    normal_closure,
    reduce_generators,
)
from .perm import Permutation, identity_images, inverse, mult, perm_order

# Element-commutator path is used up to this order; beyond it the derived
# subgroup comes from generator commutators' normal closure.
ALL_PAIRS_DERIVED_LIMIT = 4096


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes; every member is checked."""

    primes: frozenset[int]

    def __init__(self, primes):
        ps = frozenset(int(p) for p in primes)
        for p in ps:
            if not is_prime(p):
                raise NotPrimeError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def __contains__(self, p):
        return p in self.primes


def element_order(g) -> int:
    raw = g.images if isinstance(g, Permutation) else tuple(g)
    return perm_order(raw)


def exponent(G: FiniteGroup) -> int:
    return lcm(*(perm_order(t) for t in G.element_tuples))


def center(G: FiniteGroup) -> FiniteGroup:
    got = G._cache.get("center")
    if got is None:
        gens = G._raw_gens
        cen = {
            t for t in G.element_tuples if all(mult(t, g) == mult(g, t) for g in gens)
        }
        got = G.subgroup(cen)
        G._cache["center"] = got
    return got


def _commutator(x, y):
    return mult(mult(x, y), mult(inverse(x), inverse(y)))


def commutator_subgroup(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """[A, B] inside G as the normal closure of generator commutators.

    Correct whenever [A, B] is normal in G (true for A, B normal in G,
    which is how this is used).
    """
    comms = [_commutator(a, b) for a in A._raw_gens for b in B._raw_gens]
    if not comms:
        return FiniteGroup.trivial(G.degree)
    return normal_closure(G, comms)


def derived_subgroup(G: FiniteGroup) -> FiniteGroup:
    """[G, G]; all-pairs commutators when small, else normal closure."""
    got = G._cache.get("derived")
    if got is not None:
        return got
    if G.order <= ALL_PAIRS_DERIVED_LIMIT:
        elems = G.element_tuples
        inv = {t: inverse(t) for t in elems}
        comms = {
            mult(mult(x, y), mult(inv[x], inv[y])) for x in elems for y in elems
        }
        closed = close_set(
            reduce_generators(comms, G.degree), G.degree, cap=config.element_cap()
        )
        out = G.subgroup(closed)
    else:
        out = commutator_subgroup(G, G, G)
    G._cache["derived"] = out
    return out


def derived_series(G: FiniteGroup) -> list[FiniteGroup]:
    """G, G', G'', ... including the first repeated (stable) term."""
    series = [G]
    while True:
        nxt = derived_subgroup(series[-1])
        series.append(nxt)
        if nxt.order == series[-2].order:
            return series


def _p_part(t, p):
    """The p-element power of a raw tuple (identity if order is coprime to p)."""
    o = perm_order(t)
    m = o
    while m % p == 0:
        m //= p
    return (Permutation._wrap(t) ** m).images


def sylow(G: FiniteGroup, p: int) -> FiniteGroup:
    """A Sylow p-subgroup, grown from a p-element through normalizers.

    While P is not yet full, its normalizer contains a p-element outside
    P (standard Sylow theory), and adjoining it keeps a p-group.
    """
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    key = ("sylow", p)
    got = G._cache.get(key)
    if got is not None:
        return got
    n = G.order
    target = 1
    while n % p == 0:
        target *= p
        n //= p
    if target == 1:
        out = FiniteGroup.trivial(G.degree)
        G._cache[key] = out
        return out
    seed = None
    for t in G.element_tuples:
        if perm_order(t) % p == 0:
            seed = _p_part(t, p)
            break
    P = G.generated_subgroup([seed])
    while P.order < target:
        pset = P.element_set
        pgens = P._raw_gens
        found = None
        for t in G.element_tuples:
            tinv = inverse(t)
            if any(mult(mult(t, g), tinv) not in pset for g in pgens):
                continue
            u = _p_part(t, p)
            if u not in pset:
                found = u
                break
        if found is None:
            raise GroupError("sylow growth stalled (internal invariant violated)")
        P = G.generated_subgroup(list(pgens) + [found])
    G._cache[key] = P
    return P


def normalizer(G: FiniteGroup, P: FiniteGroup) -> FiniteGroup:
    pset = P.element_set
    pgens = P._raw_gens
    members = set()
    for t in G.element_tuples:
        tinv = inverse(t)
        if all(mult(mult(t, g), tinv) in pset for g in pgens):
            members.add(t)
    return G.subgroup(members)


def centralizer(G: FiniteGroup, x) -> FiniteGroup:
    raw = x.images if isinstance(x, Permutation) else tuple(x)
    return G.subgroup({t for t in G.element_tuples if mult(t, raw) == mult(raw, t)})


def centralizer_of_subgroup(G: FiniteGroup, A: FiniteGroup) -> FiniteGroup:
    agens = A._raw_gens
    return G.subgroup(
        {t for t in G.element_tuples if all(mult(t, a) == mult(a, t) for a in agens)}
    )


def conjugacy_classes(G: FiniteGroup) -> list[tuple]:
    """Classes as sorted tuples of raw tuples, ordered by minimal member."""
    got = G._cache.get("classes")
    if got is not None:
        return got
    gens = [(g, inverse(g)) for g in G._raw_gens]
    seen = set()
    classes = []
    for t in G.element_tuples:
        if t in seen:
            continue
        orbit = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for x in frontier:
                for g, ginv in gens:
                    y = mult(mult(g, x), ginv)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: c[0])
    G._cache["classes"] = classes
    return classes


def o_p_residual(G: FiniteGroup, p: int) -> FiniteGroup:
    """O^p(G): normal closure of all elements of order coprime to p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    seed = [t for t in G.element_tuples if gcd(perm_order(t), p) == 1]
    return normal_closure(G, seed)


def nilpotent_residual(G: FiniteGroup) -> FiniteGroup:
    """Limit of H <- [G, H] from H = G; G modulo it is nilpotent."""
    H = G
    while True:
        nxt = commutator_subgroup(G, G, H)
        if nxt.order == H.order:
            return H
        H = nxt


def is_solvable(G: FiniteGroup) -> bool:
    """Derived series reaches the trivial group (generator-based steps)."""
    H = G
    while True:
        nxt = commutator_subgroup(G, H, H)
        if nxt.order == 1:
            return True
        if nxt.order == H.order:
            return False
        H = nxt


class QuotientProjection(Homomorphism):
    """Projection G -> G/N backed by the coset partition.

    Image permutations are computed per element on demand, never as a
    full source-to-image table (the image degree is |G : N|, so a full
    table would be quadratic in |G|).
    """

    def __init__(self, source, target, gen_images, *, coset_of, reps, index_of):
        super().__init__(source, target, gen_images, _trusted=True, _map=None)
        self.coset_of = coset_of
        self.coset_representatives = tuple(reps)
        self._index_of = index_of
        self.identity_coset = index_of[coset_of[identity_images(source.degree)]]
        buckets = [[] for _ in reps]
        for x, rep in coset_of.items():
            buckets[index_of[rep]].append(x)
        self._members = [tuple(sorted(b)) for b in buckets]
        self._perm_cache = {}

    def coset_members(self, index) -> tuple:
        return self._members[index]

    def coset_index(self, g) -> int:
        raw = g.images if isinstance(g, Permutation) else tuple(g)
        return self._index_of[self.coset_of[raw]]

    def _image_raw(self, raw):
        got = self._perm_cache.get(raw)
        if got is None:
            if self.target.degree == 1:
                got = identity_images(1)
            else:
                reps = self.coset_representatives
                index_of = self._index_of
                coset_of = self.coset_of
                got = tuple(index_of[coset_of[mult(raw, rep)]] for rep in reps)
            if len(self._perm_cache) < 4096:
                self._perm_cache[raw] = got
        return got

    def __call__(self, g):
        raw = g.images if isinstance(g, Permutation) else tuple(g)
        return Permutation._wrap(self._image_raw(raw))

    def kernel(self) -> FiniteGroup:
        ident_rep = self.coset_of[identity_images(self.source.degree)]
        ker = {x for x, rep in self.coset_of.items() if rep == ident_rep}
        return FiniteGroup.from_raw(
            self.source.degree,
            reduce_generators(ker, self.source.degree),
            elements=ker,
        )

    def fiber(self, q) -> tuple:
        """All preimages of a quotient element."""
        raw = q.images if isinstance(q, Permutation) else tuple(q)
        if self.target.degree == 1:
            return self._members[0]
        return self._members[raw[self.identity_coset]]


def quotient(G: FiniteGroup, N: FiniteGroup):
    """G/N acting on the |G : N| cosets of N, plus the projection.

    Cosets are indexed by their minimal representative in canonical
    order, so the construction is deterministic.  The projection's
    kernel is exactly N.
    """
    if not is_normal(N, G):
        raise NotNormalError("quotient by a non-normal subgroup")
    ngens = N._raw_gens
    elems = G.element_tuples
    coset_of = {}
    reps = []
    for t in elems:
        if t in coset_of:
            continue
        members = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for x in frontier:
                for g in ngens:
                    y = mult(x, g)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        rep = min(members)
        reps.append(rep)
        for x in members:
            coset_of[x] = rep
    reps.sort()
    index_of = {rep: i for i, rep in enumerate(reps)}
    m = len(reps)
    if m == 1:
        Q = FiniteGroup.trivial(1)
        qgen_perms = [Q.identity for _ in G.generators]
    else:
        def action(graw):
            # left translation xN -> (g x)N, matching the group product
            return tuple(index_of[coset_of[mult(graw, rep)]] for rep in reps)

        qgens = [action(g) for g in G._raw_gens]
        Q = FiniteGroup.from_raw(m, qgens, order=m)
        qgen_perms = [Permutation._wrap(g) for g in qgens]
    proj = QuotientProjection(
        G, Q, qgen_perms, coset_of=coset_of, reps=reps, index_of=index_of
    )
    return Q, proj


# -- predicates -----------------------------------------------------------


def is_abelian(G: FiniteGroup) -> bool:
    gens = G._raw_gens
    return all(
        mult(a, b) == mult(b, a) for i, a in enumerate(gens) for b in gens[i + 1:]
    )


def is_nilpotent(G: FiniteGroup) -> bool:
    """Every Sylow subgroup normal."""
    return all(is_normal(sylow(G, p), G) for p in prime_factors(G.order))


def is_metabelian(G: FiniteGroup) -> bool:
    return derived_subgroup(derived_subgroup(G)).is_trivial()


def is_perfect(G: FiniteGroup) -> bool:
    return derived_subgroup(G).order == G.order


def is_pi_group(G: FiniteGroup, pi: PrimeSet) -> bool:
    return all(p in pi for p in prime_factors(G.order))


def all_sylow_abelian(G: FiniteGroup) -> bool:
    return all(is_abelian(sylow(G, p)) for p in prime_factors(G.order))
