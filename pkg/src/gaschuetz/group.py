"""Finite permutation groups: closure, membership, normality.

A ``FiniteGroup`` is a generator set together with a lazily computed,
canonically sorted element set.  Values are immutable once built; the
element cache is populated at most once (idempotent, so concurrent
readers at worst duplicate work).  Groups beyond the configured element
cap are refused with :class:`SizeLimitError` rather than enumerated.
"""

from __future__ import annotations

from . import config
from .errors import DegreeMismatchError, GroupError, SizeLimitError
from .perm import Permutation, identity_images, inverse, mult, perm_order


def close_set(gens, degree, *, seed=None, cap=None, forbidden=None, abort_over=None):
    """Breadth-first closure of raw image tuples under right multiplication.

    seed: optional starting element set (already closed under the group
        operation among themselves, e.g. an existing subgroup).
    cap: hard limit; exceeding it raises SizeLimitError.
    abort_over: soft limit; exceeding it returns None (search pruning).
    forbidden: set of raw tuples; touching one returns None immediately
        (the identity is never treated as forbidden).

    Returns the closed set of raw tuples, or None if aborted.
    """
    ident = identity_images(degree)
    gens = [g for g in gens if g != ident]
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatchError("generator degree mismatch")
    if seed is None:
        elements = {ident}
        frontier = []
        for g in gens:
            if g not in elements:
                elements.add(g)
                frontier.append(g)
    else:
        elements = set(seed)
        elements.add(ident)
        frontier = list(elements)
        for g in gens:
            if g not in elements:
                elements.add(g)
                frontier.append(g)
    if forbidden is not None:
        for x in elements:
            if x != ident and x in forbidden:
                return None
    if cap is not None and len(elements) > cap:
        raise SizeLimitError(
            f"group exceeds element cap {cap}", required_order=len(elements)
        )
    if abort_over is not None and len(elements) > abort_over:
        return None
    while frontier:
        new_frontier = []
        for x in frontier:
            for g in gens:
                y = mult(x, g)
                if y in elements:
                    continue
                if forbidden is not None and y in forbidden:
                    return None
                elements.add(y)
                new_frontier.append(y)
                if cap is not None and len(elements) > cap:
                    raise SizeLimitError(
                        f"group exceeds element cap {cap}",
                        required_order=len(elements),
                    )
                if abort_over is not None and len(elements) > abort_over:
                    return None
        frontier = new_frontier
    return elements


class FiniteGroup:
    """A finite permutation group of fixed degree.

    ``elements`` enumerates the whole group in canonical (lexicographic)
    order; ``order`` may be known ahead of enumeration (quotients set it
    from coset counts) and is cross-checked if enumeration happens later.
    """

    def __init__(self, degree, generators, *, _elements=None, _order=None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != self.degree:
                raise DegreeMismatchError("generator degree mismatch")
            gens.append(g)
        self.generators = tuple(gens)
        self._raw_gens = tuple(g.images for g in gens)
        self._element_tuples = None
        self._element_set = None
        self._order = _order
        self._cache = {}
        if _elements is not None:
            self._install_elements(_elements)

    def _install_elements(self, elements):
        tup = tuple(sorted(elements))
        if self._order is not None and len(tup) != self._order:
            raise GroupError(
                f"declared order {self._order} != enumerated order {len(tup)}"
            )
        # idempotent; the guard attribute is assigned last so concurrent
        # readers either recompute or see a fully populated cache
        self._element_set = frozenset(tup)
        self._order = len(tup)
        self._element_tuples = tup

    @classmethod
    def trivial(cls, degree) -> "FiniteGroup":
        return cls(degree, [], _elements=[identity_images(degree)])

    @classmethod
    def from_raw(cls, degree, raw_gens, *, elements=None, order=None) -> "FiniteGroup":
        return cls(
            degree,
            [Permutation._wrap(g) for g in raw_gens],
            _elements=elements,
            _order=order,
        )

    # -- enumeration ------------------------------------------------------

    def _enumerate(self):
        if self._element_tuples is None:
            elems = close_set(self._raw_gens, self.degree, cap=config.element_cap())
            self._install_elements(elems)

    @property
    def order(self) -> int:
        if self._order is None:
            self._enumerate()
        return self._order

    @property
    def element_tuples(self):
        self._enumerate()
        return self._element_tuples

    @property
    def element_set(self):
        self._enumerate()
        return self._element_set

    @property
    def elements(self):
        got = self._cache.get("elements")
        if got is None:
            got = tuple(Permutation._wrap(t) for t in self.element_tuples)
            self._cache["elements"] = got
        return got

    def key(self):
        """Canonical identity of the subgroup: its frozen element set."""
        return self.element_set

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, g):
        raw = g.images if isinstance(g, Permutation) else tuple(g)
        return raw in self.element_set

    def __len__(self):
        return self.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self):
        size = self._order if self._order is not None else "?"
        return f"FiniteGroup(degree={self.degree}, order={size}, gens={len(self.generators)})"

    # -- derived values ---------------------------------------------------

    def subgroup(self, elements) -> "FiniteGroup":
        """Wrap a known-closed element collection as a subgroup of self."""
        elems = set()
        for e in elements:
            elems.add(e.images if isinstance(e, Permutation) else tuple(e))
        elems.add(identity_images(self.degree))
        gens = reduce_generators(elems, self.degree)
        return FiniteGroup.from_raw(self.degree, gens, elements=elems)

    def generated_subgroup(self, gens) -> "FiniteGroup":
        raw = [g.images if isinstance(g, Permutation) else tuple(g) for g in gens]
        elems = close_set(raw, self.degree, cap=config.element_cap())
        return FiniteGroup.from_raw(self.degree, raw, elements=elems)

    def conjugate_subgroup(self, sub: "FiniteGroup", g) -> "FiniteGroup":
        graw = g.images if isinstance(g, Permutation) else tuple(g)
        ginv = inverse(graw)
        elems = {mult(mult(graw, x), ginv) for x in sub.element_tuples}
        return self.subgroup(elems)


def reduce_generators(elements, degree, *, limit=None):
    """Pick a small generating set for a known element set, greedily.

    Scans elements by decreasing order (ties broken canonically) and adds
    one whenever it enlarges the generated subgroup.  Deterministic.
    """
    ident = identity_images(degree)
    if len(elements) == 1:
        return []
    ranked = sorted(elements, key=lambda t: (-perm_order(t), t))
    gens = []
    current = {ident}
    for cand in ranked:
        if cand in current:
            continue
        gens.append(cand)
        current = close_set(gens, degree)
        if len(current) == len(elements):
            break
        if limit is not None and len(gens) >= limit:
            break
    # Drop any generator made redundant by later picks.
    kept = list(gens)
    for g in list(kept):
        if len(kept) == 1:
            break
        trial = [x for x in kept if x != g]
        if len(close_set(trial, degree)) == len(elements):
            kept = trial
    return kept


def membership(g, G: FiniteGroup) -> bool:
    """Element-set lookup; degrees must agree."""
    raw = g.images if isinstance(g, Permutation) else tuple(g)
    if len(raw) != G.degree:
        raise DegreeMismatchError("membership across different degrees")
    return raw in G.element_set


def is_subgroup(A: FiniteGroup, G: FiniteGroup) -> bool:
    if A.degree != G.degree:
        raise DegreeMismatchError("subgroup test across different degrees")
    if G._order is not None and A._order is not None and A._order > G._order:
        return False
    return A.element_set <= G.element_set


def is_normal(N: FiniteGroup, G: FiniteGroup) -> bool:
    """Closure of N under conjugation by the generators of G.

    Only N is enumerated; G may stay lazy.
    """
    if N.degree != G.degree:
        raise DegreeMismatchError("normality test across different degrees")
    nset = N.element_set
    for g in G._raw_gens:
        ginv = inverse(g)
        for n in N._raw_gens:
            if mult(mult(g, n), ginv) not in nset:
                return False
    return True


def intersection(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    if A.degree != B.degree:
        raise DegreeMismatchError("intersection across different degrees")
    small, big = (A, B) if A.order <= B.order else (B, A)
    common = {t for t in small.element_tuples if t in big.element_set}
    return FiniteGroup.from_raw(
        A.degree, reduce_generators(common, A.degree), elements=common
    )


def normal_closure(G: FiniteGroup, seed) -> FiniteGroup:
    """Smallest normal subgroup of G containing the seed elements."""
    raw = [s.images if isinstance(s, Permutation) else tuple(s) for s in seed]
    gen_invs = [(g, inverse(g)) for g in G._raw_gens]
    current = close_set(raw, G.degree, cap=config.element_cap())
    while True:
        new = []
        cgens = reduce_generators(current, G.degree)
        for g, ginv in gen_invs:
            for n in cgens:
                c = mult(mult(g, n), ginv)
                if c not in current:
                    new.append(c)
        if not new:
            break
        current = close_set(
            cgens + new, G.degree, seed=current, cap=config.element_cap()
        )
    return FiniteGroup.from_raw(
        G.degree, reduce_generators(current, G.degree), elements=current
    )


class Homomorphism:
    """A map between groups, given by images of the source generators.

    Consistency is certified at construction: the subgroup of
    source x target generated by the paired generators must have exactly
    |source| elements, which holds iff the assignment extends to a
    homomorphism (the pair subgroup is then its graph).  Trusted internal
    builders (quotient projections) may skip the certificate.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, generator_images,
                 *, _trusted=False, _map=None):
        if len(generator_images) != len(source.generators):
            raise GroupError("one image required per source generator")
        imgs = []
        for h in generator_images:
            if not isinstance(h, Permutation):
                h = Permutation(h)
            if h.degree != target.degree:
                raise DegreeMismatchError("image degree mismatch")
            imgs.append(h)
        self.source = source
        self.target = target
        self.generator_images = tuple(imgs)
        self._map = dict(_map) if _map is not None else None
        if not _trusted:
            self._verify()

    def _verify(self):
        d1, d2 = self.source.degree, self.target.degree
        pair_gens = []
        for g, h in zip(self.source._raw_gens, (p.images for p in self.generator_images)):
            pair_gens.append(g + tuple(x + d1 for x in h))
        n = self.source.order
        pairs = close_set(pair_gens, d1 + d2, abort_over=n)
        if pairs is None or len(pairs) != n:
            raise GroupError("generator images do not extend to a homomorphism")

    def _build_map(self):
        if self._map is not None:
            return self._map
        d = self.source.degree
        ident = identity_images(d)
        tident = identity_images(self.target.degree)
        table = {ident: tident}
        frontier = [(ident, tident)]
        gens = list(zip(self.source._raw_gens, (p.images for p in self.generator_images)))
        while frontier:
            nxt = []
            for x, fx in frontier:
                for g, fg in gens:
                    y = mult(x, g)
                    if y not in table:
                        fy = mult(fx, fg)
                        table[y] = fy
                        nxt.append((y, fy))
            frontier = nxt
        if len(table) != self.source.order:
            raise GroupError("map table incomplete: generators do not generate source")
        self._map = table
        return table

    def __call__(self, g):
        raw = g.images if isinstance(g, Permutation) else tuple(g)
        out = self._build_map()[raw]
        return Permutation._wrap(out)

    def image(self) -> FiniteGroup:
        return FiniteGroup(
            self.target.degree, self.generator_images or [self.target.identity]
        )

    def kernel(self) -> FiniteGroup:
        table = self._build_map()
        tident = identity_images(self.target.degree)
        ker = {x for x, fx in table.items() if fx == tident}
        return FiniteGroup.from_raw(
            self.source.degree,
            reduce_generators(ker, self.source.degree),
            elements=ker,
        )

    def is_injective(self) -> bool:
        return self.kernel().order == 1
