"""The simplex category and its cyclic extension as executable combinatorics.

A morphism [m] -> [n] of the simplex category is a nondecreasing map of
finite ordinals, stored by its image tuple.  The cyclic extension is
modelled by nondecreasing maps F: Z -> Z satisfying F(i + m + 1) =
F(i) + n + 1, taken modulo adding a multiple of n + 1; every such map
factors uniquely as an ordinary monotone map following a rotation, which
is exactly the normal form computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import NonComposableWord, ObjectMismatch


@dataclass(frozen=True)
class MonotoneMap:
    """A nondecreasing map [source] -> [target], given by its images."""

    source: int
    target: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source + 1:
            raise ValueError("images length must be source+1")
        for a, b in zip(self.images, self.images[1:]):
            if b < a:
                raise ValueError("images must be nondecreasing")
        if self.images and (self.images[0] < 0 or self.images[-1] > self.target):
            raise ValueError("images out of range")

    def __call__(self, i):
        return self.images[i]

    def is_identity(self):
        return self.source == self.target and self.images == tuple(range(self.source + 1))


def identity_map(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def delta(n: int, i: int) -> MonotoneMap:
    """The injection [n-1] -> [n] that misses the value i."""
    if not 0 <= i <= n:
        raise ValueError(f"delta index {i} out of range for [{n}]")
    return MonotoneMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def sigma(n: int, j: int) -> MonotoneMap:
    """The surjection [n+1] -> [n] that merges the values j and j+1."""
    if not 0 <= j <= n:
        raise ValueError(f"sigma index {j} out of range for [{n}]")
    return MonotoneMap(n + 1, n, tuple(v if v <= j else v - 1 for v in range(n + 2)))


def compose_monotone(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """The composite f after g."""
    if g.target != f.source:
        raise ObjectMismatch(f"cannot compose [{g.source}]->[{g.target}] into [{f.source}]->[{f.target}]")
    return MonotoneMap(g.source, f.target, tuple(f.images[v] for v in g.images))


def factorize_epi_mono(f: MonotoneMap):
    """Canonical words for f: (degeneracy word, face word).

    The face word lists the values missed by f in strictly increasing
    order; the degeneracy word lists the positions j with f(j) = f(j+1)
    in strictly decreasing order.  Reassembly applies each word from its
    first element innermost (see word_to_map), and reproduces f.
    """
    missed = [v for v in range(f.target + 1) if v not in set(f.images)]
    merged = [j for j in range(f.source) if f.images[j] == f.images[j + 1]]
    return list(reversed(merged)), missed


def word_to_map(sigma_word, delta_word, source: int, target: int) -> MonotoneMap:
    """Rebuild the morphism from canonical words (first element innermost)."""
    m = identity_map(source)
    for j in sigma_word:
        m = compose_monotone(sigma(m.target - 1, j), m)
    for i in delta_word:
        m = compose_monotone(delta(m.target + 1, i), m)
    if m.source != source or m.target != target:
        raise ObjectMismatch("word does not fit the requested objects")
    return m


def hom_delta(m: int, n: int):
    """All monotone maps [m] -> [n]."""
    return [MonotoneMap(m, n, imgs)
            for imgs in combinations_with_replacement(range(n + 1), m + 1)]


# ---------------------------------------------------------------------------
# the cyclic category
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicMap:
    """A cyclic-category morphism [source] -> [target] as a periodic map.

    ``vals`` holds F(0..source) for a nondecreasing F with
    F(i + source + 1) = F(i) + target + 1, normalized so 0 <= F(0) <= target.
    """

    source: int
    target: int
    vals: tuple

    def __post_init__(self):
        m, n = self.source, self.target
        if len(self.vals) != m + 1:
            raise ValueError("vals length must be source+1")
        for a, b in zip(self.vals, self.vals[1:]):
            if b < a:
                raise ValueError("vals must be nondecreasing")
        if not 0 <= self.vals[0] <= n:
            raise ValueError("vals[0] must lie in 0..target")
        if self.vals[m] > self.vals[0] + n + 1:
            raise ValueError("period violated")

    def value(self, i: int) -> int:
        m = self.source
        q, r = divmod(i, m + 1)
        return self.vals[r] + q * (self.target + 1)


def periodic_from_values(source, target, raw):
    """Normalize raw values of F(0..source) by an (target+1)-shift."""
    shift = (raw[0] // (target + 1)) * (target + 1)
    return PeriodicMap(source, target, tuple(v - shift for v in raw))


def cyclic_from_monotone(f: MonotoneMap) -> PeriodicMap:
    return PeriodicMap(f.source, f.target, f.images)


def tau(n: int) -> PeriodicMap:
    """The cyclic rotation of [n]: F(i) = i - 1."""
    raw = tuple(i - 1 for i in range(n + 1))
    return periodic_from_values(n, n, raw)


def tau_power(n: int, r: int) -> PeriodicMap:
    raw = tuple(i - (r % (n + 1)) for i in range(n + 1))
    return periodic_from_values(n, n, raw)


def compose_cyclic(f: PeriodicMap, g: PeriodicMap) -> PeriodicMap:
    """The composite f after g in the cyclic category."""
    if g.target != f.source:
        raise ObjectMismatch(f"cannot compose [{g.source}]->[{g.target}] into [{f.source}]->[{f.target}]")
    raw = tuple(f.value(g.vals[i]) for i in range(g.source + 1))
    return periodic_from_values(g.source, f.target, raw)


@dataclass(frozen=True)
class CyclicMorphism:
    """Normal form phi . tau^rot with phi a simplex-category morphism."""

    phi: MonotoneMap
    rot: int

    @property
    def source(self):
        return self.phi.source

    @property
    def target(self):
        return self.phi.target


def cyclic_factorize(f: PeriodicMap) -> CyclicMorphism:
    """The unique factorization of f as phi . tau^rot.

    tau^rot has values i - rot, so phi(i) = F(i + rot) - k(n+1) for the k
    that puts phi in standard position; exactly one rot in 0..source makes
    phi land inside [target].
    """
    m, n = f.source, f.target
    hits = []
    for r in range(m + 1):
        raw = [f.value(i + r) for i in range(m + 1)]
        k = raw[0] // (n + 1)
        lo, hi = raw[0] - k * (n + 1), raw[-1] - k * (n + 1)
        if 0 <= lo and hi <= n:
            hits.append((r, tuple(v - k * (n + 1) for v in raw)))
    if len(hits) != 1:
        raise ValueError(f"factorization not unique: {len(hits)} candidates for {f}")
    r, vals = hits[0]
    return CyclicMorphism(MonotoneMap(m, n, vals), r)


def cyclic_to_periodic(c: CyclicMorphism) -> PeriodicMap:
    return compose_cyclic(cyclic_from_monotone(c.phi), tau_power(c.source, c.rot))


def cyclic_normal_form(word) -> CyclicMorphism:
    """Normal form of a composable generator word (leftmost outermost).

    Tokens: ("delta", i, n) for the face [n-1]->[n]; ("sigma", j, n) for
    the degeneracy [n+1]->[n]; ("tau", n) for the rotation of [n].
    """
    if not word:
        raise NonComposableWord("empty word has no object")
    maps = []
    for tok in word:
        kind = tok[0]
        if kind == "delta":
            maps.append(cyclic_from_monotone(delta(tok[2], tok[1])))
        elif kind == "sigma":
            maps.append(cyclic_from_monotone(sigma(tok[2], tok[1])))
        elif kind == "tau":
            maps.append(tau(tok[1]))
        else:
            raise NonComposableWord(f"unknown generator {tok!r}")
    out = maps[-1]
    for f in reversed(maps[:-1]):
        if out.target != f.source:
            raise NonComposableWord(
                f"object mismatch: [{out.target}] feeding a morphism on [{f.source}]")
        out = compose_cyclic(f, out)
    return cyclic_factorize(out)


def hom_delta_c(m: int, n: int):
    """All cyclic-category morphisms [m] -> [n] in normal form."""
    return [CyclicMorphism(phi, r) for phi in hom_delta(m, n) for r in range(m + 1)]
