"""Sphere and ball enumeration for the word pseudonorm, plus the finite
counting inequalities tied to growth rates.

Radius-(n+1) elements are found by multiplying radius-n elements by the
unit-length generators and closing under the zero-length generators, so each
element is discovered exactly at its minimal pseudolength.  Tables record a
parent link per element, giving one geodesic word per element.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial

from .engine import Engine


class TableExhausted(LookupError):
    """A length or membership query beyond the enumerated radius."""


@dataclass
class SphereTable:
    cls: int                       # level class index
    spheres: list                  # per-radius lists of interned ids
    lengths: dict                  # id -> pseudolength
    parents: dict                  # id -> (parent id, generator name) or None
    truncated: bool = False

    @property
    def max_radius(self):
        return len(self.spheres) - 1

    def sphere(self, n):
        if n > self.max_radius:
            raise TableExhausted(f"radius {n} > enumerated {self.max_radius}")
        return self.spheres[n]

    def sphere_sizes(self):
        return [len(s) for s in self.spheres]

    def gamma(self, n=None):
        """Cumulative ball sizes; gamma(n) = |Ball(n)|."""
        sizes = self.sphere_sizes()
        out = []
        acc = 0
        for s in sizes:
            acc += s
            out.append(acc)
        return out if n is None else out[n]

    def length(self, g):
        try:
            return self.lengths[g]
        except KeyError:
            raise TableExhausted(
                f"element not within enumerated radius {self.max_radius}")

    def geodesic(self, g):
        """Generator-name word for g from the recorded parent links."""
        word = []
        while g != 0:
            g, name = self.parents[g]
            word.append(name)
        word.reverse()
        return word


class Atlas:
    """Sphere tables for every level class of one family, sharing an Engine."""

    def __init__(self, spec, engine=None):
        self.spec = spec
        self.engine = engine if engine is not None else Engine(spec)
        self.tables = {}

    def table(self, c):
        try:
            return self.tables[c]
        except KeyError:
            raise TableExhausted(f"no table enumerated for level class {c}")

    def table_at_level(self, nu):
        return self.table(self.spec.class_of_level(nu))

    def length(self, c, g):
        return self.table(c).length(g)


def enumerate_spheres(atlas, c, max_radius, max_elements=1_000_000, threads=1):
    """Fill the atlas table for class c up to max_radius.

    Deterministic: expansion follows stored sphere order, generator order of
    the spec, and breadth-first saturation by zero-length generators.
    """
    eng = atlas.engine
    spec = atlas.spec
    level = spec.level(c)
    unit = [g.name for g in level.unit_generators]
    zero = [g.name for g in level.zero_generators]
    unit_ids = [eng.gen_id(c, nm) for nm in unit]
    zero_ids = [eng.gen_id(c, nm) for nm in zero]

    existing = atlas.tables.get(c)
    if existing is not None and existing.max_radius >= max_radius \
            and not existing.truncated:
        return existing

    lengths = {0: 0}
    parents = {0: None}
    ball = {0}
    first = [0]
    # radius-0 sphere: closure under the zero-length generators
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for nm, z in zip(zero, zero_ids):
                w = eng.mul(c, u, z, store=False)
                if w not in ball:
                    ball.add(w)
                    lengths[w] = 0
                    parents[w] = (u, nm)
                    first.append(w)
                    nxt.append(w)
        frontier = nxt
    spheres = [first]
    truncated = False

    def expand(chunk):
        with eng.lock:
            return [(u, nm, eng.mul(c, u, s, store=False))
                    for u in chunk for nm, s in zip(unit, unit_ids)]

    for n in range(1, max_radius + 1):
        prev = spheres[n - 1]
        if threads > 1 and len(prev) > 4 * threads:
            size = (len(prev) + threads - 1) // threads
            chunks = [prev[i:i + size] for i in range(0, len(prev), size)]
            with ThreadPoolExecutor(max_workers=threads) as ex:
                produced = [t for part in ex.map(expand, chunks) for t in part]
        else:
            produced = expand(prev)
        sphere = []
        for u, nm, w in produced:
            if w not in ball:
                ball.add(w)
                lengths[w] = n
                parents[w] = (u, nm)
                sphere.append(w)
        # close the new sphere under the zero-length generators
        frontier = list(sphere)
        while frontier:
            nxt = []
            for u in frontier:
                for nm, z in zip(zero, zero_ids):
                    w = eng.mul(c, u, z, store=False)
                    if w not in ball:
                        ball.add(w)
                        lengths[w] = n
                        parents[w] = (u, nm)
                        sphere.append(w)
                        nxt.append(w)
            frontier = nxt
        spheres.append(sphere)
        if len(ball) > max_elements:
            truncated = True
            break

    table = SphereTable(c, spheres, lengths, parents, truncated)
    atlas.tables[c] = table
    return table


def build_atlas(spec, max_radius, levels=None, max_elements=1_000_000,
                threads=1, engine=None):
    """Enumerate tables for the first `levels` level classes (default all)."""
    atlas = Atlas(spec, engine=engine)
    nclasses = spec.num_classes if levels is None else min(levels, spec.num_classes)
    for c in range(nclasses):
        enumerate_spheres(atlas, c, max_radius, max_elements=max_elements,
                          threads=threads)
    return atlas


@dataclass
class KappaEstimate:
    pointwise: list = field(default_factory=list)   # |Omega(n)|^(1/n)
    ratios: list = field(default_factory=list)      # |Omega(n+1)|/|Omega(n)|


def kappa_estimates(table):
    sizes = table.sphere_sizes()
    pointwise = [None]
    for n in range(1, len(sizes)):
        pointwise.append(sizes[n] ** (1.0 / n) if sizes[n] > 0 else 0.0)
    ratios = []
    for n in range(len(sizes) - 1):
        ratios.append(sizes[n + 1] / sizes[n] if sizes[n] > 0 else float("inf"))
    return KappaEstimate(pointwise, ratios)


def check_submultiplicative(gamma):
    """gamma(n+m) <= gamma(n)*gamma(m) for all n+m within the table."""
    N = len(gamma) - 1
    for n in range(N + 1):
        for m in range(N + 1 - n):
            if gamma[n + m] > gamma[n] * gamma[m]:
                return False
    return True


def convolve(a, b, upto):
    out = [0] * (upto + 1)
    for i, x in enumerate(a[:upto + 1]):
        for j, y in enumerate(b[:upto + 1 - i]):
            out[i + j] += x * y
    return out


def check_wreath_inequality(atlas, c, n):
    """gamma_c(n) <= d! * sum over r_1+..+r_d <= n of prod gamma_{c+1}(r_i).

    The right side counts the ways to pick a root permutation and d sections
    whose lengths sum to at most n; every element of the ball is such a pick.
    """
    spec = atlas.spec
    d = spec.degree
    sc = spec.succ_class(c)
    gam = atlas.table(c).gamma()
    gam_next = atlas.table(sc).gamma()
    if n >= len(gam) or n >= len(gam_next):
        raise TableExhausted(f"need radius {n} at classes {c} and {sc}")
    conv = [1] + [0] * n
    for _ in range(d):
        conv = convolve(conv, gam_next, n)
    rhs = factorial(d) * sum(conv)
    return gam[n] <= rhs
