"""Independent truncated-action oracle.

Elements are represented by their action on the depth-D truncated tree,
stored as interned truncated portraits: (root permutation, child portrait
ids).  Products are computed by the textbook recursion on truncated
portraits.  Nothing here touches the package's arithmetic engine; word
enumeration is naive breadth-first search with dedup by truncated action.
"""


class TruncatedAction:
    """Interned depth-D truncated portraits over one family spec."""

    LEAF = 0   # the unique depth-0 portrait

    def __init__(self, spec, depth):
        self.spec = spec
        self.depth = depth
        self.nodes = [None]                   # id -> (root, children ids)
        self.intern = {}
        self.mul_memo = {}
        self.gen_memo = {}

    def _intern_node(self, root, children):
        key = (root, children)
        got = self.intern.get(key)
        if got is None:
            got = len(self.nodes)
            self.nodes.append(key)
            self.intern[key] = got
        return got

    def identity(self, t=None):
        if t is None:
            t = self.depth
        if t == 0:
            return self.LEAF
        ident = tuple(range(self.spec.degree))
        return self._intern_node(ident, (self.identity(t - 1),) * self.spec.degree)

    def gen(self, c, name, t=None):
        if t is None:
            t = self.depth
        if t == 0:
            return self.LEAF
        key = (c, name, t)
        got = self.gen_memo.get(key)
        if got is not None:
            return got
        g = self.spec.level(c).gen(name)
        sc = self.spec.succ_class(c)
        children = tuple(self.word(sc, g.children[x], t - 1)
                         for x in range(self.spec.degree))
        got = self._intern_node(g.root, children)
        self.gen_memo[key] = got
        return got

    def mul(self, p, q):
        """Product of two same-depth portraits: (gh)(x) = g(h(x))."""
        if p == self.LEAF:
            return self.LEAF                    # same depth forces q == LEAF
        key = (p, q)
        got = self.mul_memo.get(key)
        if got is not None:
            return got
        root_p, ch_p = self.nodes[p]
        root_q, ch_q = self.nodes[q]
        root = tuple(root_p[root_q[x]] for x in range(len(root_p)))
        children = tuple(self.mul(ch_p[root_q[x]], ch_q[x])
                         for x in range(len(root_p)))
        got = self._intern_node(root, children)
        self.mul_memo[key] = got
        return got

    def word(self, c, names, t=None):
        if t is None:
            t = self.depth
        acc = self.identity(t)
        for name in names:
            acc = self.mul(acc, self.gen(c, name, t))
        return acc


def oracle_spheres(spec, depth, max_radius, cls=0):
    """Sphere sizes of the word pseudonorm, with elements identified by their
    action on the depth-`depth` tree.  Mirrors the pseudonorm convention:
    radius n+1 elements are products of radius-n elements with unit-length
    generators, and every sphere is closed under the zero-length generators.
    """
    ta = TruncatedAction(spec, depth)
    level = spec.level(cls)
    zero = [ta.gen(cls, g.name) for g in level.zero_generators]
    unit = [ta.gen(cls, g.name) for g in level.unit_generators]

    ball = {ta.identity()}
    sphere = [ta.identity()]
    # saturate under zero-length generators
    frontier = list(sphere)
    while frontier:
        nxt = []
        for u in frontier:
            for z in zero:
                w = ta.mul(u, z)
                if w not in ball:
                    ball.add(w)
                    sphere.append(w)
                    nxt.append(w)
        frontier = nxt
    sizes = [len(sphere)]

    for _ in range(max_radius):
        prev = sphere
        sphere = []
        for u in prev:
            for s in unit:
                w = ta.mul(u, s)
                if w not in ball:
                    ball.add(w)
                    sphere.append(w)
        frontier = list(sphere)
        while frontier:
            nxt = []
            for u in frontier:
                for z in zero:
                    w = ta.mul(u, z)
                    if w not in ball:
                        ball.add(w)
                        sphere.append(w)
                        nxt.append(w)
            frontier = nxt
        sizes.append(len(sphere))
    return sizes
