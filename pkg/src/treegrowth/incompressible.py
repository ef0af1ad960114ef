"""Incompressible elements: the depth-k filtration, its stabilization on
enumerated balls, minimal incompressible factorizations, the level function,
and the ternary geodesic normal-form analysis.

The depth-k set at one level class contains the elements whose section
lengths are additive down to k levels.  The infinite intersection is
approximated from above by the depth-K set; when consecutive depths agree on
every enumerated ball the approximation is exact there, because sections of
ball elements stay inside the next ball.
"""

from dataclasses import dataclass, field


class NotTernarySpinal(ValueError):
    pass


def additive(atlas, c, g):
    """Section pseudolengths sum exactly to the element's pseudolength."""
    sc = atlas.spec.succ_class(c)
    nxt = atlas.table(sc)
    return sum(nxt.length(x) for x in atlas.engine.children(c, g)) \
        == atlas.table(c).length(g)


@dataclass
class IncompressibilityReport:
    K: int
    counts: dict                 # class -> list over k of per-radius counts
    first_fail: dict             # class -> {id: least k with id outside I_k}
    final: dict                  # class -> set of ids still in I_K
    stabilization_depth: int = None   # least k with I_k = I_{k+1} on all balls

    @property
    def exact(self):
        """True when the depth-K sets equal the incompressible sets on the
        enumerated balls."""
        return self.stabilization_depth is not None

    def in_Ik(self, c, g, k):
        if k > self.K and not self.exact:
            raise ValueError(f"membership only known up to depth {self.K}")
        ff = self.first_fail[c].get(g)
        return ff is None or ff > k


def approximate_I_infty(atlas, K, classes=None):
    """Layered computation of the filtration over all enumerated tables."""
    spec = atlas.spec
    if classes is None:
        classes = [c for c in spec.classes() if c in atlas.tables]
    for c in classes:
        if spec.succ_class(c) not in classes:
            raise ValueError(
                f"class {spec.succ_class(c)} needed for sections of class {c}")
    eng = atlas.engine

    counts = {}
    first_fail = {c: {} for c in classes}
    cur = {}
    for c in classes:
        table = atlas.table(c)
        sets = set()
        for n, sphere in enumerate(table.spheres):
            for g in sphere:
                if additive(atlas, c, g):
                    sets.add(g)
                else:
                    first_fail[c][g] = 1
        cur[c] = sets
        counts[c] = [table.sphere_sizes(), _radial_counts(table, sets)]

    stab = None
    for k in range(2, K + 1):
        nxt = {}
        changed = False
        for c in classes:
            sc = spec.succ_class(c)
            keep = set()
            for g in cur[c]:
                if all(x in cur[sc] for x in eng.children(c, g)):
                    keep.add(g)
                else:
                    first_fail[c][g] = k
            if len(keep) != len(cur[c]):
                changed = True
            nxt[c] = keep
        for c in classes:
            counts[c].append(_radial_counts(atlas.table(c), nxt[c]))
        cur = nxt
        if not changed:
            stab = k - 1
            for c in classes:
                counts[c].extend([counts[c][-1]] * (K - k))
            break
    return IncompressibilityReport(K, counts, first_fail, cur, stab)


def _radial_counts(table, ids):
    out = [0] * (table.max_radius + 1)
    for g in ids:
        out[table.length(g)] += 1
    return out


def membership_Ik(atlas, report, c, g, k):
    return report.in_Ik(c, g, k)


@dataclass
class LevelFunctionResult:
    value: int
    radius: int                  # ball radius actually inspected
    exact: bool                  # filtration stabilized, so value is exact
    lower_bound_only: bool       # requested radius exceeded the tables
    empty_family: bool = False   # no compressible element in the ball

    def __int__(self):
        return self.value


def level_function(atlas, report, c, r):
    """Deepest level needed before every compressible element of the radius-r
    ball shows a section-length drop.

    When no compressible element exists in the ball, the value is 1 by
    convention and flagged.  When r exceeds the enumerated radius, the value
    computed on the available ball is a lower bound for the true one; any
    check monotone in the level stays conclusive with it.
    """
    table = atlas.table(c)
    r_eff = min(int(r), table.max_radius)
    fails = [k for g, k in report.first_fail[c].items()
             if table.length(g) <= r_eff]
    if not fails:
        return LevelFunctionResult(1, r_eff, report.exact,
                                   r_eff < int(r), empty_family=True)
    return LevelFunctionResult(max(fails), r_eff, report.exact,
                               r_eff < int(r))


def incompressible_by_length(atlas, report, c, max_len):
    """Nonidentity depth-K elements grouped by pseudolength."""
    table = atlas.table(c)
    out = [[] for _ in range(max_len + 1)]
    for g in report.final[c]:
        if g == 0:
            continue
        n = table.length(g)
        if n <= max_len:
            out[n].append(g)
    for bucket in out:
        bucket.sort()
    return out


def factorization_dp(atlas, report, c, max_n):
    """Minimal counts N(g) of additive factorizations into depth-K elements,
    with one backpointer per element, for the whole radius-max_n ball.

    Layered BFS: the j-th layer holds the elements of minimal count j; every
    additive factorization has additive prefixes, so extending shorter
    factorizations by single factors reaches each element at its true count.
    """
    eng = atlas.engine
    table = atlas.table(c)
    by_len = incompressible_by_length(atlas, report, c, max_n)
    N = {0: 0}
    back = {0: None}
    frontier = [0]
    j = 0
    while frontier:
        j += 1
        nxt = []
        for p in frontier:
            lp = table.length(p)
            for lh in range(0, max_n - lp + 1):
                for h in by_len[lh]:
                    q = eng.mul(c, p, h, store=False)
                    if q in N:
                        continue
                    lq = table.lengths.get(q)
                    if lq is not None and lq == lp + lh:
                        N[q] = j
                        back[q] = (p, h)
                        nxt.append(q)
        frontier = nxt
    return N, back


def factors_of(back, g):
    out = []
    while g != 0:
        g, h = back[g]
        out.append(h)
    out.reverse()
    return out


# -- ternary spinal geodesic data ------------------------------------------

@dataclass
class TernaryGeodesicData:
    beta: list                   # spine letter names, in word order
    c: list                      # conjugation exponents mod 3
    s: int                       # trailing rooted exponent mod 3
    derivative: list             # successive differences of c, mod 3
    m_c: int = None              # switch position when the two-run law holds

    @property
    def two_run(self):
        """No zero differences and never a 1 followed by a 2."""
        dv = self.derivative
        if any(x == 0 for x in dv):
            return False
        return all(not (dv[i] == 1 and dv[i + 1] == 2)
                   for i in range(len(dv) - 1))


def _rooted_exponent(spec, c, name):
    g = spec.level(c).gen(name)
    cyc = tuple((x + 1) % spec.degree for x in range(spec.degree))
    p, e = cyc, 1
    while e < spec.degree:
        if g.root == p:
            return e
        p = tuple(cyc[x] for x in p)
        e += 1
    raise NotTernarySpinal(f"root of {name} is not a power of the full cycle")


def extract_ternary_data(spec, table, spec_cls, g):
    """Parse the stored geodesic of g into conjugate normal form.

    The word a^{k_0} b_1 a^{k_1} ... b_m a^{k_m} is rewritten (with the
    convention x^y = y x y^{-1}) as b_1^{a^{c_1}} ... b_m^{a^{c_m}} a^s where
    c_j is the prefix sum of rooted exponents and s the total sum, mod 3.
    """
    if spec.degree != 3 or spec.meta.get("kind") != "spinal":
        raise NotTernarySpinal(f"{spec.name or 'family'} is not ternary spinal")
    level = spec.level(spec_cls)
    beta, cs = [], []
    t = 0
    for name in table.geodesic(g):
        gen = level.gen(name)
        if gen.pseudolength == 0:
            t = (t + _rooted_exponent(spec, spec_cls, name)) % 3
        else:
            beta.append(name)
            cs.append(t)
    dv = [(cs[i + 1] - cs[i]) % 3 for i in range(len(cs) - 1)]
    data = TernaryGeodesicData(beta, cs, t, dv)
    if data.two_run:
        ones = [i for i, x in enumerate(dv) if x == 1]
        # positions are 1-based; all-2 runs put the switch past the end
        data.m_c = ones[0] + 1 if ones else len(dv) + 1
    return data


# -- polynomial bound on incompressible counts -----------------------------

@dataclass
class BoundCheck:
    l: int
    constant: int
    exponent: int
    rows: list = field(default_factory=list)  # (n, count, bound)

    @property
    def ok(self):
        return all(count <= bound for _, count, bound in self.rows)


def ternary_bound_params(spec):
    """Constant and exponent of the polynomial bound, from the least l with
    trivial joint kernel and the order of the defining group B."""
    if spec.degree != 3 or spec.meta.get("kind") != "spinal":
        raise NotTernarySpinal(f"{spec.name or 'family'} is not ternary spinal")
    l = spec.meta.get("kernel_depth")
    if l is None:
        raise NotTernarySpinal("no finite joint-kernel depth")
    sizeB = 1
    for n in spec.meta["orders"]:
        sizeB *= n
    constant = 3 ** (3 ** (l + 2) - 1) * (sizeB - 1) ** ((3 ** (l + 1) - 1) // 2)
    exponent = (3 ** (l + 2) - 1) // 2
    return l, constant, exponent


def check_polynomial_bound(spec, report, c, counts_override=None):
    l, constant, exponent = ternary_bound_params(spec)
    counts = counts_override if counts_override is not None \
        else report.counts[c][report.K]
    rows = [(n, counts[n], constant * n ** exponent)
            for n in range(1, len(counts))]
    return BoundCheck(l, constant, exponent, rows)
