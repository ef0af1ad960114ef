"""Constructors for the standard families of tree automorphism groups.

All constructors return validated FamilySpec instances.  Spinal-type groups
are built from SpinalData: a finite abelian group B given as a product of
cyclic groups, a root group A inside Sym(d), and an eventually periodic
sequence of (d-1)-tuples of homomorphisms B -> Sym(d).  The letter b at one
level decomposes as (w_1(b), ..., w_{d-1}(b), b-at-next-level) with trivial
root permutation, and rooted letters decompose trivially.
"""

from dataclasses import dataclass, field
from itertools import product

from . import perms
from .family import FamilyError, FamilySpec, GeneratorSpec, LevelSpec, validate


class CatalogError(ValueError):
    """A construction parameter violates a defining condition."""


# -- finite abelian B and homomorphisms into Sym(d) ------------------------

def b_elements(orders):
    return list(product(*(range(n) for n in orders)))


def b_add(x, y, orders):
    return tuple((a + b) % n for a, b, n in zip(x, y, orders))


def b_neg(x, orders):
    return tuple((-a) % n for a, n in zip(x, orders))


def perm_pow(p, k):
    q = perms.identity(len(p))
    for _ in range(k):
        q = perms.compose(q, p)
    return q


def apply_hom(hom, b):
    """hom is a tuple of image permutations of B's standard generators."""
    d = len(hom[0])
    out = perms.identity(d)
    for img, k in zip(hom, b):
        out = perms.compose(out, perm_pow(img, k))
    return out


def hom_kernel(hom, orders):
    d = len(hom[0])
    ident = perms.identity(d)
    return {b for b in b_elements(orders) if apply_hom(hom, b) == ident}


def perm_name(p):
    return "a" + "".join(str(x) for x in p)


def b_name(b):
    return "b" + "".join(str(x) for x in b)


@dataclass
class SpinalData:
    degree: int
    orders: tuple                 # cyclic factors of B
    a_perms: tuple                # generators of the root group at level 0
    omega_pre: tuple              # preperiod of (d-1)-tuples of homomorphisms
    omega_per: tuple              # period of (d-1)-tuples of homomorphisms
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def num_omega_classes(self):
        return len(self.omega_pre) + len(self.omega_per)

    def omega_at(self, k):
        p = len(self.omega_pre)
        if k < p:
            return self.omega_pre[k]
        return self.omega_per[(k - p) % len(self.omega_per)]


def _check_kernel_condition(data):
    p, q = len(data.omega_pre), len(data.omega_per)
    orders = data.orders
    for start in range(p + q):
        classes = set(range(min(start, p), p + q)) | set(range(start, p + q))
        ker = set(b_elements(orders))
        for k in classes:
            for hom in data.omega_at(k):
                ker &= hom_kernel(hom, orders)
        if ker != {(0,) * len(orders)}:
            raise CatalogError(
                f"kernel_condition: homomorphisms from offset {start} onward "
                f"have common kernel of size {len(ker)} > 1")


def kernel_depth(data):
    """Least l with the kernels of the first l+1 homomorphism tuples meeting
    trivially, or None if no such l exists within one preperiod+period."""
    orders = data.orders
    ker = set(b_elements(orders))
    for l in range(data.num_omega_classes):
        for hom in data.omega_at(l):
            ker &= hom_kernel(hom, orders)
        if ker == {(0,) * len(orders)}:
            return l
    return None


def spinal(data):
    """FamilySpec of the spinal group defined by SpinalData.

    The root group at level k >= 1 is generated by the images of the
    homomorphisms one level up, so that every child of a level-(k-1)
    generator is a generator at level k.
    """
    d = data.degree
    orders = data.orders
    _check_kernel_condition(data)

    p, q = len(data.omega_pre), len(data.omega_per)
    nlevels = p + q + 1  # preperiod p+1, then one full period

    ident = perms.identity(d)
    a_sets = []
    for k in range(nlevels):
        if k == 0:
            gens = [tuple(a) for a in data.a_perms]
        else:
            gens = [apply_hom(hom, b)
                    for hom in data.omega_at((k - 1) if k - 1 < p
                                             else p + (k - 1 - p) % q)
                    for b in b_elements(orders)]
        a_sets.append(sorted(perms.closure(gens, d)))

    def oclass(k):
        return k if k < p else p + (k - p) % q

    levels = []
    for k in range(nlevels):
        gens = []
        for a in a_sets[k]:
            if a == ident:
                continue
            gens.append(GeneratorSpec(
                name=perm_name(a), pseudolength=0,
                inverse=perm_name(perms.inverse(a)),
                root=a, children=((),) * d))
        homs = data.omega_at(oclass(k))
        for b in b_elements(orders):
            if b == (0,) * len(orders):
                continue
            ch = []
            for j in range(d - 1):
                img = apply_hom(homs[j], b)
                ch.append(() if img == ident else (perm_name(img),))
            ch.append((b_name(b),))
            gens.append(GeneratorSpec(
                name=b_name(b), pseudolength=1,
                inverse=b_name(b_neg(b, orders)),
                root=ident, children=tuple(ch)))
        levels.append(LevelSpec(tuple(gens)))

    meta = dict(data.meta)
    meta.update({
        "kind": "spinal",
        "orders": orders,
        "kernel_depth": kernel_depth(data),
        "spine_names": [b_name(b) for b in b_elements(orders)
                        if b != (0,) * len(orders)],
    })
    # purely periodic input whose given root group matches the derived one
    # needs no preperiod seam; fewer level classes means smaller tables
    if p == 0 and levels[0] == levels[q]:
        spec = FamilySpec(d, (), tuple(levels[:q]), name=data.name, meta=meta)
    else:
        spec = FamilySpec(d, tuple(levels[:p + 1]), tuple(levels[p + 1:]),
                          name=data.name, meta=meta)
    report = validate(spec)
    if not report.ok:
        bad = report.failures()[0]
        raise CatalogError(f"{bad.check}: {bad.detail or 'check failed'}")
    return spec


# -- named families --------------------------------------------------------

def _cycle(d):
    return tuple((x + 1) % d for x in range(d))


def grigorchuk_p(p, pre, per, name=""):
    """Group over B = (Z/p)^2 defined by an eventually periodic sequence of
    indices in {0..p}: index k < p selects (x,y) -> x+ky, index p selects
    (x,y) -> y as the epimorphism onto the cyclic root group."""
    a = _cycle(p)

    def hom_for(k):
        if not 0 <= k <= p:
            raise CatalogError(f"index {k} out of range 0..{p}")
        if k == p:
            first = perms.identity(p)
            second = a
        else:
            first = a
            second = perm_pow(a, k)
        trivial = (perms.identity(p), perms.identity(p))
        return ((first, second),) + (trivial,) * (p - 2)

    data = SpinalData(p, (p, p), (a,),
                      tuple(hom_for(k) for k in pre),
                      tuple(hom_for(k) for k in per),
                      name=name or f"grigorchuk_p({p},{list(pre)}+{list(per)})")
    return spinal(data)


def first_grigorchuk():
    return grigorchuk_p(2, (), (0, 1, 2), name="first_grigorchuk")


def _matmul(m1, m2, p):
    n = len(m1)
    return tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) % p
                       for j in range(n)) for i in range(n))


def _mat_order(m, p, cap=10000):
    n = len(m)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    acc = m
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = _matmul(acc, m, p)
    raise CatalogError(f"matrix order exceeds cap {cap}")


def sunic(p, m, a_coeffs=(), name=""):
    """Spinal group over B = (Z/p)^m with defining sequence given by the
    row functional (0...0 1) composed with powers of the companion-style
    matrix whose first row is (0...0 -1) and last column (-1, a_1..a_{m-1})."""
    if len(a_coeffs) != max(m - 1, 0):
        raise CatalogError(f"expected {m - 1} coefficients, got {len(a_coeffs)}")
    rho = []
    for i in range(m):
        row = [0] * m
        if i > 0:
            row[i - 1] = 1
        row[m - 1] = (-1) % p if i == 0 else a_coeffs[i - 1] % p
        rho.append(tuple(row))
    rho = tuple(rho)
    order = _mat_order(rho, p)

    a = _cycle(p)
    phi = tuple(tuple(int(j == m - 1) for j in range(m)) for _ in range(1))[0]
    trivial_hom = tuple(perms.identity(p) for _ in range(m))

    homs = []
    mat = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    for _ in range(order):
        row = tuple(sum(phi[k] * mat[k][j] for k in range(m)) % p
                    for j in range(m))
        first = tuple(perm_pow(a, e) for e in row)
        homs.append((first,) + (trivial_hom,) * (p - 2))
        mat = _matmul(mat, rho, p)

    data = SpinalData(p, (p,) * m, (a,), (), tuple(homs),
                      name=name or f"sunic({p},{m},{list(a_coeffs)})")
    return spinal(data)


def ggs(d, epsilon, name=""):
    """GGS group on T_d: constant spinal data with the j-th homomorphism
    sending the generator of B = Z/d to the rooted d-cycle raised to e_j."""
    import math
    epsilon = tuple(e % d for e in epsilon)
    if len(epsilon) != d - 1:
        raise CatalogError(f"expected {d - 1} exponents, got {len(epsilon)}")
    if all(e == 0 for e in epsilon):
        raise CatalogError("gcd_condition: exponent vector is zero")
    if math.gcd(*epsilon, d) != 1:
        raise CatalogError(
            f"gcd_condition: gcd{epsilon + (d,)} = {math.gcd(*epsilon, d)} != 1")
    a = _cycle(d)
    homs = tuple((perm_pow(a, e),) for e in epsilon)
    data = SpinalData(d, (d,), (a,), (), (homs,),
                      name=name or f"ggs({d},{list(epsilon)})")
    return spinal(data)


def fabrykowski_gupta():
    return ggs(3, (1, 0), name="fabrykowski_gupta")


def gupta_sidki():
    return ggs(3, (1, 1), name="gupta_sidki")


def nekrashevych_D(pre, per, name=""):
    """Binary-tree family generated by the rooted swap and two involutions
    beta = (swap, gamma') and gamma = (beta', 1) or (1, beta') per the bit at
    each level of an eventually periodic 0/1 sequence."""
    swap = (1, 0)
    ident = perms.identity(2)
    bits = list(pre) + list(per)
    if any(b not in (0, 1) for b in bits):
        raise CatalogError("bits must be 0 or 1")

    def level_for(bit):
        alpha = GeneratorSpec("alpha", 0, "alpha", swap, ((), ()))
        beta = GeneratorSpec("beta", 1, "beta", ident, (("alpha",), ("gamma",)))
        gch = (("beta",), ()) if bit == 0 else ((), ("beta",))
        gamma = GeneratorSpec("gamma", 1, "gamma", ident, gch)
        return LevelSpec((alpha, beta, gamma))

    spec = FamilySpec(2, tuple(level_for(b) for b in pre),
                      tuple(level_for(b) for b in per),
                      name=name or f"nekrashevych_D({list(pre)}+{list(per)})",
                      meta={"kind": "nekrashevych"})
    report = validate(spec)
    if not report.ok:
        bad = report.failures()[0]
        raise CatalogError(f"{bad.check}: {bad.detail or 'check failed'}")
    return spec


def neumann_pairs():
    """All (a, x) with a an even permutation of 6 points fixing x."""
    out = []
    for a in perms.all_perms(6):
        # parity via cycle structure
        seen = set()
        parity = 0
        for i in range(6):
            if i in seen:
                continue
            j = a[i]
            clen = 1
            seen.add(i)
            while j != i:
                seen.add(j)
                j = a[j]
                clen += 1
            parity += clen - 1
        if parity % 2:
            continue
        for x in range(6):
            if a[x] == x:
                out.append((a, x))
    return out


def neumann6(name="neumann6"):
    """Self-similar group on T_6 generated by b_(a,x) = (1,..,b_(a,x),..,1)a
    over all even a fixing x.  The six pairs with trivial a define the
    identity automorphism and are omitted from the generating set."""
    ident = perms.identity(6)
    gens = []
    for a, x in neumann_pairs():
        if a == ident:
            continue
        nm = f"n{''.join(str(v) for v in a)}_{x}"
        inv = perms.inverse(a)
        ch = tuple((nm,) if y == x else () for y in range(6))
        gens.append(GeneratorSpec(
            name=nm, pseudolength=1,
            inverse=f"n{''.join(str(v) for v in inv)}_{x}",
            root=a, children=ch))
    spec = FamilySpec(6, (), (LevelSpec(tuple(gens)),), name=name,
                      meta={"kind": "neumann"})
    report = validate(spec)
    if not report.ok:
        bad = report.failures()[0]
        raise CatalogError(f"{bad.check}: {bad.detail or 'check failed'}")
    return spec
