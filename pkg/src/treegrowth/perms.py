"""Small helpers for permutations of {0..d-1}, stored as image tuples."""

from itertools import permutations


def identity(d):
    return tuple(range(d))


def compose(p, q):
    """(p o q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_perm(p, d):
    return len(p) == d and sorted(p) == list(range(d))


def closure(gens, d, cap=100000):
    """Subgroup of Sym(d) generated by `gens`, as a set of image tuples."""
    seen = {identity(d)}
    frontier = [identity(d)]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise RuntimeError("permutation closure exceeded cap")
        frontier = nxt
    return seen


def orbit(gens, point, d):
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def is_transitive(gens, d):
    return len(orbit([tuple(g) for g in gens], 0, d)) == d


def all_perms(d):
    return [p for p in permutations(range(d))]


def cycle_notation(p):
    """Human-readable cycle string, 1-based, e.g. '(1 2 3)'."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) if out else "()"
