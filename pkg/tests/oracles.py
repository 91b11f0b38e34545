"""Independent reference implementations used to freeze expected values.

Everything here works with plain sets and literal quantifier loops, no
bitmasks and no shared code with the package, so agreement is a real
cross-check rather than a tautology.
"""

from itertools import chain, combinations, product


def elements(B):
    return list(range(B.size))


def pairs(B):
    return {(x, y) for x in range(B.size) for y in range(B.size) if B.has(x, y)}


def down(B, x):
    return {z for z in range(B.size) if B.has(z, x)}


def up(B, x):
    return {z for z in range(B.size) if B.has(x, z)}


def preceq(B):
    rel = set()
    for x in range(B.size):
        for y in range(B.size):
            if down(B, x) <= down(B, y):
                rel.add((x, y))
    return rel


def le(B, x, y):
    return down(B, x) <= down(B, y)


def meets(B, x, y):
    return any(z != B.zero and B.has(z, x) and B.has(z, y) for z in range(B.size))


def meets_refl(B, x, y):
    return any(z != B.zero and le(B, z, x) and le(B, z, y) for z in range(B.size))


def subsets(pool):
    pool = list(pool)
    return chain.from_iterable(combinations(pool, r) for r in range(len(pool) + 1))


def naive_filters(B):
    """All filters as frozensets, by definition."""
    out = []
    for U in subsets(range(B.size)):
        U = frozenset(U)
        closed = all(x in U for y in U for x in up(B, y))
        directed = all(
            any(z in U and B.has(z, x) and B.has(z, y) for z in range(B.size))
            for x in U
            for y in U
        )
        if closed and directed:
            out.append(U)
    return out


def naive_ultrafilters(B):
    full = frozenset(range(B.size))
    proper = [U for U in naive_filters(B) if U != full and U]
    return [U for U in proper if not any(V > U for V in proper)]


def naive_lower_bounds(B, C):
    return {z for z in range(B.size) if all(le(B, z, c) for c in C)}


def naive_covers(B, C, D):
    lb = naive_lower_bounds(B, C)
    return all(z == B.zero or any(meets_refl(B, z, d) for d in D) for z in lb)


def naive_subset_prec(B, C, D):
    return all(any(B.has(x, y) for y in D) for x in C)


def naive_subset_precsim(B, C, D):
    below = {z for x in C for z in down(B, x)}
    return all(z == B.zero or any(meets(B, z, d) for d in D) for z in below)


def naive_wayb(B, C, D):
    return any(
        naive_subset_precsim(B, C, F) and naive_subset_prec(B, F, D)
        for F in subsets(range(B.size))
    )


def naive_saturate(B, A):
    return {y for y in range(B.size) if naive_wayb(B, {y}, set(A))}


def naive_phi(B, x, y, n):
    """Literal tuple quantification; exponential, for tiny n only."""
    if not B.has(x, y):
        return False
    choice_pairs = [
        (w, v) for w in down(B, y) for v in down(B, w)
    ]
    for tup in product(choice_pairs, repeat=n):
        vs = [v for _, v in tup]
        if not any(
            xp != B.zero
            and B.has(xp, x)
            and all(not meets(B, xp, v) for v in vs)
            for xp in range(B.size)
        ):
            return False
    return True


def naive_theta(B, n):
    for x in range(B.size):
        for y in range(B.size):
            antecedent = any(
                not any(
                    v != B.zero
                    and B.has(v, x)
                    and all(not meets(B, v, w) for w in ws)
                    for v in range(B.size)
                )
                for ws in product(down(B, y), repeat=n)
            )
            if antecedent and not B.has(x, y):
                return False
    return True


def naive_tight_characters(B):
    """One-sets of tight characters by the literal cover-preservation
    definition against the two-element algebra."""
    out = []
    for M in subsets(range(B.size)):
        M = set(M)
        if not M or B.zero in M:
            continue
        ok = True
        for F in subsets(range(B.size)):
            for G in subsets(range(B.size)):
                if not naive_covers(B, set(F), set(G)):
                    continue
                img_has_one = any(f in M for f in G)
                img_has_zero = any(f not in M for f in F)
                # target cover holds iff 1 in the image of G or 0 in the image of F
                if not (img_has_one or img_has_zero):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(M))
    return out


def naive_alexandroff(B, Y):
    """(closure, interior) of Y in the punctured up-closed-sets topology."""
    prime = {x for x in range(B.size) if x != B.zero}
    cl = {z for z in prime if any(le(B, y, z) for y in Y)}
    inte = {z for z in prime if {v for v in prime if le(B, v, z)} <= set(Y)}
    return cl, inte


def naive_regularize(B, Y):
    cl, _ = naive_alexandroff(B, Y)
    _, inte = naive_alexandroff(B, cl)
    return inte
