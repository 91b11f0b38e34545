"""Structure generators, exhaustive enumeration, and counterexample search.

Generators are deterministic: the same name/size or seed always produces
the same structure, and enumeration streams are reproducible.  Labeled
enumeration is used throughout; witnesses stay readable and isomorphism
reduction would buy little at these sizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .core import P0Set, bits, full_mask, p0set
from .errors import CapExceeded, UnknownFamily, UnknownSuite

RANDOM_CAP = 12
ENUM_CAP = 5
ENUM_REFLEXIVE_CAP = 6


# ---------------------------------------------------------------------------
# named families


def make_family(name: str, n: int) -> P0Set:
    """Deterministic named structures.

    chain(n): zero under a reflexive chain of n elements.
    powerset(n): all subsets of an n-set ordered by inclusion.
    diamond(n): zero, n incomparable middle elements, and a top.
    antichain(n): zero under n pairwise incomparable reflexive atoms.
    interpolation_witness: the five-element structure whose top pair
    separates the first two type levels (n is ignored).
    """
    if name == "chain":
        if n < 0:
            raise UnknownFamily("chain needs n >= 0")
        size = n + 1
        return p0set(
            size,
            0,
            [(i, j) for i in range(size) for j in range(i, size)],
            names=["0"] + [f"c{i}" for i in range(1, size)],
        )
    if name == "powerset":
        if not 0 <= n <= 6:
            raise UnknownFamily("powerset needs 0 <= n <= 6")
        size = 1 << n
        return p0set(
            size,
            0,
            [(a, b) for a in range(size) for b in range(size) if a & b == a],
            names=["{" + ",".join(str(i + 1) for i in bits(a)) + "}" for a in range(size)],
        )
    if name == "diamond":
        if n < 1:
            raise UnknownFamily("diamond needs n >= 1")
        size = n + 2
        top = size - 1
        pairs = (
            [(0, j) for j in range(size)]
            + [(i, i) for i in range(size)]
            + [(i, top) for i in range(1, size)]
        )
        return p0set(size, 0, pairs, names=["0"] + [f"m{i}" for i in range(1, top)] + ["1"])
    if name == "antichain":
        if n < 0:
            raise UnknownFamily("antichain needs n >= 0")
        size = n + 1
        pairs = [(0, j) for j in range(size)] + [(i, i) for i in range(1, size)]
        return p0set(size, 0, pairs, names=["0"] + [f"a{i}" for i in range(1, size)])
    if name == "interpolation_witness":
        pairs = [(0, i) for i in range(5)] + [
            (1, 1),
            (2, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (1, 4),
            (2, 4),
        ]
        return p0set(5, 0, pairs, names=["0", "p", "q", "x", "y"])
    raise UnknownFamily(f"unknown family {name!r}")


FAMILY_NAMES = ("chain", "powerset", "diamond", "antichain", "interpolation_witness")


# ---------------------------------------------------------------------------
# random structures


def random_p0set(n: int, seed: int, reflexive: bool = False, density: float = 0.3) -> P0Set:
    """Seed-deterministic random structure of size n.

    Non-reflexive mode samples ordered pairs with the given pre-closure
    probability, adds the minimum pairs, and closes transitively (closing
    after adding the minimum keeps validity unconditional).  Reflexive
    mode builds a random partial order with bottom from a sampled strict
    order on the nonzero elements.
    """
    if not 1 <= n <= RANDOM_CAP:
        raise CapExceeded(f"random structures capped at carrier {RANDOM_CAP}")
    rng = random.Random((seed, n, reflexive, round(density, 9)).__repr__())
    rows = [0] * n
    if reflexive:
        order = list(range(1, n))
        rng.shuffle(order)
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                if rng.random() < density:
                    rows[order[i]] |= 1 << order[j]
        for x in range(n):
            rows[x] |= 1 << x
    else:
        for x in range(n):
            for y in range(n):
                if rng.random() < density:
                    rows[x] |= 1 << y
    rows[0] = full_mask(n)
    # transitive closure
    changed = True
    while changed:
        changed = False
        for x in range(n):
            acc = rows[x]
            for y in bits(rows[x]):
                acc |= rows[y]
            if acc != rows[x]:
                rows[x] = acc
                changed = True
    return p0set(n, 0, [(x, y) for x in range(n) for y in bits(rows[x])])


# ---------------------------------------------------------------------------
# exhaustive enumeration


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, reflexive_only: bool) -> tuple[P0Set, ...]:
    return tuple(_enumerate(n, reflexive_only))


def enumerate_structures(n: int, reflexive_only: bool = False):
    """All structures on n labeled elements with zero = 0, as a list.

    reflexive_only restricts to partial orders (reflexive and
    antisymmetric); the general mode yields every transitive relation
    with the minimum row.  Counts for small n are cross-checked against a
    naive filter in the test suite.
    """
    cap = ENUM_REFLEXIVE_CAP if reflexive_only else ENUM_CAP
    if not 1 <= n <= cap:
        raise CapExceeded(f"enumeration capped at carrier {cap}")
    return list(_enumerate_cached(n, reflexive_only))


def _enumerate(n: int, reflexive_only: bool):
    fm = full_mask(n)
    rows = [0] * n
    rows[0] = fm

    def consistent(k: int) -> bool:
        rk = rows[k]
        for i in range(k + 1):
            ri = rows[i]
            if ri >> k & 1 and rk & ~ri:
                return False
            if rk >> i & 1 and rows[i] & ~rk:
                return False
        return True

    out = []

    def rec(k: int):
        if k == n:
            out.append(p0set(n, 0, [(x, y) for x in range(n) for y in bits(rows[x])]))
            return
        if reflexive_only:
            base = 1 << k
            free = [j for j in range(1, n) if j != k]
            for pick in range(1 << len(free)):
                row = base
                for idx, j in enumerate(free):
                    if pick >> idx & 1:
                        row |= 1 << j
                rows[k] = row
                if _still_poset(rows, k) and consistent(k):
                    rec(k + 1)
            rows[k] = 0
        else:
            for row in range(1 << n):
                rows[k] = row
                if consistent(k):
                    rec(k + 1)
            rows[k] = 0

    def _still_poset(rows, k):
        # antisymmetry against decided rows
        for i in range(1, k):
            if rows[i] >> k & 1 and rows[k] >> i & 1:
                return False
        return True

    rec(1)
    return out


# ---------------------------------------------------------------------------
# counterexample search


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible description of a structure stream.

    kind "named" yields one family instance (name and params), kind
    "exhaustive" yields the labeled enumeration through max_size, kind
    "random" yields budget seeded structures of sizes up to max_size.
    Equal descriptions produce identical streams.
    """

    kind: str
    name: str = ""
    params: tuple = ()
    seed: int = 0
    max_size: int = 5
    budget: int = 1000
    reflexive_only: bool = False


def stream(spec: GeneratorSpec):
    """Yield the structures a GeneratorSpec describes, deterministically."""
    if spec.kind == "named":
        n = spec.params[0] if spec.params else spec.max_size
        yield make_family(spec.name, n)
    elif spec.kind == "exhaustive":
        for n in range(1, spec.max_size + 1):
            yield from enumerate_structures(n, spec.reflexive_only)
    elif spec.kind == "random":
        rng = random.Random(spec.seed)
        for _ in range(spec.budget):
            n = rng.randint(2, max(2, min(spec.max_size, RANDOM_CAP)))
            yield random_p0set(
                n, rng.getrandbits(32), rng.random() < 0.5, rng.uniform(0.1, 0.6)
            )
    else:
        raise UnknownFamily(f"unknown stream kind {spec.kind!r}")


def _prop_chain_respected(B: P0Set) -> bool:
    from .spectrum import separativity_chain

    return bool(separativity_chain(B).holds("chain_respected"))


def _prop_sep_implies_inj(B: P0Set) -> bool:
    from .spectrum import separativity_chain

    r = separativity_chain(B)
    return not r.holds("separative") or bool(r.holds("rho_injective"))


def _prop_inj_implies_ssc(B: P0Set) -> bool:
    from .spectrum import separativity_chain

    r = separativity_chain(B)
    return not r.holds("rho_injective") or bool(r.holds("ssc"))


def _prop_semilattice_equivalence(B: P0Set) -> bool:
    from .spectrum import separativity_chain

    return separativity_chain(B).holds("semilattice_equivalence") is not False


def _prop_inj_implies_sep_on_semilattices(B: P0Set) -> bool:
    from .core import order_predicates
    from .spectrum import separativity_chain

    if not order_predicates(B).holds("meet_semilattice"):
        return True
    r = separativity_chain(B)
    return not r.holds("rho_injective") or bool(r.holds("separative"))


def _prop_decomposition(B: P0Set) -> bool:
    from .axioms import check_basic_lattice
    from .core import order_predicates

    if not order_predicates(B).holds("lattice"):
        return True
    return check_basic_lattice(B).holds("decomposition") is not False


SUITES: dict[str, tuple] = {
    # name: (predicate, curated stream prefix builders)
    "chain_respected": (_prop_chain_respected, ()),
    "separative_implies_rho_injective": (_prop_sep_implies_inj, ()),
    "rho_injective_implies_ssc": (_prop_inj_implies_ssc, ()),
    "semilattice_equivalence": (_prop_semilattice_equivalence, ()),
    "rho_injective_implies_separative_on_meet_semilattices": (
        _prop_inj_implies_sep_on_semilattices,
        (),
    ),
    "decomposition_holds": (_prop_decomposition, (("diamond", 3),)),
}


def search_counterexample(
    suite: str, bound: int, budget: int, seed: int
) -> P0Set | None:
    """First structure violating the named property, or None.

    The stream runs the suite's curated instances, then exhaustive
    enumeration up to min(bound, enumeration cap), then seeded random
    structures of sizes up to the bound until the budget is spent.
    """
    if suite not in SUITES:
        raise UnknownSuite(f"no suite named {suite!r}; known: {sorted(SUITES)}")
    predicate, curated = SUITES[suite]
    spent = 0
    for name, k in curated:
        if spent >= budget:
            return None
        spent += 1
        B = make_family(name, k)
        if not predicate(B):
            return B
    for n in range(1, min(bound, ENUM_CAP) + 1):
        for B in enumerate_structures(n):
            if spent >= budget:
                return None
            spent += 1
            if not predicate(B):
                return B
    rng = random.Random(seed)
    while spent < budget:
        n = rng.randint(2, max(2, min(bound, RANDOM_CAP)))
        B = random_p0set(n, rng.getrandbits(32), rng.random() < 0.5, rng.uniform(0.1, 0.6))
        spent += 1
        if not predicate(B):
            return B
    return None
