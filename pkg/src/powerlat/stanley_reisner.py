"""Monomial ideals of multicomplexes and polarization.

A multicomplex is a downward closed family of monomials inside a box
x_1^{n_1}...x_l^{n_l}, given by its facets and excluding the top.  Its
nonface ideal is generated by the box monomials outside the family.  Each
face sigma has an irreducible ideal P_sigma of pure powers x_i^{v_i+1};
the section-ring check compares the nonface ideal against the
intersection of the P_sigma over the facets and reports a witness
generator when they differ.  Polarization lifts monomials to squarefree
ones over doubly indexed variables, and the polarized complex of a
shellable multicomplex is checked to be shellable in the non-pure sense,
first under the lifted facet order and then by exhaustive search over
facet orders when the lifted order fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .instances import MultisetLattice
from .lattice import BudgetError, Element, LatticeError, LatticeInputError
from .ordercomplex import SimplicialComplex, SimplicialShellingReport
from .pcomplex import PComplex, find_shelling, verify_shelling

_BOX_VOLUME_LIMIT = 10**6
_GENERATOR_LIMIT = 10**3
_FACET_MEET_LIMIT = 20
_POLAR_VARIABLE_LIMIT = 20


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def monomial_label(m) -> str:
    parts = []
    for i, v in enumerate(m):
        if v == 1:
            parts.append(f"x_{i + 1}")
        elif v > 1:
            parts.append(f"x_{i + 1}^{v}")
    return "*".join(parts) if parts else "1"


def _as_exponents(m, nvars=None):
    if isinstance(m, Element):
        m = m.key
    m = tuple(m)
    if any(not isinstance(v, int) or v < 0 for v in m):
        raise LatticeInputError("exponents must be non-negative integers")
    if nvars is not None and len(m) != nvars:
        raise LatticeInputError(f"expected {nvars} exponents, got {len(m)}")
    return m


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal held by its minimal generators.

    Generators form an antichain under divisibility and are kept in
    descending lexicographic order of exponent vectors.
    """

    nvars: int
    gens: tuple

    @classmethod
    def from_gens(cls, nvars: int, gens) -> "MonomialIdeal":
        seen = {_as_exponents(g, nvars) for g in gens}
        minimal = [
            g for g in seen if not any(h != g and divides(h, g) for h in seen)
        ]
        return cls(nvars, tuple(sorted(minimal, reverse=True)))

    def contains(self, m) -> bool:
        m = _as_exponents(m, self.nvars)
        return any(divides(g, m) for g in self.gens)

    def equals(self, other: "MonomialIdeal") -> bool:
        # mutual generator membership, not generator-list identity
        if self.nvars != other.nvars:
            return False
        return all(other.contains(g) for g in self.gens) and all(
            self.contains(g) for g in other.gens
        )

    def is_squarefree(self) -> bool:
        return all(all(v <= 1 for v in g) for g in self.gens)

    def labels(self) -> list:
        return [monomial_label(g) for g in self.gens]

    def to_obj(self) -> dict:
        return {"vars": self.nvars, "gens": [list(g) for g in self.gens]}


class Multicomplex:
    """Facet-presented downward closed monomial family, top excluded."""

    def __init__(self, box, facets):
        box = tuple(box)
        if not box or any(not isinstance(n, int) or n < 1 for n in box):
            raise LatticeInputError("the box needs positive integer bounds")
        vol = 1
        for n in box:
            vol *= n + 1
        if vol > _BOX_VOLUME_LIMIT:
            raise BudgetError(f"box volume {vol} exceeds {_BOX_VOLUME_LIMIT}")
        fs = set()
        for f in facets:
            f = _as_exponents(f, len(box))
            if any(v > n for v, n in zip(f, box)):
                raise LatticeInputError(
                    f"facet {monomial_label(f)} leaves the box"
                )
            fs.add(f)
        if not fs:
            raise LatticeInputError("a multicomplex needs at least one facet")
        if box in fs:
            raise LatticeInputError("the top multiset cannot be a face")
        maximal = [f for f in fs if not any(g != f and divides(f, g) for g in fs)]
        self.box = box
        self.facets = tuple(
            sorted(maximal, key=lambda f: (sum(f),) + tuple(-v for v in f))
        )
        self._host = None

    @property
    def nvars(self) -> int:
        return len(self.box)

    def contains(self, m) -> bool:
        m = _as_exponents(m, self.nvars)
        return any(divides(m, f) for f in self.facets)

    def faces(self) -> list:
        out = set()
        for f in self.facets:
            out.update(itertools.product(*(range(v + 1) for v in f)))
        return sorted(out, key=lambda m: (sum(m),) + tuple(-v for v in m))

    def host(self) -> MultisetLattice:
        if self._host is None:
            self._host = MultisetLattice(self.box)
        return self._host

    def pcomplex(self) -> PComplex:
        L = self.host()
        return PComplex(L, [L.element(f) for f in self.facets])

    @classmethod
    def from_obj(cls, obj) -> "Multicomplex":
        if not isinstance(obj, dict) or "box" not in obj or "facets" not in obj:
            raise LatticeInputError(
                "a multicomplex description needs 'box' and 'facets'"
            )
        return cls(obj["box"], obj["facets"])

    def to_obj(self) -> dict:
        return {"box": list(self.box), "facets": [list(f) for f in self.facets]}


def multicomplex_from_pcomplex(C: PComplex) -> Multicomplex:
    if not isinstance(C.lattice, MultisetLattice):
        raise LatticeInputError("only complexes on multiset lattices polarize")
    return Multicomplex(C.lattice.exponents, [f.key for f in C.facets])


# ---------------------------------------------------------------------------
# nonface ideals and irreducible intersections


def minimal_nonfaces(delta: Multicomplex) -> MonomialIdeal:
    """Minimal generators of the nonface ideal: box monomials outside the
    family all of whose decrements are faces."""
    box = delta.box
    gens = []
    for m in itertools.product(*(range(n + 1) for n in box)):
        if delta.contains(m):
            continue
        minimal = True
        for i in range(len(box)):
            if m[i] == 0:
                continue
            if not delta.contains(m[:i] + (m[i] - 1,) + m[i + 1 :]):
                minimal = False
                break
        if minimal:
            gens.append(m)
    return MonomialIdeal.from_gens(len(box), gens)


def irreducible_ideal(sigma, nvars=None) -> MonomialIdeal:
    """P_sigma: pure powers x_i^{v_i(sigma)+1}."""
    sigma = _as_exponents(sigma, nvars)
    l = len(sigma)
    gens = []
    for i, v in enumerate(sigma):
        g = [0] * l
        g[i] = v + 1
        gens.append(tuple(g))
    return MonomialIdeal.from_gens(l, gens)


def intersect_monomial_ideals(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.nvars != J.nvars:
        raise LatticeInputError("ideals live in different variable counts")
    if len(I.gens) > _GENERATOR_LIMIT or len(J.gens) > _GENERATOR_LIMIT:
        raise BudgetError(f"ideal intersection capped at {_GENERATOR_LIMIT} generators")
    gens = [monomial_lcm(g, h) for g in I.gens for h in J.gens]
    return MonomialIdeal.from_gens(I.nvars, gens)


def meets_of_facets(delta: Multicomplex) -> tuple:
    """Closure of the facet set under pairwise gcd, facets included."""
    if len(delta.facets) > _FACET_MEET_LIMIT:
        raise BudgetError(f"meet closure capped at {_FACET_MEET_LIMIT} facets")
    closed = set(delta.facets)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in closed.copy():
                m = monomial_gcd(a, b)
                if m not in closed:
                    closed.add(m)
                    nxt.append(m)
        frontier = nxt
    return tuple(sorted(closed, key=lambda m: (-sum(m),) + tuple(-v for v in m)))


@dataclass(frozen=True)
class SectionCheck:
    equal: bool
    witness: tuple | None
    nonface_ideal: MonomialIdeal
    facet_intersection: MonomialIdeal

    def to_obj(self) -> dict:
        obj = {
            "equal": self.equal,
            "nonface_ideal": self.nonface_ideal.labels(),
            "facet_intersection": self.facet_intersection.labels(),
        }
        if self.witness is not None:
            obj["witness"] = monomial_label(self.witness)
            obj["witness_exponents"] = list(self.witness)
        return obj


def section_ring_check(delta: Multicomplex) -> SectionCheck:
    """Compare the nonface ideal against the intersection of the P_sigma.

    A = nonface ideal, B = intersection over the facets, C = intersection
    over the gcd closure of the facets.  B = C and A inside B always hold
    and are asserted; the check reports equality of A and B, or the first
    generator of B missing from A as witness.
    """
    A = minimal_nonfaces(delta)
    l = delta.nvars
    B = None
    for f in delta.facets:
        P = irreducible_ideal(f, l)
        B = P if B is None else intersect_monomial_ideals(B, P)
    C = None
    for s in meets_of_facets(delta):
        P = irreducible_ideal(s, l)
        C = P if C is None else intersect_monomial_ideals(C, P)
    if not B.equals(C):
        raise LatticeError(
            "facet intersection and meet-closure intersection disagree"
        )
    for g in A.gens:
        if not B.contains(g):
            raise LatticeError("the nonface ideal escapes the facet intersection")
    witness = None
    for g in B.gens:
        if not A.contains(g):
            witness = g
            break
    return SectionCheck(witness is None, witness, A, B)


# ---------------------------------------------------------------------------
# polarization


def polar_label(v) -> str:
    i, j = v
    return "x_{%d,%d}" % (i, j)


def polar_monomial_label(p) -> str:
    if not p:
        return "1"
    return "*".join(polar_label(v) for v in sorted(p))


def polarize_monomial(m, box) -> frozenset:
    """x_i^a becomes x_{i,1}...x_{i,a}; pairs are 1-based (variable, copy)."""
    box = tuple(box)
    m = _as_exponents(m, len(box))
    if any(v > n for v, n in zip(m, box)):
        raise LatticeInputError(f"{monomial_label(m)} leaves the box")
    return frozenset(
        (i + 1, j + 1) for i, v in enumerate(m) for j in range(v)
    )


def depolarize(p, nvars=None):
    """Substitute x_{i,j} back to x_i: exponent = copies present per row."""
    if nvars is None:
        nvars = max((i for i, _ in p), default=0)
    counts = [0] * nvars
    for i, _ in p:
        if not 1 <= i <= nvars:
            raise LatticeInputError(f"polar variable row {i} out of range")
        counts[i - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class PolarizedIdeal:
    """Squarefree lift of a monomial ideal over (variable, copy) pairs."""

    ranges: tuple
    gens: tuple

    def labels(self) -> list:
        return [polar_monomial_label(g) for g in self.gens]

    def to_obj(self) -> dict:
        return {
            "ranges": list(self.ranges),
            "gens": [[list(v) for v in sorted(g)] for g in self.gens],
        }


def polarize_ideal(I: MonomialIdeal) -> PolarizedIdeal:
    if len(I.gens) > _GENERATOR_LIMIT:
        raise BudgetError(f"polarization capped at {_GENERATOR_LIMIT} generators")
    ranges = tuple(
        max((g[i] for g in I.gens), default=0) for i in range(I.nvars)
    )
    gens = tuple(polarize_monomial(g, ranges) for g in I.gens)
    # prefix lifts preserve divisibility, so minimality must survive
    for g in gens:
        if any(h != g and h <= g for h in gens):
            raise LatticeError("polarization broke generator minimality")
    return PolarizedIdeal(ranges, gens)


def polar_universe(box) -> tuple:
    return tuple((i + 1, j + 1) for i, n in enumerate(box) for j in range(n))


def _facet_family_masks(delta: Multicomplex, pos) -> set:
    # the candidate family: for each face b of a facet, keep every copy
    # except x_{i,b_i+1} in each row
    box = delta.box
    full = (1 << len(pos)) - 1
    out = set()
    for b in delta.faces():
        mask = full
        for i, v in enumerate(b):
            if v < box[i]:
                mask &= ~(1 << pos[(i + 1, v + 1)])
        out.add(mask)
    return out


def _complement_facet_masks(delta: Multicomplex, pos) -> set:
    n = len(pos)
    gen_masks = []
    for g in minimal_nonfaces(delta).gens:
        gm = 0
        for v in polarize_monomial(g, delta.box):
            gm |= 1 << pos[v]
        gen_masks.append(gm)
    faces = set()
    for s in range(1 << n):
        if all(gm & s != gm for gm in gen_masks):
            faces.add(s)
    facets = set()
    for s in faces:
        for v in range(n):
            if not s & (1 << v) and s | (1 << v) in faces:
                break
        else:
            facets.add(s)
    return facets


def polarized_complex(delta: Multicomplex) -> SimplicialComplex:
    """The simplicial complex whose nonface ideal is the polarized nonface
    ideal of the multicomplex.

    Built twice, as the maximal members of the per-face candidate family
    and as the complement of the polarized ideal, and the two facet sets
    must coincide.
    """
    universe = polar_universe(delta.box)
    if len(universe) > _POLAR_VARIABLE_LIMIT:
        raise BudgetError(
            f"polarization capped at {_POLAR_VARIABLE_LIMIT} variables"
        )
    pos = {v: k for k, v in enumerate(universe)}
    family = _facet_family_masks(delta, pos)
    candidates = [
        m for m in family if not any(m != w and m & w == m for w in family)
    ]
    if set(candidates) != _complement_facet_masks(delta, pos):
        raise LatticeError("polarized facet constructions disagree")
    labels = [polar_label(v) for v in universe]
    facets = [
        {k for k in range(len(universe)) if m & (1 << k)} for m in candidates
    ]
    return SimplicialComplex(labels, facets)


# ---------------------------------------------------------------------------
# non-pure shellability


def verify_nonpure_shelling(facets_in_order) -> SimplicialShellingReport:
    """Check the non-pure shelling condition on a facet order: for all
    i < j some k < j has F_i n F_j inside F_k n F_j of size |F_j| - 1."""
    F = [frozenset(f) for f in facets_in_order]
    if not F:
        raise LatticeInputError("a shelling needs at least one facet")
    for j in range(1, len(F)):
        # R_j: vertices whose removal lands inside an earlier facet
        Rj = {
            v
            for v in F[j]
            if any(F[j] - {v} <= F[k] and v not in F[k] for k in range(j))
        }
        for i in range(j):
            if Rj <= F[i]:
                return SimplicialShellingReport(
                    False,
                    witness={"i": i, "j": j},
                    detail="no earlier facet meets facet j in a face of size |F_j|-1 over F_i",
                )
    return SimplicialShellingReport(True)


_NONPURE_SEARCH_LIMIT = 14


def _appendable(F, j, chosen) -> bool:
    Rj = {
        v
        for v in F[j]
        if any(F[j] - {v} <= F[k] and v not in F[k] for k in chosen)
    }
    return all(not Rj <= F[i] for i in chosen)


def find_nonpure_shelling(facets, cap: int = _NONPURE_SEARCH_LIMIT):
    """Search for a non-pure shelling order over all facet orders.

    Whether a facet can be appended depends only on the set of facets
    already placed, so the search runs over subsets.  Returns a tuple of
    facets or None.
    """
    F = [frozenset(f) for f in facets]
    t = len(F)
    if t > cap:
        raise BudgetError(f"shelling search capped at {cap} facets")
    memo: dict[int, tuple | None] = {0: ()}

    def solve(mask):
        if mask in memo:
            return memo[mask]
        out = None
        for j in range(t):
            if mask & (1 << j):
                prev = mask & ~(1 << j)
                chosen = [k for k in range(t) if prev & (1 << k)]
                if _appendable(F, j, chosen):
                    sub = solve(prev)
                    if sub is not None:
                        out = sub + (j,)
                        break
        memo[mask] = out
        return out

    order = solve((1 << t) - 1)
    if order is None:
        return None
    return tuple(F[j] for j in order)


@dataclass(frozen=True)
class PolarizedShellingReport:
    """Outcome of shelling the polarized complex.

    constructed_ok reports whether the order lifted from the multicomplex
    shelling already works; when it does not, ok still holds if a shelling
    was found by search, and the witness points at the lifted order's
    failure.
    """

    ok: bool
    order: tuple
    multicomplex_order: tuple
    constructed_ok: bool
    witness: dict | None = None
    detail: str = ""

    def to_obj(self) -> dict:
        obj = {
            "ok": self.ok,
            "constructed_order_ok": self.constructed_ok,
            "order": [sorted(polar_label(v) for v in f) for f in self.order],
            "multicomplex_order": [monomial_label(f) for f in self.multicomplex_order],
        }
        if self.witness is not None:
            obj["witness"] = self.witness
        if self.detail:
            obj["detail"] = self.detail
        return obj


def _shelling_order_for(delta: Multicomplex, order):
    L = delta.host()
    C = delta.pcomplex()
    if order is not None:
        order = [L.element(_as_exponents(f, delta.nvars)) for f in order]
        rep = verify_shelling(C, order)
        if not rep.ok:
            raise LatticeInputError("the given facet order is not a shelling")
        return [f.key for f in order]
    rep = verify_shelling(C)
    if rep.ok:
        return [f.key for f in rep.order]
    found = find_shelling(C)
    if found is None:
        raise LatticeInputError("the multicomplex is not shellable")
    return [f.key for f in found]


def polarized_shelling(delta: Multicomplex, order=None) -> PolarizedShellingReport:
    """Shell the polarized complex of a shellable multicomplex.

    The first candidate orders the polarized facets by their host facet's
    position in the multicomplex shelling, larger copy vectors first on
    ties.  That order can fail the non-pure condition even though a
    shelling exists, so on failure an exhaustive search runs and the
    report carries both verdicts.
    """
    dorder = _shelling_order_for(delta, order)
    dpos = {f: k for k, f in enumerate(dorder)}
    sc = polarized_complex(delta)
    universe = polar_universe(delta.box)
    box = delta.box
    keyed = []
    for facet in sc.facets:
        vars_present = {universe[k] for k in facet}
        b = []
        for i, n in enumerate(box):
            copies = {j for (row, j) in vars_present if row == i + 1}
            missing = set(range(1, n + 1)) - copies
            if len(missing) > 1:
                raise LatticeError("a polarized facet skips two copies in one row")
            b.append(min(missing) - 1 if missing else n)
        b = tuple(b)
        host = None
        for f in dorder:
            if divides(b, f):
                host = f
                break
        if host is None:
            raise LatticeError("a polarized facet has no hosting facet")
        keyed.append(((dpos[host],) + tuple(-v for v in b), vars_present))
    keyed.sort(key=lambda kv: kv[0])
    constructed = tuple(frozenset(v) for _, v in keyed)
    rep = verify_nonpure_shelling(constructed)
    if rep.ok:
        return PolarizedShellingReport(True, constructed, tuple(dorder), True)
    found = find_nonpure_shelling(constructed)
    if found is not None:
        return PolarizedShellingReport(
            True,
            found,
            tuple(dorder),
            False,
            rep.witness,
            "the order lifted from the multicomplex shelling fails; a shelling was found by search",
        )
    return PolarizedShellingReport(
        False,
        constructed,
        tuple(dorder),
        False,
        rep.witness,
        "no facet order is a shelling",
    )


# ---------------------------------------------------------------------------
# export


def export_ideal(I: MonomialIdeal, fmt: str) -> str:
    vars_ = ",".join(f"x_{i + 1}" for i in range(I.nvars))
    if fmt == "m2":
        if not I.gens:
            return f"R = QQ[{vars_}]\nI = monomialIdeal(0_R)"
        return (
            f"R = QQ[{vars_}]\nI = monomialIdeal("
            + ", ".join(I.labels())
            + ")"
        )
    if fmt == "singular":
        body = ", ".join(I.labels()) if I.gens else "0"
        return f"ring R = 0, ({vars_}), dp;\nideal I = {body};"
    if fmt == "json":
        import json

        return json.dumps(I.to_obj())
    raise LatticeInputError(f"unknown export format {fmt!r}")
