"""Order complexes, chain orders, simplicial shellings, and homology.

The order complex of a complex S is the simplicial complex of chains in S;
its facets are the maximal chains.  Two total orders on maximal chains are
provided: reverse lexicographic comparison position by position from the
top, and the shelling order that first compares chain tops in the rank
level order and then falls back to the truncated chains.  Reduced homology
is computed over the rationals by exact integer elimination, with a mod 2
variant for cross checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd

from .lattice import (
    BudgetError,
    Element,
    LatticeInputError,
    PowerLattice,
    rank_lex_compare,
)
from .pcomplex import PComplex, ShellingReport, sort_by_rank_lex, sphere, verify_shelling


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplex:
    """Finite simplicial complex given by labeled vertices and facets."""

    def __init__(self, vertex_labels, facets):
        labels = tuple(vertex_labels)
        if len(set(labels)) != len(labels):
            raise LatticeInputError("vertex labels must be distinct")
        sets = []
        seen = set()
        for f in facets:
            fs = frozenset(f)
            for v in fs:
                if not isinstance(v, int) or v < 0 or v >= len(labels):
                    raise LatticeInputError(f"facet vertex {v!r} is not a vertex index")
            if fs not in seen:
                seen.add(fs)
                sets.append(fs)
        maximal = [f for f in sets if not any(f < g for g in sets)]
        maximal.sort(key=lambda f: (len(f), sorted(f)))
        self.vertex_labels = labels
        self.facets = tuple(maximal)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, budget: int = 20_000) -> set:
        """All faces, the empty face included."""
        out = {frozenset()}
        stack = list(self.facets)
        out.update(self.facets)
        while stack:
            f = stack.pop()
            for v in f:
                g = f - {v}
                if g not in out:
                    if len(out) >= budget:
                        raise BudgetError(f"complex has more than {budget} faces")
                    out.add(g)
                    stack.append(g)
        return out

    @classmethod
    def from_obj(cls, obj) -> "SimplicialComplex":
        if not isinstance(obj, dict) or "vertices" not in obj or "facets" not in obj:
            raise LatticeInputError(
                "a simplicial complex description needs 'vertices' and 'facets'"
            )
        labels = obj["vertices"]
        if not isinstance(labels, list) or any(not isinstance(s, str) for s in labels):
            raise LatticeInputError("'vertices' must be a list of strings")
        pos = {s: i for i, s in enumerate(labels)}
        if len(pos) != len(labels):
            raise LatticeInputError("vertex labels must be distinct")
        facets = []
        for f in obj["facets"]:
            if not isinstance(f, list):
                raise LatticeInputError("each facet must be a list of vertices")
            out = []
            for v in f:
                if isinstance(v, str):
                    if v not in pos:
                        raise LatticeInputError(f"unknown vertex {v!r}")
                    out.append(pos[v])
                elif isinstance(v, int) and 0 <= v < len(labels):
                    out.append(v)
                else:
                    raise LatticeInputError(f"unknown vertex {v!r}")
            facets.append(out)
        return cls(tuple(labels), facets)

    def to_obj(self) -> dict:
        return {
            "vertices": list(self.vertex_labels),
            "facets": [sorted(self.vertex_labels[v] for v in f) for f in self.facets],
        }


# ---------------------------------------------------------------------------
# maximal chains and the order complex


def maximal_chains(C: PComplex, include_bottom: bool = True, budget: int = 10_000):
    """All maximal chains of the complex, as tuples from bottom upward.

    Since a complex is downward closed, cover steps inside it are cover
    steps of the host lattice, so chains are walked along lattice covers
    restricted to the faces.
    """
    L = C.lattice
    faces = C.faces(budget=budget)
    by_rank: dict[int, list] = {}
    for f in faces:
        by_rank.setdefault(f.rank, []).append(f)
    nxt: dict = {}
    for f in faces:
        above = by_rank.get(f.rank + 1, ())
        nxt[f.key] = [g for g in above if L.leq(f, g)]
    bottom = L.bottom
    chains = []
    stack = [(bottom,)]
    while stack:
        chain = stack.pop()
        children = nxt[chain[-1].key]
        if not children:
            if len(chains) >= budget:
                raise BudgetError(f"complex has more than {budget} maximal chains")
            chains.append(chain)
            continue
        for g in children:
            stack.append(chain + (g,))
    if not include_bottom:
        chains = [c[1:] for c in chains]
    chains.sort(key=lambda c: tuple(L.sort_key(x) for x in c))
    return chains


def order_complex(
    C: PComplex, include_bottom: bool = True, budget: int = 10_000
) -> SimplicialComplex:
    """The order complex: vertices are faces of C, facets are maximal chains."""
    L = C.lattice
    chains = maximal_chains(C, include_bottom=include_bottom, budget=budget)
    verts = list(C.faces(budget=budget))
    if not include_bottom:
        verts = [v for v in verts if v.rank > 0 or v != L.bottom]
    index = {v.key: i for i, v in enumerate(verts)}
    labels = tuple(L.label(v) for v in verts)
    facet_sets = [frozenset(index[x.key] for x in chain) for chain in chains]
    if not facet_sets:
        facet_sets = [frozenset()]
    return SimplicialComplex(labels, facet_sets)


# ---------------------------------------------------------------------------
# chain comparisons


def compare_reverse_lex(L: PowerLattice, X, Y, atom_order=None) -> int:
    """Reverse lexicographic chain order: compare at the largest index where
    the chains differ, in the rank level order."""
    X, Y = tuple(X), tuple(Y)
    if len(X) != len(Y):
        raise LatticeInputError("chains must have equal length")
    for x, y in zip(reversed(X), reversed(Y)):
        if x != y:
            return rank_lex_compare(L, x, y, atom_order)
    return 0


def compare_shelling_order(L: PowerLattice, X, Y, atom_order=None) -> int:
    """Chain order for shellings: compare tops in the rank level order, and
    chains with the same top reverse lexicographically below the top."""
    X, Y = tuple(X), tuple(Y)
    if len(X) != len(Y):
        raise LatticeInputError("chains must have equal length")
    if not X:
        return 0
    if X[-1] != Y[-1]:
        return rank_lex_compare(L, X[-1], Y[-1], atom_order)
    return compare_reverse_lex(L, X[:-1], Y[:-1], atom_order)


# ---------------------------------------------------------------------------
# simplicial shellings


@dataclass
class SimplicialShellingReport:
    ok: bool
    witness: dict | None = None
    detail: str = ""

    def to_obj(self) -> dict:
        obj = {"ok": self.ok}
        if self.witness is not None:
            obj["witness"] = self.witness
        if self.detail:
            obj["detail"] = self.detail
        return obj


def verify_pure_simplicial_shelling(facets_in_order) -> SimplicialShellingReport:
    """Check the shelling condition for an ordered list of equal-size facets.

    F_1, ..., F_t is a shelling when for all i < j some k < j has
    F_i n F_j <= F_k n F_j with |F_k n F_j| = |F_j| - 1.  Runs in roughly
    t^2 time via the restriction sets R_j = {v in F_j : F_j - v is covered
    by an earlier facet}: the pair (i, j) fails exactly when R_j <= F_i.
    """
    sets = [frozenset(f) for f in facets_in_order]
    t = len(sets)
    if t == 0:
        raise LatticeInputError("a shelling needs at least one facet")
    card = len(sets[0])
    if any(len(f) != card for f in sets):
        raise LatticeInputError("the pure shelling condition needs equal-size facets")
    if len(set(sets)) != t:
        return SimplicialShellingReport(
            False, {"reason": "duplicate facet"}, "facets must be distinct"
        )
    seen_subsets: set = set()
    for j, fj in enumerate(sets):
        if j > 0 and card > 0:
            restriction = {v for v in fj if (fj - {v}) in seen_subsets}
            if not restriction:
                return SimplicialShellingReport(
                    False,
                    {"i": 0, "j": j},
                    "facet meets no earlier facet in a face of size one less",
                )
            if len(restriction) < card:
                rf = frozenset(restriction)
                for i in range(j):
                    if rf <= sets[i]:
                        return SimplicialShellingReport(
                            False,
                            {"i": i, "j": j},
                            "no earlier facet covers the intersection with facet i",
                        )
        for v in fj:
            seen_subsets.add(fj - {v})
    return SimplicialShellingReport(True)


@dataclass
class OrderShellingReport:
    ok: bool
    chains: int
    witness: dict | None = None
    detail: str = ""

    def to_obj(self) -> dict:
        obj = {"ok": self.ok, "chains": self.chains}
        if self.witness is not None:
            obj["witness"] = self.witness
        if self.detail:
            obj["detail"] = self.detail
        return obj


def _chains_to_sets(C: PComplex, chains, budget):
    index = {v.key: i for i, v in enumerate(C.faces(budget=budget))}
    return [frozenset(index[x.key] for x in chain) for chain in chains]


def _chain_labels(L, chain):
    return [L.label(x) for x in chain]


def sphere_order_shelling_check(
    L: PowerLattice, x: Element, atom_order=None, budget: int = 10_000
) -> OrderShellingReport:
    """Sort the maximal chains of the sphere below x reverse
    lexicographically and check that this order shells its order complex."""
    S = sphere(L, x)
    chains = maximal_chains(S, include_bottom=True, budget=budget)
    chains.sort(key=cmp_to_key(lambda A, B: compare_reverse_lex(L, A, B, atom_order)))
    rep = verify_pure_simplicial_shelling(_chains_to_sets(S, chains, budget))
    witness = rep.witness
    if witness is not None and "j" in witness:
        witness = dict(witness)
        witness["chain_i"] = _chain_labels(L, chains[witness["i"]])
        witness["chain_j"] = _chain_labels(L, chains[witness["j"]])
    return OrderShellingReport(rep.ok, len(chains), witness, rep.detail)


def complex_order_shelling_check(
    C: PComplex, atom_order=None, budget: int = 10_000
) -> OrderShellingReport:
    """For a complex whose rank-level facet order is a shelling, sort the
    maximal chains by the shelling order and check that this shells the
    order complex.  The hypothesis on the facet order is checked first."""
    L = C.lattice
    if not C.is_pure():
        return OrderShellingReport(
            False, 0, {"reason": "not pure"}, "complex is not pure"
        )
    srep = verify_shelling(C, None, atom_order)
    if not srep.ok:
        witness = dict(srep.witness or {})
        witness["reason"] = "facet order is not a shelling"
        return OrderShellingReport(False, 0, witness, srep.detail)
    chains = maximal_chains(C, include_bottom=True, budget=budget)
    chains.sort(key=cmp_to_key(lambda A, B: compare_shelling_order(L, A, B, atom_order)))
    rep = verify_pure_simplicial_shelling(_chains_to_sets(C, chains, budget))
    witness = rep.witness
    if witness is not None and "j" in witness:
        witness = dict(witness)
        witness["chain_i"] = _chain_labels(L, chains[witness["i"]])
        witness["chain_j"] = _chain_labels(L, chains[witness["j"]])
    return OrderShellingReport(rep.ok, len(chains), witness, rep.detail)


# ---------------------------------------------------------------------------
# homology


def _rank_int(rows) -> int:
    """Exact rank over the rationals of a sparse integer matrix.

    Rows are dicts column -> nonzero integer.  Elimination prefers unit
    pivots; when none divides, rows are combined fraction free and reduced
    by their content, so all arithmetic stays in the integers.
    """
    mat = {i: dict(r) for i, r in enumerate(rows) if r}
    cols: dict[int, set] = {}
    for i, r in mat.items():
        for c in r:
            cols.setdefault(c, set()).add(i)
    rank = 0
    while mat:
        rid = min(mat, key=lambda i: (len(mat[i]), i))
        row = mat.pop(rid)
        best = None
        for c, v in row.items():
            key = (abs(v) != 1, len(cols[c]), c)
            if best is None or key < best[0]:
                best = (key, c)
        c = best[1]
        pv = row[c]
        rank += 1
        for cc in row:
            cols[cc].discard(rid)
        for tid in list(cols.get(c, ())):
            trow = mat[tid]
            a = trow[c]
            if a % pv == 0:
                f = a // pv
                for cc, v in row.items():
                    nv = trow.get(cc, 0) - f * v
                    if nv:
                        if cc not in trow:
                            cols.setdefault(cc, set()).add(tid)
                        trow[cc] = nv
                    elif cc in trow:
                        del trow[cc]
                        cols[cc].discard(tid)
            else:
                for cc in trow:
                    trow[cc] *= pv
                for cc, v in row.items():
                    nv = trow.get(cc, 0) - a * v
                    if nv:
                        if cc not in trow:
                            cols.setdefault(cc, set()).add(tid)
                        trow[cc] = nv
                    elif cc in trow:
                        del trow[cc]
                        cols[cc].discard(tid)
                g = 0
                for v in trow.values():
                    g = gcd(g, v)
                if g > 1:
                    for cc in trow:
                        trow[cc] //= g
            if not trow:
                del mat[tid]
        cols.pop(c, None)
    return rank


def _rank_mod2(bitrows) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for r in bitrows:
        cur = r
        while cur:
            c = cur.bit_length() - 1
            if c in pivots:
                cur ^= pivots[c]
            else:
                pivots[c] = cur
                rank += 1
                break
    return rank


def _levels(sc: SimplicialComplex, budget: int):
    faces = sc.faces(budget=budget)
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for d in by_dim:
        by_dim[d].sort()
    return by_dim


def _boundary_rows(by_dim, k):
    # one row per k-face: its boundary in the basis of (k-1)-faces
    below = {f: i for i, f in enumerate(by_dim.get(k - 1, ()))}
    rows = []
    for f in by_dim.get(k, ()):
        row = {}
        for t in range(len(f)):
            sub = f[:t] + f[t + 1 :]
            row[below[sub]] = 1 if t % 2 == 0 else -1
        rows.append(row)
    return rows


def reduced_betti(sc: SimplicialComplex, budget: int = 20_000) -> tuple:
    """Reduced Betti numbers over the rationals, dimensions 0 through dim.

    The reduced chain complex includes the empty face, so the augmentation
    map is the boundary from dimension 0.
    """
    by_dim = _levels(sc, budget)
    if 0 not in by_dim:
        return ()
    top = max(by_dim)
    ranks = {}
    for k in range(0, top + 1):
        ranks[k] = _rank_int(_boundary_rows(by_dim, k))
    ranks[top + 1] = 0
    return tuple(
        len(by_dim.get(k, ())) - ranks[k] - ranks[k + 1] for k in range(0, top + 1)
    )


def reduced_betti_mod2(sc: SimplicialComplex, budget: int = 20_000) -> tuple:
    """Reduced Betti numbers over the field with two elements."""
    by_dim = _levels(sc, budget)
    if 0 not in by_dim:
        return ()
    top = max(by_dim)
    ranks = {}
    for k in range(0, top + 1):
        bitrows = []
        for row in _boundary_rows(by_dim, k):
            bits = 0
            for c in row:
                bits |= 1 << c
            bitrows.append(bits)
        ranks[k] = _rank_mod2(bitrows)
    ranks[top + 1] = 0
    return tuple(
        len(by_dim.get(k, ())) - ranks[k] - ranks[k + 1] for k in range(0, top + 1)
    )


@dataclass
class WedgeReport:
    ok: bool
    top_dim: int
    spheres: int
    betti: tuple

    def to_obj(self) -> dict:
        return {
            "ok": self.ok,
            "top_dim": self.top_dim,
            "spheres": self.spheres,
            "betti": list(self.betti),
        }


def check_wedge(sc: SimplicialComplex, budget: int = 20_000) -> WedgeReport:
    """Check that the complex has the homology of a wedge of top spheres:
    reduced Betti numbers zero below the top dimension."""
    if len({len(f) for f in sc.facets}) > 1:
        raise LatticeInputError("check_wedge needs a pure complex")
    betti = reduced_betti(sc, budget)
    if not betti:
        return WedgeReport(True, -1, 0, betti)
    ok = all(b == 0 for b in betti[:-1])
    return WedgeReport(ok, len(betti) - 1, betti[-1], betti)
