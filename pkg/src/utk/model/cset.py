"""Cubical sets and families of sets over them, dimension truncated.

A cubical set assigns a finite set of cells to each dimension context and a
substitution action to each cube map; the action direction follows the
substitution: a map with source I and target J assigns to every I-symbol a
De Morgan expression over J, and carries I-cells to J-cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .interval import (
    DM, Face, ModelError, ctx_sorted, dm_all, dm_basic, dm_const, dm_join,
    dm_meet, dm_neg, dm_subst, dm_sym, face_weaken,
)

CANONICAL_DIMS = ("i", "j", "k")


class ElementNotInObjectError(ModelError):
    pass


@dataclass(frozen=True)
class CubeMap:
    """A substitution from cells over `src` to cells over `dst`."""

    src: frozenset
    dst: frozenset
    assign: tuple  # sorted tuple of (symbol, DM over dst)

    @property
    def assignment(self) -> dict:
        return dict(self.assign)

    @staticmethod
    def make(src: frozenset, dst: frozenset, mapping: dict) -> "CubeMap":
        if set(mapping) != set(src):
            raise ModelError(f"assignment keys {sorted(mapping)} differ from {sorted(src)}")
        for e in mapping.values():
            if e.ctx != dst:
                raise ModelError("assignment element over the wrong context")
        return CubeMap(src, dst, tuple(sorted(mapping.items())))

    @staticmethod
    def identity(context: frozenset) -> "CubeMap":
        return CubeMap.make(context, context,
                            {n: dm_sym(context, n) for n in context})

    @staticmethod
    def weaken(src: frozenset, dst: frozenset) -> "CubeMap":
        if not src <= dst:
            raise ModelError("weakening requires an inclusion")
        return CubeMap.make(src, dst, {n: dm_sym(dst, n) for n in src})

    @staticmethod
    def face(src: frozenset, clause) -> "CubeMap":
        """Kill the dimensions of `clause` (pairs (symbol, endpoint))."""
        fixed = dict(clause)
        dst = src - set(fixed)
        mapping = {}
        for n in src:
            mapping[n] = dm_const(dst, fixed[n]) if n in fixed else dm_sym(dst, n)
        return CubeMap.make(src, dst, mapping)

    def then(self, other: "CubeMap") -> "CubeMap":
        if self.dst != other.src:
            raise ModelError("maps do not compose")
        return _compose(self, other)

    def apply_dm(self, r: DM) -> DM:
        if r.ctx != self.src:
            raise ElementNotInObjectError("interval element over the wrong context")
        return _apply_cached(self, r)

    def is_identity(self) -> bool:
        return self.src == self.dst and all(
            e.expr == ("sym", n) or e.table == dm_sym(self.dst, n).table
            for n, e in self.assign)


from functools import lru_cache


@lru_cache(maxsize=None)
def _compose(f: CubeMap, g: CubeMap) -> CubeMap:
    mapping = {n: dm_subst(e, g.assignment, g.dst) for n, e in f.assign}
    return CubeMap.make(f.src, g.dst, mapping)


@lru_cache(maxsize=None)
def _apply_cached(f: CubeMap, r: DM) -> DM:
    return dm_subst(r, f.assignment, f.dst)


def extend_clause_map(f: CubeMap, extra: str) -> CubeMap:
    """Extend a map by an untouched dimension (used to push face maps under a
    path direction)."""
    src = f.src | {extra}
    dst = f.dst | {extra}
    mapping = {n: dm_subst(e, {m: dm_sym(dst, m) for m in f.dst}, dst)
               for n, e in f.assign}
    mapping[extra] = dm_sym(dst, extra)
    return CubeMap.make(src, dst, mapping)


# ---------------------------------------------------------------------------
# Cubical sets


class CubicalSet:
    name = "cset"

    def cells(self, context: frozenset) -> list:
        raise NotImplementedError

    def restrict(self, context: frozenset, f: CubeMap, x):
        raise NotImplementedError

    def sample_cells(self, context: frozenset) -> list:
        """Cells used when enumerating composition problems; subclasses with
        large objects override this with a representative family."""
        return self.cells(context)


class PointCSet(CubicalSet):
    name = "pt"

    def cells(self, context):
        return ["pt"]

    def restrict(self, context, f, x):
        if x != "pt":
            raise ElementNotInObjectError(f"{x!r} not a point cell")
        return "pt"


class DiscreteCSet(CubicalSet):
    """Constant presheaf on a finite set of labels."""

    def __init__(self, labels, name="discrete"):
        self.labels = list(labels)
        self.name = name

    def cells(self, context):
        return list(self.labels)

    def restrict(self, context, f, x):
        if x not in self.labels:
            raise ElementNotInObjectError(f"{x!r} not among {self.labels}")
        return x


class IntervalCSet(CubicalSet):
    """The representable interval: cells over I are dm(I), action is
    substitution."""

    name = "interval"

    def cells(self, context):
        return list(dm_all(context))

    def sample_cells(self, context):
        if len(context) <= 1:
            return list(dm_all(context))
        return list(dm_basic(context))

    def restrict(self, context, f, x):
        return f.apply_dm(x)


class ProductIntervalCSet(CubicalSet):
    """Base extended by one interval factor: cells are pairs (x, r)."""

    def __init__(self, base: CubicalSet):
        self.base = base
        self.name = f"{base.name}*I"

    def cells(self, context):
        return [(x, r) for x in self.base.cells(context) for r in dm_all(context)]

    def sample_cells(self, context):
        rs = dm_all(context) if len(context) <= 1 else dm_basic(context)
        return [(x, r) for x in self.base.sample_cells(context) for r in rs]

    def restrict(self, context, f, x):
        b, r = x
        return (self.base.restrict(context, f, b), f.apply_dm(r))


class RestrictedCSet(CubicalSet):
    """Subpresheaf of cells satisfying a cofibration (same cell data)."""

    def __init__(self, base: CubicalSet, cof):
        self.base = base
        self.cof = cof
        self.name = f"{base.name}|phi"

    def cells(self, context):
        return [x for x in self.base.cells(context) if self.cof.holds(context, x)]

    def sample_cells(self, context):
        return [x for x in self.base.sample_cells(context) if self.cof.holds(context, x)]

    def restrict(self, context, f, x):
        return self.base.restrict(context, f, x)


class TotalCSet(CubicalSet):
    """Base extended by a family: cells are pairs (rho, a)."""

    def __init__(self, base: CubicalSet, family):
        self.base = base
        self.family = family
        self.name = f"{base.name}.{family.name}"

    def cells(self, context):
        return [(x, a) for x in self.base.cells(context)
                for a in self.family.fiber(context, x)]

    def sample_cells(self, context):
        return [(x, a) for x in self.base.sample_cells(context)
                for a in self.family.fiber(context, x)]

    def restrict(self, context, f, x):
        b, a = x
        return (self.base.restrict(context, f, b),
                self.family.restrict(context, b, f, a))


class TabularCSet(CubicalSet):
    """Explicit finite presheaf given by tables; used for loaded fixtures and
    fault-injection tests.  Missing action entries fall back to the identity
    on cells (the discrete action)."""

    def __init__(self, cells_by_dim: dict, action: dict = None, name="table"):
        self._cells = {frozenset(k): list(v) for k, v in cells_by_dim.items()}
        self.action = action or {}
        self.name = name

    def cells(self, context):
        if context not in self._cells:
            raise ElementNotInObjectError(f"no cells recorded at {sorted(context)}")
        return list(self._cells[context])

    def restrict(self, context, f, x):
        key = (f, x)
        if key in self.action:
            return self.action[key]
        return x


class Cofibration:
    """A cofibration over a cubical set: a natural assignment of a face
    formula to every cell.  Its denotation at each stage is the set of cells
    whose formula is the true one; naturality makes it restriction closed."""

    def __init__(self, fn, name="phi"):
        self.fn = fn
        self.name = name

    def face(self, context: frozenset, x) -> Face:
        return self.fn(context, x)

    def holds(self, context: frozenset, x) -> bool:
        return self.face(context, x).is_top


def cof_false():
    from .interval import face_bot
    return Cofibration(lambda c, x: face_bot(c), "bot")


def cof_true():
    from .interval import face_top
    return Cofibration(lambda c, x: face_top(c), "top")


def cof_endpoints():
    """Over a product-with-interval base: (i = 0) or (i = 1) on the interval
    coordinate."""
    from .interval import face_of_eq, face_or

    def fn(context, cell):
        _, r = cell
        return face_or(face_of_eq(r, 0), face_of_eq(r, 1))

    return Cofibration(fn, "(i=0)\\/(i=1)")


def cof_interval_eq(endpoint: int):
    """Over the interval base: (x = endpoint) on the cell itself."""
    from .interval import face_of_eq

    return Cofibration(lambda c, x: face_of_eq(x, endpoint), f"(i={endpoint})")


# ---------------------------------------------------------------------------
# Families of sets over a cubical set


class Family:
    name = "family"

    def __init__(self, base: CubicalSet):
        self.base = base

    def fiber(self, context: frozenset, rho) -> list:
        raise NotImplementedError

    def contains(self, context: frozenset, rho, a) -> bool:
        return a in self.fiber(context, rho)

    def restrict(self, context: frozenset, rho, f: CubeMap, a):
        """Carry a in the fiber over (context, rho) to the fiber over
        (f.dst, rho f)."""
        raise NotImplementedError


class ConstantFamily(Family):
    def __init__(self, base, labels, name="const"):
        super().__init__(base)
        self.labels = list(labels)
        self.name = name

    def fiber(self, context, rho):
        return list(self.labels)

    def restrict(self, context, rho, f, a):
        if a not in self.labels:
            raise ElementNotInObjectError(f"{a!r} not among {self.labels}")
        return a


class UnitFamily(Family):
    name = "unit"

    def fiber(self, context, rho):
        return ["*"]

    def restrict(self, context, rho, f, a):
        return "*"


class IntervalFamily(Family):
    """Fiberwise copy of the interval: A(I, rho) = dm(I).  Beyond two
    dimensions the fiber listing samples the basic elements; membership stays
    exact."""

    name = "interval-fiber"

    def fiber(self, context, rho):
        if len(context) > 2:
            return list(dm_basic(context))
        return list(dm_all(context))

    def contains(self, context, rho, a):
        return isinstance(a, DM) and a.ctx == context

    def restrict(self, context, rho, f, a):
        return f.apply_dm(a)


class SliceFamily(Family):
    """Over a discrete base: an independent family per base label."""

    def __init__(self, base, slices: dict, name="slices"):
        super().__init__(base)
        self.slices = slices  # label -> Family over the point-like base
        self.name = name

    def fiber(self, context, rho):
        return self.slices[rho].fiber(context, rho)

    def contains(self, context, rho, a):
        return self.slices[rho].contains(context, rho, a)

    def restrict(self, context, rho, f, a):
        return self.slices[rho].restrict(context, rho, f, a)


class SigmaFamily(Family):
    """Dependent sum: fibers are pairs (a, b) with b over the extended base."""

    def __init__(self, first, second, name=None):
        super().__init__(first.base)
        self.first = first
        self.second = second  # Family over TotalCSet(base, first)
        self.name = name or f"Sig({first.name},{second.name})"

    def fiber(self, context, rho):
        out = []
        for a in self.first.fiber(context, rho):
            for b in self.second.fiber(context, (rho, a)):
                out.append((a, b))
        return out

    def restrict(self, context, rho, f, ab):
        a, b = ab
        return (self.first.restrict(context, rho, f, a),
                self.second.restrict(context, (rho, a), f, b))


class ReindexedFamily(Family):
    """Family pulled back along a map of cubical sets."""

    def __init__(self, family: Family, gamma, name=None):
        super().__init__(gamma.src)
        self.family = family
        self.gamma = gamma
        self.name = name or f"{family.name}[{gamma.name}]"

    def fiber(self, context, rho):
        return self.family.fiber(context, self.gamma.apply(context, rho))

    def contains(self, context, rho, a):
        return self.family.contains(context, self.gamma.apply(context, rho), a)

    def restrict(self, context, rho, f, a):
        return self.family.restrict(context, self.gamma.apply(context, rho), f, a)


class CSetMap:
    """A natural map of cubical sets."""

    def __init__(self, src: CubicalSet, dst: CubicalSet, fn, name="map"):
        self.src = src
        self.dst = dst
        self.fn = fn
        self.name = name

    def apply(self, context: frozenset, x):
        return self.fn(context, x)

    def then(self, other: "CSetMap") -> "CSetMap":
        return CSetMap(self.src, other.dst,
                       lambda c, x: other.apply(c, self.apply(c, x)),
                       f"{self.name};{other.name}")


def pairing_map(base: CubicalSet, product: ProductIntervalCSet, endpoint: int,
                name=None) -> CSetMap:
    """<id, e> : base -> base * I at a constant endpoint."""
    return CSetMap(base, product,
                   lambda c, x: (x, dm_const(c, endpoint)),
                   name or f"<id,{endpoint}>")


def fst_map(product: ProductIntervalCSet) -> CSetMap:
    return CSetMap(product, product.base, lambda c, x: x[0], "fst")


# ---------------------------------------------------------------------------
# Exhaustive functor law checking


def enumerate_contexts(max_dim: int) -> list:
    dims = CANONICAL_DIMS[:max_dim]
    out = []
    for n in range(len(dims) + 1):
        for combo in itertools.combinations(dims, n):
            out.append(frozenset(combo))
    return out


def _map_pool(dst: frozenset) -> list:
    """Component pool for map enumeration: everything for at most one
    symbol, else constants, literals and the two connections."""
    if len(dst) <= 1:
        return list(dm_all(dst))
    pool = {}
    for e in (dm_const(dst, 0), dm_const(dst, 1)):
        pool[e.table] = e
    lits = []
    for n in ctx_sorted(dst):
        lits.append(dm_sym(dst, n))
        lits.append(dm_neg(dm_sym(dst, n)))
    for e in lits:
        pool[e.table] = e
    pos = [dm_sym(dst, n) for n in ctx_sorted(dst)]
    for a, b in itertools.combinations(pos, 2):
        pool.setdefault(dm_meet(a, b).table, dm_meet(a, b))
        pool.setdefault(dm_join(a, b).table, dm_join(a, b))
    return list(pool.values())


def enumerate_maps(src: frozenset, dst: frozenset) -> list:
    """Cube maps src -> dst with components from a representative pool: the
    whole free algebra when dst has at most one symbol, else constants,
    literals and connections (covering faces, degeneracies, symmetries,
    reversals and connection squares)."""
    pool = _map_pool(dst)
    names = ctx_sorted(src)
    out = []
    for values in itertools.product(pool, repeat=len(names)):
        out.append(CubeMap.make(src, dst, dict(zip(names, values))))
    return out


def restrict_element(X, f: CubeMap, x):
    """Spec-level action: for a cubical set x is a cell; for a family x is a
    pair (rho, a)."""
    if isinstance(X, Family):
        rho, a = x
        return (X.base.restrict(f.src, f, rho), X.restrict(f.src, rho, f, a))
    return X.restrict(f.src, f, x)


def validate_cset(X, max_dim: int = 2, max_points: int = 24,
                  max_pairs: int = 600) -> list:
    """Check the identity and composition laws; returns violations.

    Identities are checked on every sampled point; composition over
    composable pairs of representative maps between the canonical contexts,
    capped per context triple.
    """
    violations = []
    contexts = enumerate_contexts(max_dim)
    is_family = isinstance(X, Family)

    def points(context):
        if is_family:
            pts = [(rho, a) for rho in X.base.sample_cells(context)
                   for a in X.fiber(context, rho)]
        else:
            pts = X.sample_cells(context)
        if len(pts) > max_points:
            step = max(1, len(pts) // max_points)
            pts = pts[::step]
        return pts

    for context in contexts:
        ident = CubeMap.identity(context)
        for x in points(context):
            got = restrict_element(X, ident, x)
            if got != x:
                violations.append(("identity", context, x, got))
    for src in contexts:
        pts = points(src)
        if not pts:
            continue
        for mid in contexts:
            maps1 = enumerate_maps(src, mid)
            for dst in contexts:
                maps2 = enumerate_maps(mid, dst)
                count = 0
                for f in maps1:
                    for g in maps2:
                        count += 1
                        if count > max_pairs:
                            break
                        fg = f.then(g)
                        for x in pts:
                            via = restrict_element(X, g, restrict_element(X, f, x))
                            direct = restrict_element(X, fg, x)
                            if via != direct:
                                violations.append(("composition", src, mid, dst, f, g, x))
                    if count > max_pairs:
                        break
    return violations
