"""Free De Morgan algebra on dimension symbols, and the face lattice.

Equality of De Morgan expressions is decided by evaluating under every
valuation of the generators into the four-element De Morgan algebra DM4;
every De Morgan algebra embeds into a power of DM4, so agreement of the
valuation tables is sound and complete.  The table doubles as a canonical
representative, giving O(1) equality and hashing.

Face formulas (cofibrant propositions) are decided the same way over
three-valued valuations {0, 1, generic}: the face lattice is the free
distributive lattice on the literals (i=0), (i=1) modulo their meet being
absurd, and those valuations are exactly its prime filters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

MAX_DIM = 2

# DM4 carrier: BOT=0, TOP=3 and two fixed points 1, 2 of the involution.
_DM4 = (0, 1, 2, 3)
_NEG = {0: 3, 1: 1, 2: 2, 3: 0}


def _meet(u, v):
    if u == v:
        return u
    return min(u, v) if (u in (0, 3) or v in (0, 3)) else 0


def _join(u, v):
    if u == v:
        return u
    return max(u, v) if (u in (0, 3) or v in (0, 3)) else 3


class ModelError(Exception):
    pass


class ContextMismatchError(ModelError):
    pass


def ctx(*names) -> frozenset:
    return frozenset(names)


def ctx_sorted(context: frozenset) -> tuple:
    return tuple(sorted(context))


@lru_cache(maxsize=None)
def _valuations(names: tuple) -> tuple:
    return tuple(itertools.product(_DM4, repeat=len(names)))


@dataclass(frozen=True)
class DM:
    """An element of the free De Morgan algebra over `ctx`.

    `table` lists the DM4 value under every valuation of the sorted
    generators; `expr` keeps the construction tree for substitution and for
    translating endpoint equations into face formulas.
    """

    ctx: frozenset
    table: tuple
    expr: object = field(compare=False)

    def __repr__(self):
        return f"DM({dm_show(self)})"


def _tabulate(context: frozenset, fn) -> tuple:
    names = ctx_sorted(context)
    return tuple(fn(dict(zip(names, vs))) for vs in _valuations(names))


def dm_const(context: frozenset, endpoint: int) -> DM:
    value = 0 if endpoint == 0 else 3
    return DM(context, _tabulate(context, lambda env: value), ("const", endpoint))


def dm_sym(context: frozenset, name: str) -> DM:
    if name not in context:
        raise ContextMismatchError(f"{name} not in context {sorted(context)}")
    return DM(context, _tabulate(context, lambda env: env[name]), ("sym", name))


def _same_ctx(x: DM, y: DM):
    if x.ctx != y.ctx:
        raise ContextMismatchError(f"{sorted(x.ctx)} vs {sorted(y.ctx)}")


def dm_neg(x: DM) -> DM:
    return DM(x.ctx, tuple(_NEG[v] for v in x.table), ("neg", x.expr))


def dm_meet(x: DM, y: DM) -> DM:
    _same_ctx(x, y)
    return DM(x.ctx, tuple(_meet(u, v) for u, v in zip(x.table, y.table)),
              ("meet", x.expr, y.expr))


def dm_join(x: DM, y: DM) -> DM:
    _same_ctx(x, y)
    return DM(x.ctx, tuple(_join(u, v) for u, v in zip(x.table, y.table)),
              ("join", x.expr, y.expr))


def dm_eq(x: DM, y: DM) -> bool:
    """True iff x and y agree under every DM4 valuation."""
    _same_ctx(x, y)
    return x.table == y.table


def dm_is_const(x: DM, endpoint: int) -> bool:
    value = 0 if endpoint == 0 else 3
    return all(v == value for v in x.table)


def _eval_expr(expr, env: dict, target: frozenset) -> DM:
    match expr:
        case ("const", e):
            return dm_const(target, e)
        case ("sym", name):
            return env[name]
        case ("neg", inner):
            return dm_neg(_eval_expr(inner, env, target))
        case ("meet", a, b):
            return dm_meet(_eval_expr(a, env, target), _eval_expr(b, env, target))
        case ("join", a, b):
            return dm_join(_eval_expr(a, env, target), _eval_expr(b, env, target))
    raise ModelError(f"bad expression {expr!r}")


def dm_subst(x: DM, assign: dict, target: frozenset) -> DM:
    """Substitute `assign` (symbol -> DM over target) through x."""
    return _eval_expr(x.expr, assign, target)


def dm_show(x: DM) -> str:
    def go(expr):
        match expr:
            case ("const", e):
                return str(e)
            case ("sym", n):
                return n
            case ("neg", i):
                return f"~{go(i)}"
            case ("meet", a, b):
                return f"({go(a)} /\\ {go(b)})"
            case ("join", a, b):
                return f"({go(a)} \\/ {go(b)})"
    return go(x.expr)


@lru_cache(maxsize=None)
def dm_all(context: frozenset) -> tuple:
    """Every element of the free algebra over `context` (closure of the
    generators and endpoints under the operations), one per table."""
    if len(context) > 2:
        raise ModelError("dm_all is only tractable up to two generators")
    elems = {dm_const(context, 0).table: dm_const(context, 0)}
    for e in [dm_const(context, 1)] + [dm_sym(context, n) for n in sorted(context)]:
        elems[e.table] = e
    changed = True
    while changed:
        changed = False
        current = list(elems.values())
        for x in current:
            n = dm_neg(x)
            if n.table not in elems:
                elems[n.table] = n
                changed = True
        for x in current:
            for y in current:
                for z in (dm_meet(x, y), dm_join(x, y)):
                    if z.table not in elems:
                        elems[z.table] = z
                        changed = True
    return tuple(elems.values())


def dm_basic(context: frozenset) -> tuple:
    """Constants, literals, and binary meets/joins of literals; used when the
    full algebra is too big to enumerate."""
    lits = []
    for n in sorted(context):
        lits.append(dm_sym(context, n))
        lits.append(dm_neg(dm_sym(context, n)))
    out = {e.table: e for e in (dm_const(context, 0), dm_const(context, 1), *lits)}
    for a, b in itertools.combinations(lits, 2):
        for e in (dm_meet(a, b), dm_join(a, b)):
            out.setdefault(e.table, e)
    return tuple(out.values())


# ---------------------------------------------------------------------------
# Face formulas.  GEN marks a dimension left generic by a valuation.

GEN = 2


@lru_cache(maxsize=None)
def _face_valuations(names: tuple) -> tuple:
    return tuple(itertools.product((0, 1, GEN), repeat=len(names)))


@dataclass(frozen=True)
class Face:
    """A cofibrant proposition over a dimension context, canonically
    represented by its set of satisfying {0, 1, generic} valuations."""

    ctx: frozenset
    sat: frozenset  # of valuation tuples over the sorted context

    def __repr__(self):
        if self.is_top:
            return "Face(T)"
        if self.is_bot:
            return "Face(F)"
        return f"Face({sorted(self.clauses())})"

    @property
    def is_top(self) -> bool:
        return len(self.sat) == len(_face_valuations(ctx_sorted(self.ctx)))

    @property
    def is_bot(self) -> bool:
        return not self.sat

    def entails(self, other: "Face") -> bool:
        if self.ctx != other.ctx:
            raise ContextMismatchError("face contexts differ")
        return self.sat <= other.sat

    def clauses(self) -> tuple:
        """Canonical generating clauses: minimal satisfying valuations, as
        frozensets of (symbol, endpoint) literals."""
        names = ctx_sorted(self.ctx)
        out = []
        for v in self.sat:
            smaller = False
            for w in self.sat:
                if w != v and all(
                    wi == GEN or wi == vi for wi, vi in zip(w, v)
                ):
                    smaller = True
                    break
            if not smaller:
                out.append(frozenset(
                    (n, e) for n, e in zip(names, v) if e != GEN))
        return tuple(sorted(out, key=sorted))


def face_top(context: frozenset) -> Face:
    return Face(context, frozenset(_face_valuations(ctx_sorted(context))))


def face_bot(context: frozenset) -> Face:
    return Face(context, frozenset())


def face_eq_sym(context: frozenset, name: str, endpoint: int) -> Face:
    if name not in context:
        raise ContextMismatchError(f"{name} not in context {sorted(context)}")
    names = ctx_sorted(context)
    i = names.index(name)
    sat = frozenset(v for v in _face_valuations(names) if v[i] == endpoint)
    return Face(context, sat)


def face_and(a: Face, b: Face) -> Face:
    if a.ctx != b.ctx:
        raise ContextMismatchError("face contexts differ")
    return Face(a.ctx, a.sat & b.sat)


def face_or(a: Face, b: Face) -> Face:
    if a.ctx != b.ctx:
        raise ContextMismatchError("face contexts differ")
    return Face(a.ctx, a.sat | b.sat)


def face_forall(a: Face, name: str) -> Face:
    """Right adjoint to weakening by `name`: holds when every instantiation
    of `name` (0, 1, or generic) satisfies a."""
    names = ctx_sorted(a.ctx)
    i = names.index(name)
    rest = a.ctx - {name}
    rest_names = ctx_sorted(rest)
    sat = []
    for v in _face_valuations(rest_names):
        env = dict(zip(rest_names, v))
        ok = True
        for inst in (0, 1, GEN):
            env[name] = inst
            w = tuple(env[n] for n in names)
            if w not in a.sat:
                ok = False
                break
        if ok:
            sat.append(v)
    return Face(rest, frozenset(sat))


def face_of_eq(r: DM, endpoint: int) -> Face:
    """The face formula (r = endpoint), by the usual recursion on r."""
    def go(expr, e):
        match expr:
            case ("const", c):
                return face_top(r.ctx) if c == e else face_bot(r.ctx)
            case ("sym", n):
                return face_eq_sym(r.ctx, n, e)
            case ("neg", inner):
                return go(inner, 1 - e)
            case ("meet", a, b):
                if e == 1:
                    return face_and(go(a, 1), go(b, 1))
                return face_or(go(a, 0), go(b, 0))
            case ("join", a, b):
                if e == 1:
                    return face_or(go(a, 1), go(b, 1))
                return face_and(go(a, 0), go(b, 0))
        raise ModelError(f"bad expression {expr!r}")

    # constants-by-table get the sharp answer regardless of the tree shape
    if dm_is_const(r, endpoint):
        return face_top(r.ctx)
    return go(r.expr, endpoint)


def face_weaken(a: Face, target: frozenset) -> Face:
    """Reinterpret a over a larger context."""
    extra = ctx_sorted(target - a.ctx)
    names = ctx_sorted(a.ctx)
    tnames = ctx_sorted(target)
    sat = []
    for v in a.sat:
        env = dict(zip(names, v))
        for ext in itertools.product((0, 1, GEN), repeat=len(extra)):
            env.update(zip(extra, ext))
            sat.append(tuple(env[n] for n in tnames))
    return Face(target, frozenset(sat))


def face_subst_clause(a: Face, clause: frozenset) -> Face:
    """Substitute the endpoints of `clause` into a (a face over the smaller
    context)."""
    names = ctx_sorted(a.ctx)
    fixed = dict(clause)
    rest = a.ctx - set(fixed)
    rest_names = ctx_sorted(rest)
    sat = []
    for v in _face_valuations(rest_names):
        env = dict(zip(rest_names, v))
        env.update(fixed)
        w = tuple(env[n] for n in names)
        if w in a.sat:
            sat.append(v)
    return Face(rest, frozenset(sat))


def face_subst_map(a: Face, assign: dict, target: frozenset) -> Face:
    """Substitute a full assignment (symbol -> DM over target) through a,
    clause by clause."""
    out = face_bot(target)
    for clause in a.clauses():
        part = face_top(target)
        for name, endpoint in clause:
            part = face_and(part, face_of_eq(assign[name], endpoint))
        out = face_or(out, part)
    return out
