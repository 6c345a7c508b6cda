"""Strictification, realignment and the path constructions on fibrations.

Everything here manipulates fibrations over a fixed base and produces new
fibrations whose defining equations (endpoint reindexings, restriction
equations) hold as equalities of finite data; the self-test checks them
exhaustively on the fixture library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .interval import (
    ModelError, dm_const, dm_is_const, dm_sym, face_forall, face_of_eq,
    face_or, face_top,
)
from .cset import (
    CSetMap, Cofibration, CubeMap, CubicalSet, Family, ProductIntervalCSet,
    RestrictedCSet, cof_endpoints, extend_clause_map, fst_map, pairing_map,
)
from .fib import (
    CompositionError, Fib, Partial, Problem, clause_path, clause_stage,
    comp_unit, fill, partial_at, path_at, _fresh_dim,
)


@dataclass
class StrictIso:
    """Fiberwise mutually inverse maps between two families over one base."""

    source: Family
    target: Family
    fwd: object  # (I, rho, a) -> b
    bwd: object  # (I, rho, b) -> a
    name: str = "iso"


def identity_iso(family: Family, name: str = "id") -> StrictIso:
    return StrictIso(family, family,
                     lambda I, rho, a: a, lambda I, rho, b: b, name)


@dataclass
class FibPath:
    """A fibration over base*I whose endpoint reindexings are the recorded
    fibrations, as equalities of finite data."""

    line: Fib  # over ProductIntervalCSet(base)
    source: Fib
    target: Fib


@dataclass
class MisalignedPath:
    line: Fib  # over base*I
    iso0: StrictIso  # source family ~= line at 0
    iso1: StrictIso  # target family ~= line at 1
    source: Fib
    target: Fib


@dataclass
class ContrStruct:
    """A centre in every fiber and a path from it to every element."""

    centre: object  # (I, rho) -> element
    path: object  # (I, rho, a, z) -> element over I+{z}, centre at 0, a at 1


@dataclass
class ExtStruct:
    """Extends every cofibrant partial element of each fiber."""

    extend: object  # (I, rho, phi: Face, values: {clause: element}) -> element


def reindex_fib(fib: Fib, gamma: CSetMap, name: str = None) -> Fib:
    """Pull a fibration back along a map of bases; composition pushes the
    problem's path forward."""
    from .cset import ReindexedFamily

    family = ReindexedFamily(fib.family, gamma)

    def comp(problem: Problem):
        pushed = Problem(problem.I, problem.z, problem.e,
                         gamma.apply(problem.zctx, problem.path),
                         problem.phi, problem.partial, problem.a0)
        return fib.comp(pushed)

    return Fib(family, comp, name=name or f"{fib.name}[{gamma.name}]")


def endpoint_reindex(path_fib: Fib, base: CubicalSet, endpoint: int) -> Fib:
    """Reindex a fibration over base*I along <id, endpoint>."""
    product = path_fib.base
    return reindex_fib(path_fib, pairing_map(base, product, endpoint),
                       name=f"{path_fib.name}@{endpoint}")


def fill_path(fib: Fib, problem: Problem):
    """The filler as a path element over the problem's own direction."""
    w = _fresh_dim(problem.zctx)
    q = fill(fib, problem, w)
    I, z = problem.I, problem.z
    wctx = I | {w}
    to_w = CubeMap.make(problem.zctx, wctx,
                        {**{n: dm_sym(wctx, n) for n in I}, z: dm_sym(wctx, w)})
    path_w = fib.base.restrict(problem.zctx, to_w, problem.path)
    rename = CubeMap.make(wctx, problem.zctx,
                          {**{n: dm_sym(problem.zctx, n) for n in I},
                           w: dm_sym(problem.zctx, z)})
    return fib.family.restrict(wctx, path_w, rename, q)


# ---------------------------------------------------------------------------
# Realignment


def realign(cof: Cofibration, beta: Fib, alpha: Fib, name: str = None) -> Fib:
    """A composition structure on alpha's family that restricts on the nose
    to beta over the cofibration.

    beta lives over the restricted base (same family data); the realigned
    structure extends every problem by the fill of beta over the region where
    the whole path satisfies the cofibration.
    """
    family, base = alpha.family, alpha.base

    def face_of_clause(I, clause):
        f = face_top(I)
        from .interval import face_and, face_eq_sym
        for nm, e in clause:
            f = face_and(f, face_eq_sym(I, nm, e))
        return f

    def comp(problem: Problem):
        phi_p = cof.face(problem.zctx, problem.path)
        allf = face_forall(phi_p, problem.z)
        phi2 = face_or(problem.phi, allf)
        values = {}
        from .fib import restrict_problem
        for clause in phi2.clauses():
            if face_of_clause(problem.I, clause).entails(allf):
                restricted = restrict_problem(family, base, problem, clause)
                values[clause] = fill_path(beta, restricted)
            else:
                values[clause] = partial_at(family, base, problem, clause)
        newp = Problem(problem.I, problem.z, problem.e, problem.path,
                       phi2, Partial(phi2, values), problem.a0)
        return alpha.comp(newp)

    return Fib(family, comp, name=name or f"realign({alpha.name})")


# ---------------------------------------------------------------------------
# Closure under isomorphism


def isofib(iso: StrictIso, beta: Fib, name: str = None) -> Fib:
    """Transfer a composition structure across a fiberwise isomorphism (only
    the retraction law bwd . fwd = id is used)."""
    family = iso.source
    base = beta.base

    def comp(problem: Problem):
        values = {}
        for clause, v in problem.partial.values.items():
            stage = clause_stage(problem.I, clause) | {problem.z}
            values[clause] = iso.fwd(stage, clause_path(base, problem, clause), v)
        b0 = iso.fwd(problem.I, path_at(base, problem, problem.e), problem.a0)
        bprob = Problem(problem.I, problem.z, problem.e, problem.path,
                        problem.phi, Partial(problem.phi, values), b0)
        b1 = beta.comp(bprob)
        return iso.bwd(problem.I, path_at(base, problem, 1 - problem.e), b1)

    return Fib(family, comp, name=name or f"isofib({beta.name})")


# ---------------------------------------------------------------------------
# Strictification


class StrictifiedFamily(Family):
    """A's fibers where the cofibration holds, B's elsewhere; restrictions
    entering the region pass through the isomorphism's inverse once."""

    def __init__(self, cof: Cofibration, partial: Family, total: Family, iso: StrictIso):
        super().__init__(total.base)
        self.cof = cof
        self.partial = partial
        self.total = total
        self.iso = iso
        self.name = f"strictify({partial.name},{total.name})"

    def fiber(self, context, rho):
        if self.cof.holds(context, rho):
            return self.partial.fiber(context, rho)
        return self.total.fiber(context, rho)

    def contains(self, context, rho, a):
        if self.cof.holds(context, rho):
            return self.partial.contains(context, rho, a)
        return self.total.contains(context, rho, a)

    def restrict(self, context, rho, f, x):
        inside = self.cof.holds(context, rho)
        target = f.dst
        rho_f = self.base.restrict(context, f, rho)
        lands_inside = self.cof.holds(target, rho_f)
        if inside:
            return self.partial.restrict(context, rho, f, x)
        y = self.total.restrict(context, rho, f, x)
        if lands_inside:
            return self.iso.bwd(target, rho_f, y)
        return y


def strictify(cof: Cofibration, partial: Family, total: Family,
              iso: StrictIso):
    """Replace `total` by a family equal to `partial` over the cofibration
    and isomorphic to `total`, the isomorphism extending `iso`."""
    out = StrictifiedFamily(cof, partial, total, iso)

    def fwd(I, rho, x):
        if cof.holds(I, rho):
            return iso.fwd(I, rho, x)
        return x

    def bwd(I, rho, y):
        if cof.holds(I, rho):
            return iso.bwd(I, rho, y)
        return y

    return out, StrictIso(out, total, fwd, bwd, name=f"{iso.name}'")


def strictify_fib(cof: Cofibration, partial: Fib, total: Fib, iso: StrictIso,
                  name: str = None):
    """Fibration-level strictification: the new fibration restricts to
    `partial` on the nose (family and composition), via realignment."""
    family, iso2 = strictify(cof, partial.family, total.family, iso)
    pre = isofib(iso2, total)
    restricted = Fib(family, partial.comp, name=f"{partial.name}|")
    comp = realign(cof, restricted, pre).comp
    return Fib(family, comp, name=name or f"strictify({partial.name})"), iso2


# ---------------------------------------------------------------------------
# The join of two fibrations over the endpoints of base*I


class VeebarFamily(Family):
    """Over (base*I) restricted to (i=0) \\/ (i=1): A's fibers on the 0 end,
    B's on the 1 end."""

    def __init__(self, A: Family, B: Family, product: ProductIntervalCSet,
                 restricted: RestrictedCSet):
        super().__init__(restricted)
        self.A = A
        self.B = B
        self.product = product
        self.name = f"({A.name} v {B.name})"

    def _side(self, r):
        if dm_is_const(r, 0):
            return 0
        if dm_is_const(r, 1):
            return 1
        raise ModelError("veebar cell is not at an endpoint")

    def fiber(self, context, rho):
        x, r = rho
        return (self.A if self._side(r) == 0 else self.B).fiber(context, x)

    def contains(self, context, rho, a):
        x, r = rho
        return (self.A if self._side(r) == 0 else self.B).contains(context, x, a)

    def restrict(self, context, rho, f, a):
        x, r = rho
        return (self.A if self._side(r) == 0 else self.B).restrict(context, x, f, a)


def veebar(A: Fib, B: Fib, iso0: Optional[StrictIso] = None,
           iso1: Optional[StrictIso] = None, line: Optional[Fib] = None):
    """The fibration over (base*I)|((i=0) \\/ (i=1)) that is A at 0 and B
    at 1; a problem's path is forced to one side because the interval is
    connected.  When endpoint isomorphisms into a line over base*I are
    supplied, they join to an isomorphism on the restriction."""
    base = A.base
    product = ProductIntervalCSet(base)
    cof = cof_endpoints()
    restricted = RestrictedCSet(product, cof)
    family = VeebarFamily(A.family, B.family, product, restricted)

    def comp(problem: Problem):
        x_path, r = problem.path
        if dm_is_const(r, 0):
            side = A
        elif dm_is_const(r, 1):
            side = B
        else:
            raise CompositionError("veebar path does not factor through an endpoint")
        inner = Problem(problem.I, problem.z, problem.e, x_path,
                        problem.phi, problem.partial, problem.a0)
        return side.comp(inner)

    vee = Fib(family, comp, name=f"({A.name} v {B.name})")
    if iso0 is None:
        return vee, None

    def fwd(I, rho, a):
        x, r = rho
        if dm_is_const(r, 0):
            return iso0.fwd(I, x, a)
        return iso1.fwd(I, x, a)

    def bwd(I, rho, b):
        x, r = rho
        if dm_is_const(r, 0):
            return iso0.bwd(I, x, b)
        return iso1.bwd(I, x, b)

    target = line.family if line is not None else None
    return vee, StrictIso(family, target, fwd, bwd, name="iso0 v iso1")


# ---------------------------------------------------------------------------
# Improving misaligned paths; paths from isomorphisms


def improve(m: MisalignedPath) -> FibPath:
    """Strictify a misaligned path so its endpoints are the recorded
    fibrations on the nose."""
    vee, isoV = veebar(m.source, m.target, m.iso0, m.iso1, line=m.line)
    cof = cof_endpoints()
    line2, _ = strictify_fib(cof, vee, m.line, isoV, name=f"improve({m.line.name})")
    return FibPath(line2, m.source, m.target)


def isopath(iso: StrictIso, A: Fib, B: Fib) -> FibPath:
    """A path between strictly isomorphic fibrations: improve the constant
    line at B along (iso, id)."""
    product = ProductIntervalCSet(A.base)
    line = reindex_fib(B, fst_map(product), name=f"{B.name}[fst]")
    iso0 = StrictIso(A.family, line.family, iso.fwd, iso.bwd, name=iso.name)
    iso1 = identity_iso(B.family)
    return improve(MisalignedPath(line, iso0, iso1, A, B))


def coerce_along(P: FibPath, I: frozenset, x, a, z: str = "z"):
    """Transport along a path of fibrations: the empty composition from 0
    to 1 over the path (x, z)."""
    from .interval import face_bot

    product = P.line.base  # base*I
    zctx = I | {z}
    x_w = product.base.restrict(I, CubeMap.weaken(I, zctx), x)
    path = (x_w, dm_sym(zctx, z))
    problem = Problem(I, z, 0, path, face_bot(I), Partial.empty(I), a)
    return P.line.comp(problem)


def coerce_iso_witness(iso: StrictIso, B: Fib, I: frozenset, x, a, w: str = "w"):
    """A path value whose 0 end is iso.fwd applied to a and whose 1 end is
    the coercion along isopath(iso): the degenerate fill of the empty
    problem at iso.fwd(a)."""
    from .interval import face_bot

    zctx = I | {"z"}
    x_w = B.base.restrict(I, CubeMap.weaken(I, zctx), x)
    problem = Problem(I, "z", 0, x_w, face_bot(I), Partial.empty(I),
                      iso.fwd(I, x, a))
    return fill(B, problem, w)


# ---------------------------------------------------------------------------
# The contraction of a family, and paths to the unit


class ContractionFamily(Family):
    """C_A over base*I: the fiber at (x, r) is the set of partial elements of
    A(x) defined on (r = 0), as clause dictionaries."""

    def __init__(self, A: Family, product: ProductIntervalCSet):
        super().__init__(product)
        self.A = A
        self.name = f"C({A.name})"

    def fiber(self, context, rho):
        x, r = rho
        face0 = face_of_eq(r, 0)
        clauses = face0.clauses()
        if not clauses:
            return [frozenset()]
        choices = []
        for clause in clauses:
            stage = clause_stage(context, clause)
            g = CubeMap.face(context, clause)
            xr = self.base.base.restrict(context, g, x)
            choices.append([(clause, v) for v in self.A.fiber(stage, xr)])
        out = []
        import itertools
        for combo in itertools.product(*choices):
            if self._compatible(context, x, dict(combo)):
                out.append(frozenset(combo))
        return out

    def _compatible(self, context, x, values) -> bool:
        base = self.base.base
        for c1 in values:
            for c2 in values:
                if c1 >= c2:
                    continue
                merged = dict(c1)
                ok = True
                for nm, e in c2:
                    if merged.get(nm, e) != e:
                        ok = False
                        break
                    merged[nm] = e
                if not ok:
                    continue  # inconsistent overlap
                union = frozenset(merged.items())
                v1 = self._restrict_value(context, x, c1, values[c1], union)
                v2 = self._restrict_value(context, x, c2, values[c2], union)
                if v1 != v2:
                    return False
        return True

    def _restrict_value(self, context, x, clause, value, to_clause):
        base = self.base.base
        stage = clause_stage(context, clause)
        extra = frozenset(to_clause - clause)
        if not extra:
            return value
        g = CubeMap.face(context, clause)
        xr = base.restrict(context, g, x)
        return self.A.restrict(stage, xr, CubeMap.face(stage, extra), value)

    def element_at(self, context, x, values: frozenset, clause: frozenset):
        """Resolve a partial element at any clause of its face."""
        d = dict(values)
        for c, v in d.items():
            if c <= clause:
                return self._restrict_value(context, x, c, v, clause)
        raise ModelError("partial element undefined at the requested clause")

    def restrict(self, context, rho, f, a):
        x, r = rho
        base = self.base.base
        target = f.dst
        rf = f.apply_dm(r)
        xf = base.restrict(context, f, x)
        face0 = face_of_eq(rf, 0)
        out = []
        for clause in face0.clauses():
            m = f.then(CubeMap.face(target, clause))
            # factor m through a clause of (r = 0)
            factored = None
            for c, v in dict(a).items():
                fixed = dict(c)
                if all(dm_is_const(m.assignment[nm], e)
                       for nm, e in c):
                    rest = {nm: m.assignment[nm] for nm in context
                            if nm not in fixed}
                    stage = clause_stage(context, c)
                    remainder = CubeMap.make(stage, clause_stage(target, clause), rest)
                    xr = base.restrict(context, CubeMap.face(context, c), x)
                    factored = self.A.restrict(stage, xr, remainder, v)
                    break
            if factored is None:
                raise ModelError(
                    "restriction does not factor through the recorded clauses")
            out.append((clause, factored))
        return frozenset(out)


def contraction_fib(A: Fib, ext: ExtStruct) -> Fib:
    """The contraction C_A with the composition induced by an extension
    structure: each boundary value is extended fiberwise."""
    base = A.base
    product = ProductIntervalCSet(base)
    family = ContractionFamily(A.family, product)

    def comp(problem: Problem):
        from .interval import face_subst_clause

        x_path, r_path = problem.path
        end = 1 - problem.e
        end_map = problem.end_map(end)
        end_x = base.restrict(problem.zctx, end_map, x_path)
        end_r = end_map.apply_dm(r_path)
        face0 = face_of_eq(end_r, 0)
        out = []
        for clause in face0.clauses():
            stage = clause_stage(problem.I, clause)
            x_c = base.restrict(problem.I, CubeMap.face(problem.I, clause), end_x)
            phi_c = face_subst_clause(problem.phi, clause)
            values = {}
            for v in phi_c.clauses():
                union = frozenset(clause | v)
                cav = partial_at(family, family.base, problem, union)
                stage_u = clause_stage(problem.I, union)
                stage_uz = stage_u | {problem.z}
                pth = clause_path(family.base, problem, union)
                ez = CubeMap.face(stage_uz, frozenset({(problem.z, end)}))
                at_end = family.restrict(stage_uz, pth, ez, cav)
                # the end face is trivially true under the clause, so the
                # partial element is total; its value sits at the empty clause
                x_u, _ = family.base.restrict(stage_uz, ez, pth)
                values[v] = family.element_at(stage_u, x_u, at_end, frozenset())
            out.append((clause, ext.extend(stage, x_c, phi_c, values)))
        return frozenset(out)

    return Fib(family, comp, name=f"C({A.name})")


def extend_from_contractible(A: Fib, contr: ContrStruct) -> ExtStruct:
    """A fibrant contractible family extends partial elements: compose from
    the centre along the contraction paths."""
    base = A.base

    def extend(I, x, phi, values):
        z = _fresh_dim(I)
        zctx = I | {z}
        x_w = base.restrict(I, CubeMap.weaken(I, zctx), x)
        path_values = {}
        for clause, v in values.items():
            stage = clause_stage(I, clause)
            xr = base.restrict(I, CubeMap.face(I, clause), x)
            path_values[clause] = contr.path(stage, xr, v, z)
        problem = Problem(I, z, 0, x_w, phi, Partial(phi, path_values),
                          contr.centre(I, x))
        return A.comp(problem)

    return ExtStruct(extend)


def contract_path(A: Fib, contr: ContrStruct) -> FibPath:
    """The path from a contractible fibration to the unit: improve the
    contraction C_A along the evident endpoint isomorphisms."""
    base = A.base
    ext = extend_from_contractible(A, contr)
    cfib = contraction_fib(A, ext)
    unit = comp_unit(base)
    family = cfib.family

    def iso0_fwd(I, x, a):
        return frozenset({(frozenset(), a)})

    def iso0_bwd(I, x, d):
        return family.element_at(I, x, d, frozenset())

    line0 = endpoint_reindex(cfib, base, 0)
    line1 = endpoint_reindex(cfib, base, 1)
    iso0 = StrictIso(A.family, line0.family, iso0_fwd, iso0_bwd, name="iso_A")
    iso1 = StrictIso(unit.family, line1.family,
                     lambda I, x, a: frozenset(),
                     lambda I, x, d: "*", name="iso_1")
    return improve(MisalignedPath(cfib, iso0, iso1, A, unit))
