"""The fixture library the self-test battery runs on, and the plain-text
fixture format for user-supplied tables.

Built-in fixtures: constant discrete sets of sizes 1..3 over a point and
over the interval, the truncated representable interval, a dependent sum
over a two-point base with an interval-valued slice, a contractible
interval-like fibration, and base maps for reindexing checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .interval import dm_all, dm_basic, dm_const, dm_meet, dm_neg, dm_sym
from .cset import (
    CSetMap, ConstantFamily, CubeMap, CubicalSet, DiscreteCSet, Family,
    IntervalCSet, IntervalFamily, PointCSet, TabularCSet, TotalCSet,
)
from .fib import Fib, comp_discrete, comp_interval_family
from .constructions import ContrStruct


class SampledIntervalFamily(IntervalFamily):
    """Interval fibers, with problem enumeration sampling the basic elements
    beyond one dimension."""

    def sample_fiber(self, context, rho):
        if len(context) <= 1:
            return list(dm_all(context))
        return list(dm_basic(context))


def sample_fiber(family: Family, context, rho):
    if hasattr(family, "sample_fiber"):
        return family.sample_fiber(context, rho)
    return family.fiber(context, rho)


def discrete_fib(base: CubicalSet, labels, name: str) -> Fib:
    family = ConstantFamily(base, labels, name=name)
    return Fib(family, comp_discrete(family, base), name=name)


def interval_fib(base: CubicalSet) -> Fib:
    family = SampledIntervalFamily(base)
    return Fib(family, comp_interval_family(family, base), name="W")


def interval_contraction(base: CubicalSet) -> ContrStruct:
    """The interval is contractible onto 0 via the meet connection."""

    def centre(I, rho):
        return dm_const(I, 0)

    def path(I, rho, a, z):
        zctx = I | {z}
        weak = CubeMap.weaken(I, zctx)
        return dm_meet(dm_sym(zctx, z), weak.apply_dm(a))

    return ContrStruct(centre, path)


class TotalSliceFamily(Family):
    """Over the total set of a discrete family: an independent family per
    total point."""

    def __init__(self, total: TotalCSet, slices: dict, name="slices"):
        super().__init__(total)
        self.slices = slices  # total point -> Family
        self.name = name

    def _slice(self, rho):
        return self.slices[rho]

    def fiber(self, context, rho):
        return self._slice(rho).fiber(context, rho)

    def sample_fiber(self, context, rho):
        return sample_fiber(self._slice(rho), context, rho)

    def contains(self, context, rho, a):
        return self._slice(rho).contains(context, rho, a)

    def restrict(self, context, rho, f, a):
        return self._slice(rho).restrict(context, rho, f, a)


def sigma_fixture():
    """A dependent sum over a two-point base: the fiber over one point is the
    interval, over the other a singleton."""
    base = DiscreteCSet(["p", "q"], name="2pt")
    A = discrete_fib(base, ["a1", "a2"], name="A2")
    total = TotalCSet(base, A.family)
    w_family = SampledIntervalFamily(total)
    unit_family = ConstantFamily(total, ["u"], name="u1")
    slices = {
        ("p", "a1"): w_family,
        ("p", "a2"): unit_family,
        ("q", "a1"): unit_family,
        ("q", "a2"): unit_family,
    }
    family = TotalSliceFamily(total, slices, name="B-slices")
    w_comp = comp_interval_family(w_family, total)
    disc = comp_discrete(unit_family, total)

    def comp(problem):
        # the base is discrete, so the slice is constant along the path
        rho = total.restrict(problem.zctx, problem.end_map(0), problem.path)
        if slices[rho] is w_family:
            return w_comp(problem)
        return disc(problem)

    B = Fib(family, comp, name="B")
    from .fib import comp_sigma
    return base, A, B, comp_sigma(A, B)


@dataclass
class Fixture:
    name: str
    base: CubicalSet
    fib: Fib
    contractible: object = None  # ContrStruct when applicable


def base_maps():
    """Nontrivial base endomaps of the interval for reindexing checks."""
    iv = IntervalCSet()
    neg = CSetMap(iv, iv, lambda I, r: dm_neg(r), name="neg")
    squash = CSetMap(iv, iv, lambda I, r: dm_meet(r, dm_neg(r)), name="r/\\~r")
    return [neg, squash]


def builtin_fixtures():
    point = PointCSet()
    iv = IntervalCSet()
    fixtures = [
        Fixture("pt/one", point, discrete_fib(point, ["x"], "D1"),
                contractible=ContrStruct(
                    lambda I, rho: "x",
                    lambda I, rho, a, z: "x")),
        Fixture("pt/two", point, discrete_fib(point, ["x", "y"], "D2")),
        Fixture("pt/three", point, discrete_fib(point, ["x", "y", "w"], "D3")),
        Fixture("interval/two", iv, discrete_fib(iv, ["x", "y"], "D2/I")),
        Fixture("pt/interval-fiber", point, interval_fib(point),
                contractible=interval_contraction(point)),
    ]
    return fixtures


# ---------------------------------------------------------------------------
# Plain-text fixture tables
#
#   cset <name>
#     cells: a b c
#   family <name> over <cset>
#     fiber a: u v
#     fiber b: w
#
# Declares constant (discrete) cubical sets and families over them; blocks
# are separated by blank lines, comments start with '#'.


class FixtureFormatError(Exception):
    pass


def load_fixture_file(path) -> list:
    text = open(path).read()
    csets = {}
    fixtures = []
    current = None
    mode = None
    fibers = {}
    name = None
    over = None

    def finish():
        nonlocal current, mode, fibers, name, over
        if mode == "family":
            base = csets.get(over)
            if base is None:
                raise FixtureFormatError(f"family {name} over unknown cset {over}")
            labels_by_cell = dict(fibers)
            missing = [c for c in base.labels if c not in labels_by_cell]
            if missing:
                raise FixtureFormatError(
                    f"family {name} is missing fibers for {missing}")

            class _TableFamily(Family):
                def __init__(self):
                    super().__init__(base)
                    self.name = name

                def fiber(self, context, rho):
                    return list(labels_by_cell[rho])

                def restrict(self, context, rho, f, a):
                    return a

            family = _TableFamily()
            fixtures.append(Fixture(f"loaded/{name}", base,
                                    Fib(family, comp_discrete(family, base),
                                        name=name)))
        mode = None
        fibers = {}

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            finish()
            continue
        parts = line.split()
        if parts[0] == "cset":
            finish()
            name = parts[1]
            mode = "cset"
        elif parts[0] == "family":
            finish()
            if len(parts) != 4 or parts[2] != "over":
                raise FixtureFormatError(f"bad family header: {line!r}")
            name, over = parts[1], parts[3]
            mode = "family"
        elif parts[0] == "cells:" and mode == "cset":
            csets[name] = DiscreteCSet(parts[1:], name=name)
        elif parts[0] == "fiber" and mode == "family":
            cell = parts[1].rstrip(":")
            fibers[cell] = parts[2:]
        else:
            raise FixtureFormatError(f"unrecognized fixture line: {line!r}")
    finish()
    return fixtures
