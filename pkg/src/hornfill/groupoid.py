"""Finite groups, actions, groupoids, and simplicial objects in sets.

Conventions.  Group multiplication `mul[(g, h)]` is "g after h": acting by
h first and then by g equals acting by mul[(g, h)].  The quotient groupoid
of an action has a morphism (g, x): x -> g.x for every pair, composed by
(h, g.x) o (g, x) = (hg, x).  The bar-construction simplicial object has
level n = G^n x X with d_0 applying the first group element, inner d_i
merging adjacent ones, and d_n dropping the last; its comparison with the
Cech nerve of the anchor map is a levelwise bijection exactly on torsors.

All checks are exhaustive; cardinalities use exact rationals.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .config import DEFAULT_BUDGET, DEFAULT_LEVEL_CAP
from .errors import CapacityError, InputError, ValidationError
from .cat import FiniteCategory


class FinMap:
    """A total map between explicit finite sets."""

    def __init__(self, dom, cod, table, check=True):
        self.dom = tuple(sorted(dom))
        self.cod = tuple(sorted(cod))
        self.table = dict(table)
        if check:
            self.validate()

    def validate(self):
        if set(self.table) != set(self.dom):
            raise ValidationError("map not total on its domain")
        bad = [x for x, y in self.table.items() if y not in set(self.cod)]
        if bad:
            raise ValidationError(f"map leaves codomain at {bad[0]!r}")

    def __call__(self, x):
        return self.table[x]

    def fiber(self, b):
        return tuple(x for x in self.dom if self.table[x] == b)

    def is_surjective(self):
        return set(self.table.values()) == set(self.cod)

    def is_injective(self):
        return len(set(self.table.values())) == len(self.dom)

    def __repr__(self):
        return f"FinMap({len(self.dom)} -> {len(self.cod)})"


class FiniteGroup:
    def __init__(self, elements, mul, check=True):
        self.elements = tuple(sorted(elements))
        self.mul = dict(mul)
        self._identity = None
        self._inverse = {}
        if check:
            self.validate()

    def validate(self):
        es = self.elements
        if len(set(es)) != len(es):
            raise ValidationError("duplicate group elements")
        for a in es:
            for b in es:
                if (a, b) not in self.mul or self.mul[(a, b)] not in set(es):
                    raise ValidationError(f"multiplication not closed at ({a!r},{b!r})")
        self.identity()
        for a in es:
            for b in es:
                for c in es:
                    if self.mul[(self.mul[(a, b)], c)] != self.mul[(a, self.mul[(b, c)])]:
                        raise ValidationError(f"associativity fails at ({a!r},{b!r},{c!r})")
        for a in es:
            self.inverse(a)

    def identity(self):
        if self._identity is None:
            for e in self.elements:
                if all(self.mul[(e, x)] == x and self.mul[(x, e)] == x for x in self.elements):
                    self._identity = e
                    break
            else:
                raise ValidationError("no identity element")
        return self._identity

    def inverse(self, a):
        if a not in self._inverse:
            e = self.identity()
            for b in self.elements:
                if self.mul[(a, b)] == e and self.mul[(b, a)] == e:
                    self._inverse[a] = b
                    break
            else:
                raise ValidationError(f"no inverse for {a!r}")
        return self._inverse[a]

    def order(self):
        return len(self.elements)

    def element_order(self, a):
        e, x, n = self.identity(), a, 1
        while x != e:
            x = self.mul[(x, a)]
            n += 1
        return n

    def is_abelian(self):
        return all(
            self.mul[(a, b)] == self.mul[(b, a)]
            for a in self.elements
            for b in self.elements
        )

    def generated_by(self, seed):
        out = {self.identity()}
        frontier = list(out)
        seed = set(seed) | out
        while frontier:
            x = frontier.pop()
            for g in seed:
                for y in (self.mul[(x, g)], self.mul[(g, x)]):
                    if y not in out:
                        out.add(y)
                        frontier.append(y)
        return out

    def generating_sequence(self):
        gens = []
        sub = {self.identity()}
        for x in self.elements:
            if x not in sub:
                gens.append(x)
                sub = self.generated_by(gens)
        return gens

    def subgroup(self, elements):
        elements = tuple(sorted(elements))
        table = {}
        s = set(elements)
        for a in elements:
            for b in elements:
                c = self.mul[(a, b)]
                if c not in s:
                    raise ValidationError(f"subset not closed under multiplication at ({a!r},{b!r})")
                table[(a, b)] = c
        return FiniteGroup(elements, table)

    def __repr__(self):
        return f"FiniteGroup(order {len(self.elements)})"


def trivial_group():
    return FiniteGroup(("e",), {("e", "e"): "e"})


def cyclic_group(n):
    els = tuple(f"c{i}" for i in range(n))
    mul = {(f"c{i}", f"c{j}"): f"c{(i + j) % n}" for i in range(n) for j in range(n)}
    return FiniteGroup(els, mul)


def symmetric_group(n):
    perms = list(itertools.permutations(range(n)))
    name = lambda p: "".join(str(v) for v in p)
    mul = {}
    for p in perms:
        for q in perms:
            r = tuple(p[q[i]] for i in range(n))
            mul[(name(p), name(q))] = name(r)
    return FiniteGroup(tuple(name(p) for p in perms), mul)


def direct_product(g, h):
    els = tuple(f"({a},{b})" for a in g.elements for b in h.elements)
    mul = {}
    for a1 in g.elements:
        for b1 in h.elements:
            for a2 in g.elements:
                for b2 in h.elements:
                    mul[(f"({a1},{b1})", f"({a2},{b2})")] = (
                        f"({g.mul[(a1, a2)]},{h.mul[(b1, b2)]})"
                    )
    return FiniteGroup(els, mul)


def groups_isomorphic(g, h, budget=DEFAULT_BUDGET):
    """An isomorphism as a dict, or None.  Exhaustive over generator images,
    pruned by element orders; every candidate is verified on the full table."""
    if g.order() != h.order():
        return None
    if sorted(map(g.element_order, g.elements)) != sorted(map(h.element_order, h.elements)):
        return None
    gens = g.generating_sequence()
    # express every element as a word in the generators, once
    expr = {g.identity(): ()}
    frontier = [g.identity()]
    while frontier:
        x = frontier.pop(0)
        for k, gen in enumerate(gens):
            y = g.mul[(x, gen)]
            if y not in expr:
                expr[y] = expr[x] + (k,)
                frontier.append(y)
    if len(expr) != g.order():
        raise ValidationError("generating sequence failed to generate")
    nodes = 0

    def build(images):
        phi = {}
        for x, word in expr.items():
            val = h.identity()
            for k in word:
                val = h.mul[(val, images[k])]
            phi[x] = val
        if len(set(phi.values())) != h.order():
            return None
        for a in g.elements:
            for b in g.elements:
                if h.mul[(phi[a], phi[b])] != phi[g.mul[(a, b)]]:
                    return None
        return phi

    def rec(i, images):
        nonlocal nodes
        if i == len(gens):
            return build(images)
        want = g.element_order(gens[i])
        for y in h.elements:
            if h.element_order(y) != want:
                continue
            nodes += 1
            if nodes > budget:
                raise CapacityError(f"group isomorphism search exceeded budget {budget}")
            got = rec(i + 1, images + [y])
            if got is not None:
                return got
        return None

    return rec(0, [])


# -- group actions --------------------------------------------------------------


class GroupAction:
    """A left action of a finite group, optionally anchored over a base map."""

    def __init__(self, group, carrier, act, base=None, check=True):
        self.group = group
        self.carrier = tuple(sorted(carrier))
        self.act = dict(act)
        self.base = None
        if base is not None:
            b_set, pi = base
            self.base = (tuple(sorted(b_set)), dict(pi))
        if check:
            self.validate()

    def validate(self):
        xs = set(self.carrier)
        for g in self.group.elements:
            for x in self.carrier:
                if (g, x) not in self.act or self.act[(g, x)] not in xs:
                    raise ValidationError(f"action not total at ({g!r},{x!r})")
        e = self.group.identity()
        for x in self.carrier:
            if self.act[(e, x)] != x:
                raise ValidationError(f"identity moves {x!r}")
        for g in self.group.elements:
            for hh in self.group.elements:
                for x in self.carrier:
                    if self.act[(g, self.act[(hh, x)])] != self.act[(self.group.mul[(g, hh)], x)]:
                        raise ValidationError(f"action not associative at ({g!r},{hh!r},{x!r})")
        if self.base is not None:
            b_set, pi = self.base
            if set(pi) != set(self.carrier):
                raise ValidationError("anchor map not total")
            if not set(pi.values()) <= set(b_set):
                raise ValidationError("anchor map leaves its codomain")
            for g in self.group.elements:
                for x in self.carrier:
                    if pi[self.act[(g, x)]] != pi[x]:
                        raise ValidationError(f"action moves {x!r} across fibers")

    def orbit(self, x):
        return tuple(sorted({self.act[(g, x)] for g in self.group.elements}))

    def orbits(self):
        seen = set()
        out = []
        for x in self.carrier:
            if x not in seen:
                o = self.orbit(x)
                out.append(o)
                seen.update(o)
        return out

    def __repr__(self):
        return f"GroupAction({self.group!r} on {len(self.carrier)} points)"


def stabilizer(action, x):
    els = [g for g in action.group.elements if action.act[(g, x)] == x]
    return action.group.subgroup(els)


# -- finite groupoids ------------------------------------------------------------


class FiniteGroupoid(FiniteCategory):
    def validate(self):
        super().validate()
        for f in self.mor:
            if self.inverse(f) is None:
                raise ValidationError(f"morphism {f!r} has no inverse")

    def automorphism_group(self, x):
        els = self.hom(x, x)
        mul = {(b, a): self.compose_table[(b, a)] for b in els for a in els}
        return FiniteGroup(els, mul)

    def components(self):
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (s, t) in self.mor.values():
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)
        comps = {}
        for x in self.objects:
            comps.setdefault(find(x), []).append(x)
        return {rep: tuple(objs) for rep, objs in sorted(comps.items())}


def quotient_groupoid(action):
    """The action groupoid: objects the carrier, morphisms (g, x): x -> g.x."""
    name = lambda g, x: f"{g}*{x}"
    mor = {}
    for g in action.group.elements:
        for x in action.carrier:
            mor[name(g, x)] = (x, action.act[(g, x)])
    identity = {x: name(action.group.identity(), x) for x in action.carrier}
    compose = {}
    for g in action.group.elements:
        for x in action.carrier:
            gx = action.act[(g, x)]
            for hh in action.group.elements:
                compose[(name(hh, gx), name(g, x))] = name(action.group.mul[(hh, g)], x)
    return FiniteGroupoid(action.carrier, mor, identity, compose)


def groupoid_of_groups(groups):
    """Disjoint union of one-object groupoids, one per entry of `groups`."""
    objects = sorted(groups)
    mor = {}
    identity = {}
    compose = {}
    for obj in objects:
        g = groups[obj]
        for a in g.elements:
            mor[f"{obj}:{a}"] = (obj, obj)
        identity[obj] = f"{obj}:{g.identity()}"
        for a in g.elements:
            for b in g.elements:
                compose[(f"{obj}:{b}", f"{obj}:{a}")] = f"{obj}:{g.mul[(b, a)]}"
    return FiniteGroupoid(objects, mor, identity, compose)


@dataclass
class SkeletonResult:
    components: dict
    groups: dict

    def reps(self):
        return tuple(sorted(self.components))


def skeleton(gpd):
    comps = gpd.components()
    return SkeletonResult(comps, {rep: gpd.automorphism_group(rep) for rep in comps})


@dataclass
class EquivalenceReport:
    equivalent: bool
    matching: dict
    reason: str


def equivalence_check(g1, g2, budget=DEFAULT_BUDGET):
    """Equivalence of finite groupoids: a bijection of components with
    isomorphic automorphism groups, found by backtracking matching."""
    s1, s2 = skeleton(g1), skeleton(g2)
    reps1, reps2 = s1.reps(), s2.reps()
    if len(reps1) != len(reps2):
        return EquivalenceReport(
            False, {}, f"component counts differ: {len(reps1)} vs {len(reps2)}"
        )
    compatible = {
        r1: [
            r2
            for r2 in reps2
            if groups_isomorphic(s1.groups[r1], s2.groups[r2], budget=budget) is not None
        ]
        for r1 in reps1
    }
    matching = {}
    used = set()

    def rec(i):
        if i == len(reps1):
            return True
        r1 = reps1[i]
        for r2 in compatible[r1]:
            if r2 in used:
                continue
            matching[r1] = r2
            used.add(r2)
            if rec(i + 1):
                return True
            used.discard(r2)
            del matching[r1]
        return False

    if rec(0):
        return EquivalenceReport(True, dict(matching), "components matched")
    return EquivalenceReport(False, {}, "no automorphism-compatible component matching")


def groupoid_cardinality(gpd):
    """Sum of 1/|Aut| over components, as an exact rational."""
    sk = skeleton(gpd)
    return sum(
        (Fraction(1, sk.groups[rep].order()) for rep in sk.reps()), Fraction(0)
    )


# -- simplicial objects in finite sets -------------------------------------------


class SimplicialObject:
    """A truncated simplicial object in finite sets, levels given explicitly."""

    def __init__(self, level_cap, levels, face, deg, check=True):
        self.level_cap = level_cap
        self.levels = [tuple(levels[n]) for n in range(level_cap + 1)]
        self.face = face
        self.deg = deg
        if check:
            self.validate()

    def validate(self):
        for n, level in enumerate(self.levels):
            if len(set(level)) != len(level):
                raise ValidationError(f"duplicate elements at level {n}")
        for n in range(1, self.level_cap + 1):
            prev = set(self.levels[n - 1])
            for x in self.levels[n]:
                for i in range(n + 1):
                    if self.face(n, i, x) not in prev:
                        raise ValidationError(f"face d_{i} leaves level {n - 1}")
        for n in range(self.level_cap):
            nxt = set(self.levels[n + 1])
            for x in self.levels[n]:
                for i in range(n + 1):
                    if self.deg(n, i, x) not in nxt:
                        raise ValidationError(f"degeneracy s_{i} leaves level {n + 1}")
        for n in range(2, self.level_cap + 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j):
                        if self.face(n - 1, i, self.face(n, j, x)) != self.face(
                            n - 1, j - 1, self.face(n, i, x)
                        ):
                            raise ValidationError(f"face identity fails at level {n}")
        for n in range(self.level_cap):
            for x in self.levels[n]:
                for j in range(n + 1):
                    sx = self.deg(n, j, x)
                    if self.face(n + 1, j, sx) != x or self.face(n + 1, j + 1, sx) != x:
                        raise ValidationError(f"unit identity fails at level {n}")
                    for i in range(n + 2):
                        if i in (j, j + 1):
                            continue
                        got = self.face(n + 1, i, sx)
                        if i < j:
                            want = self.deg(n - 1, j - 1, self.face(n, i, x))
                        else:
                            want = self.deg(n - 1, j, self.face(n, i - 1, x))
                        if got != want:
                            raise ValidationError(f"mixed identity fails at level {n}")
                if n + 2 <= self.level_cap:
                    for j in range(n + 1):
                        for i in range(j + 1):
                            if self.deg(n + 1, i, self.deg(n, j, x)) != self.deg(
                                n + 1, j + 1, self.deg(n, i, x)
                            ):
                                raise ValidationError(f"degeneracy swap fails at level {n}")

    def restrict(self, n, subset, x):
        """Restrict an n-simplex along a subset of [n], largest drops first."""
        subset = tuple(sorted(subset))
        if not subset or subset[0] < 0 or subset[-1] > n:
            raise InputError(f"bad subset {subset} of [0, {n}]")
        cur, m = x, n
        for v in sorted(set(range(n + 1)) - set(subset), reverse=True):
            cur = self.face(m, v, cur)
            m -= 1
        return cur


def cech_nerve(pi, level_cap=DEFAULT_LEVEL_CAP):
    """Levelwise fiber powers of a finite map, with omit/repeat structure."""
    levels = []
    for n in range(level_cap + 1):
        level = []
        for b in pi.cod:
            fib = pi.fiber(b)
            level.extend(itertools.product(fib, repeat=n + 1))
        levels.append(level)

    def face(n, i, x):
        return x[:i] + x[i + 1 :]

    def deg(n, i, x):
        return x[: i + 1] + x[i:]

    return SimplicialObject(level_cap, levels, face, deg)


def action_bar_object(action, level_cap=DEFAULT_LEVEL_CAP):
    """The bar construction of an action: level n is G^n x X."""
    g = action.group
    levels = [
        [(gs, x) for gs in itertools.product(g.elements, repeat=n) for x in action.carrier]
        for n in range(level_cap + 1)
    ]

    def face(n, i, z):
        gs, x = z
        if i == 0:
            return (gs[1:], action.act[(gs[0], x)])
        if i == n:
            return (gs[:-1], x)
        return (gs[: i - 1] + (g.mul[(gs[i], gs[i - 1])],) + gs[i + 1 :], x)

    def deg(n, i, z):
        gs, x = z
        return (gs[:i] + (g.identity(),) + gs[i:], x)

    return SimplicialObject(level_cap, levels, face, deg)


@dataclass
class GroupoidObjectReport:
    holds: bool
    level_cap: int
    witness: tuple
    checked: int


def is_groupoid_object(so, level_cap=None):
    """Unordered two-piece gluing at every level: for each partition of [n]
    into S and S' overlapping in one point m, restriction must identify the
    n-simplices with the pairs agreeing at m.  Needs at least three levels
    to say anything; truncations below that are rejected."""
    cap = so.level_cap if level_cap is None else min(level_cap, so.level_cap)
    if cap < 3:
        raise InputError("groupoid-object check needs level_cap >= 3")
    checked = 0
    for n in range(2, cap + 1):
        for m in range(n + 1):
            rest = [v for v in range(n + 1) if v != m]
            for bits in itertools.product((0, 1), repeat=len(rest)):
                a = [v for v, b in zip(rest, bits) if b == 0]
                bb = [v for v, b in zip(rest, bits) if b == 1]
                if not a or not bb:
                    continue
                s = tuple(sorted(a + [m]))
                s2 = tuple(sorted(bb + [m]))
                if s > s2:
                    continue
                checked += 1
                pm, pm2 = s.index(m), s2.index(m)
                pairs = []
                for x in so.levels[n]:
                    pairs.append((so.restrict(n, s, x), so.restrict(n, s2, x)))
                rhs = set()
                for u in so.levels[len(s) - 1]:
                    for u2 in so.levels[len(s2) - 1]:
                        if so.restrict(len(s) - 1, (pm,), u) == so.restrict(
                            len(s2) - 1, (pm2,), u2
                        ):
                            rhs.add((u, u2))
                if len(pairs) != len(set(pairs)):
                    return GroupoidObjectReport(False, cap, (n, s, s2, "not injective"), checked)
                if set(pairs) != rhs:
                    return GroupoidObjectReport(False, cap, (n, s, s2, "not surjective"), checked)
    return GroupoidObjectReport(True, cap, (), checked)


# -- torsors ----------------------------------------------------------------------


@dataclass
class TorsorReport:
    pi_surjective: bool
    act_pr_bijective: bool
    is_torsor: bool
    trivializable: bool
    section: dict


def check_torsor(action):
    """Is the anchored action a torsor over its base, and is it trivializable?

    Torsor: the anchor is surjective and (act, pr): G x X -> X x_B X is a
    bijection.  Trivializable: some section of the anchor induces a bijection
    G x B -> X.  Both are decided by enumeration; the section is returned
    when one exists.
    """
    if action.base is None:
        raise InputError("torsor check needs an anchored action")
    b_set, pi = action.base
    fibers = {b: tuple(x for x in action.carrier if pi[x] == b) for b in b_set}
    surjective = all(fibers[b] for b in b_set)
    pairs = [
        (action.act[(g, x)], x)
        for g in action.group.elements
        for x in action.carrier
    ]
    target = {
        (x1, x2)
        for b in b_set
        for x1 in fibers[b]
        for x2 in fibers[b]
    }
    bijective = len(pairs) == len(set(pairs)) and set(pairs) == target
    is_torsor = surjective and bijective
    trivializable = False
    section = {}
    if all(fibers[b] for b in b_set):
        for choice in itertools.product(*(fibers[b] for b in b_set)):
            cand = dict(zip(b_set, choice))
            image = [
                action.act[(g, cand[b])] for g in action.group.elements for b in b_set
            ]
            if len(image) == len(set(image)) == len(action.carrier):
                trivializable = True
                section = cand
                break
    return TorsorReport(surjective, bijective, is_torsor, trivializable, section)


@dataclass
class ComparisonReport:
    commutes: bool
    levelwise_bijective: dict
    is_iso: bool


def torsor_comparison(action, level_cap=DEFAULT_LEVEL_CAP):
    """The canonical map from the bar construction to the Cech nerve of the
    anchor: (g_1 ... g_n, x) |-> (x, g_1 x, g_2 g_1 x, ...).  Reports whether
    it commutes with all structure maps and is a levelwise bijection."""
    if action.base is None:
        raise InputError("comparison needs an anchored action")
    bar = action_bar_object(action, level_cap)
    b_set, pi = action.base
    cech = cech_nerve(FinMap(action.carrier, b_set, pi), level_cap)

    def cmp_n(n, z):
        gs, x = z
        out = [x]
        for g in gs:
            out.append(action.act[(g, out[-1])])
        return tuple(out)

    commutes = True
    for n in range(1, level_cap + 1):
        for z in bar.levels[n]:
            for i in range(n + 1):
                if cmp_n(n - 1, bar.face(n, i, z)) != cech.face(n, i, cmp_n(n, z)):
                    commutes = False
    for n in range(level_cap):
        for z in bar.levels[n]:
            for i in range(n + 1):
                if cmp_n(n + 1, bar.deg(n, i, z)) != cech.deg(n, i, cmp_n(n, z)):
                    commutes = False
    levelwise = {}
    for n in range(level_cap + 1):
        images = [cmp_n(n, z) for z in bar.levels[n]]
        levelwise[n] = (
            len(images) == len(set(images)) and set(images) == set(cech.levels[n])
        )
    return ComparisonReport(commutes, levelwise, commutes and all(levelwise.values()))
