"""Representations of a finite acyclic quiver over a serial base, and the
basic functor toolkit: in-maps, top and its first derived functor, the mono
test, the left adjoint of the forgetful functor, hom spaces and isomorphism
search, and partition/length vectors.

Matrix conventions: columns index source parts and composition g o f is the
matrix product g * f.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, Optional, Tuple

from .base import SerialBase
from .exact import (
    cokernel,
    is_iso,
    kernel,
    solve_hom_system,
    solve_left,
)
from .quiver import Quiver
from .serialmod import (
    SerialModule,
    SerialMorphism,
    direct_sum,
    hom_moduli,
    identity_morphism,
    mor_add,
    mor_compose,
    mor_equal,
    morphism,
    serial_module,
    zero_module,
    zero_morphism,
)

DEFAULT_BUDGET = 1 << 16


class Representation:
    """Vertex modules plus one morphism per arrow (source module -> target module)."""

    def __init__(self, quiver: Quiver, base: SerialBase, modules: Dict[str, SerialModule],
                 maps: Dict[str, SerialMorphism]):
        self.quiver = quiver
        self.base = base
        self.modules = {v: modules.get(v, zero_module(base)) for v in quiver.vertices}
        self.maps = {}
        for a in quiver.arrows:
            f = maps.get(a.name)
            if f is None:
                f = zero_morphism(self.modules[a.source], self.modules[a.target])
            if f.source != self.modules[a.source] or f.target != self.modules[a.target]:
                raise ValueError(f"map for arrow {a.name} has wrong shape")
            self.maps[a.name] = f

    def length_vector(self) -> Dict[str, int]:
        return {v: m.length() for v, m in self.modules.items()}

    def total_length(self) -> int:
        return sum(m.length() for m in self.modules.values())

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.modules.values())

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.quiver == other.quiver
            and self.base == other.base
            and self.modules == other.modules
            and all(mor_equal(self.maps[a], other.maps[a]) for a in self.maps)
        )

    def __repr__(self):
        mods = ", ".join(f"{v}:{self.modules[v]}" for v in self.quiver.vertices)
        return f"Rep({mods})"


class RepMorphism:
    """Vertexwise morphism; the naturality square of every arrow is verified."""

    def __init__(self, source: Representation, target: Representation,
                 components: Dict[str, SerialMorphism], check: bool = True):
        self.source = source
        self.target = target
        self.components = {}
        for v in source.quiver.vertices:
            f = components.get(v)
            if f is None:
                f = zero_morphism(source.modules[v], target.modules[v])
            if f.source != source.modules[v] or f.target != target.modules[v]:
                raise ValueError(f"component at vertex {v} has wrong shape")
            self.components[v] = f
        if check:
            for a in source.quiver.arrows:
                lhs = mor_compose(self.components[a.target], source.maps[a.name])
                rhs = mor_compose(target.maps[a.name], self.components[a.source])
                if not mor_equal(lhs, rhs):
                    raise ValueError(f"naturality fails at arrow {a.name}")

    def is_iso(self) -> bool:
        return all(is_iso(f) for f in self.components.values())

    def __repr__(self):
        return f"RepMorphism({self.components})"


def rep_morphism_compose(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    comps = {v: mor_compose(g.components[v], f.components[v]) for v in f.components}
    return RepMorphism(f.source, g.target, comps, check=False)


def rep_identity(r: Representation) -> RepMorphism:
    return RepMorphism(r, r, {v: identity_morphism(m) for v, m in r.modules.items()}, check=False)


def zero_representation(base: SerialBase, quiver: Quiver) -> Representation:
    return Representation(quiver, base, {}, {})


def rep_direct_sum(r: Representation, s: Representation) -> Representation:
    """Direct sum with block-diagonal arrow maps."""
    if r.quiver != s.quiver or r.base != s.base:
        raise ValueError("direct sum requires same quiver and base")
    base = r.base
    modules, inj_r, inj_s, proj_r, proj_s = {}, {}, {}, {}, {}
    for v in r.quiver.vertices:
        total, injs, projs = direct_sum(base, [r.modules[v], s.modules[v]])
        modules[v] = total
        inj_r[v], inj_s[v] = injs
        proj_r[v], proj_s[v] = projs
    maps = {}
    for a in r.quiver.arrows:
        f = mor_compose(inj_r[a.target], mor_compose(r.maps[a.name], proj_r[a.source]))
        g = mor_compose(inj_s[a.target], mor_compose(s.maps[a.name], proj_s[a.source]))
        maps[a.name] = mor_add(f, g)
    return Representation(r.quiver, base, modules, maps)


# -- in-maps, top, and the mono test ---------------------------------------------


def in_map_data(r: Representation, v: str):
    """(X_v, in-map X_v -> R_v, arrows into v, injections R_{s(a)} -> X_v)."""
    arrows = r.quiver.arrows_into(v)
    sources = [r.modules[a.source] for a in arrows]
    total, injs, projs = direct_sum(r.base, sources)
    f = zero_morphism(total, r.modules[v])
    for a, proj in zip(arrows, projs):
        f = mor_add(f, mor_compose(r.maps[a.name], proj))
    return total, f, arrows, injs


def in_map(r: Representation, v: str) -> SerialMorphism:
    return in_map_data(r, v)[1]


def l1_kopf(r: Representation) -> Dict[str, tuple]:
    """Vertexwise kernel of the in-map, with the witnessing inclusion."""
    out = {}
    for v in r.quiver.vertices:
        out[v] = kernel(in_map(r, v))
    return out


def kopf(r: Representation) -> Dict[str, tuple]:
    """Vertexwise cokernel of the in-map, with the witnessing projection."""
    out = {}
    for v in r.quiver.vertices:
        out[v] = cokernel(in_map(r, v))
    return out


def kopf_modules(r: Representation) -> Dict[str, SerialModule]:
    return {v: c[0] for v, c in kopf(r).items()}


def is_mono(r: Representation) -> bool:
    return all(k.is_zero() for k, _ in l1_kopf(r).values())


def kopf_morphism(phi: RepMorphism) -> Dict[str, SerialMorphism]:
    """The induced map on vertexwise tops (cokernels of in-maps)."""
    out = {}
    for v in phi.source.quiver.vertices:
        _, q_src = cokernel(in_map(phi.source, v))
        _, q_tgt = cokernel(in_map(phi.target, v))
        k = solve_left(q_src, mor_compose(q_tgt, phi.components[v]))
        if k is None:
            raise AssertionError("top is functorial; induced map must exist")
        out[v] = k
    return out


# -- the left adjoint of the forgetful functor -------------------------------------


def f_shriek(base: SerialBase, quiver: Quiver, modules: Dict[str, SerialModule]) -> Representation:
    """Path-indexed representation: vertex k receives one copy of M_{s(p)} for
    every path p ending at k; an arrow maps the p-block identically to the
    (a o p)-block.  The result is mono with split in-maps."""
    modules = {v: modules.get(v, zero_module(base)) for v in quiver.vertices}
    paths_into = {v: quiver.paths_into(v) for v in quiver.vertices}
    vertex_mod, injs, projs = {}, {}, {}
    for v in quiver.vertices:
        blocks = [modules[p.source] for p in paths_into[v]]
        total, i_list, p_list = direct_sum(base, blocks)
        vertex_mod[v] = total
        injs[v] = dict(zip(paths_into[v], i_list))
        projs[v] = dict(zip(paths_into[v], p_list))
    maps = {}
    for a in quiver.arrows:
        f = zero_morphism(vertex_mod[a.source], vertex_mod[a.target])
        for p in paths_into[a.source]:
            q = quiver.extend_path(a, p)
            ident = identity_morphism(modules[p.source])
            f = mor_add(f, mor_compose(injs[a.target][q], mor_compose(ident, projs[a.source][p])))
        maps[a.name] = f
    return Representation(quiver, base, vertex_mod, maps)


def vertex_module(base: SerialBase, quiver: Quiver, v: str, m: SerialModule) -> Dict[str, SerialModule]:
    """The vertex-indexed module M(v): M at v and zero elsewhere."""
    return {w: (m if w == v else zero_module(base)) for w in quiver.vertices}


# -- hom spaces between representations ---------------------------------------------


class RepHomSpace:
    """Solution space of the naturality system for Hom(R, S)."""

    def __init__(self, r: Representation, s: Representation):
        if r.quiver != s.quiver or r.base != s.base:
            raise ValueError("base or quiver mismatch")
        self.r, self.s = r, s
        base = r.base
        self.slots = []  # (vertex, i target part, j source part)
        self.moduli = []
        slot_index = {}
        for v in r.quiver.vertices:
            mod = hom_moduli(r.modules[v], s.modules[v])
            for i in range(s.modules[v].rank):
                for j in range(r.modules[v].rank):
                    slot_index[(v, i, j)] = len(self.slots)
                    self.slots.append((v, i, j))
                    self.moduli.append(mod[i][j])
        rows = []
        one = base.one_coeff()
        for a in r.quiver.arrows:
            src, tgt = a.source, a.target
            Ra, Sa = r.maps[a.name], s.maps[a.name]
            rs, rt = r.modules[src], r.modules[tgt]
            ss, st = s.modules[src], s.modules[tgt]
            for k in range(st.rank):
                for j in range(rs.rank):
                    coeffs = [base.ring.zero] * len(self.slots)
                    # (phi_t o R_a)[k][j] = sum_i phi_t[k][i] * A_i
                    for i in range(rt.rank):
                        if Ra.entries[i][j].is_zero():
                            continue
                        A = base.compose_coeff(rs.parts[j], rt.parts[i], st.parts[k], one, Ra.entries[i][j])
                        idx = slot_index[(tgt, k, i)]
                        coeffs[idx] = coeffs[idx] + A
                    # -(S_a o phi_s)[k][j] = -sum_l B_l * phi_s[l][j]
                    for l in range(ss.rank):
                        if Sa.entries[k][l].is_zero():
                            continue
                        B = base.compose_coeff(rs.parts[j], ss.parts[l], st.parts[k], Sa.entries[k][l], one)
                        idx = slot_index[(src, l, j)]
                        coeffs[idx] = coeffs[idx] - B
                    q = base.hom_length(rs.parts[j], st.parts[k])
                    rows.append((coeffs, base.ring.zero, q))
        self.solution = solve_hom_system(base.ring, self.moduli, rows)

    def _to_rep_morphism(self, vec) -> RepMorphism:
        comps = {}
        for v in self.r.quiver.vertices:
            rows = [
                [self.r.base.ring.zero] * self.r.modules[v].rank
                for _ in range(self.s.modules[v].rank)
            ]
            comps[v] = rows
        for val, (v, i, j) in zip(vec, self.slots):
            comps[v][i][j] = val
        mors = {v: morphism(self.r.modules[v], self.s.modules[v], comps[v]) for v in comps}
        return RepMorphism(self.r, self.s, mors, check=False)

    def iterate(self, budget: int = DEFAULT_BUDGET):
        """All morphisms R -> S, or None if the space exceeds the budget."""
        sols = self.solution.iterate(budget)
        if sols is None:
            return None
        return [self._to_rep_morphism(vec) for vec in sols]

    def random(self, rng) -> RepMorphism:
        return self._to_rep_morphism(self.solution.random(rng))

    def zero(self) -> RepMorphism:
        return self._to_rep_morphism([self.r.base.ring.zero] * len(self.slots))


def hom_reps(r: Representation, s: Representation) -> RepHomSpace:
    return RepHomSpace(r, s)


class ResidueSpace:
    """The image of a hom solution space in the label-diagonal residue blocks.

    A morphism between equal modules is invertible iff these blocks are
    invertible over F_p, and residues of composites multiply blockwise, so
    isomorphism search and endomorphism-ring locality can be decided inside
    this small F_p-space.
    """

    def __init__(self, space: RepHomSpace):
        self.space = space
        base = space.r.base
        self.p = base.ring.p
        self.blocks = []  # (vertex, label, [part positions])
        coords = []       # residue coordinates as (slot index)
        for v in space.r.quiver.vertices:
            parts = space.r.modules[v].parts
            for label in sorted(set(parts), key=base.label_sort_key):
                pos = [k for k, q in enumerate(parts) if q == label]
                self.blocks.append((v, label, pos))
        slot_pos = {slot: idx for idx, slot in enumerate(space.slots)}
        self.coord_slots = []
        for v, label, pos in self.blocks:
            for i in pos:
                for j in pos:
                    self.coord_slots.append(slot_pos[(v, i, j)])
        # F_p basis of the projected solution space, with lifted generators
        rows = []
        for gen in space.solution.generators:
            res = tuple(gen[c].digits[0] % self.p for c in self.coord_slots)
            if any(res):
                rows.append((list(res), list(gen)))
        self.basis = self._rref_with_lifts(rows)

    def _rref_with_lifts(self, rows):
        p = self.p
        basis = []
        for res, lift in rows:
            res = list(res)
            lift = list(lift)
            for bres, blift in basis:
                piv = next(i for i, x in enumerate(bres) if x)
                if res[piv]:
                    c = res[piv]
                    res = [(x - c * y) % p for x, y in zip(res, bres)]
                    ring = self.space.r.base.ring
                    factor = ring.from_int(c)
                    lift = [x - factor * y for x, y in zip(lift, blift)]
            if any(res):
                piv = next(i for i, x in enumerate(res) if x)
                inv = pow(res[piv], -1, p)
                ring = self.space.r.base.ring
                res = [(x * inv) % p for x in res]
                lift = [ring.from_int(inv) * x for x in lift]
                basis.append((res, lift))
        return basis

    @property
    def rank(self) -> int:
        return len(self.basis)

    def residue_of(self, combo):
        """Residue vector (ints mod p) of an F_p combination of the basis."""
        p = self.p
        res = [0] * len(self.coord_slots)
        for c, (bres, _) in zip(combo, self.basis):
            if c % p == 0:
                continue
            res = [(x + c * y) % p for x, y in zip(res, bres)]
        return res

    def lift_of(self, combo):
        """Lifted solution vector of an F_p combination of the basis."""
        p = self.p
        ring = self.space.r.base.ring
        lift = [ring.zero] * len(self.space.slots)
        for c, (_, blift) in zip(combo, self.basis):
            if c % p == 0:
                continue
            factor = ring.from_int(c)
            lift = [x + factor * y for x, y in zip(lift, blift)]
        return lift

    def element(self, combo):
        """(residue vector, lifted solution vector) for coefficients in F_p."""
        return self.residue_of(combo), self.lift_of(combo)

    def block_matrices(self, res):
        """Residue vector -> list of square F_p matrices, one per label block."""
        out = []
        k = 0
        for v, label, pos in self.blocks:
            d = len(pos)
            mat = [[res[k + i * d + j] for j in range(d)] for i in range(d)]
            out.append(mat)
            k += d * d
        return out

    def combos(self):
        return itertools.product(range(self.p), repeat=self.rank)


def _fp_invertible(mat, p) -> bool:
    d = len(mat)
    m = [row[:] for row in mat]
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c] % p), None)
        if piv is None:
            return False
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], -1, p)
        m[c] = [(x * inv) % p for x in m[c]]
        for r in range(d):
            if r != c and m[r][c] % p:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return True


def _fp_nilpotent(mat, p) -> bool:
    d = len(mat)
    m = [row[:] for row in mat]
    for _ in range(max(1, d.bit_length())):
        if all(x % p == 0 for row in m for x in row):
            return True
        m = [[sum(m[i][k] * m[k][j] for k in range(d)) % p for j in range(d)] for i in range(d)]
    return all(x % p == 0 for row in m for x in row)


def find_iso_reps(r: Representation, s: Representation, budget: int = DEFAULT_BUDGET,
                  seed: int = 0, samples: int = 512) -> Tuple[bool, Optional[RepMorphism], str]:
    """(found, witness, certificate); certificate is 'exhaustive' when the
    residue search space was fully enumerated, else 'sampled'."""
    for v in r.quiver.vertices:
        if r.modules.get(v, None) != s.modules.get(v, None):
            return False, None, "exhaustive"
    space = hom_reps(r, s)
    res = ResidueSpace(space)
    if res.rank <= 20 and r.base.ring.p ** res.rank <= budget:
        for combo in res.combos():
            vec = res.residue_of(combo)
            if all(_fp_invertible(m, res.p) for m in res.block_matrices(vec)):
                phi = space._to_rep_morphism(space.solution._trunc(res.lift_of(combo)))
                return True, phi, "exhaustive"
        return False, None, "exhaustive"
    rng = random.Random(seed)
    for _ in range(samples):
        phi = space.random(rng)
        if phi.is_iso():
            return True, phi, "sampled"
    return False, None, "sampled"


def is_iso_reps(r: Representation, s: Representation, budget: int = DEFAULT_BUDGET,
                seed: int = 0) -> bool:
    return find_iso_reps(r, s, budget=budget, seed=seed)[0]


# -- partition and length vectors ----------------------------------------------------


def partition_vector(r: Representation) -> Dict[str, tuple]:
    if r.base.backing != "chain":
        raise ValueError("partition vectors are defined over chain-ring backings")
    return {v: m.partition() for v, m in r.modules.items()}


def length_vector(r: Representation) -> Dict[str, int]:
    return r.length_vector()


# -- random sampling (property suites) -------------------------------------------------


def random_module(base: SerialBase, rng, max_parts: int = 2) -> SerialModule:
    k = rng.randrange(max_parts + 1)
    parts = [rng.choice(base.labels) for _ in range(k)]
    return serial_module(base, parts)


def random_representation(base: SerialBase, quiver: Quiver, rng,
                          max_parts: int = 2) -> Representation:
    modules = {v: random_module(base, rng, max_parts) for v in quiver.vertices}
    maps = {}
    for a in quiver.arrows:
        from .serialmod import hom_space
        maps[a.name] = hom_space(modules[a.source], modules[a.target]).random(rng)
    return Representation(quiver, base, modules, maps)
