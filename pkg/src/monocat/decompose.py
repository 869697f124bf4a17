"""Krull-Schmidt decomposition of representations by Fitting splittings.

A representation splits along any endomorphism that is neither nilpotent nor
invertible: the stable kernel and stable image of a high power are
complementary subrepresentations.  Generators of the endomorphism group are
tried first, then bounded random combinations, then an exhaustive scan of the
endomorphism group; indecomposability is only declared with the exhaustive
certificate (every endomorphism nilpotent or invertible, i.e. a local
endomorphism ring).
"""

from __future__ import annotations

import random
from typing import List, Tuple

from .exact import image, kernel, solve_right
from .rep import (
    Representation,
    RepMorphism,
    hom_reps,
    is_iso_reps,
    rep_identity,
    rep_morphism_compose,
)
from .serialmod import direct_sum, mor_add, mor_compose


class BudgetExceeded(RuntimeError):
    pass


def _subrep_from_inclusions(r: Representation, inclusions) -> Tuple[Representation, RepMorphism]:
    """Subrepresentation spanned by vertexwise submodule inclusions k_v: K_v -> R_v.

    The inclusions must be closed under the arrow maps."""
    modules = {v: inclusions[v].source for v in r.quiver.vertices}
    maps = {}
    for a in r.quiver.arrows:
        lifted = solve_right(inclusions[a.target], mor_compose(r.maps[a.name], inclusions[a.source]))
        if lifted is None:
            raise AssertionError("submodule family is not arrow-stable")
        maps[a.name] = lifted
    sub = Representation(r.quiver, r.base, modules, maps)
    incl = RepMorphism(sub, r, {v: inclusions[v] for v in r.quiver.vertices})
    return sub, incl


def _endo_power(phi: RepMorphism, n: int) -> RepMorphism:
    result = rep_identity(phi.source)
    power = phi
    while n:
        if n & 1:
            result = rep_morphism_compose(result, power)
        n >>= 1
        if n:
            power = rep_morphism_compose(power, power)
    return result


def _stable_power(phi: RepMorphism) -> RepMorphism:
    """phi^m for m at least the total length: kernels and images have stabilized."""
    n = max(1, phi.source.total_length())
    m = 1
    while m < n:
        m <<= 1
    return _endo_power(phi, m)


def fitting_split(r: Representation, phi: RepMorphism):
    """(K, I) with r = K (+) I along the stable kernel/image of phi, or None."""
    inf = _stable_power(phi)
    kern_incl = {}
    img_incl = {}
    for v in r.quiver.vertices:
        K, ki = kernel(inf.components[v])
        I, ii, _ = image(inf.components[v])
        kern_incl[v], img_incl[v] = ki, ii
    k_len = sum(f.source.length() for f in kern_incl.values())
    i_len = sum(f.source.length() for f in img_incl.values())
    if k_len == 0 or i_len == 0:
        return None
    k_rep, k_inc = _subrep_from_inclusions(r, kern_incl)
    i_rep, i_inc = _subrep_from_inclusions(r, img_incl)
    # verify that [incl_K | incl_I] is an isomorphism from the direct sum
    for v in r.quiver.vertices:
        total, _, projs = direct_sum(r.base, [k_rep.modules[v], i_rep.modules[v]])
        u = mor_add(
            mor_compose(k_inc.components[v], projs[0]),
            mor_compose(i_inc.components[v], projs[1]),
        )
        from .exact import is_iso
        if total.parts != r.modules[v].parts or not is_iso(u):
            return None
    return k_rep, i_rep


def _residue_witness(r: Representation, budget: int):
    """Scan the residue algebra of End(r) for an element that is neither
    blockwise invertible nor blockwise nilpotent.

    Returns (None, space) when the endomorphism ring is local (exhaustive
    certificate) or (witness RepMorphism, space) otherwise.  Valid over every
    backing: residues of composites multiply blockwise."""
    from .rep import ResidueSpace, _fp_invertible, _fp_nilpotent

    space = hom_reps(r, r)
    res = ResidueSpace(space)
    p = res.p
    if p ** res.rank > budget:
        raise BudgetExceeded(
            f"endomorphism residue space p^{res.rank} exceeds the budget {budget}"
        )
    for combo in res.combos():
        vec = res.residue_of(combo)
        mats = res.block_matrices(vec)
        if all(_fp_invertible(m, p) for m in mats):
            continue
        if all(_fp_nilpotent(m, p) for m in mats):
            continue
        phi = space._to_rep_morphism(space.solution._trunc(res.lift_of(combo)))
        return phi, space
    return None, space


def _fitting_probe(r: Representation, rng, max_random: int):
    """Cheap splitting attempts: group generators of End(r), then random
    combinations."""
    space = hom_reps(r, r)
    gens = [space._to_rep_morphism(space.solution._trunc(g)) for g in space.solution.generators]
    for phi in gens:
        split = fitting_split(r, phi)
        if split:
            return split
    for _ in range(max_random):
        phi = space.random(rng)
        split = fitting_split(r, phi)
        if split:
            return split
    return None


def _try_split(r: Representation, rng, budget: int, max_random: int):
    split = _fitting_probe(r, rng, max_random)
    if split:
        return split, None
    # Exhaustive certificate inside the residue algebra: the endomorphism ring
    # is local iff every residue element is blockwise invertible or blockwise
    # nilpotent; any other element lifts to a splitting endomorphism.
    witness, _ = _residue_witness(r, budget)
    if witness is None:
        return None, "exhaustive"
    split = fitting_split(r, witness)
    if split is None:
        raise AssertionError("non-invertible non-nilpotent endomorphism must split")
    return split, None


def decompose(r: Representation, seed: int = 0, budget: int = 1 << 20,
              max_random: int = 32) -> List[tuple]:
    """List of (indecomposable factor, multiplicity, certificate)."""
    rng = random.Random(seed)
    if r.is_zero():
        return []
    pieces: List[Representation] = []
    certs: List[str] = []
    stack = [r]
    while stack:
        cur = stack.pop()
        if cur.is_zero():
            continue
        split, cert = _try_split(cur, rng, budget, max_random)
        if split is None:
            pieces.append(cur)
            certs.append(cert)
        else:
            stack.extend(split)
    grouped: List[tuple] = []
    for piece, cert in zip(pieces, certs):
        for idx, (rep, mult, c) in enumerate(grouped):
            if is_iso_reps(rep, piece):
                grouped[idx] = (rep, mult + 1, c)
                break
        else:
            grouped.append((piece, 1, cert))
    return grouped


def is_indecomposable(r: Representation, seed: int = 0, budget: int = 1 << 20,
                      max_random: int = 16) -> bool:
    """Locality of the endomorphism ring, decided in its residue algebra;
    works over abelian and stable backings alike.  Over abelian backings a
    cheap splitting probe runs first so large decomposable inputs never reach
    the exhaustive scan."""
    if r.is_zero():
        return False
    if r.base.is_abelian and _fitting_probe(r, random.Random(seed), max_random):
        return False
    witness, _ = _residue_witness(r, budget)
    return witness is None
