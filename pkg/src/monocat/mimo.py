"""The minimal monic approximation and the stable-category reduction/transfer.

The approximation of a representation R places, at each vertex k, one copy of
the injective envelope J_i of ker(in-map at i) for every path from i to k;
arrow maps shift the path blocks identically, feed R through its own maps,
and route R into the new envelope block through a chosen lift of the
envelope embedding.  The projection onto the original representation is a
minimal right approximation by monic representations.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .base import CHAIN, SerialBase, StableBase, stable_base
from .exact import is_injective_map, kernel, solve_left
from .rep import (
    Representation,
    RepMorphism,
    f_shriek,
    in_map_data,
    is_mono,
    kopf_modules,
)
from .serialmod import (
    SerialModule,
    SerialMorphism,
    direct_sum,
    identity_morphism,
    injective_envelope,
    mor_add,
    mor_compose,
    morphism,
    serial_module,
    zero_module,
    zero_morphism,
)


def _is_injective_module(base: SerialBase, m: SerialModule) -> bool:
    return all(base.is_injective(p) for p in m.parts)


def mo(r: Representation, envelope_data: Dict[str, Tuple[SerialModule, SerialMorphism]]):
    """Monic approximation from caller-supplied envelope data.

    ``envelope_data[v]`` is a pair (J_v, e_v) with J_v injective and
    e_v : X_v -> J_v monic on the kernel of the in-map at v.  Returns the
    approximating representation and the projection onto ``r``.
    """
    base = r.base
    if not (base.is_abelian and base.is_selfinjective):
        raise ValueError("monic approximations need an abelian self-injective backing")
    quiver = r.quiver
    in_data = {v: in_map_data(r, v) for v in quiver.vertices}
    envelopes = {}
    for v in quiver.vertices:
        total, f, arrows, injs = in_data[v]
        J, e = envelope_data.get(v, (zero_module(base), zero_morphism(total, zero_module(base))))
        if not _is_injective_module(base, J):
            raise ValueError(f"envelope module at vertex {v} is not injective")
        if e.source != total or e.target != J:
            raise ValueError(f"envelope map at vertex {v} has wrong shape")
        K, incl = kernel(f)
        if not K.is_zero() and not is_injective_map(mor_compose(e, incl)):
            raise ValueError(f"envelope map at vertex {v} is not monic on the in-map kernel")
        envelopes[v] = (J, e)

    paths_into = {v: quiver.paths_into(v) for v in quiver.vertices}
    blocks = {}   # vertex -> list of summands: r.modules[v] first, then J_{s(p)} per path
    vertex_mod, injs, projs = {}, {}, {}
    for v in quiver.vertices:
        summands = [r.modules[v]] + [envelopes[p.source][0] for p in paths_into[v]]
        total, i_list, p_list = direct_sum(base, summands)
        vertex_mod[v] = total
        blocks[v] = summands
        injs[v] = {"rep": i_list[0], **{p: i for p, i in zip(paths_into[v], i_list[1:])}}
        projs[v] = {"rep": p_list[0], **{p: q for p, q in zip(paths_into[v], p_list[1:])}}

    maps = {}
    for a in quiver.arrows:
        src, tgt = a.source, a.target
        f = zero_morphism(vertex_mod[src], vertex_mod[tgt])
        # original arrow map between the rep blocks
        f = mor_add(f, mor_compose(injs[tgt]["rep"],
                                   mor_compose(r.maps[a.name], projs[src]["rep"])))
        # rep block feeds the trivial-path envelope block through e_tgt
        _, _, arrows_in, in_injs = in_data[tgt]
        arrow_pos = list(arrows_in).index(a)
        e_tgt = envelopes[tgt][1]
        trivial = next(p for p in paths_into[tgt] if p.length == 0)
        feed = mor_compose(e_tgt, in_injs[arrow_pos])
        f = mor_add(f, mor_compose(injs[tgt][trivial], mor_compose(feed, projs[src]["rep"])))
        # path blocks shift identically
        for p in paths_into[src]:
            q = quiver.extend_path(a, p)
            ident = identity_morphism(envelopes[p.source][0])
            f = mor_add(f, mor_compose(injs[tgt][q], mor_compose(ident, projs[src][p])))
        maps[a.name] = f

    result = Representation(quiver, base, vertex_mod, maps)
    p_components = {v: projs[v]["rep"] for v in quiver.vertices}
    p = RepMorphism(result, r, p_components)
    return result, p


def minimal_envelope_data(r: Representation) -> Dict[str, Tuple[SerialModule, SerialMorphism]]:
    """Canonical envelope data: J_v = injective envelope of ker(in-map at v),
    e_v = the deterministic lift of the envelope embedding."""
    out = {}
    for v in r.quiver.vertices:
        total, f, _, _ = in_map_data(r, v)
        K, incl = kernel(f)
        J, j = injective_envelope(K)
        e = solve_left(incl, j)
        if e is None:
            raise AssertionError("envelope embedding must extend along a monomorphism")
        out[v] = (J, e)
    return out


def mimo(r: Representation):
    """Minimal monic approximation (M, p: M -> r)."""
    return mo(r, minimal_envelope_data(r))


# -- maximal injective summands and the stable category ------------------------------


def strip_injective_summands(r: Representation):
    """(R_hat, I) where I collects the injective parts of each vertex module and
    R_hat keeps the non-injective parts with compressed arrow maps.

    R_hat is isomorphic to r in the injectively stable image."""
    base = r.base
    if not (base.is_abelian and base.is_selfinjective):
        raise ValueError("stripping needs an abelian self-injective backing")
    kept_mod, kept_incl, kept_proj, dropped = {}, {}, {}, {}
    for v in r.quiver.vertices:
        m = r.modules[v]
        kept_parts = [p for p in m.parts if not base.is_injective(p)]
        drop_parts = [p for p in m.parts if base.is_injective(p)]
        kept = serial_module(base, kept_parts)
        dropped[v] = serial_module(base, drop_parts)
        kept_mod[v] = kept
        one, zero = base.one_coeff(), base.zero_coeff()
        # parts are already split by label in normal form, so the compression
        # is the coordinate projection/inclusion on the kept parts
        positions = [i for i, p in enumerate(m.parts) if not base.is_injective(p)]
        incl = [[one if positions[j] == i else zero for j in range(kept.rank)] for i in range(m.rank)]
        proj = [[one if positions[i] == j else zero for j in range(m.rank)] for i in range(kept.rank)]
        kept_incl[v] = morphism(kept, m, incl)
        kept_proj[v] = morphism(m, kept, proj)
    maps = {}
    for a in r.quiver.arrows:
        maps[a.name] = mor_compose(kept_proj[a.target],
                                   mor_compose(r.maps[a.name], kept_incl[a.source]))
    return Representation(r.quiver, base, kept_mod, maps), dropped


def stable_reduce(r: Representation) -> Representation:
    """Image of r in rep(Q, stable base): drop injective parts vertexwise and
    reduce every arrow entry modulo morphisms factoring through injectives."""
    base = r.base
    st = stable_base(base)
    hat, _ = strip_injective_summands(r)
    modules = {v: serial_module(st, hat.modules[v].parts) for v in r.quiver.vertices}
    maps = {}
    for a in r.quiver.arrows:
        src, tgt = modules[a.source], modules[a.target]
        f = hat.maps[a.name]
        entries = [
            [st.reduce_coeff(src.parts[j], tgt.parts[i], f.entries[i][j]) for j in range(src.rank)]
            for i in range(tgt.rank)
        ]
        maps[a.name] = morphism(src, tgt, entries)
    return Representation(r.quiver, st, modules, maps)


def stable_reduce_morphism(phi: RepMorphism, r_red: Representation, s_red: Representation) -> RepMorphism:
    """Functorial action of the reduction on a morphism of representations."""
    st = r_red.base
    comps = {}
    for v in phi.source.quiver.vertices:
        src, tgt = r_red.modules[v], s_red.modules[v]
        f = phi.components[v]
        src_pos = [i for i, p in enumerate(phi.source.modules[v].parts) if not phi.source.base.is_injective(p)]
        tgt_pos = [i for i, p in enumerate(phi.target.modules[v].parts) if not phi.target.base.is_injective(p)]
        entries = [
            [st.reduce_coeff(src.parts[j], tgt.parts[i], f.entries[tgt_pos[i]][src_pos[j]])
             for j in range(src.rank)]
            for i in range(tgt.rank)
        ]
        comps[v] = morphism(src, tgt, entries)
    return RepMorphism(r_red, s_red, comps, check=False)


def stable_lift(s: Representation) -> Representation:
    """Lift along the fixed section: labels are kept, coefficients' digits are
    kept verbatim.  stable_reduce(stable_lift(s)) equals s exactly."""
    st = s.base
    if not isinstance(st, StableBase):
        raise ValueError("stable_lift expects a representation over a stable backing")
    base = st.of
    modules = {v: serial_module(base, s.modules[v].parts) for v in s.quiver.vertices}
    maps = {}
    for a in s.quiver.arrows:
        src, tgt = modules[a.source], modules[a.target]
        f = s.maps[a.name]
        entries = [
            [st.lift_coeff(src.parts[j], tgt.parts[i], f.entries[i][j]) for j in range(src.rank)]
            for i in range(tgt.rank)
        ]
        maps[a.name] = morphism(src, tgt, entries)
    return Representation(s.quiver, base, modules, maps)


def mimo_from_stable(s: Representation) -> Representation:
    """Monic representation attached to a stable representation; independent of
    the choice of lift up to isomorphism."""
    return mimo(stable_lift(s))[0]


# -- injective recognition and the length-3 transfer -----------------------------------


def injective_rep_recognize(r: Representation) -> Optional[Dict[str, SerialModule]]:
    """If r is mono with injective vertex modules, the vertex-indexed J with
    r isomorphic to the path-indexed representation of J; otherwise None."""
    base = r.base
    if not (base.is_abelian and base.is_selfinjective):
        raise ValueError("injective recognition needs an abelian self-injective backing")
    if not all(_is_injective_module(base, m) for m in r.modules.values()):
        return None
    if not is_mono(r):
        return None
    return kopf_modules(r)


def transfer(r: Representation, target: SerialBase) -> Representation:
    """Carry a monic representation between chain rings of equal residue
    characteristic and equal Loewy length n <= 3.

    Injective representations map to the path-indexed representation of the
    relabeled socle data; all other monic representations go through the
    stable category, relabel M_i -> N_i and generators verbatim, and return
    through the minimal monic approximation."""
    base = r.base
    if base.backing != CHAIN or target.backing != CHAIN:
        raise ValueError("transfer is defined between chain-ring backings")
    if base.ring.n != target.ring.n:
        raise ValueError("transfer requires equal Loewy length")
    if base.ring.p != target.ring.p:
        raise ValueError("transfer requires equal residue characteristic")
    if base.ring.n > 3:
        raise ValueError("stable categories of chain rings are not equivalent beyond Loewy length 3")
    if not is_mono(r):
        raise ValueError("transfer is defined on monic representations")

    j = injective_rep_recognize(r)
    if j is not None:
        modules = {v: serial_module(target, m.parts) for v, m in j.items()}
        return f_shriek(target, r.quiver, modules)

    s = stable_reduce(r)
    st_target = stable_base(target)
    modules = {v: serial_module(st_target, s.modules[v].parts) for v in r.quiver.vertices}
    maps = {}
    for a in r.quiver.arrows:
        src, tgt = modules[a.source], modules[a.target]
        f = s.maps[a.name]
        entries = [
            [st_target.ring.elem(f.entries[i][j].digits) for j in range(src.rank)]
            for i in range(tgt.rank)
        ]
        maps[a.name] = morphism(src, tgt, entries)
    relabeled = Representation(r.quiver, st_target, modules, maps)
    return mimo_from_stable(relabeled)
