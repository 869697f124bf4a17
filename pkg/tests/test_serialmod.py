import itertools
import random

import pytest

from monocat.base import chain_base, rad2nak_base, stable_base
from monocat.exact import (
    cokernel,
    dual_morphism,
    image,
    invert,
    is_injective_map,
    is_iso,
    is_surjective_map,
    kernel,
    snf,
    solve,
    solve_left,
    solve_right,
)
from monocat.serialmod import (
    apply_morphism,
    direct_sum,
    hom_space,
    identity_morphism,
    injective_envelope,
    module_elements,
    mor_compose,
    mor_direct_sum,
    mor_equal,
    morphism,
    serial_module,
    socle,
    socle_inclusion,
    zero_module,
    zero_morphism,
)

B2I = chain_base("int", 2, 2)
B3I = chain_base("int", 2, 3)
B2P = chain_base("poly", 2, 2)
B3P = chain_base("poly", 2, 3)


def M(base, *parts):
    return serial_module(base, parts)


def test_normal_form_sorting():
    m = M(B3I, "M1", "M3", "M2")
    assert m.parts == ("M3", "M2", "M1")
    assert m.partition() == (3, 2, 1)
    assert m.length() == 6


def test_compose_identity_and_pi_square():
    m2 = M(B2I, "M2")
    f = morphism(m2, m2, [[2]])   # multiplication by pi on Z/4
    assert mor_equal(mor_compose(identity_morphism(m2), f), f)
    assert mor_compose(f, f).is_zero()  # pi^2 = 0


def test_direct_sum_of_morphisms():
    # (f (+) g) o (u (+) v) = (f o u) (+) (g o v)
    u = morphism(M(B2I, "M1"), M(B2I, "M2"), [[1]])
    v = morphism(M(B2I, "M2"), M(B2I, "M1"), [[1]])
    f = morphism(M(B2I, "M2"), M(B2I, "M1"), [[1]])
    g = morphism(M(B2I, "M1"), M(B2I, "M2"), [[1]])
    lhs = mor_compose(mor_direct_sum(B2I, [f, g]), mor_direct_sum(B2I, [u, v]))
    rhs = mor_direct_sum(B2I, [mor_compose(f, u), mor_compose(g, v)])
    assert mor_equal(lhs, rhs)
    s = mor_direct_sum(B2I, [u, v])
    assert s.source.parts == ("M2", "M1") and s.target.parts == ("M2", "M1")


def test_function_model_oracle_random_composites():
    """Matrix composition agrees with honest function composition on elements."""
    rng = random.Random(3)
    for base in (B3I, B3P):
        labels = list(base.labels)
        for _ in range(40):
            a = M(base, *[rng.choice(labels) for _ in range(rng.randrange(3))])
            b = M(base, *[rng.choice(labels) for _ in range(rng.randrange(3))])
            c = M(base, *[rng.choice(labels) for _ in range(rng.randrange(3))])
            f = hom_space(a, b).random(rng)
            g = hom_space(b, c).random(rng)
            gf = mor_compose(g, f)
            for x in itertools.islice(module_elements(a), 16):
                assert apply_morphism(gf, x) == apply_morphism(g, apply_morphism(f, x))


# -- Smith reduction ---------------------------------------------------------------


def test_snf_scalar_two_on_z4():
    m = M(B2I, "M2")
    res = snf(morphism(m, m, [[2]]))
    assert res.diagonal
    assert res.D.entries[0][0] == B2I.ring.pi


def test_snf_rank_one_over_dual_numbers():
    m = M(B2P, "M1", "M1")
    f = morphism(m, m, [[1, 1], [1, 1]])
    res = snf(f)
    assert res.diagonal
    nonzero = [e for row in res.D.entries for e in row if not e.is_zero()]
    assert len(nonzero) == 1 and nonzero[0] == B2P.ring.one
    assert is_iso(res.U) and is_iso(res.V)
    assert mor_equal(mor_compose(res.U, mor_compose(f, res.V)), res.D)


def test_snf_canonical_injection():
    f = morphism(M(B2I, "M1"), M(B2I, "M2"), [[1]])
    res = snf(f)
    assert res.diagonal
    K, _ = kernel(f)
    assert K.is_zero()


def test_snf_roundtrip_random():
    rng = random.Random(7)
    for base in (B3I, B3P, B2P):
        labels = list(base.labels)
        for _ in range(30):
            a = M(base, *[rng.choice(labels) for _ in range(rng.randrange(1, 4))])
            b = M(base, *[rng.choice(labels) for _ in range(rng.randrange(1, 4))])
            f = hom_space(a, b).random(rng)
            res = snf(f)
            assert is_iso(res.U) and is_iso(res.V)
            assert mor_equal(mor_compose(res.U, mor_compose(f, res.V)), res.D)
            back = mor_compose(invert(res.U), mor_compose(res.D, invert(res.V)))
            assert mor_equal(back, f)


def test_snf_nondiagonalizable_projection_inclusion_pair():
    """Over Loewy length 3 the projection-plus-inclusion column is an
    indecomposable morphism, so no unimodular reduction can make it diagonal."""
    f = morphism(M(B3I, "M2"), M(B3I, "M3", "M1"), [[1], [1]])
    res = snf(f)
    assert not res.diagonal
    assert mor_equal(mor_compose(res.U, mor_compose(f, res.V)), res.D)


def test_snf_rejects_stable_backing():
    st = stable_base(B3I)
    m = serial_module(st, ["M1"])
    with pytest.raises(ValueError):
        snf(morphism(m, m, [[1]]))


# -- kernels, cokernels, images ------------------------------------------------------


def test_kernel_multiplication_by_p():
    m = M(B2I, "M2")
    K, incl = kernel(morphism(m, m, [[2]]))
    assert K.parts == ("M1",)
    assert is_injective_map(incl)
    # inclusion is multiplication by pi
    assert apply_morphism(incl, (B2I.ring.one,)) == (B2I.ring.pi,)


def test_kernel_projection_m3_to_m1():
    f = morphism(M(B3P, "M3"), M(B3P, "M1"), [[1]])
    K, incl = kernel(f)
    assert K.parts == ("M2",)
    one = B3P.ring.one
    assert apply_morphism(incl, (one,)) == (B3P.ring.pi,)


def test_kernel_cokernel_zero_map():
    m, n = M(B3I, "M2"), M(B3I, "M3", "M1")
    f = zero_morphism(m, n)
    K, _ = kernel(f)
    C, _ = cokernel(f)
    assert K == m and C == n


def test_exactness_random():
    rng = random.Random(11)
    for base in (B3I, B3P):
        labels = list(base.labels)
        for _ in range(40):
            a = M(base, *[rng.choice(labels) for _ in range(rng.randrange(4))])
            b = M(base, *[rng.choice(labels) for _ in range(rng.randrange(4))])
            f = hom_space(a, b).random(rng)
            K, incl = kernel(f)
            C, proj = cokernel(f)
            I, iincl, cor = image(f)
            assert mor_compose(f, incl).is_zero()
            assert mor_compose(proj, f).is_zero()
            assert is_injective_map(incl)
            assert is_surjective_map(proj)
            # image = kernel of the cokernel, and lengths are additive
            KC, _ = kernel(proj)
            assert KC == I
            assert a.length() == K.length() + I.length()
            assert mor_equal(mor_compose(iincl, cor), f)


def test_injective_surjective_iso_flags():
    up = morphism(M(B2I, "M1"), M(B2I, "M2"), [[1]])
    down = morphism(M(B2I, "M2"), M(B2I, "M1"), [[1]])
    assert is_injective_map(up) and not is_surjective_map(up)
    assert is_surjective_map(down) and not is_injective_map(down)
    unit = morphism(M(B2I, "M2"), M(B2I, "M2"), [[3]])
    assert is_iso(unit)
    assert mor_equal(mor_compose(invert(unit), unit), identity_morphism(M(B2I, "M2")))


def test_rad2nak_kernel_cokernel():
    b = rad2nak_base(2, 2)
    P1 = serial_module(b, ["P1"])
    S1 = serial_module(b, ["S1"])
    S2 = serial_module(b, ["S2"])
    proj = morphism(P1, S1, [[1]])
    K, incl = kernel(proj)
    assert K.parts == ("S2",)
    assert mor_compose(proj, incl).is_zero()
    C, q = cokernel(morphism(S2, P1, [[1]]))
    assert C.parts == ("S1",)
    assert is_surjective_map(q)
    # radical map P2 -> P1: kernel and cokernel are the outer simples
    P2 = serial_module(b, ["P2"])
    rad = morphism(P2, P1, [[1]])
    K2, _ = kernel(rad)
    C2, _ = cokernel(rad)
    assert K2.parts == ("S1",) and C2.parts == ("S1",)


def test_rad2nak_exactness_random():
    b = rad2nak_base(2, 3)
    rng = random.Random(5)
    labels = list(b.labels)
    for _ in range(40):
        a = M(b, *[rng.choice(labels) for _ in range(rng.randrange(3))])
        c = M(b, *[rng.choice(labels) for _ in range(rng.randrange(3))])
        f = hom_space(a, c).random(rng)
        K, incl = kernel(f)
        C, proj = cokernel(f)
        assert mor_compose(f, incl).is_zero()
        assert mor_compose(proj, f).is_zero()
        I, _, _ = image(f)
        assert a.length() == K.length() + I.length()
        KC, _ = kernel(proj)
        assert KC == I


# -- socle and envelopes ---------------------------------------------------------------


def test_socle_examples():
    assert socle(M(B3I, "M3", "M1")).parts == ("M1", "M1")
    b = rad2nak_base(2, 2)
    assert socle(serial_module(b, ["P1"])).parts == ("S2",)
    assert socle(zero_module(B3I)).is_zero()
    incl = socle_inclusion(M(B3I, "M3", "M1"))
    assert is_injective_map(incl)


def test_injective_envelope_z8():
    J, j = injective_envelope(M(B3I, "M1"))
    assert J.parts == ("M3",)
    assert is_injective_map(j)
    assert apply_morphism(j, (B3I.ring.one,)) == (B3I.ring.from_int(4),)


def test_injective_envelope_mixed():
    J, j = injective_envelope(M(B3P, "M2", "M1"))
    assert J.parts == ("M3", "M3")
    assert is_injective_map(j)


def test_injective_envelope_rad2nak_socle_match():
    b = rad2nak_base(2, 2)
    J, j = injective_envelope(serial_module(b, ["S1"]))
    # the envelope is the length-2 indecomposable whose socle is S1
    assert J.parts == ("P2",)
    assert b.socle_label("P2") == "S1"
    assert is_injective_map(j)


def test_injective_envelope_left_minimal_exhaustive():
    """Every endomorphism of the envelope fixing the inclusion is invertible."""
    for base in (B2P, B2I):
        m = M(base, "M1", "M1")
        J, j = injective_envelope(m)
        for k in hom_space(J, J):
            if mor_equal(mor_compose(k, j), j):
                assert is_iso(k)


def test_socle_of_envelope_is_socle_iso():
    for base in (B3I, B3P):
        m = M(base, "M2", "M1")
        J, j = injective_envelope(m)
        soc_m, soc_j = socle(m), socle(J)
        incl_m = socle_inclusion(m)
        incl_j = socle_inclusion(J)
        restricted = solve_right(incl_j, mor_compose(j, incl_m))
        assert restricted is not None and is_iso(restricted)


def test_envelope_unavailable_on_stable():
    st = stable_base(B3I)
    with pytest.raises(ValueError):
        injective_envelope(serial_module(st, ["M1"]))


# -- solving ---------------------------------------------------------------------------


def test_solve_no_section_of_projection():
    # R/pi^2 -> R/pi never splits: the identity does not lift
    down = morphism(M(B2I, "M2"), M(B2I, "M1"), [[1]])
    assert solve_right(down, identity_morphism(M(B2I, "M1"))) is None


def test_solve_extension_into_injective_always_exists():
    # extend K -> J along a monomorphism K -> S (J injective)
    for base in (B3I, B3P):
        rng = random.Random(2)
        K = M(base, "M2")
        S = M(base, "M3", "M1")
        emb = morphism(K, S, [[1], [1]])
        assert is_injective_map(emb)
        J, j = injective_envelope(K)
        e = solve_left(emb, j)
        assert e is not None
        assert mor_equal(mor_compose(e, emb), j)


def test_solve_unsolvable_unit_through_pi():
    up = morphism(M(B2I, "M1"), M(B2I, "M2"), [[1]])
    assert solve(up, identity_morphism(M(B2I, "M1")), side="left") is None


def test_hom_space_sizes():
    assert hom_space(M(B2I, "M1"), M(B2I, "M2")).size == 2
    assert hom_space(M(B3I, "M2"), M(B3I, "M2")).size == 4
    assert hom_space(M(B3I, "M2"), zero_module(B3I)).size == 1
    assert len(list(hom_space(M(B2P, "M1"), M(B2P, "M2")))) == 2


def test_dual_morphism_involution():
    rng = random.Random(4)
    a = M(B3I, "M3", "M1")
    b = M(B3I, "M2")
    f = hom_space(a, b).random(rng)
    assert mor_equal(dual_morphism(dual_morphism(f)), f)


def test_zero_module_everywhere():
    z = zero_module(B3I)
    m = M(B3I, "M2")
    f = zero_morphism(z, m)
    K, _ = kernel(f)
    C, _ = cokernel(f)
    assert K.is_zero() and C == m
    g = zero_morphism(m, z)
    K2, _ = kernel(g)
    assert K2 == m
    assert is_injective_map(f) and is_surjective_map(g)
