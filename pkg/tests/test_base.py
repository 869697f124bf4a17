import itertools

import pytest

from monocat.base import (
    HomElem,
    base_from_descriptor,
    chain_base,
    hom_compose,
    rad2nak_base,
    stable_base,
    stable_hom_basis,
)


def test_chain_labels_and_injectivity():
    b = chain_base("int", 2, 3)
    assert b.labels == ("M1", "M2", "M3")
    assert b.injective_labels() == ("M3",)
    assert b.length("M2") == 2
    assert b.socle_label("M3") == "M1"
    assert b.envelope_label("M1") == "M3"


def test_hom_compose_chain_n3():
    # g_{M1<-M3} then g_{M2<-M1} gives pi * g_{M2<-M3}
    b = chain_base("poly", 2, 3)
    f = HomElem("M3", "M1", b.one_coeff())
    g = HomElem("M1", "M2", b.one_coeff())
    out = hom_compose(b, g, f)
    assert out.source == "M3" and out.target == "M2"
    assert out.coeff == b.ring.pi_pow(1)


def test_hom_compose_identity_law():
    for desc in [{"kind": "chain", "arith": "int", "p": 2, "n": 3},
                 {"kind": "rad2nak", "m": 2, "p": 2}]:
        b = base_from_descriptor(desc)
        for a in b.labels:
            for c in b.labels:
                for u in b.hom_elements(a, c):
                    f = HomElem(a, c, u)
                    ida = HomElem(a, a, b.one_coeff())
                    idc = HomElem(c, c, b.one_coeff())
                    assert hom_compose(b, f, ida).coeff == u
                    assert hom_compose(b, idc, f).coeff == u


def test_hom_compose_label_mismatch():
    b = chain_base("int", 2, 2)
    with pytest.raises(ValueError):
        hom_compose(b, HomElem("M1", "M1", b.one_coeff()), HomElem("M1", "M2", b.one_coeff()))


def test_stable_mixed_composites_vanish():
    # both mixed composites are zero in the stable quotient at length 3
    for arith in ("int", "poly"):
        st = stable_base(chain_base(arith, 2, 3))
        one = st.ring.one
        assert st.compose_coeff("M1", "M2", "M1", one, one).is_zero()
        assert st.compose_coeff("M2", "M1", "M2", one, one).is_zero()
        assert all(st.hom_length(a, b) == 1 for a in st.labels for b in st.labels)


def test_stable_hom_basis_examples():
    b2 = chain_base("poly", 2, 2)
    basis, reduce_ = stable_hom_basis(b2, "M1", "M1")
    assert len(basis) == 1  # F_p worth of stable endomorphisms
    assert reduce_(b2.ring.one) == b2.ring.one
    b3 = chain_base("poly", 2, 3)
    basis, reduce_ = stable_hom_basis(b3, "M1", "M2")
    assert len(basis) == 1
    basis, reduce_ = stable_hom_basis(b3, "M2", "M2")
    # endomorphisms of M2 modulo injectives: multiplication by pi dies
    assert len(basis) == 1
    assert reduce_(b3.ring.pi).is_zero()
    assert reduce_(reduce_(b3.ring.one)) == reduce_(b3.ring.one)


def test_stable_of_n2_semisimple():
    st = stable_base(chain_base("int", 2, 2))
    assert st.labels == ("M1",)
    assert st.hom_length("M1", "M1") == 1


def test_stable_factoring_enumeration_oracle():
    """The reduction kernel equals the exhaustively enumerated subgroup of
    composites through the injective label (F_2 scale)."""
    b = chain_base("poly", 2, 3)
    st = stable_base(b)
    j = "M3"
    for a in ("M1", "M2"):
        for c in ("M1", "M2"):
            factoring = set()
            for u in b.hom_elements(a, j):
                for v in b.hom_elements(j, c):
                    factoring.add(b.compose_coeff(a, j, c, v, u))
            killed = {x for x in b.hom_elements(a, c) if st.reduce_coeff(a, c, x).is_zero()}
            assert killed == factoring


def test_rad2nak_tables():
    b = rad2nak_base(2, 2)
    assert set(b.labels) == {"P1", "P2", "S1", "S2"}
    assert b.is_injective("P1") and not b.is_injective("S1")
    assert b.socle_label("P1") == "S2"
    assert b.envelope_label("S2") == "P1"
    assert b.envelope_label("S1") == "P2"
    # nonzero hom spaces: id, proj, incl, rad
    assert b.hom_length("P1", "S1") == 1
    assert b.hom_length("S2", "P1") == 1
    assert b.hom_length("P2", "P1") == 1
    assert b.hom_length("S1", "S2") == 0
    assert b.hom_length("S1", "P1") == 0
    one = b.ring.one
    # incl o proj is the radical map, proj o incl vanishes
    assert b.compose_coeff("P2", "S2", "P1", one, one) == one
    assert b.compose_coeff("S2", "P1", "S1", one, one).is_zero()
    # the radical square is zero
    assert b.compose_coeff("P1", "P2", "P1", one, one).is_zero() or b.m != 2


def test_rad2nak_m1_is_dual_numbers():
    b = rad2nak_base(1, 3)
    assert b.descriptor() == {"kind": "chain", "arith": "poly", "p": 3, "n": 2}


def test_rad2nak_matrix_model_oracle():
    """Hom-space sizes of the m=2 algebra against the graded matrix model:
    each indecomposable is a graded vector (top grade, socle grade), and a
    morphism is a grade-preserving pair of scalars commuting with the
    radical action."""
    b = rad2nak_base(2, 2)
    p = 2

    def model(label):
        # basis positions by grade, and the action pairs (from grade, to grade)
        i = int(label[1:])
        if label[0] == "S":
            return {i: ["v"]}, []
        j = i % 2 + 1
        return {i: ["top"], j: ["soc"]}, [(i, j)]

    for a in b.labels:
        for c in b.labels:
            ga, acta = model(a)
            gc, actc = model(c)
            slots = [g for g in ga if g in gc]  # one scalar per shared grade
            src_out = dict(acta)
            tgt_out = dict(actc)
            count = 0
            for values in itertools.product(range(p), repeat=len(slots)):
                coeff = dict(zip(slots, values))
                ok = True
                for g, g2 in src_out.items():
                    # f(x * basis at g) = x * f(basis at g)
                    lhs = coeff.get(g2, 0)
                    rhs = coeff.get(g, 0) if tgt_out.get(g) == g2 else 0
                    if lhs % p != rhs % p:
                        ok = False
                for g in slots:
                    if g not in src_out and g in tgt_out:
                        # x kills the source basis vector, so it must kill the image
                        if coeff.get(g, 0) % p:
                            ok = False
                if ok:
                    count += 1
            assert count == p ** b.hom_length(a, c), (a, c, count)


def test_composition_associative_bilinear_exhaustive():
    """Associativity and bilinearity of the hom calculus over F_2 backings."""
    bases = [chain_base("int", 2, 2), chain_base("poly", 2, 3), rad2nak_base(2, 2),
             stable_base(chain_base("int", 2, 3))]
    for b in bases:
        labels = b.labels
        for a, c, d in itertools.product(labels, repeat=3):
            for u in b.hom_elements(a, c):
                for v in b.hom_elements(c, d):
                    for w in b.hom_elements(a, c):
                        lhs = b.compose_coeff(a, c, d, v, u + w)
                        rhs = b.compose_coeff(a, c, d, v, u) + b.compose_coeff(a, c, d, v, w)
                        assert b.coeff(a, d, lhs) == b.coeff(a, d, rhs)
        for a, c, d, e in itertools.product(labels, repeat=4):
            for u in b.hom_elements(a, c):
                for v in b.hom_elements(c, d):
                    for w in b.hom_elements(d, e):
                        uv = b.compose_coeff(a, c, d, v, u)
                        lhs = b.compose_coeff(a, d, e, w, uv)
                        vw = b.compose_coeff(c, d, e, w, v)
                        rhs = b.compose_coeff(a, c, e, vw, u)
                        assert b.coeff(a, e, lhs) == b.coeff(a, e, rhs)


def test_descriptor_roundtrip():
    for desc in [
        {"kind": "chain", "arith": "poly", "p": 3, "n": 2},
        {"kind": "rad2nak", "m": 3, "p": 2},
        {"kind": "stable", "of": {"kind": "chain", "arith": "int", "p": 2, "n": 3}},
    ]:
        assert base_from_descriptor(desc).descriptor() == desc
