"""Serial base categories: finitely many uniserial indecomposables with
explicitly tabulated hom modules and composition.

Three backings are supported:

* ``chain`` -- the module category of a chain ring R (labels M1..Mn with
  M_a = R/m^a).  Hom(M_a, M_b) is cyclic over R of length min(a, b); the
  canonical generator acts as x -> pi^max(0, b-a) * x, i.e. "project if
  a >= b, multiply by pi^(b-a) if a <= b".
* ``rad2nak`` -- a radical square zero cyclic Nakayama algebra over F_p with
  m >= 2 simples.  Labels S1..Sm (length 1) and P1..Pm (length 2, top S_i,
  socle S_{i+1 mod m}); every nonzero hom space is one-dimensional.
* ``stable`` -- the injectively stable quotient of another backing: the same
  labels minus the injective ones, with hom modules divided by the subgroup
  of morphisms factoring through injectives.

Every hom space is cyclic with a distinguished canonical generator, so a hom
element is stored as a single coefficient (a ChainRingElem of the ambient
coefficient ring, kept in canonical form modulo the hom length).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chainring import INT, POLY, ChainRing, ChainRingElem, chain_ring

CHAIN = "chain"
RAD2NAK = "rad2nak"
STABLE = "stable"


@dataclass(frozen=True)
class HomElem:
    """A morphism between base indecomposables: coefficient * canonical generator."""

    source: str
    target: str
    coeff: ChainRingElem

    def is_zero(self) -> bool:
        return self.coeff.is_zero()


class SerialBase:
    """Common interface of the three backings.

    All instances are immutable after construction and hashable by their
    descriptor.
    """

    backing: str
    ring: ChainRing          # ambient coefficient ring
    labels: tuple

    # -- structure tables, provided by subclasses ------------------------------

    def length(self, label: str) -> int:
        raise NotImplementedError

    def is_injective(self, label: str) -> bool:
        raise NotImplementedError

    def socle_label(self, label: str) -> str:
        raise NotImplementedError

    def hom_length(self, a: str, b: str) -> int:
        """Length of the cyclic coefficient module of Hom(a, b); 0 means zero space."""
        raise NotImplementedError

    def compose_coeff(self, a: str, b: str, c: str, v: ChainRingElem, u: ChainRingElem) -> ChainRingElem:
        """Coefficient of (v*g_{c<-b}) o (u*g_{b<-a}) on the generator g_{c<-a}."""
        raise NotImplementedError

    def envelope_label(self, label: str) -> str:
        """Label of the injective envelope of the given indecomposable."""
        raise NotImplementedError

    # -- generic helpers --------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        return self.backing in (CHAIN, RAD2NAK)

    @property
    def is_selfinjective(self) -> bool:
        return self.backing in (CHAIN, RAD2NAK)

    def check_label(self, label: str):
        if label not in self._label_set:
            raise ValueError(f"unknown label {label!r} for base {self.descriptor()}")

    def label_sort_key(self, label: str):
        # Normal form order: descending length, then label index.
        return (-self.length(label), self.labels.index(label))

    def coeff(self, a: str, b: str, value) -> ChainRingElem:
        """Canonical coefficient of Hom(a, b) from digits or an integer."""
        if isinstance(value, ChainRingElem):
            e = value
        elif isinstance(value, int):
            e = self.ring.from_int(value)
        else:
            e = self.ring.elem(value)
        return e.truncate(self.hom_length(a, b))

    def zero_coeff(self) -> ChainRingElem:
        return self.ring.zero

    def one_coeff(self) -> ChainRingElem:
        return self.ring.one

    def hom_elements(self, a: str, b: str):
        """All elements of Hom(a, b) as coefficients, in digit order."""
        ln = self.hom_length(a, b)
        r = self.ring
        if ln == 0:
            yield r.zero
            return
        def rec(prefix):
            if len(prefix) == ln:
                yield r.elem(tuple(prefix) + (0,) * (r.n - ln))
                return
            for d in range(r.p):
                yield from rec(prefix + [d])
        yield from rec([])

    def injective_labels(self) -> tuple:
        return tuple(l for l in self.labels if self.is_injective(l))

    def noninjective_labels(self) -> tuple:
        return tuple(l for l in self.labels if not self.is_injective(l))

    def simple_labels(self) -> tuple:
        return tuple(l for l in self.labels if self.length(l) == 1)

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, SerialBase) and self.descriptor() == other.descriptor()

    def __hash__(self):
        import json
        return hash(json.dumps(self.descriptor(), sort_keys=True))

    def __repr__(self):
        return f"SerialBase({self.descriptor()})"


class ChainBase(SerialBase):
    """mod R for a chain ring R: labels M1..Mn, M_n the unique injective."""

    backing = CHAIN

    def __init__(self, ring: ChainRing):
        self.ring = ring
        self.labels = tuple(f"M{a}" for a in range(1, ring.n + 1))
        self._label_set = frozenset(self.labels)
        self._lengths = {l: int(l[1:]) for l in self.labels}

    def _len(self, label: str) -> int:
        return self._lengths[label]

    def length(self, label: str) -> int:
        ln = self._lengths.get(label)
        if ln is None:
            self.check_label(label)
        return ln

    def is_injective(self, label: str) -> bool:
        return self.length(label) == self.ring.n

    def socle_label(self, label: str) -> str:
        self.check_label(label)
        return "M1"

    def hom_length(self, a: str, b: str) -> int:
        return min(self._lengths[a], self._lengths[b])

    def delta(self, a: int, b: int, c: int) -> int:
        """Exponent in g_{c<-b} o g_{b<-a} = pi^delta * g_{c<-a}."""
        return max(0, b - a) + max(0, c - b) - max(0, c - a)

    def compose_coeff(self, a, b, c, v, u):
        la, lb, lc = self._len(a), self._len(b), self._len(c)
        w = (v * u).shift_up(self.delta(la, lb, lc))
        return w.truncate(min(la, lc))

    def envelope_label(self, label: str) -> str:
        self.check_label(label)
        return self.labels[-1]

    def descriptor(self) -> dict:
        return {"kind": "chain", "arith": self.ring.kind, "p": self.ring.p, "n": self.ring.n}


class Rad2NakBase(SerialBase):
    """Radical square zero cyclic Nakayama algebra with m >= 2 simples over F_p.

    Nonzero hom spaces and their canonical generators (indices mod m):
    identities, proj: P_i -> S_i, incl: S_{i+1} -> P_i, and the radical map
    rad: P_{i+1} -> P_i (= incl o proj).  The only nonzero composite of two
    non-identity generators is incl_i o proj_{i+1} = rad_i.
    """

    backing = RAD2NAK

    def __init__(self, m: int, p: int):
        if m < 2:
            raise ValueError("rad2nak requires m >= 2; m = 1 is the chain ring F_p[x]/(x^2)")
        self.m = m
        self.ring = chain_ring(INT, p, 1)
        self.labels = tuple(f"P{i}" for i in range(1, m + 1)) + tuple(f"S{i}" for i in range(1, m + 1))
        self._label_set = frozenset(self.labels)

    def _idx(self, label: str) -> int:
        return int(label[1:])

    def _succ(self, i: int) -> int:
        return i % self.m + 1

    def length(self, label: str) -> int:
        self.check_label(label)
        return 2 if label[0] == "P" else 1

    def is_injective(self, label: str) -> bool:
        return self.length(label) == 2

    def socle_label(self, label: str) -> str:
        self.check_label(label)
        i = self._idx(label)
        return f"S{self._succ(i)}" if label[0] == "P" else label

    def top_label(self, label: str) -> str:
        self.check_label(label)
        return f"S{self._idx(label)}"

    def gen_kind(self, a: str, b: str) -> Optional[str]:
        """Kind of the canonical generator of Hom(a, b), or None if the space is zero."""
        if a == b:
            return "id"
        ia, ib = self._idx(a), self._idx(b)
        if a[0] == "P" and b[0] == "S" and ia == ib:
            return "proj"
        if a[0] == "S" and b[0] == "P" and ia == self._succ(ib):
            return "incl"
        if a[0] == "P" and b[0] == "P" and ia == self._succ(ib):
            return "rad"
        return None

    def hom_length(self, a: str, b: str) -> int:
        self.check_label(a)
        self.check_label(b)
        return 1 if self.gen_kind(a, b) else 0

    def compose_coeff(self, a, b, c, v, u):
        k1 = self.gen_kind(a, b)
        k2 = self.gen_kind(b, c)
        if k1 is None or k2 is None:
            return self.ring.zero
        if k1 == "id" or k2 == "id":
            structure = 1 if self.gen_kind(a, c) else 0
        elif (k1, k2) == ("proj", "incl"):
            structure = 1  # incl_i o proj_{i+1} = rad_i
        else:
            structure = 0
        w = (v * u) if structure else self.ring.zero
        return w.truncate(self.hom_length(a, c))

    def envelope_label(self, label: str) -> str:
        self.check_label(label)
        if label[0] == "P":
            return label
        # S_i is the socle of P_{i-1}
        i = self._idx(label)
        return f"P{(i - 2) % self.m + 1}"

    def descriptor(self) -> dict:
        return {"kind": "rad2nak", "m": self.m, "p": self.ring.p}


class StableBase(SerialBase):
    """Injectively stable quotient of an abelian backing.

    Hom(a, b) is the hom module of the underlying base divided by the
    subgroup of elements factoring through injective labels; for cyclic hom
    modules that subgroup is pi^d * Hom with d the minimal valuation of a
    composite of canonical generators through an injective.  The chosen
    section (used by lifts) keeps the digits of a coefficient as they are.
    """

    backing = STABLE

    def __init__(self, of: SerialBase):
        self.of = of
        self.ring = of.ring
        self.labels = of.noninjective_labels()
        self._label_set = frozenset(self.labels)
        self._stable_len = {}
        for a in self.labels:
            for b in self.labels:
                self._stable_len[(a, b)] = self._compute_length(a, b)

    def _factoring_valuation(self, a: str, b: str) -> int:
        """Minimal valuation of g_{b<-J} o g_{J<-a} over injective labels J."""
        best = self.ring.n + 1
        for j in self.of.injective_labels():
            c = self.of.compose_coeff(a, j, b, self.of.one_coeff(), self.of.one_coeff())
            if not c.is_zero():
                best = min(best, c.valuation())
        return best

    def _compute_length(self, a: str, b: str) -> int:
        return min(self.of.hom_length(a, b), self._factoring_valuation(a, b))

    def length(self, label: str) -> int:
        self.check_label(label)
        return self.of.length(label)

    def is_injective(self, label: str) -> bool:
        self.check_label(label)
        return False

    def socle_label(self, label: str) -> str:
        return self.of.socle_label(label)

    def hom_length(self, a: str, b: str) -> int:
        self.check_label(a)
        self.check_label(b)
        return self._stable_len[(a, b)]

    def compose_coeff(self, a, b, c, v, u):
        w = self.of.compose_coeff(a, b, c, v, u)
        return w.truncate(self.hom_length(a, c))

    def reduce_coeff(self, a: str, b: str, coeff: ChainRingElem) -> ChainRingElem:
        """Reduction Hom_of(a, b) -> stable Hom(a, b): idempotent, additive."""
        return coeff.truncate(self.hom_length(a, b))

    def lift_coeff(self, a: str, b: str, coeff: ChainRingElem) -> ChainRingElem:
        """The fixed section of reduce_coeff: digits are kept verbatim."""
        return coeff.truncate(self.of.hom_length(a, b))

    def envelope_label(self, label: str) -> str:
        raise ValueError("stable backings are additive-only: no injective envelopes")

    def descriptor(self) -> dict:
        return {"kind": "stable", "of": self.of.descriptor()}


def stable_hom_basis(base: SerialBase, a: str, b: str):
    """Basis of Hom(a, b) modulo morphisms factoring through injectives.

    Returns (basis, reduce) where basis lists coefficients pi^k, k < stable
    length, of a complement of the factoring subgroup, and reduce maps a
    coefficient to its canonical complement representative.
    """
    st = base if isinstance(base, StableBase) else StableBase(base)
    if not isinstance(base, StableBase):
        # interpret a, b as labels of the given abelian base
        st.of.check_label(a)
        st.of.check_label(b)
    ln = st.hom_length(a, b)
    basis = [st.ring.pi_pow(k) for k in range(ln)]
    return basis, (lambda coeff: st.reduce_coeff(a, b, coeff))


def hom_compose(base: SerialBase, g: HomElem, f: HomElem) -> HomElem:
    """Composite g o f of hom elements of the base."""
    if f.target != g.source:
        raise ValueError(f"label mismatch: cannot compose {g.source}<-... after ...->{f.target}")
    coeff = base.compose_coeff(f.source, f.target, g.target, g.coeff, f.coeff)
    return HomElem(f.source, g.target, coeff)


def chain_base(arith: str, p: int, n: int) -> ChainBase:
    return ChainBase(chain_ring(arith, p, n))


def rad2nak_base(m: int, p: int) -> SerialBase:
    """rad^2-zero cyclic Nakayama base; m = 1 is identified with F_p[x]/(x^2)."""
    if m == 1:
        return chain_base(POLY, p, 2)
    return Rad2NakBase(m, p)


def stable_base(of: SerialBase) -> StableBase:
    return StableBase(of)


def base_from_descriptor(desc: dict) -> SerialBase:
    kind = desc.get("kind")
    if kind == "chain":
        return chain_base(desc["arith"], desc["p"], desc["n"])
    if kind == "rad2nak":
        return rad2nak_base(desc["m"], desc["p"])
    if kind == "stable":
        return stable_base(base_from_descriptor(desc["of"]))
    raise ValueError(f"unknown base descriptor {desc!r}")
