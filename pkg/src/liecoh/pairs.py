"""Homogeneous pairs (g, h, component generators) and their decompositions.

A HomogeneousPair models G/H for G compact connected with Lie algebra g and
H a closed (possibly disconnected) subgroup: h is given by a basis of its
Lie algebra inside g, and the component group H/H⁰ is given by finitely many
generator matrices describing the Ad-action of component representatives.

The generator conditions checked here (automorphism, h preserved, center
fixed pointwise, declared simple factors preserved) are necessary for a
matrix to arise as Ad(x) with x in a compact connected G normalizing H⁰.
They are not sufficient: inputs passing every check may still fail to
integrate to a closed subgroup.  That trust boundary is the caller's.
"""

import numpy as np

from .invariant_forms import fixed_vectors
from .liealg import LieAlgebra, ValidationReport, center_and_derived, is_bracket_closed
from .linalg import (Subspace, feye, fmat, fr, fzeros, intersect, is_zero,
                     orth_complement, rat_str, subspace_sum)


class HomogeneousPair:
    """A validated-on-demand model of a homogeneous space G/H.

    algebra:    LieAlgebra of g.
    h_basis:    n × m matrix whose columns span h (m = dim h, may be 0).
    generators: list of n × n matrices, the Ad-action of one representative
                per generator of H/H⁰ (empty for connected H).
    """

    def __init__(self, algebra, h_basis, generators=()):
        self.algebra = algebra
        n = algebra.n
        if not isinstance(h_basis, np.ndarray):
            h_basis = np.array(h_basis, dtype=object)
        if h_basis.size == 0:
            h_basis = fzeros(n, 0)
        else:
            h_basis = fmat(h_basis)
        if h_basis.shape[0] != n:
            raise ValueError("h_basis must have %d rows" % n)
        self.h = Subspace(n, h_basis)  # checks column independence
        self.h_basis = self.h.basis
        gens = []
        for g in generators:
            g = fmat(g)
            if g.shape != (n, n):
                raise ValueError("generator must be %d x %d" % (n, n))
            gens.append(g)
        self.generators = gens

    @classmethod
    def from_vectors(cls, algebra, vectors, generators=()):
        """Build from a list of h basis vectors (each of length n)."""
        n = algebra.n
        if not vectors:
            return cls(algebra, fzeros(n, 0), generators)
        cols = fzeros(n, len(vectors))
        for j, v in enumerate(vectors):
            for i in range(n):
                cols[i, j] = fr(v[i])
        return cls(algebra, cols, generators)

    # -- serialization --------------------------------------------------------

    def to_dict(self):
        basis = [[rat_str(self.h_basis[i, j]) for i in range(self.algebra.n)]
                 for j in range(self.h.dim)]
        gens = [[[rat_str(g[i, j]) for j in range(self.algebra.n)]
                 for i in range(self.algebra.n)] for g in self.generators]
        return {"algebra": self.algebra.to_dict(),
                "subalgebra": {"basis": basis},
                "component_generators": gens}

    @classmethod
    def from_dict(cls, data):
        alg = LieAlgebra.from_dict(data["algebra"])
        vectors = data.get("subalgebra", {}).get("basis", [])
        gens = [fmat(g) for g in data.get("component_generators", [])]
        return cls.from_vectors(alg, [[fr(c) for c in v] for v in vectors], gens)


class PairDecomposition:
    """The subspaces entering the low-degree Betti formulas.

    zh = z(h), hh = [h,h], hcapgg = h ∩ [g,g], a = z(h) ∩ [g,g],
    b = (h∩[g,g])^⊥ ∩ h, a = a_fixed ⊕ a_moved under the generator action,
    r0 = dim g/([g,g]+h) = l − dim b.
    """

    def __init__(self, zh, hh, hcapgg, a, b, a_fixed, a_moved, r0):
        self.zh = zh
        self.hh = hh
        self.hcapgg = hcapgg
        self.a = a
        self.b = b
        self.a_fixed = a_fixed
        self.a_moved = a_moved
        self.r0 = r0

    def dims(self):
        return {"dim_h": self.zh.dim + self.hh.dim,
                "dim_zh": self.zh.dim, "dim_hh": self.hh.dim,
                "dim_h_cap_gg": self.hcapgg.dim,
                "dim_a": self.a.dim, "dim_b": self.b.dim,
                "dim_a_fixed": self.a_fixed.dim, "dim_a_moved": self.a_moved.dim,
                "r0": self.r0}


def generator_order(gamma, bound=256):
    """Multiplicative order of gamma, or None if it exceeds bound."""
    n = gamma.shape[0]
    eye = feye(n)
    power = gamma
    for k in range(1, bound + 1):
        if (power == eye).all():
            return k
        power = gamma.dot(power)
    return None


def validate_pair(pair, order_bound=256):
    """Check every HomogeneousPair invariant; returns a ValidationReport.

    Generator order beyond order_bound is a warning, not a failure: the
    order check only exists to flag inputs that cannot describe a finite
    component group.
    """
    alg = pair.algebra
    rep = ValidationReport()
    n = alg.n
    eye = feye(n)

    rep.add("h_bracket_closed", is_bracket_closed(alg, pair.h))

    bad_auto = None
    for gi, g in enumerate(pair.generators):
        cols = [g[:, i] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lhs = g.dot(alg.bracket_basis(i, j))
                if not is_zero(lhs - alg.bracket(cols[i], cols[j])):
                    bad_auto = (gi, i, j)
                    break
            if bad_auto:
                break
        if bad_auto:
            break
    rep.add("generator_is_automorphism", bad_auto is None, bad_auto)

    bad_h = None
    for gi, g in enumerate(pair.generators):
        image = Subspace.span(n, [g.dot(pair.h_basis[:, j]) for j in range(pair.h.dim)])
        if image != pair.h:
            bad_h = gi
            break
    rep.add("generator_preserves_subalgebra", bad_h is None, bad_h)

    bad_center = None
    for gi, g in enumerate(pair.generators):
        for i in range(alg.l):
            if not is_zero(g[:, i] - eye[:, i]):
                bad_center = (gi, i)
                break
        if bad_center:
            break
    rep.add("generator_fixes_center_pointwise", bad_center is None, bad_center)

    bad_factor = None
    for gi, g in enumerate(pair.generators):
        for name, start, stop in alg.factors:
            block = Subspace.span(n, [eye[:, t] for t in range(start, stop)])
            image = Subspace.span(n, [g[:, t] for t in range(start, stop)])
            if image != block:
                bad_factor = (gi, name)
                break
        if bad_factor:
            break
    rep.add("generator_preserves_each_factor", bad_factor is None, bad_factor)

    for gi, g in enumerate(pair.generators):
        if generator_order(g, order_bound) is None:
            rep.warn("generator %d has order exceeding %d; the component "
                     "group of a closed subgroup must be finite" % (gi, order_bound))
    return rep


def decompose(pair):
    """Compute the decomposition h = a ⊕ [h,h] ⊕ b and its refinements.

    Relies on the pair being valid; every structural identity the theory
    guarantees is re-checked here and raises ValueError when violated, since
    a violation means the input does not model a compact homogeneous space.
    """
    alg = pair.algebra
    n = alg.n
    eye = feye(n)
    gram = alg.canonical_gram()

    zh, hh = center_and_derived(alg, pair.h)
    gg = Subspace.span(n, [eye[:, t] for t in alg.derived_indices()])
    a = intersect(zh, gg)
    hcapgg = intersect(pair.h, gg)
    b = intersect(orth_complement(hcapgg, gram), pair.h)

    a_fixed = fixed_vectors(a, pair.generators)
    moved = []
    for g in pair.generators:
        for j in range(a.dim):
            v = a.basis[:, j]
            moved.append(g.dot(v) - v)
    a_moved = Subspace.span(n, moved)

    r0 = alg.l - b.dim

    def fail(what):
        raise ValueError("decomposition invariant failed: %s" % what)

    if subspace_sum(subspace_sum(a, hh), b) != pair.h or \
            a.dim + hh.dim + b.dim != pair.h.dim:
        fail("h = a ⊕ [h,h] ⊕ b")
    if subspace_sum(a, b) != zh or a.dim + b.dim != zh.dim:
        fail("z(h) = a ⊕ b")
    if a_fixed.dim + a_moved.dim != a.dim or intersect(a_fixed, a_moved).dim != 0:
        fail("a = a_fixed ⊕ a_moved")
    if r0 != n - subspace_sum(gg, pair.h).dim:
        fail("r0 = dim g/([g,g]+h)")
    for gi, g in enumerate(pair.generators):
        for j in range(b.dim):
            if not is_zero(g.dot(b.basis[:, j]) - b.basis[:, j]):
                fail("generator %d acts as identity on b" % gi)
        for name, s in (("a", a), ("b", b), ("[h,h]", hh), ("h∩[g,g]", hcapgg)):
            image = Subspace.span(n, [g.dot(s.basis[:, j]) for j in range(s.dim)])
            if image != s:
                fail("generator %d preserves %s" % (gi, name))

    return PairDecomposition(zh, hh, hcapgg, a, b, a_fixed, a_moved, r0)
