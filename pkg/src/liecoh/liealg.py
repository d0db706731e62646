"""Compact reductive Lie algebras over Q with declared center/factor structure.

A LieAlgebra carries a basis e_0 .. e_{n-1} in which e_0 .. e_{l-1} span the
center z(g) and the remaining indices are partitioned into declared simple
ideals g_1, ..., g_r.  Structure constants are stored sparsely for i < j only;
[e_i, e_j] = sum_k c_{ijk} e_k, the i > j entries follow by antisymmetry.

Factors are declared by the input and verified (ideal-closure test), never
discovered: discovery would need idempotent splitting of the adjoint
commutant, which can fail over Q, while verification is complete and cheap.
"""

from fractions import Fraction

import numpy as np

from .linalg import (F0, F1, Subspace, fr, fzeros, feye, intersect,
                     intersect_kernels, is_spd, is_zero, kernel_basis,
                     rat_str)


class ValidationError(ValueError):
    def __init__(self, report):
        self.report = report
        names = ", ".join(c["name"] for c in report.failures())
        super().__init__("validation failed: %s" % names)


class ValidationReport:
    """Outcome of validate()/validate_pair(): named checks with witnesses."""

    def __init__(self):
        self.checks = []
        self.warnings = []

    def add(self, name, ok, witness=None):
        self.checks.append({"name": name, "ok": bool(ok), "witness": witness})

    def warn(self, message):
        self.warnings.append(message)

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["ok"]]

    def ensure(self):
        if not self.ok:
            raise ValidationError(self)
        return self

    def describe(self):
        lines = []
        for c in self.checks:
            line = "%-4s %s" % ("ok" if c["ok"] else "FAIL", c["name"])
            if not c["ok"] and c["witness"] is not None:
                line += "  witness=%r" % (c["witness"],)
            lines.append(line)
        lines.extend("warn %s" % w for w in self.warnings)
        return "\n".join(lines)


class LieAlgebra:
    """Immutable (after validation) compact reductive Lie algebra model.

    factors: list of (name, start, stop) index ranges partitioning l .. n-1.
    table:   {(i, j): ((k, Fraction), ...)} with i < j, global indices.
    """

    def __init__(self, center_dim, factors, table):
        self.l = center_dim
        self.factors = []
        pos = center_dim
        for name, dim in factors:
            self.factors.append((name, pos, pos + dim))
            pos += dim
        self.n = pos
        tbl = {}
        for (i, j), terms in table.items():
            if not (0 <= i < j < self.n):
                raise ValueError("structure constant indices out of range: (%d,%d)" % (i, j))
            agg = {}
            for k, c in terms:
                if not 0 <= k < self.n:
                    raise ValueError("structure constant target out of range: %d" % k)
                agg[k] = agg.get(k, F0) + fr(c)
            merged = tuple(sorted((k, c) for k, c in agg.items() if c != 0))
            if merged:
                tbl[(i, j)] = merged
        self.table = tbl
        self._ad_sparse = None
        self._killing = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_factor_constants(cls, center_dim, factor_specs):
        """Build from per-factor local structure constants.

        factor_specs: list of (name, dim, constants) where constants is an
        iterable of (i, j, k, c) in factor-local indices with i < j.
        """
        table = {}
        factors = []
        offset = center_dim
        for name, dim, constants in factor_specs:
            factors.append((name, dim))
            for i, j, k, c in constants:
                if not (0 <= i < j < dim and 0 <= k < dim):
                    raise ValueError("factor %r: bad local indices (%d,%d,%d)" % (name, i, j, k))
                key = (offset + i, offset + j)
                table.setdefault(key, []).append((offset + k, fr(c)))
            offset += dim
        return cls(center_dim, factors, table)

    @classmethod
    def abelian(cls, l):
        return cls(l, [], {})

    @property
    def r(self):
        """Number of declared simple factors (#g)."""
        return len(self.factors)

    def factor_indices(self, i):
        _, start, stop = self.factors[i]
        return range(start, stop)

    def derived_indices(self):
        return range(self.l, self.n)

    # -- brackets ------------------------------------------------------------

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a length-n vector."""
        out = fzeros(self.n)
        if i == j:
            return out
        sign = F1
        if i > j:
            i, j, sign = j, i, -F1
        for k, c in self.table.get((i, j), ()):
            out[k] += sign * c
        return out

    def bracket(self, x, y):
        """[x, y] for coordinate vectors of length n."""
        if len(x) != self.n or len(y) != self.n:
            raise ValueError("vector length != algebra dimension")
        out = fzeros(self.n)
        for (i, j), terms in self.table.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if coef:
                for k, c in terms:
                    out[k] += coef * c
        return out

    def ad_sparse(self):
        """Per basis vector i, the sparse matrix of ad e_i as {(row, col): c}."""
        if self._ad_sparse is None:
            ads = [dict() for _ in range(self.n)]
            for (i, j), terms in self.table.items():
                for k, c in terms:
                    ads[i][(k, j)] = ads[i].get((k, j), F0) + c
                    ads[j][(k, i)] = ads[j].get((k, i), F0) - c
            self._ad_sparse = [
                {kc: v for kc, v in ad.items() if v} for ad in ads]
        return self._ad_sparse

    def ad_matrix(self, v):
        """Dense matrix of ad v = [v, .] acting on coordinate vectors."""
        out = fzeros(self.n, self.n)
        for i, ad in enumerate(self.ad_sparse()):
            if v[i]:
                for (row, col), c in ad.items():
                    out[row, col] += v[i] * c
        return out

    # -- Killing data ---------------------------------------------------------

    def killing_gram(self):
        """K(e_i, e_j) = trace(ad e_i ∘ ad e_j); symmetric, zero on center."""
        if self._killing is None:
            ads = self.ad_sparse()
            K = fzeros(self.n, self.n)
            for i in range(self.n):
                for j in range(i, self.n):
                    t = F0
                    adj = ads[j]
                    for (a, b), c in ads[i].items():
                        d = adj.get((b, a))
                        if d is not None:
                            t += c * d
                    K[i, j] = t
                    K[j, i] = t
            self._killing = K
        return self._killing

    def btilde(self, i):
        """B-tilde_i(X, Y) := B_i(X_i, Y_i): Killing of factor i pulled back
        through the projection g -> g_i; equals killing_gram on the factor
        block and vanishes elsewhere."""
        if not (0 <= i < self.r):
            raise ValueError("factor index out of range")
        K = self.killing_gram()
        out = fzeros(self.n, self.n)
        _, start, stop = self.factors[i]
        for a in range(start, stop):
            for b in range(start, stop):
                out[a, b] = K[a, b]
        return out

    def canonical_gram(self):
        """The fixed invariant inner product: (-Killing on [g,g]) ⊕ (identity
        on center coordinates).  Ad-invariant, generator-invariant, SPD."""
        gram = -self.killing_gram()
        for i in range(self.l):
            gram[i, i] = F1
        return gram

    # -- derived/center subspaces ---------------------------------------------

    def derived_subspace(self):
        """Span of all brackets [e_i, e_j]; equals the declared factor span
        for a valid algebra."""
        vecs = []
        for (i, j) in self.table:
            vecs.append(self.bracket_basis(i, j))
        return Subspace.span(self.n, vecs)

    def center_subspace(self):
        """{x : [x, g] = 0}, computed honestly from the brackets."""
        ops = []
        for j in range(self.n):
            op = fzeros(self.n, self.n)
            for i in range(self.n):
                col = self.bracket_basis(i, j)
                for k in range(self.n):
                    op[k, i] = col[k]
            ops.append(op)
        return intersect_kernels(ops, self.n)

    # -- serialization ----------------------------------------------------------

    def to_dict(self):
        factors = []
        for name, start, stop in self.factors:
            constants = []
            for (i, j), terms in sorted(self.table.items()):
                if start <= i < stop:
                    for k, c in terms:
                        constants.append([i - start, j - start, k - start, rat_str(c)])
            factors.append({"name": name, "dim": stop - start,
                            "structure_constants": constants})
        return {"center_dim": self.l, "factors": factors}

    @classmethod
    def from_dict(cls, data):
        specs = []
        for fac in data.get("factors", []):
            if "type" in fac:
                from . import catalog
                specs.append(catalog.factor_from_shorthand(fac))
            else:
                constants = [(int(i), int(j), int(k), fr(c))
                             for i, j, k, c in fac.get("structure_constants", [])]
                specs.append((fac["name"], int(fac["dim"]), constants))
        return cls.from_factor_constants(int(data.get("center_dim", 0)), specs)


# ---------------------------------------------------------------------------
# subalgebra analysis and validation
# ---------------------------------------------------------------------------

def is_bracket_closed(alg, s):
    """True iff the subspace s is closed under the bracket."""
    B = s.basis
    for i in range(s.dim):
        for j in range(i + 1, s.dim):
            if not s.contains(alg.bracket(B[:, i], B[:, j])):
                return False
    return True


def center_and_derived(alg, s):
    """(z(s), [s,s]) for a bracket-closed subspace s; checks s = z(s) ⊕ [s,s].

    Raises ValueError when s is not a subalgebra or when the two pieces do
    not sum directly to s (the subalgebra is not reductive in the compact
    sense, which cannot happen for honest compact-group input).
    """
    if not is_bracket_closed(alg, s):
        raise ValueError("not a subalgebra: subspace is not bracket-closed")
    B = s.basis
    m = s.dim
    # z(s): solve [S c, s_j] = 0 for all j, in s-coordinates c
    ops = []
    for j in range(m):
        op = fzeros(alg.n, m)
        for i in range(m):
            col = alg.bracket(B[:, i], B[:, j])
            for k in range(alg.n):
                op[k, i] = col[k]
        ops.append(op)
    if m:
        stacked = np.vstack(ops)
        coords = kernel_basis(stacked)
        zvecs = [B.dot(coords.basis[:, j]) for j in range(coords.dim)]
    else:
        zvecs = []
    zs = Subspace.span(alg.n, zvecs)
    dvecs = [alg.bracket(B[:, i], B[:, j]) for i in range(m) for j in range(i + 1, m)]
    ds = Subspace.span(alg.n, dvecs)
    if zs.dim + ds.dim != m or intersect(zs, ds).dim != 0:
        raise ValueError("subalgebra not reductive in the compact sense: "
                         "z(s) ⊕ [s,s] != s")
    return zs, ds


def validate(alg):
    """Check every LieAlgebra invariant; returns a ValidationReport."""
    rep = ValidationReport()

    # center brackets vanish: any stored entry touching an index < l fails
    bad = None
    for (i, j), terms in alg.table.items():
        if i < alg.l or j < alg.l:
            bad = (i, j)
            break
    rep.add("center_brackets_vanish", bad is None, bad)

    # cross-factor brackets vanish, and each factor is bracket-closed
    def factor_of(idx):
        for fi, (_, start, stop) in enumerate(alg.factors):
            if start <= idx < stop:
                return fi
        return None

    bad_cross = None
    bad_closed = None
    for (i, j), terms in alg.table.items():
        fi, fj = factor_of(i), factor_of(j)
        if fi is None or fj is None:
            continue
        if fi != fj:
            bad_cross = (i, j)
            continue
        for k, c in terms:
            if factor_of(k) != fi:
                bad_closed = (i, j, k)
    rep.add("cross_factor_brackets_vanish", bad_cross is None, bad_cross)
    rep.add("factor_brackets_closed", bad_closed is None, bad_closed)

    # Jacobi identity on all basis triples; [v, e_k] = -ad(e_k) v via the
    # sparse tables, so the triple loop touches only nonzero entries
    ads = alg.ad_sparse()

    def ad_apply(k, v):
        out = fzeros(alg.n)
        for (row, col), c in ads[k].items():
            if v[col]:
                out[row] += c * v[col]
        return out

    bad_jacobi = None
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            bij = alg.bracket_basis(i, j)
            for k in range(j + 1, alg.n):
                s = -ad_apply(k, bij) - ad_apply(i, alg.bracket_basis(j, k)) \
                    - ad_apply(j, alg.bracket_basis(k, i))
                if not is_zero(s):
                    bad_jacobi = (i, j, k)
                    break
            if bad_jacobi:
                break
        if bad_jacobi:
            break
    rep.add("jacobi", bad_jacobi is None, bad_jacobi)

    # Killing form negative definite on each declared factor
    K = alg.killing_gram()
    bad_factor = None
    for fi, (name, start, stop) in enumerate(alg.factors):
        block = -K[np.ix_(range(start, stop), range(start, stop))]
        if not is_spd(block):
            bad_factor = name
            break
    rep.add("killing_negative_definite_per_factor", bad_factor is None, bad_factor)

    # each declared factor is simple: the ideal closure of any single basis
    # vector must be the whole factor
    bad_simple = None
    eye = feye(alg.n)
    if bad_factor is None and bad_cross is None and bad_closed is None:
        for fi, (name, start, stop) in enumerate(alg.factors):
            target = Subspace.span(alg.n, [eye[:, t] for t in range(start, stop)])
            for v in range(start, stop):
                w = Subspace.span(alg.n, [eye[:, v]])
                while True:
                    vecs = [w.basis[:, j] for j in range(w.dim)]
                    grown = list(vecs)
                    for u in vecs:
                        for i in range(alg.n):
                            if ads[i]:
                                grown.append(ad_apply(i, u))
                    w2 = Subspace.span(alg.n, grown)
                    if w2.dim == w.dim:
                        break
                    w = w2
                if w != target:
                    bad_simple = (name, v)
                    break
            if bad_simple:
                break
    rep.add("factors_simple", bad_simple is None, bad_simple)
    return rep
