"""Standard-graded polynomial rings and degree-truncated quotients.

A ``PolyRing`` is S = F_p[x_1..x_n] with every variable in degree 1 and an
explicit degree bound D.  A ``TruncatedQuotientRing`` R = S/I carries, for
each degree d <= D, a chosen monomial basis of R_d (the non-pivot
coordinates of the ideal component inside S_d) and normal-form matrices;
multiplication of basis elements reduces to normal forms of products of
monomials.  Normal forms come from degreewise row reduction of I_d, not
Groebner bases, so arbitrary homogeneous ideals are supported.

Once some R_d is observed to vanish the ring is artinian from there on
(R is generated in degree 1), and all higher components are known to be
zero without further work; this also licenses degree queries above D.
"""

from math import comb

import numpy as np

from . import polynomials as poly
from .errors import DegreeBoundError, HomogeneityError, SyzkitError
from .linalg import dtype_for, matmul, quotient_projection, zeros

DEFAULT_DEGREE_BOUND = 12


class PolyRing:
    """S = F_p[x_1..x_n], standard graded, truncated at degree_bound."""

    def __init__(self, char, var_names, degree_bound=DEFAULT_DEGREE_BOUND):
        from .linalg import is_prime

        if not is_prime(char) or not (2 <= char < 2**31):
            raise SyzkitError(f"characteristic must be a prime in [2, 2^31), got {char}")
        if degree_bound < 1:
            raise SyzkitError("degree bound must be >= 1")
        names = tuple(var_names)
        if len(set(names)) != len(names):
            raise SyzkitError(f"duplicate variable names in {names}")
        self.char = char
        self.vars = names
        self.nvars = len(names)
        self.degree_bound = degree_bound
        self._bases = {}

    def monomial_basis(self, d):
        """All monomials of degree d in lexicographic order."""
        if d > self.degree_bound:
            raise DegreeBoundError(d, self.degree_bound, "monomial basis")
        if d < 0:
            return []
        if d not in self._bases:
            self._bases[d] = poly.monomials_of_degree(self.nvars, d)
        return self._bases[d]

    def monomial_index(self, d):
        key = ("idx", d)
        if key not in self._bases:
            self._bases[key] = {m: i for i, m in enumerate(self.monomial_basis(d))}
        return self._bases[key]

    def dim(self, d):
        if d < 0:
            return 0
        return comb(self.nvars + d - 1, d)

    def poly_vector(self, f, d):
        """Coordinate vector of a homogeneous polynomial in the degree-d basis."""
        vec = zeros(self.dim(d), 1, self.char)[:, 0]
        idx = self.monomial_index(d)
        for m, c in f.items():
            if poly.monomial_degree(m) != d:
                raise HomogeneityError("polynomial has terms outside requested degree")
            vec[idx[m]] = c % self.char
        return vec

    def parse(self, text):
        return poly.parse_polynomial(text, self.vars, self.char)

    def format(self, f):
        return poly.format_polynomial(f, self.vars)

    def signature(self):
        return ("poly", self.char, self.vars, self.degree_bound)


class TruncatedQuotientRing:
    """Graded quotient R = S/I with per-degree bases and multiplication."""

    def __init__(self, base, ideal_gens):
        self.base = base
        self.char = base.char
        self.vars = base.vars
        self.degree_bound = base.degree_bound
        self.ideal_gens = list(ideal_gens)
        for g in self.ideal_gens:
            dg = poly.poly_degree(g)
            if dg is None or dg == 0:
                raise SyzkitError("ideal generators must be homogeneous of positive degree")
        self._degree_data = {}
        self._max_computed = -1
        self._first_zero = None
        self._mult_cache = {}
        self._dim_cache = {}

    # -- per-degree structure ------------------------------------------------

    def _compute_degree(self, d):
        span = self.ideal_component(d)
        basis_idx, nf = quotient_projection(span, self.base.dim(d), self.char)
        self._degree_data[d] = (basis_idx, nf)
        if not basis_idx and self._first_zero is None:
            self._first_zero = d

    def _ensure(self, d):
        if d in self._degree_data:
            return True
        if self._first_zero is not None and d >= self._first_zero:
            return False
        if d > self.degree_bound:
            raise DegreeBoundError(d, self.degree_bound, "ring component")
        # fill ascending so an artinian collapse is noticed as early as possible
        for e in range(self._max_computed + 1, d + 1):
            if self._first_zero is not None and e >= self._first_zero:
                break
            if e not in self._degree_data:
                self._compute_degree(e)
            self._max_computed = max(self._max_computed, e)
        return d in self._degree_data

    def ideal_component(self, d):
        """Matrix whose columns span I_d inside the monomial basis of S_d."""
        if d > self.degree_bound:
            raise DegreeBoundError(d, self.degree_bound, "ideal component")
        cols = []
        sdim = self.base.dim(d)
        for g in self.ideal_gens:
            e = poly.poly_degree(g)
            if e > d:
                continue
            for m in self.base.monomial_basis(d - e):
                prod = poly.poly_mul({m: 1}, g, self.char)
                cols.append(self.base.poly_vector(prod, d))
        if not cols:
            return zeros(sdim, 0, self.char)
        return np.stack(cols, axis=1)

    def dim(self, d):
        cached = self._dim_cache.get(d)
        if cached is not None:
            return cached
        if d < 0:
            out = 0
        elif self._first_zero is not None and d >= self._first_zero:
            out = 0
        elif d > self.degree_bound:
            # only answerable when the ring has already collapsed
            raise DegreeBoundError(d, self.degree_bound, "ring component")
        elif self._ensure(d):
            out = len(self._degree_data[d][0])
        else:
            out = 0
        self._dim_cache[d] = out
        return out

    def basis_monomials(self, d):
        """Exponent tuples whose classes form the chosen basis of R_d."""
        if self.dim(d) == 0:
            return []
        basis_idx, _ = self._degree_data[d]
        mons = self.base.monomial_basis(d)
        return [mons[i] for i in basis_idx]

    def nf_matrix(self, d):
        """Normal form S_d -> R_d in coordinates (dim R_d x dim S_d)."""
        if self.dim(d) == 0:
            return zeros(0, self.base.dim(d) if d <= self.degree_bound else 0, self.char)
        return self._degree_data[d][1]

    def normal_form(self, f, degree=None):
        """Coordinate vector of a homogeneous polynomial's class in R_deg(f).

        The zero polynomial carries no degree; pass `degree` to land it in a
        specific component.
        """
        d = poly.poly_degree(f)
        if d is None:
            d = degree
        if d is None:
            return zeros(0, 1, self.char)[:, 0]
        if d > self.degree_bound:
            raise DegreeBoundError(d, self.degree_bound, "normal form")
        return matmul(
            self.nf_matrix(d), self.base.poly_vector(f, d).reshape(-1, 1), self.char
        )[:, 0]

    def hilbert_function(self, dmax):
        return [self.dim(d) for d in range(dmax + 1)]

    def is_artinian_within_bound(self):
        """True when some R_d with d <= degree_bound is zero (hence all above)."""
        if self._first_zero is None:
            for d in range(self._max_computed + 1, self.degree_bound + 1):
                if self.dim(d) == 0:
                    break
        return self._first_zero is not None

    def top_degree(self):
        """Largest d with R_d != 0, or None if not certified within the bound."""
        if not self.is_artinian_within_bound():
            return None
        return self._first_zero - 1

    # -- multiplication -------------------------------------------------------

    def mult_map(self, e, j, a):
        """Matrix of multiplication by the j-th basis monomial of R_e on R_a."""
        key = (e, j, a)
        if key not in self._mult_cache:
            target = a + e
            da, dt = self.dim(a), self.dim(target)
            if da == 0 or dt == 0:
                mat = zeros(dt, da, self.char)
            else:
                mj = self.basis_monomials(e)[j]
                idx = self.base.monomial_index(target)
                cols = [idx[poly.monomial_mul(mj, m)] for m in self.basis_monomials(a)]
                mat = self.nf_matrix(target)[:, cols]
            self._mult_cache[key] = mat
        return self._mult_cache[key]

    def poly_mult_map(self, f, a):
        """Matrix of multiplication by a homogeneous polynomial f on R_a."""
        e = poly.poly_degree(f)
        if e is None:
            return zeros(0, self.dim(a), self.char)
        target = a + e
        da, dt = self.dim(a), self.dim(target)
        out = zeros(dt, da, self.char).astype(np.int64)
        if da == 0 or dt == 0:
            return out.astype(dtype_for(self.char))
        idx = self.base.monomial_index(target)
        nf = self.nf_matrix(target).astype(np.int64)
        for m, c in f.items():
            cols = [idx[poly.monomial_mul(m, b)] for b in self.basis_monomials(a)]
            out = (out + c * nf[:, cols]) % self.char
        return out.astype(dtype_for(self.char))

    def multiply(self, va, a, vb, b):
        """Product of two elements given by coordinate vectors in R_a, R_b."""
        dt = self.dim(a + b)
        out = zeros(dt, 1, self.char)[:, 0].astype(np.int64)
        for j in np.nonzero(vb)[0]:
            out = (out + int(vb[j]) * matmul(
                self.mult_map(b, int(j), a), np.asarray(va).reshape(-1, 1), self.char
            )[:, 0].astype(np.int64)) % self.char
        return out.astype(dtype_for(self.char))

    def vector_to_poly(self, vec, d):
        f = {}
        for i, m in enumerate(self.basis_monomials(d)):
            c = int(vec[i]) % self.char
            if c:
                f[m] = c
        return f

    def format_vector(self, vec, d):
        return self.base.format(self.vector_to_poly(vec, d))

    def signature(self):
        gens = tuple(sorted(tuple(sorted(g.items())) for g in self.ideal_gens))
        return ("quot", self.char, self.vars, self.degree_bound, gens)

    def same_ring(self, other):
        return self.signature() == other.signature()


def build_quotient(base, ideal_gens):
    """Quotient of a polynomial ring by homogeneous positive-degree generators."""
    return TruncatedQuotientRing(base, ideal_gens)


def ring_from_strings(char, var_names, relation_strings, degree_bound=DEFAULT_DEGREE_BOUND):
    base = PolyRing(char, var_names, degree_bound)
    gens = [base.parse(s) for s in relation_strings]
    for s, g in zip(relation_strings, gens):
        if not poly.poly_is_homogeneous(g):
            raise HomogeneityError(f"relation {s!r} is not homogeneous")
    return build_quotient(base, gens)


def algebra_tensor(r1, r2):
    """Tensor product over the prime field: disjoint variables, both ideals."""
    if r1.char != r2.char:
        raise SyzkitError(f"characteristic mismatch: {r1.char} vs {r2.char}")
    overlap = set(r1.vars) & set(r2.vars)
    if overlap:
        raise SyzkitError(f"variable names collide in tensor product: {sorted(overlap)}")
    bound = min(r1.degree_bound, r2.degree_bound)
    base = PolyRing(r1.char, r1.vars + r2.vars, bound)
    n1, n2 = len(r1.vars), len(r2.vars)
    gens = [{m + (0,) * n2: c for m, c in g.items()} for g in r1.ideal_gens]
    gens += [{(0,) * n1 + m: c for m, c in g.items()} for g in r2.ideal_gens]
    return build_quotient(base, gens)


def polynomial_extension(r, extra, degree_bound=None):
    """Adjoin `extra` fresh degree-1 variables with no new relations."""
    if extra < 1:
        raise SyzkitError("polynomial_extension needs at least one new variable")
    names = list(r.vars)
    fresh = []
    i = 1
    while len(fresh) < extra:
        cand = f"t{i}"
        if cand not in names:
            fresh.append(cand)
            names.append(cand)
        i += 1
    bound = degree_bound if degree_bound is not None else r.degree_bound
    base = PolyRing(r.char, names, bound)
    pad = len(fresh)
    gens = [{m + (0,) * pad: c for m, c in g.items()} for g in r.ideal_gens]
    return build_quotient(base, gens)


def embed_monomial(exps, src_vars, dst_vars):
    """Re-index an exponent tuple along an inclusion of variable lists."""
    pos = {v: i for i, v in enumerate(dst_vars)}
    out = [0] * len(dst_vars)
    for e, v in zip(exps, src_vars):
        if e:
            out[pos[v]] += e
    return tuple(out)
