"""Finitely presented graded modules with degreewise bases.

A module is a cokernel of a map into a graded free module: generator
degrees plus homogeneous relation columns.  Every degree component M_d is
realized as a quotient of the free component by the span of all ring
multiples of the relations, with a deterministic coordinate basis
(non-pivot coordinates) and a projection matrix.  The ring action is
recovered degreewise through representatives.
"""

import numpy as np

from . import freemod
from .errors import DegreeBoundError, HomogeneityError, SyzkitError
from .linalg import (
    dtype_for,
    coset_complement,
    hstack,
    matmul,
    quotient_projection,
    rank,
    solve,
    zeros,
)
from .polynomials import poly_degree


class GradedModule:
    def __init__(self, ring, gen_degrees, relations):
        """relations: list of (degree, coordinate vector over the free
        component of gen_degrees at that degree)."""
        self.ring = ring
        self.gen_degrees = tuple(gen_degrees)
        self.relations = list(relations)
        for d, v in self.relations:
            want = freemod.component_dim(ring, self.gen_degrees, d)
            if v.shape[0] != want:
                raise SyzkitError("relation vector has wrong length")
        self._spaces = {}
        self._action = {}
        self._mingens = None

    # -- degreewise structure --------------------------------------------

    def _relation_span(self, d):
        ring = self.ring
        cols = []
        for e, v in self.relations:
            if e > d:
                continue
            de = ring.dim(d - e)
            for j in range(de):
                mult = freemod.free_mult_matrix(ring, self.gen_degrees, d - e, j, e)
                cols.append(matmul(mult, v.reshape(-1, 1), ring.char)[:, 0])
        amb = freemod.component_dim(ring, self.gen_degrees, d)
        if not cols:
            return zeros(amb, 0, ring.char)
        return np.stack(cols, axis=1)

    def _space(self, d):
        if d not in self._spaces:
            amb = freemod.component_dim(self.ring, self.gen_degrees, d)
            if amb == 0:
                self._spaces[d] = ([], zeros(0, 0, self.ring.char))
            else:
                span = self._relation_span(d)
                self._spaces[d] = quotient_projection(span, amb, self.ring.char)
        return self._spaces[d]

    def dim(self, d):
        # generator degrees may be negative (twisted cone cokernels)
        if not self.gen_degrees or d < min(self.gen_degrees):
            return 0
        return len(self._space(d)[0])

    def dims(self, dmax):
        return [self.dim(d) for d in range(dmax + 1)]

    def min_degree(self):
        return min(self.gen_degrees) if self.gen_degrees else 0

    def proj(self, d):
        """Projection from free component coordinates onto M_d coordinates."""
        return self._space(d)[1]

    def include(self, d):
        """Representatives: M_d coordinates back into the free component."""
        idx, _ = self._space(d)
        amb = freemod.component_dim(self.ring, self.gen_degrees, d)
        inc = zeros(amb, len(idx), self.ring.char)
        for k, i in enumerate(idx):
            inc[i, k] = 1
        return inc

    def action_matrix(self, e, j, a):
        """Multiplication by the j-th basis monomial of R_e: M_a -> M_{a+e}."""
        key = (e, j, a)
        if key not in self._action:
            mult = freemod.free_mult_matrix(self.ring, self.gen_degrees, e, j, a)
            mat = matmul(
                self.proj(a + e), matmul(mult, self.include(a), self.ring.char),
                self.ring.char,
            )
            self._action[key] = mat
        return self._action[key]

    def action_by_ring_vector(self, rvec, e, a):
        """Multiplication by an element of R_e given in coordinates."""
        p = self.ring.char
        out = np.zeros((self.dim(a + e), self.dim(a)), dtype=np.int64)
        for j in np.nonzero(rvec)[0]:
            out = (out + int(rvec[j]) * self.action_matrix(e, int(j), a).astype(np.int64)) % p
        return out.astype(dtype_for(p))

    # -- generators --------------------------------------------------------

    def minimal_generators(self):
        """Deterministic minimal generating data: list of (degree, M_d vector).

        Chosen degree-ascending as the standard-coordinate complement of
        R_1 * M_{d-1} inside M_d.
        """
        if self._mingens is not None:
            return self._mingens
        out = []
        if self.gen_degrees:
            lo, hi = min(self.gen_degrees), max(self.gen_degrees)
            for d in range(lo, hi + 1):
                n = self.dim(d)
                if n == 0:
                    continue
                blocks = [
                    self.action_matrix(1, j, d - 1)
                    for j in range(self.ring.dim(1))
                ]
                span = hstack(blocks, n, self.ring.char)
                comp = coset_complement(span, n, self.ring.char)
                for k in range(comp.shape[1]):
                    out.append((d, comp[:, k]))
        self._mingens = out
        return out

    def is_zero(self):
        return not self.minimal_generators()

    def lift_element(self, d, vec):
        """Free-cover coordinates of an element of M_d (free coords set to 0)."""
        x = solve(self.proj(d), vec, self.ring.char)
        if x is None:
            raise SyzkitError("element lift failed; projection not surjective?")
        return x

    def shifted(self, delta):
        """Same module with all generator degrees moved up by delta."""
        gens = tuple(g + delta for g in self.gen_degrees)
        rels = [(d + delta, v.copy()) for d, v in self.relations]
        return GradedModule(self.ring, gens, rels)

    def socle_dim(self, d):
        """Dimension of the degree-d part killed by every variable."""
        n = self.dim(d)
        if n == 0:
            return 0
        blocks = [self.action_matrix(1, j, d) for j in range(self.ring.dim(1))]
        if not blocks:
            return n
        stacked = np.concatenate(blocks, axis=0)
        return n - rank(stacked, self.ring.char)

    def annihilated_by(self, f, d):
        """True when multiplication by the polynomial f kills all of M_d."""
        e = poly_degree(f)
        if e is None:
            return True
        rvec = self.ring.normal_form(f, degree=e)
        return not self.action_by_ring_vector(rvec, e, d).any()


def module_from_presentation(ring, gen_degrees, relation_columns):
    """Build a module from polynomial relation columns.

    Each column is a list of polynomial dicts, one entry per generator;
    entry degrees + generator degrees must agree across the column.
    """
    gens = tuple(gen_degrees)
    rels = []
    for col in relation_columns:
        if len(col) != len(gens):
            raise SyzkitError(
                f"relation column has {len(col)} entries for {len(gens)} generators"
            )
        rdeg = None
        for f, g in zip(col, gens):
            fd = poly_degree(f)
            if fd is None:
                continue
            if rdeg is None:
                rdeg = fd + g
            elif rdeg != fd + g:
                raise HomogeneityError(
                    f"relation column mixes degrees {rdeg} and {fd + g}"
                )
        if rdeg is None:
            continue  # zero column
        if rdeg > ring.degree_bound:
            raise DegreeBoundError(rdeg, ring.degree_bound, "relation degree")
        vec = zeros(freemod.component_dim(ring, gens, rdeg), 1, ring.char)[:, 0]
        offs = freemod.component_offsets(ring, gens, rdeg)
        for s, f in enumerate(col):
            if f:
                vec[offs[s]:offs[s + 1]] = ring.normal_form(f, degree=rdeg - gens[s])
        rels.append((rdeg, vec))
    return GradedModule(ring, gens, rels)


def module_from_strings(ring, gen_degrees, relation_columns):
    cols = [[ring.base.parse(s) for s in col] for col in relation_columns]
    return module_from_presentation(ring, gen_degrees, cols)


def free_module(ring, gen_degrees=(0,)):
    return GradedModule(ring, tuple(gen_degrees), [])


def residue_field(ring):
    """k = R / (all variables)."""
    cols = [[{tuple(1 if i == v else 0 for i in range(len(ring.vars))): 1}]
            for v in range(len(ring.vars))]
    return module_from_presentation(ring, (0,), cols)


def quotient_by_elements(ring, polys):
    """R / (f_1, ..., f_r) for homogeneous f_i."""
    return module_from_presentation(ring, (0,), [[f] for f in polys])


def ambient_ring(r):
    """The quotient's polynomial ring viewed as a trivial quotient (cached)."""
    if getattr(r, "_ambient", None) is None:
        from .rings import build_quotient

        r._ambient = build_quotient(r.base, [])
    return r._ambient


def lift_presentation(m):
    """View a module over R = S/I as a module over S.

    Same generators; relations are the original columns (with entries read
    as polynomials through the chosen monomial representatives) plus
    I * e_s for every generator and every ideal generator.
    """
    r = m.ring
    s_ring = ambient_ring(r)
    gens = m.gen_degrees
    rels = []
    for d, v in m.relations:
        col = []
        offs = freemod.component_offsets(r, gens, d)
        for idx, g in enumerate(gens):
            col.append(r.vector_to_poly(v[offs[idx]:offs[idx + 1]], d - g))
        rels.append(col)
    nz = len(gens)
    for ideal_gen in r.ideal_gens:
        for s in range(nz):
            col = [{} for _ in range(nz)]
            col[s] = ideal_gen
            rels.append(col)
    return module_from_presentation(s_ring, gens, rels)


def tensor_presentation(m, n):
    """Presentation of M tensor N over their common ring."""
    if not m.ring.same_ring(n.ring):
        raise SyzkitError("tensor product needs a common ring")
    ring = m.ring
    gens = tuple(g + h for g in m.gen_degrees for h in n.gen_degrees)
    nn = len(n.gen_degrees)
    rels = []
    for e, v in m.relations:
        offs = freemod.component_offsets(ring, m.gen_degrees, e)
        for t, h in enumerate(n.gen_degrees):
            d = e + h
            vec = zeros(freemod.component_dim(ring, gens, d), 1, ring.char)[:, 0]
            poffs = freemod.component_offsets(ring, gens, d)
            for s, g in enumerate(m.gen_degrees):
                pair = s * nn + t
                vec[poffs[pair]:poffs[pair + 1]] = v[offs[s]:offs[s + 1]]
            rels.append((d, vec))
    for e, v in n.relations:
        offs = freemod.component_offsets(ring, n.gen_degrees, e)
        for s, g in enumerate(m.gen_degrees):
            d = e + g
            vec = zeros(freemod.component_dim(ring, gens, d), 1, ring.char)[:, 0]
            poffs = freemod.component_offsets(ring, gens, d)
            for t, h in enumerate(n.gen_degrees):
                pair = s * nn + t
                vec[poffs[pair]:poffs[pair + 1]] = v[offs[t]:offs[t + 1]]
            rels.append((d, vec))
    return GradedModule(ring, gens, rels)


class ModuleMap:
    """Map of modules given by free-cover coordinates of generator images."""

    def __init__(self, source, target, columns, twist=0):
        self.source = source
        self.target = target
        self.twist = twist
        self.columns = columns  # per source gen: vector over target free component
        for b, g in enumerate(source.gen_degrees):
            want = freemod.component_dim(target.ring, target.gen_degrees, g + twist)
            if columns[b].shape[0] != want:
                raise SyzkitError("module map column has wrong length")
        self._free = freemod.FreeMap(
            source.ring, source.gen_degrees, target.gen_degrees, columns, twist
        )

    def induced(self, d):
        """Numeric matrix M_d -> N_{d+twist}."""
        t = self.target
        mat = matmul(
            t.proj(d + self.twist),
            matmul(self._free.induced(d), self.source.include(d), t.ring.char),
            t.ring.char,
        )
        return mat

    def verify(self):
        """Check the map kills every relation of the source (well-defined)."""
        t = self.target
        for d, v in self.source.relations:
            img = self._free.apply(d, v)
            if matmul(t.proj(d + self.twist), img.reshape(-1, 1), t.ring.char).any():
                return False
        return True


def verify_ses(f, g, dmax):
    """Degreewise exactness of 0 -> A -f-> B -g-> C -> 0 up to degree dmax.

    Returns (ok, first_failure_description)."""
    a, b, c = f.source, f.target, g.target
    p = a.ring.char
    if g.source is not b:
        return False, "maps are not composable"
    d_lo = min([0, a.min_degree(), b.min_degree(), c.min_degree()])
    for d in range(d_lo, dmax + 1):
        fd = f.induced(d)
        gd = g.induced(d + f.twist)
        if matmul(gd, fd, p).any():
            return False, f"composite nonzero in degree {d}"
        da, db, dc = a.dim(d), b.dim(d + f.twist), c.dim(d + f.twist + g.twist)
        if db != da + dc:
            return False, f"dimension mismatch in degree {d}: {db} != {da}+{dc}"
        if rank(fd, p) != da:
            return False, f"left map not injective in degree {d}"
        if rank(gd, p) != dc:
            return False, f"right map not surjective in degree {d}"
    return True, ""
