"""Minimal free resolutions, Betti numbers, complexity, and depth.

The engine works degree by degree: each syzygy step computes exact kernels
of the induced component maps, then picks minimal generators of the kernel
as the standard-coordinate complement of (irrelevant ideal) * kernel,
degree-ascending.  By minimality of the previous step the kernel lies in
m*F, so components with (m*F)_d = 0 are skipped outright.

Completeness of a syzygy step is certified, not assumed:

* over a ring that collapses within the degree bound (R_d = 0 for some
  d <= D) the kernel vanishes above max generator degree + top degree of
  R, so everything is visible if that bound is <= D;
* otherwise new generators appearing within `margin` of the bound raise
  DegreeBoundError instead of silently truncating Betti numbers.
"""

import math
from dataclasses import dataclass, field

from . import freemod
from .errors import DegreeBoundError, SyzkitError, WindowError
from .linalg import extend_basis, hstack, kernel_basis, identity, matmul, zeros
from .modules import GradedModule, lift_presentation

DEFAULT_MARGIN = 2


class FreeResolution:
    def __init__(self, ring, module, gens, diffs, cover, window, terminated_at):
        self.ring = ring
        self.module = module
        self.gens = gens          # gens[i]: tuple of generator degrees of F_i
        self.diffs = diffs        # diffs[i]: FreeMap F_i -> F_{i-1}, for i >= 1
        self.cover = cover        # list of (degree, vector in M coords) for F_0
        self.window = window
        self.terminated_at = terminated_at  # first i with F_i = 0, or None

    def betti(self):
        return [len(g) for g in self.gens]

    def proj_dim(self):
        """Projective dimension when the resolution terminated, else None."""
        if self.terminated_at is None:
            return None
        return self.terminated_at - 1

    def is_minimal(self):
        return all(d.has_positive_degree_entries_only() for d in self.diffs[1:]
                   if d is not None and d.source_degrees)

    def verify_complex(self):
        """d_i o d_{i+1} = 0 exactly, and cover o d_1 = 0."""
        if len(self.gens) > 1 and self.gens[1]:
            d1 = self.diffs[1]
            for b, g in enumerate(d1.source_degrees):
                img = d1.columns[b]
                if self._cover_matrix(g) is not None:
                    val = matmul(
                        self._cover_matrix(g), img.reshape(-1, 1), self.ring.char
                    )
                    if val.any():
                        return False
        for i in range(1, len(self.diffs) - 1):
            a, b = self.diffs[i], self.diffs[i + 1]
            if a is None or b is None or not b.source_degrees:
                continue
            if not a.compose(b).is_zero():
                return False
        return True

    def _cover_matrix(self, d):
        m = self.module
        dim_src = freemod.component_dim(self.ring, self.gens[0], d)
        if dim_src == 0:
            return None
        mat = zeros(m.dim(d), dim_src, self.ring.char)
        offs = freemod.component_offsets(self.ring, self.gens[0], d)
        for b, (g, w) in enumerate(zip(self.gens[0], [v for _, v in self.cover])):
            e = d - g
            de = self.ring.dim(e)
            for j in range(de):
                col = matmul(
                    m.action_matrix(e, j, g), w.reshape(-1, 1), self.ring.char
                )[:, 0]
                mat[:, offs[b] + j] = col
        return mat


def _kernel_scan_range(ring, src_degs, margin):
    """Degrees to inspect for kernel generators, plus the certification mode.

    Negative generator degrees (twisted complexes) pull the usable ceiling
    down: the degree-d component reads ring data at d - g.
    """
    lo = min(src_degs)
    if ring.is_artinian_within_bound():
        # every ring component above the collapse degree is known to vanish,
        # so the kernel window is complete whatever the degree bound
        hi = max(src_degs) + ring.top_degree()
        return lo, hi, "artinian"
    return lo, ring.degree_bound + min(0, lo), "margin"


def _kernel_spaces(ring, src_degs, matrix_at, margin):
    """Kernel bases of a minimal-cover map out of the free module src_degs.

    matrix_at(d) must return the induced component matrix.  Returns
    (dict degree -> kernel basis matrix, mode, hi).
    """
    lo, hi, mode = _kernel_scan_range(ring, src_degs, margin)
    spaces = {}
    for d in range(lo, hi + 1):
        src_dim = freemod.component_dim(ring, src_degs, d)
        if src_dim == 0:
            continue
        # minimality: kernel sits inside m * F, so skip degrees where that is 0
        m_nonzero = any(d - g >= 1 and ring.dim(d - g) > 0 for g in src_degs)
        if not m_nonzero:
            continue
        mat = matrix_at(d)
        if mat.shape[0] == 0:
            spaces[d] = identity(src_dim, ring.char)
        else:
            k = kernel_basis(mat, ring.char)
            if k.shape[1]:
                spaces[d] = k
    return spaces, mode, hi


def _minimal_kernel_generators(ring, src_degs, spaces, mode, margin, hi):
    """Pick minimal generators of the kernel, degree-ascending; returns
    list of (degree, vector)."""
    out = []
    if not spaces:
        return out
    for d in sorted(spaces):
        kd = spaces[d]
        prev = spaces.get(d - 1)
        if prev is not None and ring.dim(1) > 0:
            blocks = [
                matmul(
                    freemod.free_mult_matrix(ring, src_degs, 1, j, d - 1),
                    prev, ring.char,
                )
                for j in range(ring.dim(1))
            ]
            span = hstack(blocks, kd.shape[0], ring.char)
        else:
            span = zeros(kd.shape[0], 0, ring.char)
        chosen = extend_basis(span, kd, ring.char)
        for idx in chosen:
            if mode == "margin" and d > hi - margin:
                raise DegreeBoundError(
                    d + margin, ring.degree_bound,
                    "syzygy generator too close to the degree bound to certify "
                    "completeness; raise the bound",
                )
            out.append((d, kd[:, idx]))
    return out


def resolve(module, n_max, margin=DEFAULT_MARGIN, verify=True):
    """Minimal free resolution of a nonzero module out to step n_max."""
    if n_max < 0:
        raise WindowError("resolution window must be >= 0")
    ring = module.ring
    mingens = module.minimal_generators()
    if not mingens:
        raise SyzkitError("cannot resolve the zero module")
    f0 = tuple(d for d, _ in mingens)
    cover = list(mingens)
    gens = [f0]
    diffs = [None]
    terminated_at = None

    def cover_matrix(d):
        dim_src = freemod.component_dim(ring, f0, d)
        mat = zeros(module.dim(d), dim_src, ring.char)
        offs = freemod.component_offsets(ring, f0, d)
        for b, (g, w) in enumerate(cover):
            e = d - g
            for j in range(ring.dim(e)):
                mat[:, offs[b] + j] = matmul(
                    module.action_matrix(e, j, g), w.reshape(-1, 1), ring.char
                )[:, 0]
        return mat

    src_degs = f0
    matrix_at = cover_matrix
    for i in range(1, n_max + 1):
        if terminated_at is not None:
            gens.append(())
            diffs.append(freemod.FreeMap.zero(ring, (), gens[i - 1]))
            continue
        spaces, mode, hi = _kernel_spaces(ring, src_degs, matrix_at, margin)
        newgens = _minimal_kernel_generators(ring, src_degs, spaces, mode, margin, hi)
        if not newgens:
            terminated_at = i
            gens.append(())
            diffs.append(freemod.FreeMap.zero(ring, (), gens[i - 1]))
            continue
        degs = tuple(d for d, _ in newgens)
        cols = [v for _, v in newgens]
        dmap = freemod.FreeMap(ring, degs, src_degs, cols)
        gens.append(degs)
        diffs.append(dmap)
        src_degs = degs
        matrix_at = dmap.induced

    res = FreeResolution(ring, module, gens, diffs, cover, n_max, terminated_at)
    if verify:
        if not res.verify_complex():
            raise SyzkitError("internal error: resolution differentials do not compose to zero")
        if not res.is_minimal():
            raise SyzkitError("internal error: resolution is not minimal")
    return res


def syzygy(res, t):
    """The t-th syzygy module presented by the resolution (t=0 gives the module)."""
    if t == 0:
        return res.module
    if t + 1 > res.window and res.terminated_at is None:
        raise WindowError(f"syzygy {t} needs the resolution out to step {t + 1}")
    if t >= len(res.gens) or not res.gens[t]:
        return GradedModule(res.ring, (), [])
    rels = []
    if t + 1 < len(res.diffs) and res.diffs[t + 1] is not None:
        d = res.diffs[t + 1]
        rels = [(g + d.twist, col.copy()) for g, col in zip(d.source_degrees, d.columns)]
    return GradedModule(res.ring, res.gens[t], rels)


# -- complexity ---------------------------------------------------------------


@dataclass
class ComplexityEstimate:
    value: float                  # integer, or math.inf
    status: str                   # exact-finite-pd | exact-periodic | estimated
    window: int
    detail: str = ""

    def __str__(self):
        v = "inf" if self.value == math.inf else str(int(self.value))
        return f"cx {v} ({self.status})"


MAX_POLYNOMIAL_DEGREE_FIT = 6


def estimate_complexity(betti, periodicity_hint=None, window=None):
    """Complexity of a Betti sequence over the computed window.

    Finite projective dimension and detected periodicity are exact; the
    polynomial growth fit (calibrated on the first half of the window,
    checked on the second) is an estimate only.
    """
    if window is None:
        window = len(betti) - 1
    if window < 6:
        raise WindowError("complexity estimation needs a window of at least 6")
    seq = list(betti[: window + 1])
    # trailing zeros mean the (minimal) tail has died; internal zeros alone do
    # not, since minimal models of complexes may start above degree 0
    if seq[-1] == 0:
        return ComplexityEstimate(0, "exact-finite-pd", window)
    if periodicity_hint is not None:
        return ComplexityEstimate(
            1, "exact-periodic", window, detail=f"period {periodicity_hint}"
        )
    half = max(2, (window + 1) // 2)
    for t in range(1, MAX_POLYNOMIAL_DEGREE_FIT + 1):
        a = max(seq[i] / max(i, 1) ** (t - 1) for i in range(1, half + 1))
        if all(seq[i] <= a * i ** (t - 1) + 1e-9 for i in range(half + 1, window + 1)):
            return ComplexityEstimate(t, "estimated", window, detail=f"bound {a:.3g}*n^{t-1}")
    return ComplexityEstimate(math.inf, "estimated", window)


@dataclass
class PeriodicityInfo:
    period: int
    onset: int
    twist: int
    maps: list = field(default_factory=list, repr=False)


def detect_resolution_periodicity(res, max_period=None):
    """Least q >= 1 with a twisted isomorphism of the resolution tail onto
    itself compatible with the differentials; None if none within window."""
    from .chainsolve import find_tail_isomorphism

    if res.terminated_at is not None:
        return None
    w = res.window
    if max_period is None:
        max_period = w // 2
    for q in range(1, max_period + 1):
        for onset in range(0, w - 2 * q + 1):
            info = find_tail_isomorphism(res.ring, res.gens, res.diffs, q, onset, w)
            if info is not None:
                return PeriodicityInfo(q, onset, info[0], info[1])
    return None


def complexity_of_module(module, window=10, margin=DEFAULT_MARGIN, res=None):
    """Resolve and estimate complexity; returns (estimate, resolution)."""
    if res is None or res.window < window:
        res = resolve(module, window, margin)
    betti = res.betti()
    period = None
    if res.terminated_at is None:
        counts = betti[window // 2:]
        if max(counts) <= 4 * max(1, min(counts)):
            info = detect_resolution_periodicity(res)
            if info is not None:
                period = info.period
    est = estimate_complexity(betti, periodicity_hint=period, window=window)
    return est, res


# -- depth --------------------------------------------------------------------


@dataclass
class DepthReport:
    depth: int
    pd_ambient: int
    nvars: int
    degree_bound: int
    method: str = "depth = #vars - projective dimension over the ambient polynomial ring"

    def __str__(self):
        return f"depth {self.depth} (pd_S = {self.pd_ambient}, n = {self.nvars})"


def depth(module, margin=DEFAULT_MARGIN):
    """Depth via the Auslander-Buchsbaum identity over the ambient ring."""
    if module.is_zero():
        raise SyzkitError("depth of the zero module is undefined")
    lifted = lift_presentation(module)
    n = len(module.ring.vars)
    res = resolve(lifted, n + 1, margin)
    if res.terminated_at is None:
        raise DegreeBoundError(
            module.ring.degree_bound + 1, module.ring.degree_bound,
            "resolution over the polynomial ring did not terminate within "
            "the expected number of steps; raise the degree bound",
        )
    pd = res.proj_dim()
    return DepthReport(n - pd, pd, n, module.ring.degree_bound)


def depth_of_ring(ring, margin=DEFAULT_MARGIN):
    """Depth of R as a module over its polynomial ring.

    Reports stand in for dim A under the Cohen-Macaulay assumption, which
    is recorded by callers, never verified here.
    """
    from .modules import free_module

    return depth(free_module(ring), margin)
