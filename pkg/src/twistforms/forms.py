"""Global sections of twisted differential forms on P^n, made concrete.

A polynomial p-form of twist d is a vector indexed by pairs (I, m): I a
strictly increasing p-element subset of {0..n} (the wedge of dx_i for i in
I) and m a monomial of degree d-p in the homogeneous coordinates.  Global
sections of Omega^p(d) are exactly the forms annihilated by contraction
with the Euler field sum x_i d/dx_i, so every section space below is a
kernel of an explicit integer matrix.

Index sets are ordered lexicographically and monomials in graded-lex order
with x_0 > x_1 > ... > x_n, so all matrices are reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .bott import binom, h_O
from .exactalg import ExactMatrix

__all__ = [
    "DEFAULT_PRIME",
    "ConsistencyError",
    "FreeSum",
    "OmegaForms",
    "RestrictedOmega",
    "SectionSpace",
    "claim_i_kernel_test",
    "conormal_wedge",
    "contraction_matrix",
    "free_sections",
    "h0_basis",
    "monomials",
    "pform_key",
    "restricted_key",
    "restricted_sections",
    "restriction_of_forms",
]

#: Working prime for section-space kernels.  The contraction complex is
#: defined over the integers and stays exact over every prime field, so a
#: fixed small prime gives the rational dimensions; tests cross-check
#: against further primes and against rational elimination.
DEFAULT_PRIME = 101


class ConsistencyError(RuntimeError):
    """An image vector failed to lie in its claimed section space."""


@dataclass(frozen=True)
class OmegaForms:
    """Omega^p(d) on P^n."""

    n: int
    p: int
    d: int


@dataclass(frozen=True)
class FreeSum:
    """O(d)^{+r} on P^n."""

    n: int
    d: int
    r: int


@dataclass(frozen=True)
class RestrictedOmega:
    """Omega^p_{P^n}(d) restricted to the hyperplane x_n = 0."""

    n: int
    p: int
    d: int


@dataclass(frozen=True)
class SectionSpace:
    """An explicit basis of global sections.

    ``key`` lists the ambient coordinate pairs; ``basis`` has one column
    per basis section, expressed in those coordinates.
    """

    descriptor: object
    basis: ExactMatrix
    key: tuple

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def ambient_dim(self) -> int:
        return len(self.key)


@dataclass(frozen=True)
class PForm:
    """A single polynomial p-form of twist d on P^n.

    ``coefficients`` maps (index set, exponent tuple) pairs to scalars;
    index sets have size p, monomials degree d - p.
    """

    n: int
    p: int
    d: int
    coefficients: tuple  # tuple of ((I, m), scalar) pairs, or a dict-like

    def __post_init__(self):
        coeffs = dict(self.coefficients)
        for (I, m) in coeffs:
            if len(I) != self.p:
                raise ValueError("index set %r has size != %d" % (I, self.p))
            if sum(m) != self.d - self.p:
                raise ValueError("monomial %r has degree != %d" % (m, self.d - self.p))
        object.__setattr__(self, "coefficients", coeffs)


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple:
    """Exponent tuples of the given total degree, lex-descending."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        out.extend((e0,) + rest for rest in monomials(nvars - 1, degree - e0))
    return tuple(out)


def index_sets(nvars: int, p: int) -> tuple:
    return tuple(itertools.combinations(range(nvars), p))


@lru_cache(maxsize=None)
def _key(ndiff: int, nvar: int, p: int, d: int) -> tuple:
    if p < 0 or p > ndiff or d < p:
        return ()
    return tuple(
        (I, m) for I in index_sets(ndiff, p) for m in monomials(nvar, d - p)
    )


def pform_key(n: int, p: int, d: int) -> tuple:
    """Ambient coordinate key of polynomial p-forms of twist d on P^n."""
    return _key(n + 1, n + 1, p, d)


def restricted_key(n: int, p: int, d: int) -> tuple:
    """Key for forms with all n+1 differentials but coefficients in x_0..x_{n-1}."""
    return _key(n + 1, n, p, d)


def _mult_var(m: tuple, j: int) -> tuple:
    return m[:j] + (m[j] + 1,) + m[j + 1 :]


def _contraction(p: int, d: int, ndiff: int, nvar: int, neuler: int, q) -> ExactMatrix:
    """Matrix of contraction with sum_{i < neuler} x_i d/dx_i."""
    dom = _key(ndiff, nvar, p, d)
    cod = _key(ndiff, nvar, p - 1, d)
    cod_index = {pair: i for i, pair in enumerate(cod)}
    rows = [[0] * len(dom) for _ in range(len(cod))]
    for col, (I, m) in enumerate(dom):
        for pos, j in enumerate(I):
            if j >= neuler:
                continue
            target = (I[:pos] + I[pos + 1 :], _mult_var(m, j))
            rows[cod_index[target]][col] = -1 if pos % 2 else 1
    return ExactMatrix(len(cod), len(dom), rows, q=q)


def contraction_matrix(n: int, p: int, d: int, q=None) -> ExactMatrix:
    """Euler contraction from p-forms to (p-1)-forms of twist d on P^n.

    Entries are 0 and +/-1; a 0x0 matrix when the domain is empty.
    """
    if not 1 <= p <= n + 1:
        raise ValueError("contraction needs 1 <= p <= n+1, got p=%d" % p)
    return _contraction(p, d, n + 1, n + 1, n + 1, q)


@lru_cache(maxsize=None)
def h0_basis(n: int, p: int, d: int, q=DEFAULT_PRIME) -> SectionSpace:
    """Basis of H^0(P^n, Omega^p(d)) as the Koszul-contraction kernel.

    p = 0 returns the monomial basis of degree-d polynomials; p = n+1 is
    allowed and always empty.  Empty spaces are first-class 0-column
    matrices, never errors.
    """
    if not 0 <= p <= n + 1:
        raise ValueError("form degree p=%d out of range for P^%d" % (p, n))
    desc = OmegaForms(n, p, d)
    key = pform_key(n, p, d)
    if p == 0:
        basis = ExactMatrix.identity(len(key), q=q)
        return SectionSpace(desc, basis, key)
    if not key:
        return SectionSpace(desc, ExactMatrix.zeros(0, 0, q=q), key)
    basis = _contraction(p, d, n + 1, n + 1, n + 1, q).kernel_basis()
    return SectionSpace(desc, basis, key)


@lru_cache(maxsize=None)
def restricted_sections(n: int, p: int, d: int, q=DEFAULT_PRIME) -> SectionSpace:
    """Sections of Omega^p_{P^n}(d) restricted to the hyperplane x_n = 0.

    Modeled as the kernel of contraction with the truncated Euler field
    sum_{i<n} x_i d/dx_i on forms in dx_0..dx_n whose coefficients involve
    x_0..x_{n-1} only.
    """
    if n < 1:
        raise ValueError("restriction needs n >= 1")
    if not 0 <= p <= n + 1:
        raise ValueError("form degree p=%d out of range" % p)
    desc = RestrictedOmega(n, p, d)
    key = restricted_key(n, p, d)
    if p == 0:
        basis = ExactMatrix.identity(len(key), q=q)
        return SectionSpace(desc, basis, key)
    if not key:
        return SectionSpace(desc, ExactMatrix.zeros(0, 0, q=q), key)
    basis = _contraction(p, d, n + 1, n, n, q).kernel_basis()
    return SectionSpace(desc, basis, key)


@lru_cache(maxsize=None)
def free_sections(n: int, d: int, r: int, q=DEFAULT_PRIME) -> SectionSpace:
    """Sections of O(d)^{+r} on P^n: r stacked copies of the monomial basis."""
    if r < 0:
        raise ValueError("multiplicity must be nonnegative")
    mons = monomials(n + 1, d)
    key = tuple((j, m) for j in range(r) for m in mons)
    return SectionSpace(FreeSum(n, d, r), ExactMatrix.identity(len(key), q=q), key)


def _express(space: SectionSpace, vectors: ExactMatrix, what: str) -> ExactMatrix:
    """Coordinates of ambient column vectors in a section basis."""
    coords = space.basis.solve(vectors)
    if coords is None:
        raise ConsistencyError("%s: image does not lie in %r" % (what, space.descriptor))
    return coords


def _ambient_map(src_key, tgt_key, entries, q) -> ExactMatrix:
    """Sparse-by-construction matrix between two ambient coordinate spaces.

    ``entries(pair)`` yields (target pair, coefficient) terms for one
    source coordinate.
    """
    tgt_index = {pair: i for i, pair in enumerate(tgt_key)}
    rows = [[0] * len(src_key) for _ in range(len(tgt_key))]
    for col, pair in enumerate(src_key):
        for tgt, val in entries(pair):
            rows[tgt_index[tgt]][col] += val
    return ExactMatrix(len(tgt_key), len(src_key), rows, q=q)


def restriction_of_forms(n: int, p: int, d: int, q=DEFAULT_PRIME) -> ExactMatrix:
    """Matrix of H^0(Omega^p_{P^n}(d)) -> H^0(Omega^p_{P^{n-1}}(d)).

    Sets x_n = 0 in coefficients, deletes terms whose index set contains n,
    and expresses the result in the target section basis.
    """
    if n < 1:
        raise ValueError("restriction needs n >= 1")
    src = h0_basis(n, p, d, q)
    tgt = h0_basis(n - 1, p, d, q)

    def entries(pair):
        I, m = pair
        if n in I or m[n] > 0:
            return ()
        return ((I, m[:n]), 1),

    proj = _ambient_map(src.key, tgt.key, entries, q)
    return _express(tgt, proj @ src.basis, "restriction_of_forms(%d,%d,%d)" % (n, p, d))


def conormal_wedge(n: int, p: int, d: int, q=DEFAULT_PRIME) -> ExactMatrix:
    """Matrix of w |-> dx_n ^ w from H^0(Omega^p_{P^{n-1}}(d-1)) into the
    restricted sections of Omega^{p+1}_{P^n}(d).  Injective."""
    if n < 1 or not 0 <= p <= n - 1:
        raise ValueError("conormal wedge needs n >= 1 and 0 <= p <= n-1")
    src = h0_basis(n - 1, p, d - 1, q)
    tgt = restricted_sections(n, p + 1, d, q)
    sign = -1 if p % 2 else 1

    def entries(pair):
        I, m = pair
        return ((I + (n,), m), sign),

    wedge = _ambient_map(src.key, tgt.key, entries, q)
    return _express(tgt, wedge @ src.basis, "conormal_wedge(%d,%d,%d)" % (n, p, d))


def drop_last_differential(n: int, p: int, d: int, q=DEFAULT_PRIME) -> ExactMatrix:
    """Matrix of restricted sections of Omega^p_{P^n}(d) onto
    H^0(Omega^p_{P^{n-1}}(d)): delete every dx_n term."""
    if n < 1:
        raise ValueError("needs n >= 1")
    src = restricted_sections(n, p, d, q)
    tgt = h0_basis(n - 1, p, d, q)

    def entries(pair):
        I, m = pair
        if n in I:
            return ()
        return ((I, m), 1),

    proj = _ambient_map(src.key, tgt.key, entries, q)
    return _express(tgt, proj @ src.basis, "drop_last_differential(%d,%d,%d)" % (n, p, d))


def claim_i_kernel_test(n: int, p: int, d: int, q=DEFAULT_PRIME) -> bool:
    """Section-level check that the kernel of restriction of (p+1)-forms is
    a sum of binom(n, p+1) line bundles of twist -p-2."""
    if p + 1 > n:
        raise ValueError("needs p+1 <= n")
    mat = restriction_of_forms(n, p + 1, d, q)
    kernel_dim = mat.cols - mat.rank()
    return kernel_dim == binom(n, p + 1) * h_O(n, d - p - 2, 0)
