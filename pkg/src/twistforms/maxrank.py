"""Point sets, fiber evaluation of twisted forms, and maximal-rank certificates.

The evaluation map sends a section of Omega^{p+1}(d+p+1) to its values in
the fibers over s points.  A witness point set achieving full rank
certifies maximal rank for general points over the field's closure (the
maximal-rank locus is open); failure of every trial is reported as
"not witnessed", never as a disproof.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactalg import ExactMatrix
from .forms import DEFAULT_PRIME, PForm, h0_basis

__all__ = [
    "BettiLedger",
    "FieldTooSmallError",
    "PointSet",
    "ProjPoint",
    "RankCertificate",
    "betti_ledger",
    "eval_matrix",
    "fiber_eval",
    "maxrank_test",
    "random_points",
    "verify_certificate",
]

_MAX_RESAMPLES = 2000
_RATIONAL_COORD_RANGE = 1000


class FieldTooSmallError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n, normalized so the last nonzero coordinate is 1."""

    coords: tuple
    q: int | None

    @classmethod
    def make(cls, coords, q=None):
        coords = list(coords)
        if q is not None:
            coords = [c % q for c in coords]
        pivot = max((i for i, c in enumerate(coords) if c != 0), default=None)
        if pivot is None:
            raise ValueError("projective point needs a nonzero coordinate")
        lead = coords[pivot]
        if q is not None:
            inv = pow(lead, q - 2, q)
            coords = [c * inv % q for c in coords]
        else:
            coords = [Fraction(c, lead) for c in coords]
            coords = [int(c) if c.denominator == 1 else c for c in coords]
        return cls(tuple(coords), q)

    @property
    def pivot(self) -> int:
        return max(i for i, c in enumerate(self.coords) if c != 0)


@dataclass(frozen=True)
class PointSet:
    n: int
    points: tuple
    q: int | None
    seed: int | None = None


def _num_rational_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def random_points(n: int, s: int, q=DEFAULT_PRIME, seed: int = 0) -> PointSet:
    """s pairwise-distinct seeded random points on P^n.

    For small sets (s <= n+2) additionally rejects configurations with
    n+1 points on a hyperplane, so the sample is honestly in general
    position at the scale where that can be enforced cheaply.
    """
    if s < 0:
        raise ValueError("point count must be nonnegative")
    if q is not None and s > _num_rational_points(n, q):
        raise FieldTooSmallError(
            "P^%d over GF(%d) has only %d points, cannot pick %d distinct ones"
            % (n, q, _num_rational_points(n, q), s)
        )
    rng = random.Random(seed)
    for _ in range(_MAX_RESAMPLES):
        pts = _sample_distinct(rng, n, s, q)
        if pts is None:
            continue
        if s <= n + 2 and not _no_small_hyperplane(pts, n, q):
            continue
        return PointSet(n, tuple(pts), q, seed)
    raise FieldTooSmallError(
        "could not sample %d points in general position on P^%d over %s"
        % (s, n, "GF(%d)" % q if q else "Q")
    )


def _sample_distinct(rng, n, s, q):
    seen = set()
    pts = []
    attempts = 0
    while len(pts) < s:
        attempts += 1
        if attempts > 50 * (s + 1):
            return None
        if q is not None:
            coords = [rng.randrange(q) for _ in range(n + 1)]
        else:
            coords = [rng.randint(-_RATIONAL_COORD_RANGE, _RATIONAL_COORD_RANGE) for _ in range(n + 1)]
        if all(c == 0 for c in coords):
            continue
        pt = ProjPoint.make(coords, q)
        if pt.coords in seen:
            continue
        seen.add(pt.coords)
        pts.append(pt)
    return pts


def _no_small_hyperplane(pts, n, q):
    from itertools import combinations

    for sub in combinations(pts, n + 1):
        m = ExactMatrix.from_rows([list(p.coords) for p in sub], q=q)
        if m.rank() < n + 1:
            return False
    return True


def _monomial_value(m, coords, q):
    v = 1
    for e, c in zip(m, coords):
        if e:
            v *= c ** e if q is None else pow(c, e, q)
            if q is not None:
                v %= q
    return v


def fiber_eval_ambient(key, vector, pt: ProjPoint, p: int, n: int, pivot=None):
    """Evaluate an ambient p-form coordinate vector in the fiber at pt.

    The fiber of Omega^p at the point is cut out of the coordinate space
    by the Euler relation; for sections the evaluated tensor satisfies it
    already, so the chart coordinates are the components whose index set
    avoids the pivot.  Returns a list of length binom(n, p) ordered by
    index set.
    """
    from itertools import combinations

    if pivot is None:
        pivot = pt.pivot
    if pt.coords[pivot] == 0:
        raise ValueError("pivot coordinate vanishes at the point")
    q = pt.q
    acc = {}
    for (I, m), coeff in zip(key, vector):
        if coeff == 0 or pivot in I:
            continue
        val = coeff * _monomial_value(m, pt.coords, q)
        acc[I] = acc.get(I, 0) + val
    chart = [I for I in combinations(range(n + 1), p) if pivot not in I]
    out = [acc.get(I, 0) for I in chart]
    if q is not None:
        out = [v % q for v in out]
    return out


def fiber_eval(form: PForm, pt: ProjPoint, pivot=None):
    """Fiber evaluation of a single polynomial form; see fiber_eval_ambient."""
    key = tuple(form.coefficients)
    vector = [form.coefficients[pair] for pair in key]
    return fiber_eval_ambient(key, vector, pt, form.p, form.n, pivot)


def eval_matrix(n: int, p: int, d: int, pts: PointSet, pivots=None) -> ExactMatrix:
    """Stacked fiber evaluations of H^0(Omega^{p+1}(d+p+1)) at every point.

    Rows: s * binom(n, p+1); columns: h^0.  ``pivots`` overrides the
    canonical chart choice per point (used by the chart-invariance tests).
    """
    q = pts.q
    space = h0_basis(n, p + 1, d + p + 1, q)
    cols = space.basis.row_list()
    sections = [[cols[i][j] for i in range(space.ambient_dim)] for j in range(space.dim)]
    fiber = comb(n, p + 1)
    rows = []
    for k, pt in enumerate(pts.points):
        pivot = pivots[k] if pivots is not None else None
        blocks = [
            fiber_eval_ambient(space.key, sec, pt, p + 1, n, pivot) for sec in sections
        ]
        for i in range(fiber):
            rows.append([b[i] for b in blocks])
    return ExactMatrix(len(pts.points) * fiber, space.dim, rows, q=q)


@dataclass(frozen=True)
class RankCertificate:
    n: int
    p: int
    d: int
    s: int
    q: int | None
    seed: int
    trials: int
    shape: tuple
    rank: int
    maximal: bool
    points: tuple | None = None  # replay list: coordinate tuples

    def to_json(self) -> str:
        field = {"kind": "prime", "modulus": self.q} if self.q is not None else {"kind": "rational"}
        doc = {
            "problem": {"n": self.n, "p": self.p, "d": self.d, "s": self.s},
            "field": field,
            "seed": self.seed,
            "trials": self.trials,
            "shape": [self.shape[0], self.shape[1]],
            "rank": self.rank,
            "maximal": self.maximal,
        }
        if self.points is not None:
            doc["points"] = [[str(c) for c in pt] for pt in self.points]
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RankCertificate":
        doc = json.loads(text)
        prob = doc["problem"]
        q = doc["field"].get("modulus") if doc["field"]["kind"] == "prime" else None
        pts = None
        if "points" in doc:
            pts = tuple(tuple(_parse_scalar(c) for c in pt) for pt in doc["points"])
        return cls(
            prob["n"],
            prob["p"],
            prob["d"],
            prob["s"],
            q,
            doc["seed"],
            doc["trials"],
            (doc["shape"][0], doc["shape"][1]),
            doc["rank"],
            doc["maximal"],
            pts,
        )


def _parse_scalar(text):
    f = Fraction(text)
    return int(f) if f.denominator == 1 else f


def _trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def maxrank_test(
    n: int, p: int, d: int, s: int, q=DEFAULT_PRIME, trials: int = 5, seed: int = 0
) -> RankCertificate:
    """Seeded maximal-rank certification of the point-evaluation map.

    Runs up to ``trials`` independent point sets; one full-rank witness
    settles the verdict.  The certificate records the witness points (or
    the best trial seen) so the run can be replayed bit-exactly.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    space_dim = h0_basis(n, p + 1, d + p + 1, q).dim
    fiber = comb(n, p + 1)
    shape = (s * fiber, space_dim)
    bound = min(shape)
    best_rank = -1
    best_pts = None
    used = 0
    for trial in range(trials):
        used = trial + 1
        pts = random_points(n, s, q, _trial_seed(seed, trial))
        r = eval_matrix(n, p, d, pts).rank() if s > 0 else 0
        if r > best_rank:
            best_rank, best_pts = r, pts
        if r == bound:
            break
    return RankCertificate(
        n,
        p,
        d,
        s,
        q,
        seed,
        used,
        shape,
        best_rank if s > 0 else 0,
        (best_rank if s > 0 else 0) == bound,
        tuple(pt.coords for pt in best_pts.points) if best_pts is not None else (),
    )


def verify_certificate(cert: RankCertificate) -> bool:
    """Recompute rank and verdict from the certificate's replay list."""
    if cert.points is None:
        raise ValueError("certificate carries no replay list")
    pts = PointSet(
        cert.n, tuple(ProjPoint.make(c, cert.q) for c in cert.points), cert.q, cert.seed
    )
    if cert.s == 0:
        return cert.rank == 0 and cert.maximal
    m = eval_matrix(cert.n, cert.p, cert.d, pts)
    r = m.rank()
    return m.shape == cert.shape and r == cert.rank and cert.maximal == (r == min(cert.shape))


@dataclass(frozen=True)
class BettiLedger:
    """What a maximal-rank verdict says about the resolution of the ideal."""

    kernel_dim: int
    cokernel_dim: int
    verdict: str

    @classmethod
    def from_certificate(cls, cert: RankCertificate) -> "BettiLedger":
        ker = cert.shape[1] - cert.rank
        coker = cert.shape[0] - cert.rank
        verdict = (
            "expected resolution shape" if min(ker, coker) == 0 else "excess syzygies possible"
        )
        return cls(ker, coker, verdict)


def betti_ledger(cert: RankCertificate) -> BettiLedger:
    return BettiLedger.from_certificate(cert)
