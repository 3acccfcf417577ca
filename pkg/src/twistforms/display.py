"""The 3x3 elementary-transformation display on P^n, at the section level.

For a form degree p and a uniform auxiliary twist t the six nonzero nodes
are

    top           Omega^{p+1}_{P^n}(p+1+t)        (appears twice)
    free          O(t)^{+binom(n,p+1)}
    middle        Omega^{p+1}_{P^n}(p+2+t)
    right         Omega^{p+1}_{P^{n-1}}(p+2+t)    (appears twice)
    bottom_left   Omega^p_{P^{n-1}}(p+1+t)
    bottom_mid    Omega^{p+1}_{P^n}(p+2+t) restricted to x_n = 0

and the arrows are realized as matrices between the explicit section
bases of the forms module.  The two column maps out of the top node and
the surjection free -> bottom_left are obtained by linear solves against
the commutativity constraints; a failed solve aborts construction with a
named diagnostic.  t = 0 is the theorem instance; larger twists are a
faithfulness sweep with the same code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bott import binom, h_omega
from .exactalg import ExactMatrix, snake_check
from .forms import (
    DEFAULT_PRIME,
    ConsistencyError,
    SectionSpace,
    _ambient_map,
    _express,
    conormal_wedge,
    drop_last_differential,
    free_sections,
    h0_basis,
    monomials,
    restricted_sections,
    restriction_of_forms,
)

__all__ = [
    "DisplayInstance",
    "ExactnessLedger",
    "SequenceCheck",
    "build_display",
    "verify_display",
]

NODE_NAMES = ("top", "free", "middle", "right", "bottom_left", "bottom_mid")


@dataclass(frozen=True)
class SequenceCheck:
    """Exactness record for one row or column 0 -> K -> M -> Q."""

    name: str
    dims: tuple  # (dim K, dim M, dim Q)
    rank_in: int
    rank_out: int
    coker: int
    h1_obstruction: int
    verdict: str  # exact-at-sections / exact-with-known-h1-obstruction / failed

    @property
    def ok(self) -> bool:
        return self.verdict != "failed"


@dataclass(frozen=True)
class ExactnessLedger:
    n: int
    p: int
    t: int
    node_dims: dict
    squares: tuple  # (name, commutes) pairs
    sequences: tuple  # SequenceCheck per row/column
    snake_ok: bool

    @property
    def all_exact(self) -> bool:
        return (
            all(ok for _, ok in self.squares)
            and all(s.verdict == "exact-at-sections" for s in self.sequences)
            and self.snake_ok
        )

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.squares) and all(s.ok for s in self.sequences) and self.snake_ok


@dataclass
class DisplayInstance:
    n: int
    p: int
    t: int
    q: int | None
    nodes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    def node_dims(self) -> dict:
        return {name: self.nodes[name].dim for name in NODE_NAMES}


def _kernel_generator_map(n: int, p: int, t: int, q) -> tuple:
    """Section-level inclusion O(t)^{+binom(n,p+1)} -> Omega^{p+1}(p+2+t).

    The j-th copy is carried onto multiples of the contraction of the
    Euler field with dx_{J_j} ^ dx_n, where J_j runs over the
    (p+1)-subsets of {0..n-1}; these forms restrict to zero on the
    hyperplane and generate the kernel of the restriction.
    """
    import itertools

    free = free_sections(n, t, binom(n, p + 1), q)
    mid = h0_basis(n, p + 1, p + 2 + t, q)
    subsets = list(itertools.combinations(range(n), p + 1))

    def entries(pair):
        j, m = pair
        full = subsets[j] + (n,)
        out = []
        for pos, k in enumerate(full):
            sign = -1 if pos % 2 else 1
            mk = list(m)
            mk[k] += 1
            out.append(((full[:pos] + full[pos + 1 :], tuple(mk)), sign))
        return out

    amb = _ambient_map(free.key, mid.key, entries, q)
    return free, _express(mid, amb @ free.basis, "kernel generators (%d,%d,t=%d)" % (n, p, t))


def build_display(n: int, p: int, t: int, q=DEFAULT_PRIME) -> DisplayInstance:
    """Construct all six section spaces and seven maps of the display."""
    if n < 1 or not 0 <= p <= n - 1:
        raise ValueError("display needs n >= 1 and 0 <= p <= n-1")
    inst = DisplayInstance(n, p, t, q)
    top = h0_basis(n, p + 1, p + 1 + t, q)
    middle = h0_basis(n, p + 1, p + 2 + t, q)
    right = h0_basis(n - 1, p + 1, p + 2 + t, q)
    bottom_left = h0_basis(n - 1, p, p + 1 + t, q)
    bottom_mid = restricted_sections(n, p + 1, p + 2 + t, q)
    free, free_incl = _kernel_generator_map(n, p, t, q)

    inst.nodes = {
        "top": top,
        "free": free,
        "middle": middle,
        "right": right,
        "bottom_left": bottom_left,
        "bottom_mid": bottom_mid,
    }

    # middle column top arrow: multiplication by x_n.
    def xn_entries(pair):
        I, m = pair
        mk = list(m)
        mk[n] += 1
        return ((I, tuple(mk)), 1),

    amb = _ambient_map(top.key, middle.key, xn_entries, q)
    twist = _express(middle, amb @ top.basis, "twist inclusion")

    restrict = restriction_of_forms(n, p + 1, p + 2 + t, q)
    wedge = conormal_wedge(n, p, p + 2 + t, q)
    drop = drop_last_differential(n, p + 1, p + 2 + t, q)

    # middle column bottom arrow: restrict coefficients mod x_n, keep dx_n.
    def hyp_entries(pair):
        I, m = pair
        if m[n] > 0:
            return ()
        return ((I, m[:n]), 1),

    amb = _ambient_map(middle.key, bottom_mid.key, hyp_entries, q)
    to_hyperplane = _express(bottom_mid, amb @ middle.basis, "restriction to hyperplane")

    left_top = free_incl.solve(twist)
    if left_top is None:
        raise ConsistencyError(
            "display(%d,%d,t=%d): top node does not factor through the free node" % (n, p, t)
        )
    left_bottom = wedge.solve(to_hyperplane @ free_incl)
    if left_bottom is None:
        raise ConsistencyError(
            "display(%d,%d,t=%d): free node does not surject through the conormal wedge"
            % (n, p, t)
        )

    inst.maps = {
        "twist": twist,  # top -> middle
        "free_incl": free_incl,  # free -> middle
        "restrict": restrict,  # middle -> right
        "to_hyperplane": to_hyperplane,  # middle -> bottom_mid
        "wedge": wedge,  # bottom_left -> bottom_mid
        "drop": drop,  # bottom_mid -> right
        "left_top": left_top,  # top -> free
        "left_bottom": left_bottom,  # free -> bottom_left
    }
    return inst


def _check_sequence(name, f, g, h1) -> SequenceCheck:
    """Exactness of 0 -> K -f-> M -g-> Q at the section level."""
    dims = (f.cols, f.rows, g.rows)
    rf, rg = f.rank(), g.rank()
    coker = g.rows - rg
    injective = rf == f.cols
    composite_zero = (g @ f).is_zero()
    middle_exact = (f.rows - rg) == rf
    if injective and composite_zero and middle_exact:
        if coker == 0:
            verdict = "exact-at-sections"
        elif coker <= h1:
            verdict = "exact-with-known-h1-obstruction"
        else:
            verdict = "failed"
    else:
        verdict = "failed"
    return SequenceCheck(name, dims, rf, rg, coker, h1, verdict)


def _snake_on_lower_rows(inst: DisplayInstance) -> bool:
    """Apply the snake checker to rows two and three with the vertical maps."""
    m = inst.maps
    dim_r = inst.nodes["right"].dim
    ident = ExactMatrix.identity(dim_r, q=inst.q)
    try:
        ledger = snake_check(
            m["free_incl"],
            m["restrict"],
            m["wedge"],
            m["drop"],
            m["left_bottom"],
            m["to_hyperplane"],
            ident,
        )
    except ValueError:
        return False
    return ledger.exact


def verify_display(n: int, p: int, t_min: int, t_max: int, q=DEFAULT_PRIME) -> list:
    """Ledgers for every t in [t_min, t_max].

    Any commutativity or exactness failure at t = 0 raises, since that
    would falsify the construction itself; nonzero twists report their
    verdicts in the ledger instead.
    """
    ledgers = []
    for t in range(t_min, t_max + 1):
        inst = build_display(n, p, t, q)
        ledgers.append(ledger_for(inst))
        if t == 0 and not ledgers[-1].passed:
            bad = [name for name, ok in ledgers[-1].squares if not ok]
            bad += [s.name for s in ledgers[-1].sequences if not s.ok]
            if not ledgers[-1].snake_ok:
                bad.append("snake consistency")
            raise ConsistencyError(
                "display(%d,%d,t=0) failed at: %s" % (n, p, ", ".join(bad))
            )
    return ledgers


def ledger_for(inst: DisplayInstance) -> ExactnessLedger:
    n, p, t, m = inst.n, inst.p, inst.t, inst.maps
    squares = (
        ("top square", m["free_incl"] @ m["left_top"] == m["twist"]),
        (
            "bottom-left square",
            m["wedge"] @ m["left_bottom"] == m["to_hyperplane"] @ m["free_incl"],
        ),
        ("bottom-right square", m["drop"] @ m["to_hyperplane"] == m["restrict"]),
    )
    h1_free = binom(n, p + 1) * _h1_safe(n, 0, t)
    h1_row3 = _h1_safe(n - 1, p, p + 1 + t)
    h1_col = _h1_safe(n, p + 1, p + 1 + t)
    sequences = (
        _check_sequence("row 2", m["free_incl"], m["restrict"], h1_free),
        _check_sequence("row 3", m["wedge"], m["drop"], h1_row3),
        _check_sequence("left column", m["left_top"], m["left_bottom"], h1_col),
        _check_sequence("middle column", m["twist"], m["to_hyperplane"], h1_col),
    )
    # The snake pass needs both lower rows short exact at sections; when a
    # twist leaves an h^1 obstruction the check is vacuous.
    rows_exact = all(s.verdict == "exact-at-sections" for s in sequences[:2])
    snake_ok = _snake_on_lower_rows(inst) if rows_exact else True
    return ExactnessLedger(n, p, t, inst.node_dims(), squares, sequences, snake_ok)


def _h1_safe(n: int, p: int, d: int) -> int:
    if n < 1 or p > n:
        return 0
    return h_omega(n, p, d, 1) if n >= 1 else 0
