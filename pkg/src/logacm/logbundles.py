"""Cotangent and log-sheaf expressions for every catalog variety.

Builds the residue and log-tangent sequences of an arrangement, installs
the known value pins (Hodge numbers, tangent-section counts, coboundary
span rank) and the split-bundle upgrades for hyperplane arrangements on
P^n and ruling arrangements on the quadric.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, NotRulingArrangement
from .exactseq import (
    BlowupCotE,
    BottE,
    CurveE,
    Evaluator,
    Expr,
    HyperE,
    LineE,
    MeetE,
    RankHint,
    Seq,
    SeqE,
    SumE,
    TanPnE,
    TwistE,
    default_evaluator,
)
from .intervals import Iv, iv
from .linebundles import binom, cohom_line_Pn
from .varieties import (
    KIND_ABELIAN,
    KIND_BLOWUP,
    KIND_HIRZEBRUCH,
    KIND_PN,
    KIND_QUADRIC,
    KIND_SURFACE_P3,
    Arrangement,
    VarietyModel,
    vneg,
    vsub,
)


@lru_cache(maxsize=None)
def cotangent_tangent_pair(x: VarietyModel) -> tuple[Expr, Expr]:
    """(Omega^1_X, TX) expressions, registered as Serre-dual partners."""
    ev = default_evaluator()
    k = x.kind
    if k == KIND_PN:
        cot = BottE(x, 1)
        tan = TanPnE(x)
    elif k == KIND_QUADRIC:
        cot = SumE([LineE(x, (-2, 0)), LineE(x, (0, -2))])
        tan = SumE([LineE(x, (2, 0)), LineE(x, (0, 2))])
    elif k == KIND_HIRZEBRUCH:
        e = x.param
        seq = Seq(x, LineE(x, (2, e)), None, LineE(x, (0, 2)), name=f"T_F{e}")
        pins = {
            (0, 0): [iv(x.h0_tangent), None, None],
            x.canonical_class: [iv(0), iv(x.h11), iv(x.q)],
        }
        pin_fn = _f1_pullback_pin(x) if e == 1 else None
        tan = SeqE(seq, 2, pins=pins, pin_fn=pin_fn)
        cot = TwistE(tan, x.canonical_class)
    elif k == KIND_BLOWUP:
        cot = BlowupCotE(x)
        tan = TwistE(cot, vneg(x.canonical_class))
    elif k == KIND_SURFACE_P3:
        cot = _surface_p3_cotangent(x)
        tan = TwistE(cot, vneg(x.canonical_class))
    elif k == KIND_ABELIAN:
        cot = SumE([LineE(x, (0,)), LineE(x, (0,))])
        tan = cot
    else:
        raise InputError(f"no cotangent model for kind {k}")
    ev.register_dual(cot, tan)
    return cot, tan


def _f1_pullback_pin(x: VarietyModel):
    """Sections of Omega^1_{F_1} along pullbacks of O_{P^2}(s) are bounded
    below by the Bott count (s-1)(s+1); keyed on the tangent expression."""
    kan = x.canonical_class

    def pin(tw):
        rel = vsub(tw, kan)  # tangent at tw is cotangent at tw - K
        if rel[0] == rel[1] and rel[0] >= 2:
            s = rel[0]
            return [Iv(s * s - 1, None), None, None]
        return None

    return pin


def _surface_p3_cotangent(x: VarietyModel) -> Expr:
    """Omega^1 via the ambient restriction and conormal sequences, with the
    Hodge pins resolving the connecting ranks at twist zero."""
    d = x.param
    restrict = Seq(
        x,
        BottE(x, 1, shift=-d, amb_n=3),
        BottE(x, 1, shift=0, amb_n=3),
        None,
        name=f"Omega_P3|X{d}",
        amb=3,
    )
    restricted = SeqE(restrict, 2)
    conormal = Seq(x, LineE(x, (-d,)), restricted, None, name=f"conormal X{d}", amb=2)
    pins = {(0,): [iv(x.q), iv(x.h11), iv(x.q)]}

    def effectivity_pins(tw):
        # h^0(Omega^1(t)) <= h^0(Omega^1) = q = 0 for t < 0, and
        # h^2(Omega^1(t)) = h^0(Omega^1(-t)) = 0 for t > 0 (rank-2 duality)
        t = tw[0]
        if t < 0:
            return [iv(0), None, None]
        if t > 0:
            return [None, None, iv(0)]
        return None

    return SeqE(conormal, 2, pins=pins, pin_fn=effectivity_pins)


@dataclass
class LogPair:
    variety: VarietyModel
    arrangement: Arrangement
    cotangent_log: Expr
    tangent_log: Expr
    notes: list


def structure_leaves(x: VarietyModel, arr: Arrangement, normal_twist: bool) -> list[Expr]:
    """O_{D_i} (residue right term) or O_{D_i}(D_i) (log-tangent right term)."""
    leaves = []
    for c in arr.components:
        if x.kind == KIND_PN:
            d = c.klass[0]
            leaves.append(HyperE(x, d, d if normal_twist else 0))  # O_D(D) = O_D(d)
            continue
        base = c.normal_degree(x) if normal_twist else 0
        if c.klass is not None:
            leaves.append(CurveE(x, c.genus, base, klass=c.klass))
        else:
            leaves.append(CurveE(x, c.genus, base, deg_h=c.deg_h))
    return leaves


def is_hyperplane_arrangement(x: VarietyModel, arr: Arrangement) -> bool:
    return x.kind == KIND_PN and arr.size > 0 and all(c.klass == (1,) for c in arr.components)


def ruling_counts(x: VarietyModel, arr: Arrangement) -> tuple[int, int] | None:
    two_rulings = x.kind == KIND_QUADRIC or (x.kind == KIND_HIRZEBRUCH and x.param == 0)
    if not two_rulings:
        return None
    a = sum(1 for c in arr.components if c.klass == (1, 0))
    b = sum(1 for c in arr.components if c.klass == (0, 1))
    if a + b != arr.size:
        return None
    return a, b


def _ruling_split(x: VarietyModel, a: int, b: int) -> Expr:
    if a < 0 or b < 0 or a + b < 1:
        raise NotRulingArrangement("need a, b >= 0 with a+b >= 1 ruling lines")
    return SumE([LineE(x, (a - 2, 0)), LineE(x, (0, b - 2))])


def quadric_ruling_splitting(a: int, b: int) -> Expr:
    """Split form of Omega^1_Q(log D) for a+b ruling lines."""
    from .varieties import quadric_surface

    return _ruling_split(quadric_surface(), a, b)


def dk_split_model(x: VarietyModel, m: int) -> Expr:
    """Omega^1(log H) for m <= n+1 hyperplanes with normal crossings."""
    n = x.dim
    parts = [LineE(x, (0,))] * (m - 1) + [LineE(x, (-1,))] * (n - m + 1)
    return SumE(parts)


def steiner_model(x: VarietyModel, m: int) -> Expr:
    """Omega^1(log H) for m >= n+2 generic hyperplanes, as the cokernel of
    the Steiner matrix O(-1)^(m-n-1) -> O^(m-1)."""
    n = x.dim
    seq = Seq(
        x,
        SumE([LineE(x, (-1,))] * (m - n - 1)),
        SumE([LineE(x, (0,))] * (m - 1)),
        None,
        name=f"steiner m={m}",
    )
    return SeqE(seq, n)


def log_pair(x: VarietyModel, arr: Arrangement, ev: Evaluator | None = None) -> LogPair:
    """Residue and log-tangent sequence models for (X, D)."""
    ev = ev or default_evaluator()
    notes = []
    if not arr.snc:
        raise InputError("arrangement must assert simple normal crossings")
    for c in arr.components:
        if c.klass is not None and not x.is_effective(c.klass):
            raise InputError(f"component class {c.klass} is not effective")
        if c.genus < 0:
            raise InputError("component genus must be nonnegative")

    from collections import Counter

    counts = Counter(c.klass for c in arr.components if c.klass is not None)
    for klass, copies in counts.items():
        from .linebundles import line_cohom

        # a class with a single section has a unique divisor
        if copies > 1 and line_cohom(x, klass)[0] < 2:
            raise InputError(f"class {klass} is rigid; {copies} distinct members impossible")

    cot, tan = cotangent_tangent_pair(x)
    n = x.dim

    if arr.size == 0:
        pair = LogPair(x, arr, cot, tan, ["trivial arrangement: log sheaf is Omega^1"])
        return pair

    if arr.span_asserted:
        span_hint = iv(arr.span_rank)
    else:
        from .intervals import Iv

        span_hint = Iv(1, min(arr.size, x.h11))  # span not pinned by the input
        notes.append("span rank not asserted: coboundary rank left as an interval")
    residue = Seq(
        x,
        cot,
        None,
        SumE(structure_leaves(x, arr, normal_twist=False)),
        hints=(RankHint((0,) * x.lattice_rank, 0, span_hint, "coboundary spans the component classes"),),
        name="residue",
    )
    cot_log: Expr = SeqE(residue, n)

    if is_hyperplane_arrangement(x, arr):
        m = arr.size
        model = dk_split_model(x, m) if m <= n + 1 else steiner_model(x, m)
        notes.append("hyperplane arrangement: split/Steiner model installed")
        cot_log = MeetE([model, cot_log])
    rc = ruling_counts(x, arr)
    if rc is not None:
        notes.append(f"quadric ruling arrangement ({rc[0]},{rc[1]}): split model installed")
        cot_log = MeetE([_ruling_split(x, *rc), cot_log])

    tanseq = Seq(
        x,
        None,
        tan,
        SumE(structure_leaves(x, arr, normal_twist=True)),
        name="log tangent",
    )
    tan_log = SeqE(tanseq, n)
    ev.register_dual(cot_log, tan_log)
    return LogPair(x, arr, cot_log, tan_log, notes)


# -- fixed numeric ledger chains ---------------------------------------------


@dataclass
class LedgerReport:
    name: str
    values: tuple
    contradiction: bool
    lines: list


def ledger_checks(name: str, n: int | None = None, d: int | None = None) -> LedgerReport:
    """Recompute the fixed contradiction/reduction chains from line-bundle
    primitives and restriction sequences."""
    if name == "cubic_surface":
        def h0(t):  # O_X(t) for the cubic X in P^3
            return binom(t + 3, 3) - binom(t, 3)

        h_amb = 4 * h0(2) - h0(1)  # restricted Euler sequence
        h_sections = h_amb - h0(4)  # quotient by the twisted normal bundle O_X(4)
        chi_route = (6 - 3) * 3  # deg det(TX(1)) on an elliptic hyperplane section
        lines = [
            f"h^0(TP^3(1)|_X) = 4*{h0(2)} - {h0(1)} = {h_amb}",
            f"h^0(TX(1)) = {h_amb} - {h0(4)} = {h_sections}",
            f"chi(TX(1)) = chi(TX) + deg TX(1)|_C = 0 + {chi_route}",
        ]
        return LedgerReport(name, (h_amb, h_sections, chi_route), h_sections != chi_route, lines)
    if name == "dp4":
        def h0(t):  # Koszul resolution of the (2,2) complete intersection in P^4
            return binom(t + 4, 4) - 2 * binom(t + 2, 4) + binom(t, 4)

        h_amb = 5 * h0(2) - h0(1)
        h_sections = h_amb - 2 * h0(3)
        chi_route = 3 * 4  # deg det(TX(1)) = 3H on C, H^2 = 4
        lines = [
            f"h^0(TP^4(1)|_X) = 5*{h0(2)} - {h0(1)} = {h_amb}",
            f"h^0(TX(1)) = {h_amb} - 2*{h0(3)} = {h_sections}",
            f"chi(TX(1)) = chi(TX) + deg TX(1)|_C = 0 + {chi_route}",
        ]
        return LedgerReport(name, (h_amb, h_sections, chi_route), h_sections != chi_route, lines)
    if name == "thm_pn_reduction":
        if n is None or d is None:
            raise InputError("thm_pn_reduction needs n and d")
        lhs = cohom_line_Pn(n, 1 - n - d)[n] - cohom_line_Pn(n, 1 - n)[n]  # h^{n-1}(O_D(1-n))
        rhs = binom(n + d - 2, n) - binom(n - 2, n)  # h^0(O_D(d-2))
        lines = [f"h^(n-1)(O_D(1-n)) = {lhs}", f"h^0(O_D(d-2)) = {rhs}"]
        if lhs != rhs:
            raise InputError("duality cross-check failed")
        return LedgerReport(name, (lhs, rhs), lhs > 0, lines)
    raise InputError(f"unknown ledger chain {name!r}")
