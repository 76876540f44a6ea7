"""Graded exact-sequence interval solver.

Sheaf expressions form immutable trees whose leaves have exact backends.
A term of a short exact sequence is evaluated by enumerating all
connecting-map ranks admissible for the long exact sequence at the given
twist, intersected with installed rank hints and value pins; the output
interval is the exact min/max over the feasible set.  Serre duality is
applied at expression level through a registry of dual partners, and
vanishing outside finite twist windows is certified via Castelnuovo-Mumford
regularity.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

from .errors import InconsistentHints, InputError, NotVeryAmple, WindowNotFound
from .intervals import (
    Iv,
    add_vecs,
    exact_vec,
    iv,
    iv_meet,
    meet_vecs,
    pad_vec,
    top_vec,
    transpose_vec,
)
from .linebundles import (
    cohom_bott,
    cohom_hypersurface_section,
    cohom_line_curve,
    cohom_tangent_Pn,
    line_cohom,
)
from .varieties import VarietyModel, vadd, vneg, vscale, vsub

LEFT, MIDDLE, RIGHT = "left", "middle", "right"

# enumeration budget before falling back to per-slot interval arithmetic
_ENUM_BUDGET = 200_000


_UIDS = itertools.count()


class Expr:
    """Base class; immutable after construction, identified by a serial
    number that is never reused (id() reuse would poison the memo cache)."""

    variety: VarietyModel
    cdim: int  # top cohomological degree of the support

    def key(self) -> int:
        u = getattr(self, "_uid", None)
        if u is None:
            u = next(_UIDS)
            self._uid = u
        return u


class LineE(Expr):
    def __init__(self, x: VarietyModel, klass):
        self.variety = x
        self.klass = x.check_class(klass)
        self.cdim = x.dim

    def __repr__(self):
        return f"O{self.klass}"


class CurveE(Expr):
    """Pushforward of a line bundle from a smooth curve on a surface.

    Degree at twist T is base_deg + D.T (lattice form) or base_deg +
    deg_h * t (rank-one form)."""

    def __init__(self, x: VarietyModel, genus: int, base_deg: int, klass=None, deg_h=None):
        self.variety = x
        self.genus = genus
        self.base_deg = base_deg
        self.klass = x.check_class(klass) if klass is not None else None
        self.deg_h = deg_h
        self.cdim = 1

    def degree_at(self, twist) -> int:
        if self.klass is not None:
            return self.base_deg + self.variety.intersect(self.klass, twist)
        return self.base_deg + self.deg_h * twist[0]

    def __repr__(self):
        return f"O_C(g={self.genus},d0={self.base_deg})"


class HyperE(Expr):
    """Structure sheaf of a degree-d hypersurface in P^n, shifted by `shift`."""

    def __init__(self, x: VarietyModel, d: int, shift: int = 0):
        self.variety = x
        self.d = d
        self.shift = shift
        self.cdim = x.dim - 1

    def __repr__(self):
        return f"O_D(deg {self.d};{self.shift:+d})"


class BottE(Expr):
    """Omega^p on P^n, twisted by `shift`.

    `amb_n` lets a rank-one surface chain drive P^3 sheaves by its integer
    twist (ambient restriction sequences)."""

    def __init__(self, x: VarietyModel, p: int, shift: int = 0, amb_n: int | None = None):
        self.variety = x
        self.p = p
        self.shift = shift
        self.n = x.dim if amb_n is None else amb_n
        self.cdim = self.n

    def __repr__(self):
        return f"Omega^{self.p}_P{self.n}({self.shift:+d})"


class TanPnE(Expr):
    def __init__(self, x: VarietyModel):
        self.variety = x
        self.cdim = x.dim

    def __repr__(self):
        return f"T_P{self.variety.dim}"


class SumE(Expr):
    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise InputError("empty sum")
        self.variety = parts[0].variety
        self.parts = parts
        self.cdim = max(p.cdim for p in parts)

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.parts)) + ")"


class TwistE(Expr):
    def __init__(self, inner: Expr, by):
        by = inner.variety.check_class(by)
        if isinstance(inner, TwistE):  # normalize nested twists
            by = vadd(by, inner.by)
            inner = inner.inner
        self.variety = inner.variety
        self.inner = inner
        self.by = by
        self.cdim = inner.cdim

    def __repr__(self):
        return f"{self.inner!r}({self.by})"


class DualE(Expr):
    def __init__(self, inner: Expr):
        if isinstance(inner, DualE):
            raise InputError("normalize Dual(Dual(E)) to E before wrapping")
        self.variety = inner.variety
        self.inner = inner
        self.cdim = inner.cdim

    def __repr__(self):
        return f"({self.inner!r})^v"


class MeetE(Expr):
    """Several certified models of the same sheaf; evaluation intersects."""

    def __init__(self, parts):
        parts = tuple(parts)
        self.variety = parts[0].variety
        self.parts = parts
        self.cdim = parts[0].cdim

    def __repr__(self):
        return " == ".join(map(repr, self.parts))


class BlowupCotE(Expr):
    """Rule-based cotangent leaf on Bl_k P^2 (k <= 4)."""

    def __init__(self, x: VarietyModel):
        self.variety = x
        self.cdim = 2

    def __repr__(self):
        return f"Omega^1_Bl{self.variety.param}"


@dataclass(frozen=True)
class RankHint:
    twist: tuple
    degree: int
    rank: Iv
    provenance: str


@dataclass(eq=False)
class Seq:
    """0 -> left -> middle -> right -> 0; exactly one slot is None."""

    variety: VarietyModel
    left: Expr | None
    middle: Expr | None
    right: Expr | None
    hints: tuple[RankHint, ...] = ()
    name: str = "seq"
    amb: int | None = None  # ambient cohomological length - 1

    def __post_init__(self):
        terms = (self.left, self.middle, self.right)
        if sum(t is None for t in terms) != 1:
            raise InputError("a sequence has exactly one unknown slot")
        if self.amb is None:
            self.amb = max(t.cdim for t in terms if t is not None)

    @property
    def unknown_slot(self) -> str:
        if self.left is None:
            return LEFT
        if self.middle is None:
            return MIDDLE
        return RIGHT


class SeqE(Expr):
    """The unknown term of a sequence, optionally pinned.

    ``pins`` maps a twist class to a per-degree list of Iv constraints
    (None = unconstrained); they participate in the rank enumeration, so a
    pinned slot can force connecting ranks at the same twist.
    """

    def __init__(self, seq: Seq, cdim: int, pins=None, pin_fn=None):
        self.variety = seq.variety
        self.seq = seq
        self.cdim = cdim
        self.pins = dict(pins or {})
        self.pin_fn = pin_fn

    def constraints_at(self, twist):
        con = list(self.pins.get(tuple(twist), ())) or [None] * (self.cdim + 1)
        if self.pin_fn is not None:
            extra = self.pin_fn(tuple(twist))
            if extra:
                con = [c if e is None else (e if c is None else iv_meet(c, e)) for c, e in zip(con, extra)]
        return con

    def __repr__(self):
        return f"{self.seq.name}[{self.seq.unknown_slot}]"


class Evaluator:
    """Memoizing evaluator; cache writes are idempotent, reads concurrent-safe."""

    def __init__(self):
        self.cache: dict = {}  # idempotent writes; safe to share across threads
        self.partners: dict[int, Expr] = {}  # holds strong references
        self.partner_names: list[tuple[str, str]] = []
        self._local = threading.local()

    @property
    def _stack(self) -> list:
        if not hasattr(self._local, "stack"):
            self._local.stack = []
        return self._local.stack

    @property
    def _tainted(self) -> set:
        if not hasattr(self._local, "tainted"):
            self._local.tainted = set()
        return self._local.tainted

    # -- duality registry ---------------------------------------------------

    def register_dual(self, a: Expr, b: Expr, note: str = ""):
        self.partners[a.key()] = b
        self.partners[b.key()] = a
        self.partner_names.append((repr(a), repr(b)))

    def serre_dual_pairs(self) -> list[tuple[str, str]]:
        return list(self.partner_names)

    # -- evaluation ---------------------------------------------------------

    def cohom(self, expr: Expr, twist) -> tuple[Iv, ...]:
        """Dimension intervals of expr twisted by O(twist), degrees 0..cdim."""
        twist = expr.variety.check_class(twist)
        key = (expr.key(), twist)
        if key in self.cache:
            return self.cache[key]
        if key in self._stack:
            # Serre-duality cycle: contribute no information here, and do not
            # let anything computed on this stack be cached (it would freeze
            # a degraded interval that a fresh evaluation can sharpen).
            self._tainted.update(self._stack)
            return top_vec(expr.cdim + 1)
        self._stack.append(key)
        try:
            v = self._raw(expr, twist)
            partner = self.partners.get(expr.key())
            if partner is not None:
                k = expr.variety.canonical_class
                w = self.cohom(partner, vsub(k, twist))
                v = meet_vecs(v, transpose_vec(pad_vec(w, expr.cdim + 1)), f"{expr!r}@{twist}")
        finally:
            self._stack.pop()
        if key in self._tainted:
            self._tainted.discard(key)
            if not self._stack:
                self.cache[key] = v  # outermost pass is a stable fixpoint
        else:
            self.cache[key] = v
        return v

    def _raw(self, expr: Expr, twist) -> tuple[Iv, ...]:
        if isinstance(expr, LineE):
            return exact_vec(line_cohom(expr.variety, vadd(expr.klass, twist)))
        if isinstance(expr, CurveE):
            h0, h1 = cohom_line_curve(expr.genus, expr.degree_at(twist))
            return (h0, h1)
        if isinstance(expr, HyperE):
            return exact_vec(cohom_hypersurface_section(expr.variety.dim, expr.d, expr.shift + twist[0]))
        if isinstance(expr, BottE):
            return exact_vec(cohom_bott(expr.n, expr.p, expr.shift + twist[0]))
        if isinstance(expr, TanPnE):
            return exact_vec(cohom_tangent_Pn(expr.variety.dim, twist[0]))
        if isinstance(expr, SumE):
            total = (iv(0),) * (expr.cdim + 1)
            for p in expr.parts:
                total = add_vecs(total, pad_vec(self.cohom(p, twist), expr.cdim + 1))
            return total
        if isinstance(expr, TwistE):
            return self.cohom(expr.inner, vadd(twist, expr.by))
        if isinstance(expr, DualE):
            k = expr.variety.canonical_class
            w = self.cohom(expr.inner, vsub(k, twist))
            return transpose_vec(pad_vec(w, expr.cdim + 1))
        if isinstance(expr, MeetE):
            v = top_vec(expr.cdim + 1)
            for p in expr.parts:
                v = meet_vecs(v, pad_vec(self.cohom(p, twist), expr.cdim + 1), f"{expr!r}@{twist}")
            return v
        if isinstance(expr, BlowupCotE):
            return self._blowup_cotangent(expr.variety, twist)
        if isinstance(expr, SeqE):
            return self._solve(expr, twist)
        raise InputError(f"cannot evaluate {expr!r}")

    def _blowup_cotangent(self, x: VarietyModel, twist) -> tuple[Iv, ...]:
        h0 = self._blowup_cot_h0(x, twist)
        h2 = self._blowup_cot_h0(x, vneg(twist))
        chi = x.chi_cotangent_twist(twist)
        lo = max(0, h0.lo + h2.lo - chi)
        hi = None if h0.hi is None or h2.hi is None else max(lo, h0.hi + h2.hi - chi)
        return (h0, Iv(lo, hi), h2)

    def _blowup_cot_h0(self, x: VarietyModel, t) -> Iv:
        """h^0(Omega^1 (t)) rules on a del Pezzo blow-up."""
        mk = vneg(x.canonical_class)
        if x.is_effective(vneg(t)):
            return iv(0)  # h^0 <= h^0(Omega^1) = q = 0
        if t == mk:
            return iv(x.h0_tangent)  # Omega^1(-K) = TX
        lo, hi = 0, None
        if x.is_effective(vsub(mk, t)):
            hi = x.h0_tangent  # Omega^1(t) embeds in TX after an effective twist
        if t[1:] == (0,) * (len(t) - 1) and t[0] >= 2:
            # pullback of Omega^1_{P^2}(s): Bott count is a lower bound
            lo = max(lo, t[0] ** 2 - 1)
        if hi is not None and lo > hi:
            hi = lo
        return Iv(lo, hi)

    # -- the long-exact-sequence solve --------------------------------------

    def _solve(self, node: SeqE, twist) -> tuple[Iv, ...]:
        seq = node.seq
        n = seq.amb
        slot = seq.unknown_slot
        known = {}
        for name, term in ((LEFT, seq.left), (MIDDLE, seq.middle), (RIGHT, seq.right)):
            if term is not None:
                known[name] = pad_vec(self.cohom(term, twist), n + 1)
        pins = node.constraints_at(twist)
        support = [iv(0) if i > node.cdim else None for i in range(n + 1)]
        cons = [
            p if s is None else (s if p is None else iv_meet(p, s))
            for p, s in zip(pins + [None] * (n + 1 - len(pins)), support)
        ]

        hint_iv = [None] * n
        for h in seq.hints:
            if tuple(h.twist) == tuple(twist) and 0 <= h.degree < n:
                cur = hint_iv[h.degree]
                hint_iv[h.degree] = h.rank if cur is None else iv_meet(cur, h.rank)

        a = known.get(LEFT)
        b = known.get(MIDDLE)
        c = known.get(RIGHT)

        # rank bounds rho_i <= min(c_i, a_{i+1}) from whichever flank is known
        rho_hi: list[int | None] = []
        for i in range(n):
            bound = None
            if c is not None and c[i].hi is not None:
                bound = c[i].hi
            if a is not None and a[i + 1].hi is not None:
                bound = a[i + 1].hi if bound is None else min(bound, a[i + 1].hi)
            if hint_iv[i] is not None and hint_iv[i].hi is not None:
                bound = hint_iv[i].hi if bound is None else min(bound, hint_iv[i].hi)
            rho_hi.append(bound)
        rho_lo = [hint_iv[i].lo if hint_iv[i] is not None else 0 for i in range(n)]

        enum_ranges = []
        finite = True
        for i in range(n):
            if rho_hi[i] is None:
                finite = False
                break
            if rho_lo[i] > rho_hi[i]:
                raise InconsistentHints(f"{seq.name}@{twist}: hint at degree {i} outside admissible range")
            enum_ranges.append(range(rho_lo[i], rho_hi[i] + 1))

        var_slots = []  # (which, i, range) for non-degenerate known slots
        if finite:
            size = 1
            for r in enum_ranges:
                size *= len(r)
            for name, vec in known.items():
                for i, x in enumerate(vec):
                    if not x.exact:
                        if x.hi is None:
                            finite = False
                            break
                        var_slots.append((name, i, range(x.lo, x.hi + 1)))
                        size *= x.hi - x.lo + 1
                if not finite:
                    break
            if finite and size > _ENUM_BUDGET:
                finite = False

        if not finite:
            return self._solve_coarse(node, n, slot, a, b, c, rho_lo, rho_hi, cons)

        lows = [None] * (n + 1)
        highs = [None] * (n + 1)
        feasible = False
        base = {name: [x.lo for x in vec] for name, vec in known.items()}
        for choice in itertools.product(*(r for _, _, r in var_slots)):
            vals = {name: list(v) for name, v in base.items()}
            for (name, i, _), val in zip(var_slots, choice):
                vals[name][i] = val
            for rho in itertools.product(*enum_ranges):
                out = self._apply_relation(slot, n, vals, rho)
                if out is None:
                    continue
                ok = True
                av = vals.get(LEFT, out if slot == LEFT else None)
                cv = vals.get(RIGHT, out if slot == RIGHT else None)
                for i in range(n):
                    if rho[i] > cv[i] or rho[i] > av[i + 1]:
                        ok = False
                        break
                if not ok:
                    continue
                for i, con in enumerate(cons):
                    if con is not None and not (con.lo <= out[i] and (con.hi is None or out[i] <= con.hi)):
                        ok = False
                        break
                if not ok:
                    continue
                feasible = True
                for i, v in enumerate(out):
                    lows[i] = v if lows[i] is None else min(lows[i], v)
                    highs[i] = v if highs[i] is None else max(highs[i], v)
        if not feasible:
            raise InconsistentHints(f"{seq.name}@{twist}: no admissible rank assignment")
        return tuple(Iv(lo, hi) for lo, hi in zip(lows, highs))[: node.cdim + 1]

    @staticmethod
    def _apply_relation(slot, n, vals, rho):
        """Solve b_i = (a_i - rho_{i-1}) + (c_i - rho_i) for the unknown."""
        def r(i):
            return rho[i] if 0 <= i < n else 0

        out = []
        if slot == MIDDLE:
            av, cv = vals[LEFT], vals[RIGHT]
            for i in range(n + 1):
                v = av[i] - r(i - 1) + cv[i] - r(i)
                if v < 0:
                    return None
                out.append(v)
        elif slot == LEFT:
            bv, cv = vals[MIDDLE], vals[RIGHT]
            for i in range(n + 1):
                v = bv[i] - cv[i] + r(i - 1) + r(i)
                if v < 0:
                    return None
                out.append(v)
        else:
            av, bv = vals[LEFT], vals[MIDDLE]
            for i in range(n + 1):
                v = bv[i] - av[i] + r(i - 1) + r(i)
                if v < 0:
                    return None
                out.append(v)
        return out

    def _solve_coarse(self, node, n, slot, a, b, c, rho_lo, rho_hi, cons):
        """Sound per-slot interval arithmetic when enumeration is unbounded.

        Loses joint rank coupling but never narrows below the feasible set.
        """
        def rho(i):
            if not 0 <= i < n:
                return (0, 0)
            return (rho_lo[i], rho_hi[i])  # hi may be None

        def combine(pos, neg):
            # interval of sum(pos) - sum(neg); entries are (lo, hi) pairs
            lo = sum(p[0] for p in pos) - sum(q[1] for q in neg if q[1] is not None)
            if any(q[1] is None for q in neg):
                lo = 0
            hi = None
            if all(p[1] is not None for p in pos):
                hi = sum(p[1] for p in pos) - sum(q[0] for q in neg)
            return lo, hi

        out = []
        for i in range(n + 1):
            if slot == MIDDLE:
                lo, hi = combine([(a[i].lo, a[i].hi), (c[i].lo, c[i].hi)], [rho(i - 1), rho(i)])
            elif slot == LEFT:
                lo, hi = combine([(b[i].lo, b[i].hi), rho(i - 1), rho(i)], [(c[i].lo, c[i].hi)])
            else:
                lo, hi = combine([(b[i].lo, b[i].hi), rho(i - 1), rho(i)], [(a[i].lo, a[i].hi)])
            lo = max(0, lo)
            if hi is not None:
                hi = max(hi, lo)
            res = Iv(lo, hi)
            if cons[i] is not None:
                res = iv_meet(res, cons[i], f"{node!r} coarse")
            out.append(res)
        return tuple(out)[: node.cdim + 1]


_DEFAULT = Evaluator()


def default_evaluator() -> Evaluator:
    return _DEFAULT


def cohom(expr: Expr, twist) -> tuple[Iv, ...]:
    return _DEFAULT.cohom(expr, twist)


def serre_dual_pairs() -> list[tuple[str, str]]:
    return _DEFAULT.serre_dual_pairs()


# -- Castelnuovo-Mumford regularity and vanishing windows --------------------


def cm_regularity_certify(expr: Expr, r: int, h, ev: Evaluator | None = None) -> bool:
    """True iff h^i(expr((r-i)H)) = 0 exactly for all i = 1..dim.

    H must pass the catalog very-ampleness rule; r-regularity then implies
    h^i(expr(t)) = 0 for all t >= r - i by the regularity lemma.
    """
    ev = ev or _DEFAULT
    x = expr.variety
    x.very_ample_multiple(h)  # raises NotVeryAmple
    n = x.dim
    for i in range(1, n + 1):
        v = pad_vec(ev.cohom(expr, vscale(r - i, x.check_class(h))), n + 1)
        if not v[i].is_zero:
            return False
    return True


@dataclass
class WindowCert:
    """Certified vanishing bounds per cohomological degree along H-twists."""

    upper_from: dict[int, int]  # h^i(E(t)) = 0 for all t >= upper_from[i]
    lower_upto: dict[int, int]  # h^i(E(t)) = 0 for all t <= lower_upto[i]
    certificates: list[str] = field(default_factory=list)

    def residual(self, i: int) -> range:
        return range(self.lower_upto[i] + 1, self.upper_from[i])


def _one_sided_regularity(expr: Expr, h, cap: int, nu: int, ev: Evaluator) -> dict[int, int]:
    """Thresholds U_i with h^i(expr(tH)) = 0 for t >= U_i, via nu residue
    classes when only nu*H is very ample."""
    x = expr.variety
    n = x.dim
    hh = x.check_class(h)
    big = vscale(nu, hh)
    thresholds = {i: None for i in range(1, n + 1)}
    for t0 in range(nu):
        shifted = TwistE(expr, vscale(t0, hh)) if t0 else expr
        found = None
        for r in range(-cap, cap + 1):
            if cm_regularity_certify(shifted, r, big, ev):
                found = r
                break
        if found is None:
            raise WindowNotFound(cap, f"{expr!r} residue class {t0}")
        for i in range(1, n + 1):
            bound = t0 + nu * (found - i)
            if thresholds[i] is None or bound > thresholds[i]:
                thresholds[i] = bound
    return thresholds


def vanishing_window(expr: Expr, h, cap: int = 8, ev: Evaluator | None = None) -> WindowCert:
    """Two-sided certified window for the intermediate degrees 1..dim-1.

    The upper tail comes from regularity of expr itself, the lower tail from
    regularity of its Serre transform Dual(expr) tensor omega, transported
    through h^i(E(t)) = h^{n-i}((E^v tensor omega)(-t)).
    """
    ev = ev or _DEFAULT
    x = expr.variety
    hh = x.check_class(h)
    nu = x.very_ample_multiple(hh)
    n = x.dim
    upper = _one_sided_regularity(expr, hh, cap, nu, ev)
    dual_side = TwistE(DualE(expr), x.canonical_class)
    lower_raw = _one_sided_regularity(dual_side, hh, cap, nu, ev)
    return WindowCert(
        {i: upper[i] for i in range(1, n)},
        {i: -lower_raw[n - i] for i in range(1, n)},
        [
            f"upper tail: h^i vanishes for t >= r-i, thresholds {upper}",
            f"lower tail via Serre transform, thresholds {lower_raw}",
        ],
    )
