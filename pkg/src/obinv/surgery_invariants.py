"""Surgery presentation of an open book and the invariants read off from it.

The open book with page of genus ``g`` and ``h + 1`` boundary components is
presented as surgery on a link in S^3.  The first ``2g + h`` components are the
beta_j (``j = 1..g+h``) followed by the alpha_j (``j = 1..g``), each with
contact coefficient +1.  After them comes one component per twist of the
monodromy, stacked on successively higher pages.  With ``o = 2g + h`` and
``m = g + h``, the generalized linking matrix ``Q`` has a zero ``o x o``
block.  The twist rows carry integer linking numbers.  The twist columns are
weighted by the twist powers ``n_i``, so ``diag(1,..,1,n_1,..,n_l) @ Q`` is
symmetric.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact_linalg as la
from .leveled_linking import page_framed_tb, pairing
from .page_model import (
    HIGH,
    LOW,
    DehnTwist,
    HomologyClassVector,
    KnotOnPage,
    OpenBookSpec,
    PageSignature,
    homology_class,
    validate_word,
)
from .rotation_count import rotation_number


class NotNullhomologous(ValueError):
    pass


class Verdict(str, enum.Enum):
    NULLHOMOLOGOUS = "nullhomologous"
    RATIONALLY_NULLHOMOLOGOUS = "rationally_nullhomologous"
    NOT_RATIONALLY_NULLHOMOLOGOUS = "not_rationally_nullhomologous"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TwistData:
    klass: HomologyClassVector
    sign: int
    power: int
    rotation: int


@dataclass(frozen=True)
class SurgeryPresentation:
    page: PageSignature
    twists: tuple
    Q: tuple
    r_vector: tuple
    l_vector: Optional[tuple] = None
    knot_level: Optional[str] = None
    knot_class: Optional[HomologyClassVector] = None
    knot_rotation: Optional[int] = None
    # per surgery component: contact coefficient and topological (p, q)
    contact_coefficients: tuple = ()
    topological_coefficients: tuple = ()

    @property
    def offset(self) -> int:
        return self.page.rank

    @property
    def size(self) -> int:
        return self.page.rank + len(self.twists)

    @property
    def weights(self) -> tuple:
        """Column weights: 1 for the alpha/beta components, n_i for twists."""
        return (1,) * self.offset + tuple(t.power for t in self.twists)

    def symmetrized(self) -> list:
        """``diag(weights) @ Q``, the symmetric rational-surgery form."""
        w = self.weights
        return [[w[i] * v for v in row] for i, row in enumerate(self.Q)]


def _knot_l_vector(page: PageSignature, twists, K: HomologyClassVector, level: str) -> tuple:
    m, g = page.arcs, page.genus
    Ka, Kb = K.padded_a, K.b_coeffs
    if level == HIGH:
        head = [-Kb[j] for j in range(m)] + [-(Ka[j] + Kb[j]) for j in range(g)]
        tail = [-pairing(t.klass, K) for t in twists]
    else:
        head = [-(Ka[j] + Kb[j]) for j in range(m)] + [-Ka[j] for j in range(g)]
        tail = [-pairing(K, t.klass) for t in twists]
    return tuple(head + tail)


def build_presentation(ob: OpenBookSpec, knot: Optional[KnotOnPage] = None) -> SurgeryPresentation:
    page = ob.page
    g, m, o = page.genus, page.arcs, page.rank
    twists = tuple(
        TwistData(homology_class(page, tw.curve), tw.sign, tw.power, rotation_number(tw.curve))
        for tw in ob.monodromy
    )
    size = o + len(twists)
    Q = [[0] * size for _ in range(size)]
    for i, ti in enumerate(twists):
        Ta, Tb = ti.klass.padded_a, ti.klass.b_coeffs
        n = ti.power
        row = o + i
        Q[row][row] = -ti.sign - n * pairing(ti.klass, ti.klass)
        for j in range(m):
            Q[row][j] = -Tb[j]
            Q[j][row] = -n * Tb[j]
        for j in range(g):
            Q[row][m + j] = -(Ta[j] + Tb[j])
            Q[m + j][row] = -n * (Ta[j] + Tb[j])
        for j, tj in enumerate(twists):
            if i < j:
                Q[row][o + j] = -tj.power * pairing(ti.klass, tj.klass)
            elif i > j:
                # weight of the column component, as in the i < j case
                Q[row][o + j] = -tj.power * pairing(tj.klass, ti.klass)
    r_vector = (0,) * o + tuple(t.rotation for t in twists)
    contact = (Fraction(1),) * o + tuple(Fraction(-t.sign, t.power) for t in twists)
    topo = ((0, 1),) * o + tuple(
        (t.power * page_framed_tb(t.klass) - t.sign, t.power) for t in twists
    )
    l_vector = level = K = rK = None
    if knot is not None:
        word = validate_word(page, knot.word)
        K = homology_class(page, word)
        level = knot.level
        l_vector = _knot_l_vector(page, twists, K, level)
        rK = rotation_number(word)
    return SurgeryPresentation(
        page=page,
        twists=twists,
        Q=tuple(tuple(r) for r in Q),
        r_vector=r_vector,
        l_vector=l_vector,
        knot_level=level,
        knot_class=K,
        knot_rotation=rK,
        contact_coefficients=contact,
        topological_coefficients=topo,
    )


def expand_multiplicities(ob: OpenBookSpec) -> OpenBookSpec:
    out = []
    for tw in ob.monodromy:
        out.extend([DehnTwist(tw.curve, tw.sign, 1)] * tw.power)
    return OpenBookSpec(ob.page, tuple(out))


def _require_knot(p: SurgeryPresentation):
    if p.l_vector is None:
        raise ValueError("presentation was built without a knot")


def classify_and_solve(p: SurgeryPresentation):
    """Return ``(verdict, a, kernel)`` for ``l = Q a``.

    ``a`` is integral for a nullhomologous knot, rational for a rationally
    nullhomologous one, and ``None`` otherwise.  ``kernel`` is a basis of the
    kernel of ``Q`` in every case.
    """
    _require_knot(p)
    sol = la.solve_integral(p.Q, p.l_vector)
    if sol is not None:
        return Verdict.NULLHOMOLOGOUS, tuple(Fraction(v) for v in sol.x), sol.kernel
    sol = la.solve_rational(p.Q, p.l_vector)
    if sol is not None:
        return Verdict.RATIONALLY_NULLHOMOLOGOUS, sol.x, sol.kernel
    return Verdict.NOT_RATIONALLY_NULLHOMOLOGOUS, None, la.solve_integral(p.Q, [0] * p.size).kernel


def tb_invariant(p: SurgeryPresentation, a) -> Fraction:
    _require_knot(p)
    if a is None:
        raise NotNullhomologous("knot is not rationally nullhomologous")
    o = p.offset
    tb = Fraction(page_framed_tb(p.knot_class))
    tb -= sum(Fraction(a[j]) * p.l_vector[j] for j in range(o))
    tb -= sum(Fraction(a[o + j]) * t.power * p.l_vector[o + j] for j, t in enumerate(p.twists))
    return tb


def rot_invariant(p: SurgeryPresentation, a) -> Fraction:
    _require_knot(p)
    if a is None:
        raise NotNullhomologous("knot is not rationally nullhomologous")
    o = p.offset
    return Fraction(p.knot_rotation) - sum(
        Fraction(a[o + j]) * t.power * t.rotation for j, t in enumerate(p.twists)
    )


def rot_indeterminacy(p: SurgeryPresentation) -> int:
    """Step by which rot moves when the integral solution of ``l = Q a`` changes.

    rot is only defined modulo this number; 0 means it is well defined.
    """
    N_r = euler_vector(p)
    kernel = la.solve_integral(p.Q, [0] * p.size).kernel
    return math.gcd(*(sum(k[i] * N_r[i] for i in range(p.size)) for k in kernel)) if kernel else 0


def self_linking(tb, rot) -> tuple:
    return tb - rot, tb + rot


def euler_vector(p: SurgeryPresentation) -> tuple:
    """Meridian coefficients (0,..,0, n_1 r(T_1), .., n_l r(T_l))."""
    return tuple(w * r for w, r in zip(p.weights, p.r_vector))


@dataclass(frozen=True)
class HomologyGroup:
    """Z^N modulo the rows of Q, in Smith coordinates.

    ``factors`` lists the non-unit invariant factors, 0 standing for Z.
    """

    factors: tuple
    snf: la.SmithDecomposition = field(repr=False, compare=False)
    positions: tuple = field(repr=False, compare=False, default=())

    def coordinates(self, v) -> tuple:
        c = la.matvec(self.snf.U, v)
        diag = self.snf.diagonal
        return tuple(
            (c[i] % diag[i]) if diag[i] else c[i] for i in self.positions
        )

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self):
        return format_group(self.factors)


def format_group(factors) -> str:
    if not factors:
        return "0"
    free = sum(1 for d in factors if d == 0)
    parts = [f"Z/{d}" for d in factors if d]
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    return " + ".join(parts)


def first_homology(p: SurgeryPresentation) -> HomologyGroup:
    snf = la.smith_normal_form(la.transpose(p.Q))
    diag = snf.diagonal
    keep = tuple(i for i, d in enumerate(diag) if d != 1)
    return HomologyGroup(tuple(diag[i] for i in keep), snf, keep)


@dataclass(frozen=True)
class EulerClass:
    h1: HomologyGroup
    pd: tuple
    is_zero: bool

    @property
    def order(self) -> Optional[int]:
        """Order of the class in H1; ``None`` when it has infinite order."""
        n = 1
        for d, c in zip(self.h1.factors, self.pd):
            if d == 0:
                if c:
                    return None
            else:
                n = math.lcm(n, d // math.gcd(d, c))
        return n


def euler_class(p: SurgeryPresentation) -> EulerClass:
    h1 = first_homology(p)
    v = euler_vector(p)
    return EulerClass(h1, h1.coordinates(v), not any(h1.coordinates(v)))


def euler_is_torsion(p: SurgeryPresentation) -> bool:
    return la.solve_rational(p.Q, p.r_vector) is not None


def surgery_signature(p: SurgeryPresentation) -> int:
    return la.signature(p.symmetrized())


def d3_invariant(p: SurgeryPresentation) -> Optional[Fraction]:
    sol = la.solve_rational(p.Q, p.r_vector)
    if sol is None:
        return None
    g, h, o = p.page.genus, p.page.holes, p.offset
    b = sol.x
    twist_sum = sum(
        t.power * b[o + i] * t.rotation - (3 - t.power) * t.sign for i, t in enumerate(p.twists)
    )
    sigma = surgery_signature(p)
    return g + Fraction(h, 2) + Fraction(twist_sum) / 4 - Fraction(3 * sigma, 4) - Fraction(1, 2)


@dataclass(frozen=True)
class InvariantReport:
    verdict: Verdict
    level: str
    tb: Optional[Fraction]
    rot: Optional[Fraction]
    sl_plus: Optional[Fraction]
    sl_minus: Optional[Fraction]
    solution: Optional[tuple]
    solution_unique: bool
    rot_indeterminacy: int
    euler: EulerClass
    euler_torsion: bool
    signature: int
    d3: Optional[Fraction]
    rot_by_level: dict = field(default_factory=dict)

    @property
    def euler_pd(self) -> tuple:
        return self.euler.pd

    @property
    def h1(self) -> HomologyGroup:
        return self.euler.h1


def _knot_invariants(p: SurgeryPresentation, rational: bool):
    verdict, a, kernel = classify_and_solve(p)
    if verdict is Verdict.NOT_RATIONALLY_NULLHOMOLOGOUS or (
        verdict is Verdict.RATIONALLY_NULLHOMOLOGOUS and not rational
    ):
        return verdict, None, None, None, kernel
    return verdict, a, tb_invariant(p, a), rot_invariant(p, a), kernel


def full_report(
    ob: OpenBookSpec,
    knot: KnotOnPage,
    *,
    rational: bool = False,
    both_levels: bool = False,
    expanded: bool = False,
) -> InvariantReport:
    """All invariants of ``knot`` in the contact manifold of ``ob``.

    With ``rational`` False, tb and rot are only reported for integrally
    nullhomologous knots.  ``both_levels`` adds the rotation number of the
    knot placed at the other level to ``rot_by_level``.
    """
    if expanded:
        ob = expand_multiplicities(ob)
    p = build_presentation(ob, knot)
    verdict, a, tb, rot, kernel = _knot_invariants(p, rational)
    sl_plus = sl_minus = None
    if tb is not None:
        sl_plus, sl_minus = self_linking(tb, rot)
    rot_by_level = {knot.level: rot}
    if both_levels:
        other = LOW if knot.level == HIGH else HIGH
        q = build_presentation(ob, KnotOnPage(knot.word, other))
        rot_by_level[other] = _knot_invariants(q, rational)[3]
    euler = euler_class(p)
    torsion = euler_is_torsion(p)
    return InvariantReport(
        verdict=verdict,
        level=knot.level,
        tb=tb,
        rot=rot,
        sl_plus=sl_plus,
        sl_minus=sl_minus,
        solution=a if tb is not None else None,
        solution_unique=not kernel,
        rot_indeterminacy=rot_indeterminacy(p) if tb is not None else 0,
        euler=euler,
        euler_torsion=torsion,
        signature=surgery_signature(p),
        d3=d3_invariant(p) if torsion else None,
        rot_by_level=rot_by_level,
    )
