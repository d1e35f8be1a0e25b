"""Strategy certificates: every bound the decomposition promises, checked
against the exact solver value of the instance.

Each bound is an inequality ``delta <= rhs`` that follows from a concrete
Alice strategy (or a disjunction of strategies) over the decomposition
quantities. Bounds are evaluated in both orientations (sides as
decomposed, and with left/right swapped) so the arbitrary orientation of
the crossing edge cannot hide a violation. The ladder:

* ``anchor_left`` / ``anchor_right``: trade bounds from avoiding at one
  crossing anchor; always applicable.
* ``quarter``: delta <= 1/4, from combining the two anchor bounds.
* ``dash_to_d``: applicable when the far anchor reaches the junction d of
  the other side in time; gives delta <= 1 - y_far - z_far - 2 z_near.
* ``split_point``: applicable when the split vertex e exists and the far
  anchor reaches d no later than e; gives the alpha-discounted trade.
* ``split_start``: unconditional disjunction delta <= 1/5 or
  delta <= (y_far + z_far) - (y_near + z_near) + alpha.
* ``fifth``: delta <= 1/5.
* ``case_*``: diagnostics that classify Bob's optimal reply to a start at
  e and check the matching branch bound of the split-start analysis.

Combination checks re-verify, on this instance's exact quantities, the
weighted sums that turn individual bounds into the constants (1/4 and
1/5); they are arithmetic identities and must always hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decomposition import Decomposition, SideDecomposition, decompose
from .graphs import Instance
from .solver import SolveRecord, ValueReport, game_value

__all__ = [
    "FIFTH",
    "QUARTER",
    "Bound",
    "IdentityCheck",
    "CertificateReport",
    "certify",
    "check_combinations",
    "format_certificate",
    "HARD_BOUNDS",
    "DIAGNOSTIC_BOUNDS",
]

FIFTH = Fraction(1, 5)
QUARTER = Fraction(1, 4)

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not_applicable"

HARD_BOUNDS = (
    "anchor_left",
    "anchor_right",
    "quarter",
    "dash_to_d",
    "split_point",
    "split_start",
    "fifth",
)
DIAGNOSTIC_BOUNDS = (
    "case_inside",
    "case_crossing",
    "case_outrun",
    "case_left_tail",
    "case_right_tail",
)


@dataclass(frozen=True)
class Bound:
    name: str
    orientation: str  # "as_stated" | "dual"
    applicable: bool
    reason: str
    rhs: Optional[Fraction]
    verdict: str
    diagnostic: bool = False


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    orientation: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CertificateReport:
    digest: str
    delta: Fraction
    decomposition: Decomposition
    bounds: tuple[Bound, ...]
    combinations: tuple[IdentityCheck, ...]
    degenerate_split: tuple[str, ...]  # orientations where e == d

    def bound(self, name: str, orientation: str = "as_stated") -> Bound:
        for b in self.bounds:
            if b.name == name and b.orientation == orientation:
                return b
        raise KeyError((name, orientation))

    @property
    def violations(self) -> tuple[Bound, ...]:
        return tuple(b for b in self.bounds if b.verdict == VIOLATED)

    @property
    def hard_violations(self) -> tuple[Bound, ...]:
        return tuple(
            b for b in self.bounds if b.verdict == VIOLATED and not b.diagnostic
        )

    @property
    def failed_combinations(self) -> tuple[IdentityCheck, ...]:
        return tuple(c for c in self.combinations if not c.ok)


def _verdict(applicable: bool, delta: Fraction, rhs: Optional[Fraction]) -> str:
    if not applicable:
        return NOT_APPLICABLE
    return HOLDS if delta <= rhs else VIOLATED


def _oriented_bounds(
    inst: Instance,
    delta: Fraction,
    dec: Decomposition,
    L: SideDecomposition,
    R: SideDecomposition,
    a_l: int,
    a_r: int,
    records: dict[int, SolveRecord],
    left_vertices: frozenset[int],
    orientation: str,
) -> tuple[list[Bound], Optional[str], bool]:
    g = inst.graph
    replies = dec.replies
    bounds: list[Bound] = []

    def add(name, applicable, reason, rhs, diagnostic=False):
        bounds.append(
            Bound(
                name=name,
                orientation=orientation,
                applicable=applicable,
                reason=reason,
                rhs=rhs if applicable else rhs,
                verdict=_verdict(applicable, delta, rhs),
                diagnostic=diagnostic,
            )
        )

    rhs_anchor_l = (R.y + R.z) - (L.x + L.y)
    rhs_anchor_r = (L.y + L.z) - (R.x + R.y)
    add("anchor_left", True, "always", rhs_anchor_l)
    add("anchor_right", True, "always", rhs_anchor_r)
    add("quarter", True, "always", QUARTER)

    dash_ok = g.dist(a_r, L.d) <= g.dist(replies[a_r], L.d)
    add(
        "dash_to_d",
        dash_ok,
        "dist(a_far, d) <= dist(B(a_far), d)" if dash_ok else "far anchor outrun",
        1 - R.y - R.z - 2 * L.z,
    )

    # The alpha-discounted trade is only derived when the dash strategy is
    # unavailable: Bob's reply must beat the far anchor to d. Without that
    # hypothesis the bound genuinely fails (found by fuzzing).
    split_ok = (
        L.e is not None
        and g.dist(a_r, L.d) <= g.dist(L.e, L.d)
        and not dash_ok
    )
    if split_ok:
        split_reason = "split vertex defined, reachable, and dash unavailable"
    elif L.e is None:
        split_reason = "no split vertex"
    elif dash_ok:
        split_reason = "dash_to_d already applies"
    else:
        split_reason = "split vertex closer than far anchor"
    add(
        "split_point",
        split_ok,
        split_reason,
        (L.y + L.z + L.r - L.alpha) - (R.x + R.y) if L.e is not None else None,
    )

    disjunct = (R.y + R.z) - (L.y + L.z) + L.alpha
    add("split_start", True, "disjunction", max(FIFTH, disjunct))
    add("fifth", True, "always", FIFTH)

    # Case diagnostics: only meaningful when the split vertex exists, the
    # split_point condition failed, and e != d (degenerate otherwise).
    case_label: Optional[str] = None
    degenerate = False
    case_rhs = {
        "case_inside": L.y + L.z + L.r - 2 * L.alpha,
        "case_crossing": (R.y + R.z) - (L.z + L.y) + L.alpha,
        "case_outrun": L.y + L.r - R.y,
        "case_left_tail": -L.y + L.r + R.x + R.y,
        "case_right_tail": (R.y + R.z) - (L.y + L.z) + L.alpha,
    }
    if L.e is None:
        reason = "no split vertex"
    elif split_ok:
        reason = "split_point already applies"
    elif L.e == L.d:
        reason = "degenerate: e == d"
        degenerate = True
    else:
        rec = records[L.e]
        b_e = rec.bob_reply
        if g.dist(b_e, L.d) < g.dist(L.e, L.d):
            if a_r not in rec.bob_claimed:
                case_label = "case_inside"
            else:
                case_label = "case_crossing"
        else:
            ar_side_of_d = g.reachable_from(a_r, frozenset((L.d,)))
            if b_e not in ar_side_of_d:
                case_label = "case_outrun"
            elif rec.bob_claimed & left_vertices:
                case_label = "case_left_tail"
            else:
                case_label = "case_right_tail"
        reason = f"classified as {case_label}"
    for name in DIAGNOSTIC_BOUNDS:
        fired = name == case_label
        add(
            name,
            fired,
            reason if fired else f"not matched ({reason})",
            case_rhs[name],
            diagnostic=True,
        )
    return bounds, case_label, degenerate


def _oriented_combinations(
    L: SideDecomposition, R: SideDecomposition, orientation: str
) -> list[IdentityCheck]:
    checks: list[IdentityCheck] = []

    def add(name, ok, detail=""):
        checks.append(IdentityCheck(name=name, orientation=orientation, ok=ok, detail=detail))

    total = L.x + L.y + L.z + L.r + R.x + R.y + R.z + R.r
    add("weight_total", total == 1, f"sum={total}")
    add(
        "xzy_order",
        L.x <= L.z <= L.y and R.x <= R.z <= R.y,
        f"L=({L.x},{L.z},{L.y}) R=({R.x},{R.z},{R.y})",
    )
    add(
        "alpha_identity",
        3 * L.alpha == L.r + 2 * L.y + L.z + L.x + R.x - R.z,
        f"3a={3 * L.alpha}",
    )

    rhs3 = (R.y + R.z) - (L.x + L.y)
    rhs4 = (L.y + L.z) - (R.x + R.y)
    s43 = 2 * rhs3 + 2 * rhs4
    add(
        "quarter_chain",
        s43 == 2 * (R.z + L.z - R.x - L.x)
        and s43 <= 2 * (R.z + L.z) <= R.y + R.z + L.y + L.z <= 1,
        f"2*rhs3+2*rhs4={s43}",
    )

    rhs_dash = 1 - R.y - R.z - 2 * L.z
    s_dash = rhs_dash + s43
    add(
        "dash_chain",
        s_dash <= 1 - (R.y - R.z) <= 1,
        f"sum={s_dash}",
    )

    rhs5 = (L.y + L.z + L.r - L.alpha) - (R.x + R.y)
    s_split = 9 * rhs5 + 8 * rhs4 + 13 * rhs3
    add("split_chain", s_split <= 6, f"sum={s_split}")

    rhs6 = L.y + L.z + L.r - 2 * L.alpha
    add(
        "case_inside_chain",
        9 * rhs6 + 4 * rhs3 + 2 * rhs4 <= 3,
        f"sum={9 * rhs6 + 4 * rhs3 + 2 * rhs4}",
    )
    rhs7 = L.y + L.r - R.y
    add(
        "case_outrun_chain",
        3 * rhs7 + 7 * rhs3 + 5 * rhs4 <= 3,
        f"sum={3 * rhs7 + 7 * rhs3 + 5 * rhs4}",
    )
    rhs8 = -L.y + L.r + R.x + R.y
    add(
        "case_left_tail_chain",
        3 * rhs8 + 5 * rhs3 + 7 * rhs4 <= 3,
        f"sum={3 * rhs8 + 5 * rhs3 + 7 * rhs4}",
    )

    disj_l = (R.y + R.z) - (L.y + L.z) + L.alpha
    disj_r = (L.y + L.z) - (R.y + R.z) + R.alpha
    lhs = 3 * disj_l + 3 * disj_r + 2 * rhs3 + 2 * rhs4
    expanded = (
        L.r + 2 * L.y + 2 * L.z + 2 * L.x + R.r + 2 * R.y + 2 * R.z + 2 * R.x
    )
    add(
        "fifth_chain",
        3 * disj_l + 3 * disj_r == 3 * L.alpha + 3 * R.alpha
        and 3 * L.alpha + 3 * R.alpha + 2 * L.z + 2 * R.z == expanded
        and lhs <= expanded <= 2,
        f"sum={lhs} expanded={expanded}",
    )
    return checks


def certify(
    inst: Instance,
    report: Optional[ValueReport] = None,
    dec: Optional[Decomposition] = None,
) -> CertificateReport:
    """Evaluate the full certificate ladder on a tree instance (n >= 2)."""
    if report is None:
        report = game_value(inst)
    if dec is None:
        dec = decompose(inst, report=report)
    delta = report.delta
    records = {r.start: r for r in report.per_start}
    a_l, a_r = dec.crossing

    bounds: list[Bound] = []
    degenerate: list[str] = []
    for orientation, (L, R, near, far, left_set) in {
        "as_stated": (dec.left, dec.right, a_l, a_r, dec.left_vertices),
        "dual": (dec.right, dec.left, a_r, a_l, dec.right_vertices),
    }.items():
        obounds, _, degen = _oriented_bounds(
            inst, delta, dec, L, R, near, far, records, left_set, orientation
        )
        bounds.extend(obounds)
        if degen:
            degenerate.append(orientation)

    combos = list(_oriented_combinations(dec.left, dec.right, "as_stated"))
    combos += _oriented_combinations(dec.right, dec.left, "dual")

    return CertificateReport(
        digest=inst.digest(),
        delta=delta,
        decomposition=dec,
        bounds=tuple(bounds),
        combinations=tuple(combos),
        degenerate_split=tuple(degenerate),
    )


def check_combinations(report: CertificateReport) -> tuple[IdentityCheck, ...]:
    """Re-derive the weighted-sum identities from the stored decomposition."""
    dec = report.decomposition
    checks = list(_oriented_combinations(dec.left, dec.right, "as_stated"))
    checks += _oriented_combinations(dec.right, dec.left, "dual")
    return tuple(checks)


def format_certificate(report: CertificateReport) -> str:
    """Stable flat text block: one line per bound, then the identities."""
    lines = [f"instance {report.digest}", f"delta {report.delta}"]
    for b in report.bounds:
        rhs = "-" if b.rhs is None else str(b.rhs)
        lines.append(
            f"bound {b.name} {b.orientation} "
            f"{'yes' if b.applicable else 'no'} {rhs} {b.verdict}"
        )
    for c in report.combinations:
        lines.append(
            f"check {c.name} {c.orientation} {'ok' if c.ok else 'FAILED'}"
        )
    if report.degenerate_split:
        lines.append("degenerate-split " + " ".join(report.degenerate_split))
    return "\n".join(lines)
