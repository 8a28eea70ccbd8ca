"""
Acceptance suite: reproduces each claim as a scoreboard row.
"""
import logging
import time
from typing import Callable

from .coeff import DirectA, FromUnit, ParamContext, RingSpec, make_context
from .complex import (
    build_C,
    build_D,
    build_W,
    filtration_basis,
    filtration_quotient,
    is_chain_iso,
    phi0,
    psik,
    trivial_coinvariants,
    trivial_invariants,
)
from .diagram import (
    catalan,
    diagram_to_jones_word,
    enumerate_diagrams,
    fine_number,
    jones_word_to_diagram,
)
from .homology import (
    HomologyGroup,
    ext_trivial,
    homology_of,
    induced_as_module,
    tl2_tor_ext,
    tor_trivial,
    trivial_module,
    verify_shifted_iso,
    verify_tor_sequence,
)
from .jw import DeltaPoly, compute_jw, jw_exists, qbc_delta_zero, quantum_binomial
from .records import ScoreboardRow
from .tlalg import (
    generator,
    in_augmentation_ideal,
    jacobsthal_element,
    jones_normal_form,
    multiply,
    parse_word,
)

logger = logging.getLogger(__name__)

Check = Callable[[], tuple[bool, str]]


def _q(v: int = 1) -> ParamContext:
    return make_context(RingSpec.rationals(), FromUnit(v))


def _fp(p: int, v: int) -> ParamContext:
    return make_context(RingSpec.prime_field(p), FromUnit(v))


def _z(v: int = 1) -> ParamContext:
    return make_context(RingSpec.integers(), FromUnit(v))


def _za(a: int) -> ParamContext:
    return make_context(RingSpec.integers(), DirectA(a))


def field_contexts() -> list[ParamContext]:
    """(Q, v=1), (F_2, v=1), (F_5, v=2)."""
    return [_q(1), _fp(2, 1), _fp(5, 2)]


def _zeros(groups: list[HomologyGroup], degrees) -> bool:
    return all(groups[d].is_zero() for d in degrees)


class ReproSuite:
    """
    Runs the acceptance items in order.

    With ``quick`` the largest cases (n = 5 resolutions and n = 5 filtrations)
    are skipped or shrunk.
    """

    def __init__(self, quick: bool = False, budget: int | None = None):
        self.quick = quick
        self.budget = budget
        self.top = 4 if quick else 5

    def items(self) -> list[tuple[str, str, Check]]:
        return [
            ("diagrams", "Catalan counts and Fine identity", self.diagram_counts),
            ("rewriting", "Jones normal form and word round trips", self.rewriting),
            ("wn-complex", "W(n) satisfies d^2 = 0", self.wn_complex),
            ("wn-homology", "W(n) is acyclic below the top; top rank is the Fine number", self.wn_homology),
            ("inductive", "C(m), D(m) and their (co)invariants are acyclic", self.inductive),
            ("tl2-table", "Tor/Ext of TL_2 from both resolutions", self.tl2_table),
            ("vanishing", "Tor vanishes in the low range", self.vanishing),
            ("sharpness", "U_p J_n lies in I; Tor_{n-1} is nonzero for even n when a is not a unit", self.sharpness),
            ("induced", "Tor(1, induced module) vanishes in positive degrees", self.induced),
            ("sequences", "four-term sequence and shifted isomorphism", self.sequences),
            ("filtration", "phi0 and psik are chain isomorphisms", self.filtration),
            ("jones-wenzl", "quantum binomials and projector existence", self.jones_wenzl),
        ]

    def run(self) -> list[ScoreboardRow]:
        rows = []
        items = self.items()
        for k, (item, claim, check) in enumerate(items, start=1):
            logger.info("[Stage %d/%d] %s", k, len(items), item)
            started = time.perf_counter()
            try:
                passed, detail = check()
            except Exception as exc:  # reported as a failed row
                logger.exception("%s raised", item)
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            rows.append(ScoreboardRow(
                item=item, claim=claim, passed=passed,
                seconds=round(time.perf_counter() - started, 3), detail=detail,
            ))
        return rows

    # Items

    def diagram_counts(self) -> tuple[bool, str]:
        counts = all(len(enumerate_diagrams(n)) == catalan(n) for n in range(9))
        fine = all(catalan(n) == 2 * fine_number(n) + fine_number(n - 1) for n in range(1, 11))
        return counts and fine, f"counts={counts}, fine identity={fine}"

    def rewriting(self) -> tuple[bool, str]:
        k, word = jones_normal_form(parse_word(5, "U2 U1 U4 U2 U3"))
        example = k == 0 and word.render() == "(U4)(U2 U3)"
        trips = all(
            jones_word_to_diagram(diagram_to_jones_word(d)) == d
            for n in range(7) for d in enumerate_diagrams(n)
        )
        return example and trips, f"normal form {word.render()} with a^{k}; round trips={trips}"

    def wn_complex(self) -> tuple[bool, str]:
        top = 5 if self.quick else 7
        for ctx in field_contexts():
            for n in range(top + 1):
                build_W(ctx, n)
        return True, f"n <= {top} in 3 contexts"

    def wn_homology(self) -> tuple[bool, str]:
        top = 5 if self.quick else 6
        bad = []
        for ctx in field_contexts():
            for n in range(1, top + 1):
                H = homology_of(build_W(ctx, n))
                if not all(H[d].is_zero() for d in range(-1, n - 1)) or H[n - 1].rank != fine_number(n):
                    bad.append(f"n={n} {ctx.ring.tag}")
        for n in range(1, 5):
            H = homology_of(build_W(_z(1), n))
            if H[n - 1].torsion or not all(H[d].is_zero() for d in range(-1, n - 1)):
                bad.append(f"n={n} Z")
        return not bad, "failures: " + ", ".join(bad) if bad else f"n <= {top}"

    def inductive(self) -> tuple[bool, str]:
        L = 8
        bad = []
        for ctx in (_q(1), _fp(5, 2), _za(2)):
            for n in range(2, self.top + 1):
                for m in range(2, n + 1):
                    complexes = []
                    if ctx.a_is_unit:
                        complexes.append(("C", build_C(ctx, n, m, L)))
                    if m < n:
                        complexes.append(("D", build_D(ctx, n, m, L)))
                    for kind, X in complexes:
                        for Y, degrees in (
                            (X, range(-1, L - 1)),
                            (trivial_coinvariants(X), range(-1, L - 1)),
                            (trivial_invariants(X), range(-(L - 2), 2)),
                        ):
                            H = homology_of(Y)
                            if not all(H[d].is_zero() for d in degrees):
                                bad.append(f"{kind}({m}) n={n} {ctx.ring.tag}")
        return not bad, "failures: " + ", ".join(sorted(set(bad))) if bad else f"n <= {self.top}, L = {L}"

    def tl2_table(self) -> tuple[bool, str]:
        L = 6
        cases = {
            "Z a=2": (_za(2), [HomologyGroup(1), HomologyGroup(0, (2,)), HomologyGroup(), HomologyGroup(0, (2,))],
                      [HomologyGroup(1), HomologyGroup(), HomologyGroup(0, (2,)), HomologyGroup()]),
            "F_2 a=0": (_fp(2, 1), [HomologyGroup(1)] * 4, [HomologyGroup(1)] * 4),
            "Q a=2": (_q(1), [HomologyGroup(1)] + [HomologyGroup()] * 3, [HomologyGroup(1)] + [HomologyGroup()] * 3),
        }
        bad = []
        for label, (ctx, tor_expected, ext_expected) in cases.items():
            tor_explicit, ext_explicit = tl2_tor_ext(ctx, L)
            tor_generic = tor_trivial(ctx, trivial_module(ctx, 2), L, self.budget)
            ext_generic = ext_trivial(ctx, trivial_module(ctx, 2), L, self.budget)
            if tor_explicit != tor_generic or ext_explicit != ext_generic:
                bad.append(f"{label}: resolutions disagree")
            if tor_explicit[:4] != tor_expected or ext_explicit[:4] != ext_expected:
                bad.append(f"{label}: unexpected groups")
        return not bad, "; ".join(bad) or f"degrees < {L}"

    def vanishing(self) -> tuple[bool, str]:
        cases = [(3, _fp(2, 1), range(1, 3)), (4, _fp(5, 2), range(1, 3))]
        if not self.quick:
            cases.append((5, _fp(5, 2), range(1, 5)))
        bad = []
        for n, ctx, degrees in cases:
            tor = tor_trivial(ctx, trivial_module(ctx, n), max(degrees) + 1, self.budget)
            if not _zeros(tor, degrees):
                bad.append(f"n={n} {ctx.ring.tag}")
        return not bad, "failures: " + ", ".join(bad) if bad else f"{len(cases)} cases"

    def sharpness(self) -> tuple[bool, str]:
        cases = [(2, _za(2)), (2, _fp(2, 1))]
        if not self.quick:
            cases.append((4, _fp(5, 2)))
        details = []
        passed = True
        for n, ctx in cases:
            group = tor_trivial(ctx, trivial_module(ctx, n), n, self.budget)[n - 1]
            passed = passed and not group.is_zero()
            details.append(f"n={n} {ctx.ring.tag}: {group.render(ctx.ring)}")
        ctx = _z(1)
        ideal = all(
            in_augmentation_ideal(ctx, multiply(ctx, generator(ctx, n, p), jacobsthal_element(ctx, n)))
            for n in range(2, self.top + 1) for p in range(1, n)
        )
        details.append(f"U_p J_n in I for n <= {self.top}: {ideal}")
        return passed and ideal, "; ".join(details)

    def induced(self) -> tuple[bool, str]:
        top = 3 if self.quick else 4
        bad = []
        for ctx in (_fp(2, 1), _z(1)):
            for n in range(1, top + 1):
                for m in range(0, n):
                    tor = tor_trivial(ctx, induced_as_module(ctx, n, m), 4, self.budget)
                    if not _zeros(tor, range(1, 4)):
                        bad.append(f"({n},{m}) {ctx.ring.tag}")
        ctx = _q(1)
        for n in range(1, top + 1):
            tor = tor_trivial(ctx, induced_as_module(ctx, n, n), 4, self.budget)
            if not _zeros(tor, range(1, 4)):
                bad.append(f"({n},{n}) Q")
        return not bad, "failures: " + ", ".join(bad) if bad else f"n <= {top}"

    def sequences(self) -> tuple[bool, str]:
        reports = [
            verify_tor_sequence(_z(1), 2, budget=self.budget),
            verify_tor_sequence(_fp(2, 1), 2, budget=self.budget),
            verify_shifted_iso(_z(1), 2, 6, budget=self.budget),
            verify_shifted_iso(_fp(2, 1), 2, 6, budget=self.budget),
        ]
        failed = [f"{r.name} ({r.context})" for r in reports if not r.passed]
        ctx = _z(1)
        b = reports[0].evidence.get("b")
        if b is None or not ctx.ring.divides(ctx.a, ctx.ring(b)):
            failed.append(f"b = {b} is not a multiple of a over Z")
        return not failed, "failures: " + ", ".join(failed) if failed else f"b = {b} over Z"

    def filtration(self) -> tuple[bool, str]:
        bad = []
        for ctx in (_q(1), _fp(5, 2)):
            for n in range(1, self.top + 1):
                if not is_chain_iso(phi0(ctx, n)):
                    bad.append(f"phi0 n={n}")
                for k in range(1, n):
                    if not is_chain_iso(psik(ctx, n, k)):
                        bad.append(f"psi^{k} n={n}")
                W = build_W(ctx, n)
                sizes = {i: len(p) for i, p in filtration_basis(ctx, n, 0).items()}
                for k in range(1, n + 1):
                    Q = filtration_quotient(ctx, n, k, W)
                    for i in W.degrees:
                        sizes[i] += Q.dim(i)
                if any(sizes[i] != W.dim(i) for i in W.degrees):
                    bad.append(f"telescoping n={n}")
        return not bad, "failures: " + ", ".join(sorted(set(bad))) if bad else f"n <= {self.top}"

    def jones_wenzl(self) -> tuple[bool, str]:
        closed = all(
            quantum_binomial(n, r).at_zero() == qbc_delta_zero(n, r)
            for n in range(13) for r in range(n + 1)
        )
        named = (
            quantum_binomial(3, 1) == DeltaPoly((-1, 0, 1))
            and quantum_binomial(4, 1) == DeltaPoly((0, -2, 0, 1))
            and quantum_binomial(4, 2) == DeltaPoly((2, 0, -3, 0, 1))
        )
        top = 5 if self.quick else 6
        mismatches = []
        for p in (2, 3, 5, 7):
            for v in range(1, p):
                ctx = _fp(p, v)
                for n in range(1, top + 1):
                    if (compute_jw(ctx, n) is not None) != jw_exists(ctx, n):
                        mismatches.append(f"p={p} v={v} n={n}")
        projective = []
        for ctx in field_contexts() + [_fp(3, 1)]:
            for n in range(2, 5):
                if compute_jw(ctx, n) is None:
                    continue
                tor = tor_trivial(ctx, trivial_module(ctx, n), 4, self.budget)
                if not _zeros(tor, range(1, 4)):
                    projective.append(f"n={n} {ctx.ring.tag}")
        passed = closed and named and not mismatches and not projective
        return passed, (
            f"closed forms={closed}, named={named}, mismatches={len(mismatches)}, "
            f"Tor failures with JW={len(projective)}"
        )
