import pytest

from tlhom.repro import ReproSuite, field_contexts


def test_items_are_listed_once():
    names = [item for item, _, _ in ReproSuite().items()]
    assert len(names) == 12
    assert len(set(names)) == 12
    assert names[0] == "diagrams" and names[-1] == "jones-wenzl"


def test_quick_mode_lowers_the_top_case():
    assert ReproSuite(quick=True).top == 4
    assert ReproSuite().top == 5


def test_field_contexts():
    assert [ctx.ring.tag for ctx in field_contexts()] == ["Q", "Fp:2", "Fp:5"]


def test_cheap_items_pass():
    suite = ReproSuite(quick=True)
    assert suite.diagram_counts()[0]
    passed, detail = suite.rewriting()
    assert passed
    assert "(U4)(U2 U3)" in detail


class Broken(ReproSuite):
    def items(self):
        return [("boom", "always raises", self.explode), ("fine", "always passes", lambda: (True, "ok"))]

    def explode(self):
        raise ArithmeticError("nope")


def test_failing_item_becomes_a_failed_row():
    rows = Broken().run()
    assert [r.item for r in rows] == ["boom", "fine"]
    assert not rows[0].passed
    assert rows[0].detail == "ArithmeticError: nope"
    assert rows[1].passed
    assert rows[1].seconds >= 0


@pytest.mark.slow
def test_quick_suite_passes():
    rows = ReproSuite(quick=True).run()
    assert all(r.passed for r in rows), [r for r in rows if not r.passed]


def test_sequences_item_checks_b_against_a():
    passed, detail = ReproSuite(quick=True).sequences()
    assert passed, detail
    assert detail == "b = 2 over Z"


@pytest.mark.slow
def test_jones_wenzl_item_covers_tor_vanishing():
    passed, detail = ReproSuite(quick=True).jones_wenzl()
    assert passed, detail
    assert detail.endswith("Tor failures with JW=0")
