"""
Planar (n,n)-diagrams, their composition and the diagram <-> Jones word bijection.

Endpoints are stored as integers: L_i is ``i - 1`` and R_i is ``n + i - 1``, so
the label order L1 < ... < Ln < R1 < ... < Rn is integer order. Planarity is
checked in the cyclic order L1, ..., Ln, Rn, ..., R1.
"""
import json
import logging
import math
from dataclasses import dataclass
from functools import cache, cached_property
from typing import Iterator

from .errors import IndexOutOfRange, InvariantViolation, ParseError, SizeMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanarDiagram:
    """A noncrossing perfect matching on the 2n boundary points."""
    n: int
    partner: tuple[int, ...]

    def __post_init__(self):
        if len(self.partner) != 2 * self.n:
            raise InvariantViolation(f"diagram on {self.n} strands needs {2 * self.n} endpoints")
        for x, y in enumerate(self.partner):
            if y == x or self.partner[y] != x:
                raise InvariantViolation(f"endpoint {x} is not properly matched")
        if not _is_noncrossing(self.n, self.partner):
            raise InvariantViolation("diagram has crossing arcs")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "PlanarDiagram":
        partner = [-1] * (2 * n)
        for x, y in pairs:
            partner[x] = y
            partner[y] = x
        if -1 in partner:
            raise InvariantViolation("pairs do not cover every endpoint")
        return cls(n, tuple(partner))

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Canonical pairs, smaller endpoint first, sorted."""
        return tuple((x, y) for x, y in enumerate(self.partner) if x < y)

    def label(self, point: int) -> str:
        return f"L{point + 1}" if point < self.n else f"R{point - self.n + 1}"

    def labelled_pairs(self) -> list[list[str]]:
        return [[self.label(x), self.label(y)] for x, y in self.pairs]

    def __repr__(self) -> str:
        body = ", ".join(f"({a},{b})" for a, b in self.labelled_pairs())
        return f"PlanarDiagram(n={self.n}, {{{body}}})"


def _cyclic_position(n: int, point: int) -> int:
    return point if point < n else 3 * n - 1 - point


def _is_noncrossing(n: int, partner: tuple[int, ...]) -> bool:
    chords = sorted(
        tuple(sorted((_cyclic_position(n, x), _cyclic_position(n, y))))
        for x, y in enumerate(partner)
        if x < y
    )
    stack: list[int] = []
    for lo, hi in chords:
        while stack and stack[-1] < lo:
            stack.pop()
        if stack and stack[-1] < hi:
            return False
        stack.append(hi)
    return True


def identity_diagram(n: int) -> PlanarDiagram:
    return PlanarDiagram(n, tuple(list(range(n, 2 * n)) + list(range(n))))


def generator_diagram(n: int, i: int) -> PlanarDiagram:
    """The diagram of U_i: cups at i, i+1 on both sides, through strands elsewhere."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"U_{i} does not exist in TL_{n}")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
    return PlanarDiagram.from_pairs(n, pairs)


@cache
def compose(d: PlanarDiagram, e: PlanarDiagram) -> tuple[PlanarDiagram, int]:
    """
    Paste d on the left of e (the algebra product d*e).

    Args:
        d: Left factor
        e: Right factor

    Returns:
        The traced diagram and the number of closed loops removed
    """
    if d.n != e.n:
        raise SizeMismatch(f"cannot compose diagrams on {d.n} and {e.n} strands")
    n = d.n
    seen = [False] * n
    result = [-1] * (2 * n)

    def trace(in_left: bool, point: int) -> int:
        while True:
            if in_left:
                q = d.partner[point]
                if q < n:
                    return q
                seen[q - n] = True
                in_left, point = False, q - n
            else:
                q = e.partner[point]
                if q >= n:
                    return q
                seen[q] = True
                in_left, point = True, n + q

    for x in range(n):
        if result[x] < 0:
            y = trace(True, x)
            result[x], result[y] = y, x
    for x in range(n, 2 * n):
        if result[x] < 0:
            y = trace(False, x)
            result[x], result[y] = y, x

    loops = 0
    for k in range(n):
        if seen[k]:
            continue
        loops += 1
        point = k
        while not seen[point]:
            seen[point] = True
            # middle point k: through d's right side, then e's left side
            point = d.partner[n + point] - n
            seen[point] = True
            point = e.partner[point]
    return PlanarDiagram(n, tuple(result)), loops


def _noncrossing_matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        for inner in _noncrossing_matchings(points[1:k]):
            for outer in _noncrossing_matchings(points[k + 1:]):
                yield [(first, points[k])] + inner + outer


@cache
def enumerate_diagrams(n: int) -> tuple[PlanarDiagram, ...]:
    """All planar (n,n)-diagrams in canonical order."""
    cyclic = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    diagrams = [
        PlanarDiagram.from_pairs(n, matching)
        for matching in _noncrossing_matchings(cyclic)
    ]
    diagrams.sort(key=lambda d: d.pairs)
    return tuple(diagrams)


def flip(d: PlanarDiagram) -> PlanarDiagram:
    """Mirror left and right; reverses products and Jones words."""
    n = d.n
    swap = lambda x: x + n if x < n else x - n
    return PlanarDiagram.from_pairs(n, [(swap(x), swap(y)) for x, y in d.pairs])


def shift(d: PlanarDiagram) -> PlanarDiagram:
    """Include TL_{n} in TL_{n+1} by a new bottom strand, so U_i goes to U_{i+1}."""
    n = d.n
    lift = lambda x: x + 1 if x < n else x + 2
    pairs = [(0, n + 1)] + [(lift(x), lift(y)) for x, y in d.pairs]
    return PlanarDiagram.from_pairs(n + 1, pairs)


# Jones normal form


@dataclass(frozen=True)
class JonesWord:
    """x_{a,b} = (U_{a_k}..U_{b_k}) ... (U_{a_1}..U_{b_1}); a and b are stored as (a_k, ..., a_1)."""
    n: int
    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()

    def __post_init__(self):
        a, b = self.a, self.b
        if len(a) != len(b):
            raise InvariantViolation("Jones word needs segments of equal count")
        for seq in (a, b):
            if any(not 0 < x < self.n for x in seq):
                raise InvariantViolation(f"letter out of range in {self.render()}")
            if any(x <= y for x, y in zip(seq, seq[1:])):
                raise InvariantViolation(f"segments not strictly decreasing in {self.render()}")
        if any(x > y for x, y in zip(a, b)):
            raise InvariantViolation(f"segment start exceeds end in {self.render()}")

    @property
    def segments(self) -> list[tuple[int, ...]]:
        return [tuple(range(lo, hi + 1)) for lo, hi in zip(self.a, self.b)]

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(x for seg in self.segments for x in seg)

    @property
    def is_identity(self) -> bool:
        return not self.a

    @property
    def index(self) -> float:
        """Smallest letter, infinite for the identity."""
        return self.a[-1] if self.a else math.inf

    @property
    def terminus(self) -> float:
        """Last letter, infinite for the identity."""
        return self.b[-1] if self.b else math.inf

    def sort_key(self) -> tuple:
        return len(self.a), self.a + self.b

    def render(self) -> str:
        if not self.a:
            return "1"
        return "".join("(" + " ".join(f"U{x}" for x in seg) + ")" for seg in self.segments)

    def __str__(self) -> str:
        return self.render()


def _crossing_arcs(d: PlanarDiagram, row: int) -> list[tuple[int, int]]:
    """Arcs crossing the horizontal line between heights row and row+1, left to right."""
    n = d.n
    left_cups, through, right_cups = [], [], []
    for x, y in d.pairs:
        if y < n:
            p, q = x + 1, y + 1
            if p <= row < q:
                left_cups.append((p, (x, y)))
        elif x >= n:
            p, q = x - n + 1, y - n + 1
            if p <= row < q:
                right_cups.append((p, (x, y)))
        else:
            p, q = x + 1, y - n + 1
            if min(p, q) <= row < max(p, q):
                through.append((min(p, q), p < q, (x, y)))
    left_cups.sort(key=lambda t: -t[0])
    right_cups.sort(key=lambda t: t[0])
    if through and through[0][1]:
        through.sort(key=lambda t: -t[0])
    else:
        through.sort(key=lambda t: t[0])
    return [arc for _, arc in left_cups] + [t[2] for t in through] + [arc for _, arc in right_cups]


@cache
def diagram_to_jones_word(d: PlanarDiagram) -> JonesWord:
    """
    Read the Jones normal form off a diagram.

    Each row between adjacent heights pairs its crossing arcs into segments;
    a segment continues into the next row when its right arc is the next
    segment's left arc, and each maximal chain from row a to row b gives
    the factor U_a ... U_b.
    """
    n = d.n
    rows: dict[int, list[tuple]] = {}
    for row in range(1, n):
        arcs = _crossing_arcs(d, row)
        rows[row] = [(arcs[k], arcs[k + 1]) for k in range(0, len(arcs), 2)]

    starts_by_row = {row: {seg[0]: seg for seg in segs} for row, segs in rows.items()}
    continued = set()
    chains = []
    for row in range(1, n):
        for seg in rows[row]:
            if (row, seg) in continued:
                continue
            end, current = row, seg
            while end + 1 < n and current[1] in starts_by_row[end + 1]:
                current = starts_by_row[end + 1][current[1]]
                end += 1
                continued.add((end, current))
            chains.append((row, end))
    chains.sort(reverse=True)
    return JonesWord(n, tuple(lo for lo, _ in chains), tuple(hi for _, hi in chains))


@cache
def jones_word_to_diagram(w: JonesWord) -> PlanarDiagram:
    """Compose the generator diagrams of w; a normal-form word closes no loops."""
    d = identity_diagram(w.n)
    for letter in w.letters:
        d, loops = compose(d, generator_diagram(w.n, letter))
        if loops:
            raise InvariantViolation(f"{w.render()} closes a loop, not a Jones word")
    return d


def _decreasing(upper: int, length: int) -> Iterator[tuple[int, ...]]:
    """Strictly decreasing tuples of the given length with entries in 1..upper-1."""
    if length == 0:
        yield ()
        return
    for first in range(upper - 1, length - 1, -1):
        for rest in _decreasing(first, length - 1):
            yield (first,) + rest


@cache
def enumerate_jones_words(n: int) -> tuple[JonesWord, ...]:
    """The Jones basis of TL_n, sorted by segment count then flattened (a, b)."""
    words = []
    for k in range(max(n, 1)):
        for a in _decreasing(n, k):
            for b in _decreasing(n, k):
                if all(x <= y for x, y in zip(a, b)):
                    words.append(JonesWord(n, a, b))
    words.sort(key=JonesWord.sort_key)
    return tuple(words)


def diagram_to_json(d: PlanarDiagram) -> str:
    return json.dumps({"n": d.n, "pairs": d.labelled_pairs()})


def _parse_label(n: int, label: str) -> int:
    side, number = label[:1], label[1:]
    if side not in ("L", "R") or not number.isdigit() or not 1 <= int(number) <= n:
        raise ParseError(f"bad endpoint label {label!r}")
    return int(number) - 1 + (n if side == "R" else 0)


def diagram_from_json(text: str) -> PlanarDiagram:
    try:
        data = json.loads(text)
        n = int(data["n"])
        pairs = [(_parse_label(n, x), _parse_label(n, y)) for x, y in data["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad diagram JSON: {exc}") from exc
    return PlanarDiagram.from_pairs(n, pairs)


# Integer sequences


@cache
def catalan(n: int) -> int:
    if n <= 1:
        return 1
    return sum(catalan(k) * catalan(n - 1 - k) for k in range(n))


def _dyck_paths(n: int) -> Iterator[tuple[int, ...]]:
    """Dyck paths of length 2n as +1/-1 step tuples."""
    def extend(path, ups, height):
        if len(path) == 2 * n:
            yield tuple(path)
            return
        if ups < n:
            path.append(1)
            yield from extend(path, ups + 1, height + 1)
            path.pop()
        if height > 0:
            path.append(-1)
            yield from extend(path, ups, height - 1)
            path.pop()
    yield from extend([], 0, 0)


def _first_peak_height(path: tuple[int, ...]) -> int:
    height = 0
    for step in path:
        if step < 0:
            break
        height += 1
    return height


@cache
def fine_number(n: int) -> int:
    """Dyck paths of length 2n whose first peak has even height (the empty path counts)."""
    if n == 0:
        return 1
    return sum(1 for path in _dyck_paths(n) if _first_peak_height(path) % 2 == 0)


@cache
def enumerate_jacobsthal_sequences(n: int) -> tuple[tuple[int, ...], ...]:
    """Sequences n > a_1 > ... > a_r > 0 with n - a_1 odd; the empty one iff n is odd."""
    found = [()] if n % 2 == 1 else []
    for r in range(1, n):
        found.extend(seq for seq in _decreasing(n, r) if (n - seq[0]) % 2 == 1)
    found.sort(key=lambda seq: (len(seq), tuple(-x for x in seq)))
    return tuple(found)


def jacobsthal_number(n: int) -> int:
    return len(enumerate_jacobsthal_sequences(n))
