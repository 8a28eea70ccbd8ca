"""
Chain complexes with labelled bases and sparse differentials.

Constructors cover the complex of planar injective words W(n), the inductive
resolutions C(m) and D(m), the explicit resolution for TL_2, cones, suspensions
and truncations, the filtration F^k of W(n) and the chain maps comparing its
layers with shifted copies of W(n-1).
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .coeff import ParamContext, RingSpec, RingValue, parse_ring_tag
from .diagram import shift
from .errors import BadRange, InvariantViolation, NotClosed, NotInducedComplex
from .induced import induced_basis, lift, reduce, right_mult_map
from .linalg import RingMatrix, load_matrix, save_matrix
from .records import ComplexManifest
from .tlalg import (
    TLElement,
    constant_term,
    element_sum,
    generator,
    multiply,
    s_ascending,
    s_product,
)

logger = logging.getLogger(__name__)


@dataclass
class ChainComplex:
    """
    Degrees lo..hi; ``d[i]`` maps degree i to degree i-1.

    ``scalars`` records, for complexes of induced modules, the trivial-module
    scalar of each differential's multiplier. ``positions`` records, for
    subcomplexes and subquotients, which ambient basis vectors each degree keeps.
    """
    ring: RingSpec
    lo: int
    hi: int
    labels: dict[int, list[str]]
    d: dict[int, RingMatrix]
    name: str = ""
    scalars: dict[int, RingValue] | None = None
    positions: dict[int, list[int]] | None = None

    def __post_init__(self):
        for i in self.degrees:
            m = self.differential(i)
            if m.shape != (self.dim(i - 1), self.dim(i)):
                raise InvariantViolation(
                    f"{self.name}: d_{i} has shape {m.shape}, expected {(self.dim(i - 1), self.dim(i))}"
                )
        self.check()

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, i: int) -> int:
        if i < self.lo or i > self.hi:
            return 0
        return len(self.labels.get(i, []))

    def dims(self) -> dict[int, int]:
        return {i: self.dim(i) for i in self.degrees}

    def differential(self, i: int) -> RingMatrix:
        if self.lo < i <= self.hi and i in self.d:
            return self.d[i]
        return RingMatrix.zeros(self.ring, self.dim(i - 1), self.dim(i))

    def check(self) -> None:
        """Assert d_{i-1} d_i = 0 throughout."""
        for i in range(self.lo + 2, self.hi + 1):
            if not (self.differential(i - 1) @ self.differential(i)).is_zero():
                raise InvariantViolation(f"{self.name}: d_{i - 1} d_{i} != 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * self.dim(i) for i in self.degrees)


@dataclass
class ChainMap:
    """Per-degree matrices source_i -> target_i."""
    source: ChainComplex
    target: ChainComplex
    maps: dict[int, RingMatrix] = field(default_factory=dict)
    name: str = ""

    @property
    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def component(self, i: int) -> RingMatrix:
        if i in self.maps:
            return self.maps[i]
        return RingMatrix.zeros(self.source.ring, self.target.dim(i), self.source.dim(i))

    def is_chain_map(self) -> bool:
        for i in self.degrees:
            left = self.component(i - 1) @ self.source.differential(i)
            right = self.target.differential(i) @ self.component(i)
            if left != right:
                logger.debug("%s fails to commute at degree %d", self.name, i)
                return False
        return True

    def check(self) -> None:
        if not self.is_chain_map():
            raise InvariantViolation(f"{self.name} does not commute with the differentials")


def is_chain_iso(f: ChainMap) -> bool:
    """Every component square and invertible over the ring (determinant +-1 over Z)."""
    return all(f.component(i).is_invertible() for i in f.degrees)


# Complexes of induced modules


def _induced_labels(n: int, m: int) -> list[str]:
    return induced_basis(n, m).labels()


def _induced_complex(
    ctx: ParamContext,
    n: int,
    name: str,
    terms: dict[int, int],
    multipliers: dict[int, TLElement],
) -> ChainComplex:
    """Assemble a complex whose degree i is TL_n (x)_{TL_terms[i]} 1 and d_i is right multiplication."""
    lo, hi = min(terms), max(terms)
    labels = {i: _induced_labels(n, m) for i, m in terms.items()}
    d = {}
    for i, g in multipliers.items():
        logger.debug("%s: building d_%d", name, i)
        d[i] = right_mult_map(ctx, n, terms[i], terms[i - 1], g)
    scalars = {i: constant_term(g) for i, g in multipliers.items()}
    return ChainComplex(ctx.ring, lo, hi, labels, d, name=name, scalars=scalars)


def w_multiplier(ctx: ParamContext, n: int, i: int) -> TLElement:
    """sum_{j=0}^{i} (-1)^j lambda^-j s_{n-i+j-1} ... s_{n-i}: the multiplier of d^i on W(n)."""
    ring = ctx.ring
    lam_inv = ring.inv(ctx.lam)
    parts = []
    for j in range(i + 1):
        sign = ring.one if j % 2 == 0 else -ring.one
        parts.append(s_product(ctx, n, n - i + j - 1, n - i).scale(sign * ring.pow(lam_inv, j)))
    return element_sum(ring, n, parts)


def build_W(ctx: ParamContext, n: int) -> ChainComplex:
    """
    The complex of planar injective words.

    Args:
        ctx: Parameter context; needs v
        n: Number of strands, n >= 0

    Returns:
        W(n) in degrees -1..n-1 with W(n)_i = TL_n (x)_{TL_{n-i-1}} 1
    """
    ctx.require_unit("W(n)")
    if n < 0:
        raise BadRange(f"W(n) needs n >= 0, got {n}")
    terms = {i: n - i - 1 for i in range(-1, n)}
    multipliers = {i: w_multiplier(ctx, n, i) for i in range(0, n)}
    X = _induced_complex(ctx, n, f"W({n})", terms, multipliers)
    logger.info("Built W(%d) over %s: dims %s", n, ctx.ring.tag, list(X.dims().values()))
    return X


def _check_length(L: int) -> None:
    if L < 0:
        raise BadRange(f"truncation length must be >= 0, got {L}")


def build_C(ctx: ParamContext, n: int, m: int, L: int) -> ChainComplex:
    """The inductive resolution C(m) of TL_n (x)_{TL_m} 1, truncated at degree L (needs a a unit)."""
    if not 2 <= m <= n:
        raise BadRange(f"C(m) needs 2 <= m <= n, got n={n}, m={m}")
    _check_length(L)
    a_inv = ctx.a_inv
    ring = ctx.ring
    one = TLElement.identity(ring, n)
    e = generator(ctx, n, m - 1).scale(a_inv)
    terms = {-1: m, 0: m - 1}
    terms.update({i: m - 2 for i in range(1, L + 1)})
    multipliers = {}
    for i in range(0, L + 1):
        if i == 0:
            multipliers[i] = one
        elif i % 2 == 1:
            multipliers[i] = e
        else:
            multipliers[i] = one - e
    return _induced_complex(ctx, n, f"C({m}) in TL_{n}", terms, multipliers)


def build_D(ctx: ParamContext, n: int, m: int, L: int) -> ChainComplex:
    """The inductive resolution D(m) of TL_n (x)_{TL_m} 1 (any a), truncated at degree L."""
    if not 2 <= m < n:
        raise BadRange(f"D(m) needs 2 <= m < n, got n={n}, m={m}")
    _check_length(L)
    ring = ctx.ring
    one = TLElement.identity(ring, n)
    u = generator(ctx, n, m - 1)
    e = multiply(ctx, u, generator(ctx, n, m))
    terms = {-1: m, 0: m - 1}
    terms.update({i: m - 2 for i in range(1, L + 1)})
    multipliers = {}
    for i in range(0, L + 1):
        if i == 0:
            multipliers[i] = one
        elif i == 1:
            multipliers[i] = u
        elif i % 2 == 1:
            multipliers[i] = e
        else:
            multipliers[i] = one - e
    return _induced_complex(ctx, n, f"D({m}) in TL_{n}", terms, multipliers)


def build_tl2_resolution(ctx: ParamContext, L: int) -> ChainComplex:
    """
    The periodic free resolution of the trivial TL_2-module.

    Degree -1 is the trivial module, degrees 0..L are TL_2; the maps are the
    augmentation, then right multiplication by U_1 and by (a - U_1) in turn.
    """
    if L < 1:
        raise BadRange(f"resolution length must be >= 1, got {L}")
    ring = ctx.ring
    one = TLElement.identity(ring, 2)
    u = generator(ctx, 2, 1)
    terms = {-1: 2}
    terms.update({i: 0 for i in range(0, L + 1)})
    multipliers = {0: one}
    for i in range(1, L + 1):
        multipliers[i] = u if i % 2 == 1 else one.scale(ctx.a) - u
    return _induced_complex(ctx, 2, "TL_2 resolution", terms, multipliers)


# Standard constructions


def cone(X: ChainComplex) -> ChainComplex:
    """(CX)_i = X_i + X_{i-1} with d(x, y) = (dx + y, -dy)."""
    ring = X.ring
    lo, hi = X.lo, X.hi + 1
    labels = {
        i: [f"x:{l}" for l in X.labels.get(i, [])] + [f"y:{l}" for l in X.labels.get(i - 1, [])]
        for i in range(lo, hi + 1)
    }
    d = {}
    for i in range(lo + 1, hi + 1):
        blocks = {
            (0, 0): X.differential(i),
            (0, 1): RingMatrix.identity(ring, X.dim(i - 1)),
            (1, 1): -X.differential(i - 1),
        }
        d[i] = RingMatrix.block(
            ring, [X.dim(i - 1), X.dim(i - 2)], [X.dim(i), X.dim(i - 1)], blocks
        )
    return ChainComplex(ring, lo, hi, labels, d, name=f"Cone({X.name})")


def suspend(X: ChainComplex, k: int) -> ChainComplex:
    """Shift every degree up by k; the differentials are unchanged."""
    scalars = None if X.scalars is None else {i + k: s for i, s in X.scalars.items()}
    positions = None if X.positions is None else {i + k: p for i, p in X.positions.items()}
    return ChainComplex(
        X.ring, X.lo + k, X.hi + k,
        {i + k: list(l) for i, l in X.labels.items()},
        {i + k: m for i, m in X.d.items()},
        name=f"S^{k}{X.name}", scalars=scalars, positions=positions,
    )


def truncate(X: ChainComplex, p: int) -> ChainComplex:
    """Zero out every degree above p."""
    hi = min(X.hi, p)
    keep = lambda i: X.lo <= i <= hi
    return ChainComplex(
        X.ring, X.lo, hi,
        {i: list(l) for i, l in X.labels.items() if keep(i)},
        {i: m for i, m in X.d.items() if keep(i)},
        name=f"t_{p}{X.name}",
        scalars=None if X.scalars is None else {i: s for i, s in X.scalars.items() if keep(i)},
        positions=None if X.positions is None else {i: q for i, q in X.positions.items() if keep(i)},
    )


def restrict_degrees(X: ChainComplex, lo: int, hi: int) -> ChainComplex:
    """Keep degrees lo..hi only (a brutal truncation at both ends)."""
    keep = lambda i: lo <= i <= hi
    return ChainComplex(
        X.ring, max(lo, X.lo), min(hi, X.hi),
        {i: list(l) for i, l in X.labels.items() if keep(i)},
        {i: m for i, m in X.d.items() if keep(i) and keep(i - 1)},
        name=X.name,
        scalars=None if X.scalars is None else {i: s for i, s in X.scalars.items() if keep(i) and keep(i - 1)},
    )


def subcomplex(X: ChainComplex, keep: dict[int, list[int]], name: str = "") -> ChainComplex:
    """
    Restrict X to the basis vectors listed per degree.

    Raises:
        NotClosed: If the differential leaves the span of the kept vectors
    """
    keep = {i: sorted(keep.get(i, [])) for i in X.degrees}
    d = {}
    for i in range(X.lo + 1, X.hi + 1):
        full = X.differential(i)
        kept_rows = set(keep[i - 1])
        kept_cols = set(keep[i])
        for r, c, _ in full.entries():
            if c in kept_cols and r not in kept_rows:
                raise NotClosed(f"{X.name}: d_{i} sends a kept vector outside the subcomplex")
        d[i] = full.submatrix(keep[i - 1], keep[i])
    labels = {i: [X.labels[i][k] for k in keep[i]] for i in X.degrees}
    positions = {i: _ambient(X, i, keep[i]) for i in X.degrees}
    return ChainComplex(X.ring, X.lo, X.hi, labels, d, name=name or f"sub({X.name})", positions=positions)


def quotient_complex(X: ChainComplex, sub: ChainComplex, name: str = "") -> ChainComplex:
    """X / sub for a subcomplex spanned by basis vectors of X."""
    if sub.positions is None:
        raise NotClosed("quotient needs a subcomplex spanned by basis vectors")
    d = {}
    rest: dict[int, list[int]] = {}
    for i in X.degrees:
        ambient = _ambient(X, i, range(X.dim(i)))
        inside = set(sub.positions.get(i, []))
        rest[i] = [k for k, a in enumerate(ambient) if a not in inside]
    for i in range(X.lo + 1, X.hi + 1):
        d[i] = X.differential(i).submatrix(rest[i - 1], rest[i])
    labels = {i: [X.labels[i][k] for k in rest[i]] for i in X.degrees}
    positions = {i: _ambient(X, i, rest[i]) for i in X.degrees}
    return ChainComplex(X.ring, X.lo, X.hi, labels, d, name=name or f"{X.name}/{sub.name}", positions=positions)


def _ambient(X: ChainComplex, i: int, local) -> list[int]:
    if X.positions is None:
        return list(local)
    return [X.positions[i][k] for k in local]


def dual_complex(X: ChainComplex) -> ChainComplex:
    """Hom(X, R) as a chain complex in degrees -hi..-lo (cohomology in degree i is homology at -i)."""
    labels = {-i: list(l) for i, l in X.labels.items()}
    d = {-i: X.differential(i + 1).transpose() for i in range(X.lo, X.hi)}
    return ChainComplex(X.ring, -X.hi, -X.lo, labels, d, name=f"Hom({X.name}, R)")


def trivial_coinvariants(X: ChainComplex) -> ChainComplex:
    """1 (x)_{TL_n} X: every induced term collapses to R and d_i to its multiplier's scalar."""
    if X.scalars is None:
        raise NotInducedComplex(f"{X.name} carries no induced-module multipliers")
    ring = X.ring
    labels = {i: ["1"] for i in X.degrees}
    d = {i: RingMatrix.scalar(ring, s) for i, s in X.scalars.items() if X.lo < i <= X.hi}
    return ChainComplex(ring, X.lo, X.hi, labels, d, name=f"1 (x) {X.name}")


def trivial_invariants(X: ChainComplex) -> ChainComplex:
    """Hom_{TL_n}(X, 1), returned in the negated-degree convention of dual_complex."""
    return dual_complex(trivial_coinvariants(X))


# Filtration of W(n)


def filtration_basis(ctx: ParamContext, n: int, k: int) -> dict[int, list[int]]:
    """
    Positions in each W(n)_i of the Jones words spanning F^k.

    A word of W(n)_i lies in F^k when its index is at least 2, or its index is 1
    and its terminus is at most n-i-1+k.
    """
    if not 0 <= k <= n:
        raise BadRange(f"filtration level needs 0 <= k <= n, got k={k}, n={n}")
    out = {}
    for i in range(-1, n):
        words = induced_basis(n, n - i - 1).words
        out[i] = [
            pos for pos, w in enumerate(words)
            if w.index >= 2 or (w.index == 1 and w.terminus <= n - i - 1 + k)
        ]
    return out


def filtration_layer(ctx: ParamContext, n: int, k: int, W: ChainComplex | None = None) -> ChainComplex:
    """F^k as a subcomplex of W(n)."""
    W = W or build_W(ctx, n)
    return subcomplex(W, filtration_basis(ctx, n, k), name=f"F^{k} W({n})")


def filtration_quotient(ctx: ParamContext, n: int, k: int, W: ChainComplex | None = None) -> ChainComplex:
    """F^k / F^{k-1} for 1 <= k <= n."""
    if not 1 <= k <= n:
        raise BadRange(f"filtration quotient needs 1 <= k <= n, got k={k}")
    W = W or build_W(ctx, n)
    upper = filtration_layer(ctx, n, k, W)
    lower = filtration_layer(ctx, n, k - 1, W)
    return quotient_complex(upper, lower, name=f"F^{k}/F^{k - 1} W({n})")


def shift_element(x: TLElement) -> TLElement:
    """The inclusion TL_{n-1} -> TL_n sending U_i to U_{i+1}."""
    return TLElement(x.n + 1, x.ring, {shift(d): c for d, c in x.items()})


def _project(vec: dict[int, RingValue], allowed: list[int], zero_outside: set[int], where: str) -> dict[int, RingValue]:
    """Coordinates of vec on ``allowed`` (in that order); entries off ``zero_outside`` must vanish."""
    local = {a: k for k, a in enumerate(allowed)}
    out = {}
    for pos, c in vec.items():
        if pos in local:
            out[local[pos]] = c
        elif pos not in zero_outside:
            raise InvariantViolation(f"{where}: image leaves the target subcomplex")
    return out


def phi0(ctx: ParamContext, n: int) -> ChainMap:
    """
    The comparison map Cone(W(n-1)) -> F^0 W(n).

    On degree i it sends (x, y) to shift(x) (x) lambda^{n-1} plus
    shift(y) s_1 ... s_{n-i-1} (x) lambda^i.
    """
    ctx.require_unit("phi0")
    if n < 1:
        raise BadRange(f"phi0 needs n >= 1, got {n}")
    ring = ctx.ring
    source = cone(build_W(ctx, n - 1))
    target = filtration_layer(ctx, n, 0)
    lam_top = ring.pow(ctx.lam, n - 1)
    maps = {}
    for i in range(-1, n):
        m = n - i - 1
        x_basis = induced_basis(n - 1, n - i - 2) if i <= n - 2 else None
        y_basis = induced_basis(n - 1, n - i - 1) if 0 <= i else None
        columns = []
        if x_basis is not None:
            for k in range(len(x_basis)):
                image = shift_element(lift(ctx, x_basis, k)).scale(lam_top)
                columns.append(reduce(ctx, image, m))
        if y_basis is not None:
            tower = s_ascending(ctx, n, 1, n - i - 1)
            lam_i = ring.pow(ctx.lam, i)
            for k in range(len(y_basis)):
                image = multiply(ctx, shift_element(lift(ctx, y_basis, k)), tower).scale(lam_i)
                columns.append(reduce(ctx, image, m))
        allowed = target.positions[i]
        columns = [_project(c, allowed, set(), f"phi0 degree {i}") for c in columns]
        maps[i] = RingMatrix.from_columns(ring, len(allowed), columns)
    f = ChainMap(source, target, maps, name=f"phi0(n={n})")
    f.check()
    return f


def psik(ctx: ParamContext, n: int, k: int) -> ChainMap:
    """
    The comparison map t_{n-1} S^{k+1} W(n-1) -> F^k / F^{k-1}.

    On degree i it sends x to (-1)^{i(k+1)} shift(x) s_1 ... s_{n-i-1+k} (x) lambda^i.
    """
    ctx.require_unit("psik")
    if not 1 <= k <= n - 1:
        raise BadRange(f"psik needs 1 <= k <= n-1, got k={k}, n={n}")
    ring = ctx.ring
    W = build_W(ctx, n)
    source = truncate(suspend(build_W(ctx, n - 1), k + 1), n - 1)
    target = filtration_quotient(ctx, n, k, W)
    in_fk = {i: set(p) for i, p in filtration_basis(ctx, n, k).items()}
    lower = filtration_basis(ctx, n, k - 1)
    maps = {}
    for i in range(k, n):
        m = n - i - 1
        src_basis = induced_basis(n - 1, n - i - 1 + k)
        tower = s_ascending(ctx, n, 1, n - i - 1 + k)
        sign = ring.one if (i * (k + 1)) % 2 == 0 else -ring.one
        coeff = sign * ring.pow(ctx.lam, i)
        columns = []
        for s in range(len(src_basis)):
            image = multiply(ctx, shift_element(lift(ctx, src_basis, s)), tower).scale(coeff)
            vec = reduce(ctx, image, m)
            if any(pos not in in_fk[i] for pos in vec):
                raise InvariantViolation(f"psik degree {i}: image leaves F^{k}")
            columns.append(_project(vec, target.positions[i], set(lower[i]), f"psik degree {i}"))
        maps[i] = RingMatrix.from_columns(ring, len(target.positions[i]), columns)
    f = ChainMap(source, target, maps, name=f"psi^{k}(n={n})")
    f.check()
    return f


# Saving and loading


def save_complex(X: ChainComplex, directory: str | Path) -> Path:
    """Write d_<degree>.tlmat files and a complex.json manifest."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(X.lo + 1, X.hi + 1):
        save_matrix(X.differential(i), out / f"d_{i}.tlmat")
    manifest = ComplexManifest(
        ring=X.ring.tag,
        degrees=list(X.degrees),
        dims=[X.dim(i) for i in X.degrees],
        labels={str(i): X.labels.get(i, []) for i in X.degrees},
        name=X.name,
    )
    (out / "complex.json").write_text(manifest.model_dump_json(indent=2))
    logger.info("Saved %s to %s", X.name, out)
    return out


def load_complex(directory: str | Path) -> ChainComplex:
    src = Path(directory)
    manifest_path = src / "complex.json"
    if not manifest_path.exists():
        raise FileNotFoundError(f"No complex.json in {src}")
    manifest = ComplexManifest.model_validate(json.loads(manifest_path.read_text()))
    ring = parse_ring_tag(manifest.ring)
    lo, hi = manifest.degrees[0], manifest.degrees[-1]
    labels = {int(i): l for i, l in manifest.labels.items()}
    d = {i: load_matrix(src / f"d_{i}.tlmat") for i in range(lo + 1, hi + 1)}
    return ChainComplex(ring, lo, hi, labels, d, name=manifest.name or src.name)
