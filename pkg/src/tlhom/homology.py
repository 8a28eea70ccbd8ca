"""
Homology of chain complexes, finite-dimensional left TL_n-modules, free
resolutions by iterated kernels, and Tor/Ext of the trivial module.
"""
import logging
import time
from dataclasses import dataclass, field
from math import gcd

from .coeff import ParamContext, RingSpec
from .complex import (
    ChainComplex,
    build_C,
    build_D,
    build_tl2_resolution,
    dual_complex,
    restrict_degrees,
    trivial_coinvariants,
    trivial_invariants,
)
from .config import resolution_budget
from .diagram import (
    PlanarDiagram,
    compose,
    diagram_to_jones_word,
    enumerate_jones_words,
    identity_diagram,
    jones_word_to_diagram,
)
from .errors import BadRange, DimensionBudgetExceeded, InvariantViolation
from .induced import induced_basis, left_action_matrix, right_mult_map
from .linalg import (
    RingMatrix,
    SparseVector,
    Submodule,
    image_module,
    kernel_basis,
    kernel_module,
    smith_invariants,
    span,
)
from .records import HomologyGroupRecord, VerificationReport
from .tlalg import TLElement, generator, top_differential_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyGroup:
    """R^rank plus cyclic torsion R/t_1 + ... + R/t_k (t_1 | t_2 | ... over Z)."""
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def render(self, ring: RingSpec | None = None) -> str:
        letter = "R" if ring is None else ("F_%d" % ring.p if ring.p else ring.tag)
        parts = []
        if self.rank == 1:
            parts.append(letter)
        elif self.rank > 1:
            parts.append(f"{letter}^{self.rank}")
        parts += [f"{letter}/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_record(self) -> HomologyGroupRecord:
        return HomologyGroupRecord(rank=self.rank, torsion=list(self.torsion))

    @classmethod
    def from_record(cls, record: HomologyGroupRecord) -> "HomologyGroup":
        return cls(record.rank, tuple(record.torsion))


# Normal forms


def smith_normal_form(M: RingMatrix) -> list[int]:
    """
    Nonzero invariant factors of M, in divisibility order.

    Over a field every nonzero factor is 1, so the list has length rank(M).
    """
    if M.ring.is_integers:
        return smith_invariants(M)
    return [1] * M.rank()


def hermite_basis(M: RingMatrix) -> tuple[list[SparseVector], list[SparseVector]]:
    """Echelon bases (kernel of M, column span of M); lattice bases over Z."""
    return kernel_module(M).basis(), image_module(M).basis()


def quotient_group(ring: RingSpec, ambient: Submodule, relations: list[SparseVector]) -> HomologyGroup:
    """
    The group ambient / span(relations) for relations lying inside ambient.

    Raises:
        InvariantViolation: If a relation is not in ambient
    """
    coords = []
    for rel in relations:
        c = ambient.coordinates(rel)
        if c is None:
            raise InvariantViolation("relation outside the ambient lattice")
        coords.append({k: v for k, v in enumerate(c) if v})
    M = RingMatrix.from_columns(ring, ambient.rank, coords)
    factors = smith_normal_form(M)
    return HomologyGroup(ambient.rank - len(factors), tuple(f for f in factors if f > 1))


def homology_at(X: ChainComplex, i: int) -> HomologyGroup:
    """H_i(X) = ker d_i / im d_{i+1}."""
    incoming = X.differential(i + 1)
    free = X.dim(i) - X.differential(i).rank() - incoming.rank()
    torsion: tuple[int, ...] = ()
    if X.ring.is_integers:
        torsion = tuple(f for f in smith_invariants(incoming) if f > 1)
    return HomologyGroup(free, torsion)


def homology_of(X: ChainComplex) -> dict[int, HomologyGroup]:
    """Homology in every degree of X."""
    return {i: homology_at(X, i) for i in X.degrees}


# Left modules


@dataclass
class LeftModule:
    """
    R^dim with U_i acting by ``action[i]``.

    ``representatives``, when set, embeds the basis in TL_n (as Jones-basis
    coordinates), as for the Fineberg module.
    """
    ctx: ParamContext
    n: int
    dim: int
    action: dict[int, RingMatrix]
    name: str = ""
    representatives: list[SparseVector] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if set(self.action) != set(range(1, self.n)):
            raise InvariantViolation(f"{self.name}: action must be given for U_1..U_{self.n - 1}")
        for i, m in self.action.items():
            if m.shape != (self.dim, self.dim):
                raise InvariantViolation(f"{self.name}: U_{i} acts by a {m.shape} matrix on R^{self.dim}")
        self.check_relations()

    def check_relations(self) -> None:
        """U_i^2 = a U_i, U_i U_{i+-1} U_i = U_i, U_i U_j = U_j U_i for |i - j| >= 2."""
        a = self.ctx.a
        A = self.action
        for i in A:
            if A[i] @ A[i] != A[i].scale(a):
                raise InvariantViolation(f"{self.name}: U_{i}^2 != a U_{i}")
            for j in A:
                if abs(i - j) == 1 and A[i] @ A[j] @ A[i] != A[i]:
                    raise InvariantViolation(f"{self.name}: U_{i} U_{j} U_{i} != U_{i}")
                if abs(i - j) >= 2 and A[i] @ A[j] != A[j] @ A[i]:
                    raise InvariantViolation(f"{self.name}: U_{i} and U_{j} do not commute")

    def act(self, d: PlanarDiagram) -> RingMatrix:
        """Matrix of a diagram: the product of the actions along its Jones word."""
        if d not in self._cache:
            m = RingMatrix.identity(self.ctx.ring, self.dim)
            for i in diagram_to_jones_word(d).letters:
                m = m @ self.action[i]
            self._cache[d] = m
        return self._cache[d]

    def act_element(self, x: TLElement) -> RingMatrix:
        out = RingMatrix.zeros(self.ctx.ring, self.dim, self.dim)
        for d, c in x.items():
            out = out + self.act(d).scale(c)
        return out


def trivial_module(ctx: ParamContext, n: int) -> LeftModule:
    """The rank-one module on which every U_i acts by 0."""
    zero = RingMatrix.zeros(ctx.ring, 1, 1)
    return LeftModule(ctx, n, 1, {i: zero for i in range(1, n)}, name=f"1 (TL_{n})")


def induced_as_module(ctx: ParamContext, n: int, m: int) -> LeftModule:
    """TL_n (x)_{TL_m} 1 with its left action; m = 0 gives the free module TL_n."""
    basis = induced_basis(n, m)
    action = {i: left_action_matrix(ctx, n, m, generator(ctx, n, i)) for i in range(1, n)}
    return LeftModule(ctx, n, len(basis), action, name=f"TL_{n} (x)_TL_{m} 1")


def fineberg_module(ctx: ParamContext, n: int) -> LeftModule:
    """
    The kernel of right multiplication by the top differential's multiplier.

    Args:
        ctx: Parameter context; needs v
        n: Number of strands, n >= 1

    Returns:
        The module with its echelon basis in ``representatives``

    Raises:
        MissingUnit: If the context has no v
    """
    ctx.require_unit("the Fineberg module")
    if n < 1:
        raise BadRange(f"the Fineberg module needs n >= 1, got {n}")
    ring = ctx.ring
    J = top_differential_element(ctx, n)
    kernel = kernel_module(right_mult_map(ctx, n, 0, 0, J))
    basis = kernel.basis()
    action = {}
    for i in range(1, n):
        left = left_action_matrix(ctx, n, 0, generator(ctx, n, i))
        columns = []
        for vec in basis:
            coords = kernel.coordinates(left.apply(vec))
            if coords is None:
                raise InvariantViolation(f"U_{i} does not preserve the Fineberg module")
            columns.append({k: c for k, c in enumerate(coords) if c})
        action[i] = RingMatrix.from_columns(ring, len(basis), columns)
    logger.info("Fineberg module for n=%d over %s has rank %d", n, ring.tag, len(basis))
    return LeftModule(ctx, n, len(basis), action, name=f"F_{n}", representatives=basis)


def coinvariants(M: LeftModule) -> HomologyGroup:
    """1 (x)_{TL_n} M = M / (U_1 M + ... + U_{n-1} M)."""
    relations = [col for i in sorted(M.action) for col in M.action[i].columns() if col]
    ambient = span(M.ctx.ring, M.dim, ({k: M.ctx.ring.one} for k in range(M.dim)))
    return quotient_group(M.ctx.ring, ambient, relations)


# Free resolutions


class _FreeAlgebra:
    """A^g as R^{g*C}; coordinate j*C + k is the k-th Jones basis diagram in copy j."""

    def __init__(self, ctx: ParamContext, n: int):
        self.ctx = ctx
        self.n = n
        self.diagrams = [jones_word_to_diagram(w) for w in enumerate_jones_words(n)]
        self.C = len(self.diagrams)
        self.unit = self.diagrams.index(identity_diagram(n))
        position = {d: k for k, d in enumerate(self.diagrams)}
        ring = ctx.ring
        # table[d][k] = (index of d*e_k, a^loops)
        self.table = []
        for d in self.diagrams:
            row = []
            for e in self.diagrams:
                product, loops = compose(d, e)
                row.append((position[product], ring.pow(ctx.a, loops)))
            self.table.append(row)

    def act(self, d: int, vec: SparseVector) -> SparseVector:
        C = self.C
        out: SparseVector = {}
        for pos, c in vec.items():
            j, k = divmod(pos, C)
            idx, scale = self.table[d][k]
            target = j * C + idx
            value = out.get(target, self.ctx.ring.zero) + c * scale
            if value:
                out[target] = value
            else:
                out.pop(target, None)
        return out

    def element(self, vec: SparseVector, j: int) -> TLElement:
        """Block j of vec as an element of TL_n."""
        C = self.C
        terms = {self.diagrams[pos - j * C]: c for pos, c in vec.items() if j * C <= pos < (j + 1) * C}
        return TLElement(self.n, self.ctx.ring, terms)


@dataclass
class FreeResolution:
    """
    P_L -> ... -> P_0 -> M with P_s = A^{ranks[s]}.

    ``generators[s]`` lists the images in P_{s-1} (or in M for s = 0) of the free
    generators of P_s; ``maps[s]`` is the R-linear matrix P_s -> P_{s-1}.
    """
    module: LeftModule
    ranks: list[int]
    generators: list[list[SparseVector]]
    maps: list[RingMatrix]
    algebra: _FreeAlgebra = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def algebra_matrix(self, s: int) -> list[list[TLElement]]:
        """Entries in TL_n of P_s -> P_{s-1} for s >= 1 (row j, column l)."""
        rows = self.ranks[s - 1]
        return [[self.algebra.element(k, j) for k in self.generators[s]] for j in range(rows)]

    def trivial_matrix(self, s: int) -> RingMatrix:
        """1 (x)_A (P_s -> P_{s-1}): the constant terms of the algebra matrix."""
        A = self.algebra
        ring = self.module.ctx.ring
        columns = []
        for k in self.generators[s]:
            columns.append({j: c for j in range(self.ranks[s - 1]) if (c := k.get(j * A.C + A.unit))})
        return RingMatrix.from_columns(ring, self.ranks[s - 1], columns)

    def tensor_trivial(self) -> ChainComplex:
        """1 (x)_A P_* as a complex of free R-modules in degrees 0..length."""
        labels = {s: [f"P{s}.{j}" for j in range(r)] for s, r in enumerate(self.ranks)}
        d = {s: self.trivial_matrix(s) for s in range(1, len(self.ranks))}
        return ChainComplex(self.module.ctx.ring, 0, self.length, labels, d, name=f"1 (x) P({self.module.name})")


def _close(ring: RingSpec, dim: int, candidates, images) -> tuple[list[SparseVector], Submodule]:
    """Greedy closure: keep each candidate not yet in the A-span of those kept."""
    covered = Submodule(ring, dim)
    chosen = []
    for vec in candidates:
        if vec in covered:
            continue
        chosen.append(vec)
        for image in images(vec):
            covered.add(image)
        if covered.is_full():
            break
    return chosen, covered


def free_resolution(M: LeftModule, L: int, budget: int | None = None) -> FreeResolution:
    """
    Resolve M by free A-modules, A = TL_n, through P_L.

    P_0 maps onto M through greedily chosen generators; every later stage maps
    onto the kernel of the previous one. Exactness is checked stage by stage.

    Args:
        M: The module to resolve
        L: Top stage to compute
        budget: Largest R-dimension allowed for a stage; $TLHOM_BUDGET or the
            configured default when omitted

    Returns:
        The FreeResolution (shorter than L when a kernel vanishes)

    Raises:
        DimensionBudgetExceeded: If a stage is too large
        InvariantViolation: If a stage fails exactness
    """
    ctx = M.ctx
    ring = ctx.ring
    if L < 0:
        raise BadRange(f"resolution length must be >= 0, got {L}")
    budget = resolution_budget() if budget is None else budget
    if budget < 0:
        raise BadRange(f"resolution budget must be >= 0, got {budget}")
    algebra = _FreeAlgebra(ctx, M.n)
    C = algebra.C
    started = time.perf_counter()

    # Stage 0
    unit_vectors = ({t: ring.one} for t in range(M.dim))
    gens, _ = _close(
        ring, M.dim, unit_vectors,
        lambda v: (M.act(d).apply(v) for d in algebra.diagrams),
    )
    dim = len(gens) * C
    if dim > budget:
        raise DimensionBudgetExceeded(0, dim, budget)
    columns = [M.act(d).apply(m) for m in gens for d in algebra.diagrams]
    phi = RingMatrix.from_columns(ring, M.dim, columns)
    ranks, generators, maps = [len(gens)], [gens], [phi]
    logger.info("[Stage 0] %s: %d generator(s), dimension %d", M.name, len(gens), dim)

    for s in range(1, L + 1):
        kernel = kernel_basis(phi)
        if not kernel:
            logger.info("[Stage %d] kernel vanishes; resolution has length %d", s, s - 1)
            break
        source_dim = phi.cols
        gens, covered = _close(
            ring, source_dim, kernel,
            lambda v: (algebra.act(d, v) for d in range(C)),
        )
        dim = len(gens) * C
        if dim > budget:
            raise DimensionBudgetExceeded(s, dim, budget)
        columns = [algebra.act(d, k) for k in gens for d in range(C)]
        nxt = RingMatrix.from_columns(ring, source_dim, columns)
        if not (phi @ nxt).is_zero():
            raise InvariantViolation(f"resolution stage {s}: composite is nonzero")
        if any(k not in covered for k in kernel):
            raise InvariantViolation(f"resolution stage {s}: image misses part of the kernel")
        ranks.append(len(gens))
        generators.append(gens)
        maps.append(nxt)
        phi = nxt
        logger.info(
            "[Stage %d] kernel rank %d, %d generator(s), dimension %d (%.1fs)",
            s, len(kernel), len(gens), dim, time.perf_counter() - started,
        )
    return FreeResolution(M, ranks, generators, maps, algebra)


def tor_trivial(ctx: ParamContext, M: LeftModule, L: int, budget: int | None = None) -> list[HomologyGroup]:
    """Tor_d^{TL_n}(1, M) for d = 0..L-1."""
    res = free_resolution(M, L, budget)
    X = res.tensor_trivial()
    return [homology_at(X, d) for d in range(L)]


def ext_trivial(ctx: ParamContext, M: LeftModule, L: int, budget: int | None = None) -> list[HomologyGroup]:
    """Ext^d_{TL_n}(M, 1) for d = 0..L-1, the cohomology of Hom_A(P_*, 1)."""
    res = free_resolution(M, L, budget)
    Y = dual_complex(res.tensor_trivial())
    return [homology_at(Y, -d) for d in range(L)]


def tl2_tor_ext(ctx: ParamContext, L: int) -> tuple[list[HomologyGroup], list[HomologyGroup]]:
    """Tor and Ext of the trivial TL_2-module in degrees 0..L-1 from the periodic resolution."""
    P = restrict_degrees(build_tl2_resolution(ctx, L), 0, L)
    tor = homology_of(trivial_coinvariants(P))
    ext = homology_of(trivial_invariants(P))
    return [tor[d] for d in range(L)], [ext[-d] for d in range(L)]


# Exact-sequence checks


def _context_label(ctx: ParamContext, n: int) -> str:
    return f"n={n}, {ctx.describe()}"


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise BadRange(f"the exact sequence needs an even n >= 2, got {n}")


def _epsilon(M: LeftModule) -> SparseVector:
    """The constant-term functional on the Fineberg module, as a row vector."""
    unit = next(k for k, w in enumerate(enumerate_jones_words(M.n)) if w.is_identity)
    return {k: rep[unit] for k, rep in enumerate(M.representatives or []) if rep.get(unit)}


def _gcd_group(ring: RingSpec, values: list) -> tuple[HomologyGroup, int]:
    """R / (ideal generated by values), with the generator b >= 0."""
    if ring.is_integers:
        b = 0
        for v in values:
            b = gcd(b, int(v))
        if b == 0:
            return HomologyGroup(1), 0
        return HomologyGroup(0, (b,) if b > 1 else ()), b
    if any(values):
        return HomologyGroup(), 1
    return HomologyGroup(1), 0


def verify_tor_sequence(ctx: ParamContext, n: int, L: int | None = None, budget: int | None = None) -> VerificationReport:
    """
    Check 0 -> Tor_n -> 1 (x) F_n -> R -> Tor_{n-1} -> 0 for even n.

    The middle map sends a representative to its constant term. Tor_n is
    compared with its kernel and Tor_{n-1} with its cokernel R/bR.
    """
    _require_even(n)
    L = max(L or n + 1, n + 1)
    ring = ctx.ring
    tor = tor_trivial(ctx, trivial_module(ctx, n), L, budget)
    F = fineberg_module(ctx, n)
    eps = _epsilon(F)
    coinv = coinvariants(F)

    relations = [col for i in sorted(F.action) for col in F.action[i].columns() if col]
    eps_row = RingMatrix.from_columns(ring, 1, [{0: eps[k]} if k in eps else {} for k in range(F.dim)])
    kernel = kernel_module(eps_row)
    kernel_group = quotient_group(ring, kernel, relations)
    cokernel_group, b = _gcd_group(ring, list(eps.values()))

    passed = kernel_group == tor[n] and cokernel_group == tor[n - 1]
    return VerificationReport(
        name="tor-sequence",
        context=_context_label(ctx, n),
        passed=passed,
        groups={
            f"Tor_{n}": tor[n].to_record(),
            "1(x)F_n": coinv.to_record(),
            "ker(middle)": kernel_group.to_record(),
            f"Tor_{n - 1}": tor[n - 1].to_record(),
            "coker(middle)": cokernel_group.to_record(),
        },
        evidence={"b": b, "middle_map": [ring.format(eps.get(k, ring.zero)) for k in range(F.dim)]},
    )


def verify_ext_sequence(ctx: ParamContext, n: int, L: int | None = None, budget: int | None = None) -> VerificationReport:
    """Check 0 -> Ext^{n-1} -> R -> Hom(F_n, 1) -> Ext^n -> 0 for even n."""
    _require_even(n)
    L = max(L or n + 1, n + 1)
    ring = ctx.ring
    ext = ext_trivial(ctx, trivial_module(ctx, n), L, budget)
    F = fineberg_module(ctx, n)
    eps = _epsilon(F)

    # Hom(F_n, 1): functionals killing every U_i-image
    stacked = RingMatrix.from_columns(
        ring, F.dim, [col for i in sorted(F.action) for col in F.action[i].columns()]
    )
    invariants = kernel_module(stacked.transpose())
    kernel_group = HomologyGroup(0) if eps else HomologyGroup(1)
    cokernel_group = quotient_group(ring, invariants, [eps] if eps else [])

    passed = kernel_group == ext[n - 1] and cokernel_group == ext[n]
    return VerificationReport(
        name="ext-sequence",
        context=_context_label(ctx, n),
        passed=passed,
        groups={
            f"Ext^{n - 1}": ext[n - 1].to_record(),
            "ker(R->Hom(F_n,1))": kernel_group.to_record(),
            "Hom(F_n,1)": HomologyGroup(invariants.rank).to_record(),
            f"Ext^{n}": ext[n].to_record(),
            "coker(R->Hom(F_n,1))": cokernel_group.to_record(),
        },
        evidence={"epsilon": [ring.format(eps.get(k, ring.zero)) for k in range(F.dim)]},
    )


def shifted_iso_start(n: int) -> int:
    """First degree where Tor_i(1, 1) agrees with Tor_{i-n}(1, F_n)."""
    return n if n % 2 else n + 1


def verify_shifted_iso(
    ctx: ParamContext, n: int, L: int, kind: str = "tor", budget: int | None = None
) -> VerificationReport:
    """
    Compare Tor_i(1, 1) with Tor_{i-n}(1, F_n) (or Ext^i(1, 1) with Ext^{i-n}(F_n, 1)) for start <= i < L.

    Groups are equal when ranks and invariant factors agree.
    """
    if kind not in ("tor", "ext"):
        raise BadRange(f"kind must be 'tor' or 'ext', got {kind!r}")
    start = shifted_iso_start(n)
    if L <= start:
        raise BadRange(f"need L > {start} to compare any degree for n={n}")
    compute = tor_trivial if kind == "tor" else ext_trivial
    left = compute(ctx, trivial_module(ctx, n), L, budget)
    right = compute(ctx, fineberg_module(ctx, n), L - n, budget)
    groups = {}
    passed = True
    for i in range(start, L):
        a, b = left[i], right[i - n]
        groups[f"{kind}_{i}(1,1)"] = a.to_record()
        groups[f"{kind}_{i - n}(F_n)"] = b.to_record()
        passed = passed and a == b
    return VerificationReport(
        name=f"shifted-iso-{kind}",
        context=_context_label(ctx, n),
        passed=passed,
        groups=groups,
        evidence={"degrees": [start, L - 1]},
    )


def verify_acyclicity(
    ctx: ParamContext, kind: str, n: int, m: int, L: int, variant: str = "complex"
) -> VerificationReport:
    """
    Check that C(m) or D(m), or its trivial coinvariants or invariants, has no interior homology.

    Interior means degrees -1..L-2 (cohomological degrees for ``invariants``).
    """
    builders = {"C": build_C, "D": build_D}
    if kind not in builders:
        raise BadRange(f"complex kind must be C or D, got {kind!r}")
    X = builders[kind](ctx, n, m, L)
    if variant == "complex":
        Y, degrees = X, list(range(-1, L - 1))
    elif variant == "coinvariants":
        Y, degrees = trivial_coinvariants(X), list(range(-1, L - 1))
    elif variant == "invariants":
        Y, degrees = trivial_invariants(X), [-j for j in range(-1, L - 1)]
    else:
        raise BadRange(f"variant must be complex, coinvariants or invariants, got {variant!r}")
    groups = {str(i): homology_at(Y, i).to_record() for i in degrees}
    passed = all(g.rank == 0 and not g.torsion for g in groups.values())
    return VerificationReport(
        name=f"acyclicity-{kind}-{variant}",
        context=f"n={n}, m={m}, L={L}, {ctx.describe()}",
        passed=passed,
        groups=groups,
        evidence={"dims": {str(i): Y.dim(i) for i in Y.degrees}},
    )
