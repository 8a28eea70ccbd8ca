import pytest

from tlhom.coeff import DirectA, RingSpec, make_context
from tlhom.complex import (
    ChainComplex,
    ChainMap,
    build_C,
    build_D,
    build_tl2_resolution,
    build_W,
    cone,
    dual_complex,
    filtration_basis,
    filtration_layer,
    filtration_quotient,
    is_chain_iso,
    load_complex,
    phi0,
    psik,
    quotient_complex,
    restrict_degrees,
    save_complex,
    subcomplex,
    suspend,
    trivial_coinvariants,
    truncate,
)
from tlhom.diagram import fine_number
from tlhom.errors import BadRange, InvariantViolation, MissingUnit, NonInvertibleA, NotClosed
from tlhom.homology import HomologyGroup, homology_of
from tlhom.linalg import RingMatrix

Z = RingSpec.integers()


def test_w_dimensions(q1):
    assert build_W(q1, 2).dims() == {-1: 1, 0: 2, 1: 2}
    assert build_W(q1, 3).dims() == {-1: 1, 0: 3, 1: 5, 2: 5}


def test_w_small_cases(q1):
    W0 = build_W(q1, 0)
    assert W0.dims() == {-1: 1}
    assert homology_of(W0) == {-1: HomologyGroup(1)}
    assert all(g.is_zero() for g in homology_of(build_W(q1, 1)).values())


@pytest.mark.parametrize("n", range(2, 5))
def test_w_homology_sits_in_the_top_degree(canonical, n):
    H = homology_of(build_W(canonical, n))
    for i in range(-1, n - 1):
        assert H[i].is_zero()
    assert H[n - 1] == HomologyGroup(fine_number(n))


def test_w_euler_characteristic(q1):
    for n in range(1, 5):
        assert build_W(q1, n).euler_characteristic() == (-1) ** (n - 1) * fine_number(n)


def test_w_needs_v(za2):
    with pytest.raises(MissingUnit):
        build_W(za2, 2)


def test_differentials_must_compose_to_zero():
    one = RingMatrix.scalar(Z, Z(1))
    labels = {0: ["a"], 1: ["b"], 2: ["c"]}
    with pytest.raises(InvariantViolation):
        ChainComplex(Z, 0, 2, labels, {1: one, 2: one})


def test_differential_shape_is_checked():
    labels = {0: ["a"], 1: ["b", "c"]}
    with pytest.raises(InvariantViolation):
        ChainComplex(Z, 0, 1, labels, {1: RingMatrix.zeros(Z, 1, 1)})


def test_tl2_resolution_is_exact(za2):
    P = build_tl2_resolution(za2, 5)
    H = homology_of(P)
    assert all(H[i].is_zero() for i in range(-1, 5))
    assert P.dims() == {-1: 1, 0: 2, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2}


def test_tl2_coinvariants_over_z(za2):
    P = restrict_degrees(build_tl2_resolution(za2, 4), 0, 4)
    H = homology_of(trivial_coinvariants(P))
    assert [H[i] for i in range(4)] == [
        HomologyGroup(1), HomologyGroup(0, (2,)), HomologyGroup(), HomologyGroup(0, (2,)),
    ]


def test_c_needs_invertible_a(za2):
    with pytest.raises(NonInvertibleA):
        build_C(za2, 3, 2, 4)


def test_d_range(q1):
    with pytest.raises(BadRange):
        build_D(q1, 3, 3, 4)
    with pytest.raises(BadRange):
        build_C(q1, 3, 1, 4)


@pytest.mark.parametrize("n,m", [(3, 2), (4, 2), (4, 3)])
def test_d_is_acyclic_for_any_a(za2, n, m):
    L = 6
    H = homology_of(build_D(za2, n, m, L))
    assert all(H[i].is_zero() for i in range(-1, L - 1))


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_c_is_acyclic_when_a_is_a_unit(q1, n, m):
    L = 6
    H = homology_of(build_C(q1, n, m, L))
    assert all(H[i].is_zero() for i in range(-1, L - 1))


def test_d_coinvariants_over_f5(f5):
    L = 6
    H = homology_of(trivial_coinvariants(build_D(f5, 3, 2, L)))
    assert all(H[i].is_zero() for i in range(-1, L - 1))


def test_cone_is_contractible(z1):
    X = cone(build_W(z1, 2))
    assert X.lo == -1 and X.hi == 2
    assert all(g.is_zero() for g in homology_of(X).values())


def test_suspend_and_truncate(q1):
    W = build_W(q1, 3)
    S = suspend(W, 2)
    assert (S.lo, S.hi) == (1, 4)
    assert homology_of(S)[4] == homology_of(W)[2]
    T = truncate(W, 1)
    assert T.hi == 1
    assert T.dims() == {-1: 1, 0: 3, 1: 5}


def test_dual_complex_negates_degrees(q1):
    W = build_W(q1, 3)
    D = dual_complex(W)
    assert (D.lo, D.hi) == (-2, 1)
    assert homology_of(D)[-2] == HomologyGroup(fine_number(3))


def test_subcomplex_must_be_closed(q1):
    W = build_W(q1, 2)
    with pytest.raises(NotClosed):
        subcomplex(W, {0: [0]})


def test_subcomplex_and_quotient(q1):
    W = build_W(q1, 2)
    low = subcomplex(W, {-1: [0], 0: [0, 1]})
    assert low.dims() == {-1: 1, 0: 2, 1: 0}
    Q = quotient_complex(W, low)
    assert Q.dims() == {-1: 0, 0: 0, 1: 2}
    assert homology_of(Q)[1] == HomologyGroup(2)


def test_full_filtration_is_everything(q1):
    W = build_W(q1, 3)
    basis = filtration_basis(q1, 3, 3)
    assert {i: len(p) for i, p in basis.items()} == W.dims()


@pytest.mark.parametrize("n", range(1, 5))
def test_filtration_layers_telescope(q1, n):
    W = build_W(q1, n)
    sizes = filtration_layer(q1, n, 0, W).dims()
    for k in range(1, n + 1):
        Q = filtration_quotient(q1, n, k, W)
        for i in W.degrees:
            sizes[i] += Q.dim(i)
    assert sizes == W.dims()


def test_filtration_level_range(q1):
    with pytest.raises(BadRange):
        filtration_basis(q1, 3, 4)
    with pytest.raises(BadRange):
        filtration_quotient(q1, 3, 0)


@pytest.mark.parametrize("n", range(1, 5))
def test_phi0_is_an_isomorphism(canonical, n):
    f = phi0(canonical, n)
    assert f.is_chain_map()
    assert is_chain_iso(f)


@pytest.mark.parametrize("n", range(2, 5))
def test_psik_are_isomorphisms(canonical, n):
    for k in range(1, n):
        assert is_chain_iso(psik(canonical, n, k))


def test_psik_range(q1):
    with pytest.raises(BadRange):
        psik(q1, 3, 3)


def test_chain_map_detects_non_commuting_squares():
    one = RingMatrix.scalar(Z, Z(1))
    X = ChainComplex(Z, 0, 1, {0: ["a"], 1: ["b"]}, {1: one})
    f = ChainMap(X, X, {1: one})
    assert not f.is_chain_map()
    with pytest.raises(InvariantViolation):
        f.check()
    assert is_chain_iso(ChainMap(X, X, {0: one, 1: one}))


def test_save_and_load_round_trip(z1, tmp_path):
    W = build_W(z1, 3)
    save_complex(W, tmp_path / "w3")
    assert (tmp_path / "w3" / "complex.json").exists()
    assert (tmp_path / "w3" / "d_0.tlmat").exists()
    loaded = load_complex(tmp_path / "w3")
    assert loaded.name == W.name
    assert loaded.dims() == W.dims()
    assert homology_of(loaded) == homology_of(W)


def test_load_missing_directory(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_complex(tmp_path / "nowhere")


def test_d_zero_map_for_tl2_is_the_augmentation():
    ctx = make_context(Z, DirectA(3))
    P = build_tl2_resolution(ctx, 1)
    assert P.differential(0).dense_rows() == [[1, 0]]
