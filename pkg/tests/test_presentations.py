import pytest

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator
from mpkcheck.core.algebra.toeplitz import Circle, Shift, Unit
from mpkcheck.core.presentations.assignment import apply, compose, tensor_identity
from mpkcheck.core.presentations.checks import (
    ck_check,
    compacts_in_image,
    corner_unitary,
    equivariance_check,
    injectivity_sample,
    rho_range_identities,
    sphere_relations,
)
from mpkcheck.core.presentations.faithful import is_zero_element, same_element
from mpkcheck.core.presentations.free import FreeElement, FreeSignature, Gen, Letter, P, S, U, reduce_word
from mpkcheck.core.presentations.graphs import graph_gamma, graph_sigma
from mpkcheck.core.presentations.maps import build_map, map_names
from mpkcheck.utils.error import MissingGenerator, SignatureMismatch, UnknownMap, UnsupportedIndex


class TestGraphs:
    def test_sigma_zero_is_a_loop(self):
        g = graph_sigma(0)
        assert g.vertices == [0]
        assert g.edges == frozenset({(0, 0)})
        assert g.sinks == frozenset()

    def test_gamma_one(self):
        g = graph_gamma(1)
        assert g.vertices == [0, 1]
        assert g.sorted_edges == [(0, 0), (0, 1)]

    def test_gamma_has_one_sink(self):
        assert graph_gamma(2).sinks == frozenset({2})
        assert graph_gamma(2).is_sink(2)
        assert not graph_sigma(2).sinks

    def test_edges_around_a_vertex(self):
        g = graph_sigma(2)
        assert g.edges_from(1) == [(1, 1), (1, 2)]
        assert g.edges_into(1) == [(0, 1), (1, 1)]

    def test_paths(self):
        paths = list(graph_gamma(1).paths(2))
        assert paths == [((0, 0),), ((0, 1),), ((0, 0), (0, 0)), ((0, 0), (0, 1))]

    def test_negative_index(self):
        with pytest.raises(ValueError):
            graph_sigma(-1)

    def test_json(self):
        assert graph_gamma(1).to_json() == {"graph": "Γ^1", "vertices": [0, 1],
                                            "edges": [[0, 0], [0, 1]], "sinks": [1]}


class TestWords:
    def test_isometry_rule(self):
        assert reduce_word([Letter(S(0, 0), True), Letter(S(0, 0))]) == (Letter(P(0)),)

    def test_orthogonal_edges(self):
        assert reduce_word([Letter(S(0, 0), True), Letter(S(0, 1))]) is None

    def test_vertex_absorbed(self):
        assert reduce_word([Letter(P(0)), Letter(S(0, 1))]) == (Letter(S(0, 1)),)
        assert reduce_word([Letter(P(1)), Letter(S(0, 1))]) is None

    def test_unknown_generator(self):
        fsig = FreeSignature(graph_gamma(1))
        with pytest.raises(MissingGenerator):
            FreeElement.gen(fsig, S(1, 1))
        with pytest.raises(MissingGenerator):
            FreeElement.gen(fsig, U)

    def test_equality_through_faithful_model(self):
        fsig = FreeSignature(graph_sigma(1))
        s00, s01 = FreeElement.gen(fsig, S(0, 0)), FreeElement.gen(fsig, S(0, 1))
        total = s00 * s00.adjoint() + s01 * s01.adjoint()
        p0 = FreeElement.gen(fsig, P(0))
        assert total != p0
        assert same_element(total, p0)
        assert is_zero_element(total - p0)


class TestCuntzKrieger:
    def test_corrected_toeplitz_graph(self):
        report = ck_check(graph_gamma(1), build_map("toeplitz_graph", 1))
        assert report.status == "pass", report.witness

    def test_literal_toeplitz_graph(self):
        report = ck_check(graph_gamma(1), build_map("toeplitz_graph_literal", 1, validate=False))
        assert report.status == "fail"
        assert report.witness["relation"] == "P_v1* = P_v1"
        assert report.witness["reason"] == "not a projection"

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_rho(self, n):
        report = ck_check(graph_gamma(n), build_map("rho", n), n=n)
        assert report.status == "pass", report.witness
        assert f"v{n} is a sink; no sum relation" in report.notes

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_omega(self, n):
        assert ck_check(graph_sigma(n), build_map("omega", n), n=n).status == "pass"

    def test_graph_mismatch(self):
        with pytest.raises(SignatureMismatch):
            ck_check(graph_gamma(2), build_map("rho", 1))

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_sphere_presentation(self, n):
        assert sphere_relations(n).status == "pass"


class TestMaps:
    def test_names(self):
        assert {"sigma", "rho", "omega", "del", "r", "p1", "p2", "delta"} <= set(map_names())

    def test_unknown_map(self):
        with pytest.raises(UnknownMap):
            build_map("nope", 1)

    def test_index_too_small(self):
        with pytest.raises(UnsupportedIndex):
            build_map("rho", 0)

    def test_p1_last_generator(self):
        p1 = build_map("p1", 2)
        target = Signature.sphere(2) + Signature.toeplitz(1)
        assert p1.target == target
        assert p1(generator(Signature.sphere(3), 2)) == TensorElement.from_slots(target, {2: Shift(1)})

    def test_rho_edge_into_sink(self):
        image = build_map("rho", 2).image(S(0, 2))
        assert image.terms == {(Unit(1, 0), Unit(0, 0)): 1}

    def test_rho_sink_projection(self):
        image = build_map("rho", 2).image(P(2))
        assert image.terms == {(Unit(0, 0), Unit(0, 0)): 1}

    def test_delta(self):
        image = build_map("delta", 1).image(Gen("s", 1))
        assert image.terms == {(Shift(0), Shift(1), Circle(1)): 1}

    def test_omega_on_a_word(self):
        omega = build_map("omega", 2)
        s00 = FreeElement.gen(omega.domain, S(0, 0))
        s0 = generator(omega.target, 0)
        assert omega(s00.adjoint() * s00) == s0 * s0.adjoint()

    def test_sigma_on_an_element(self):
        sigma = build_map("sigma", 2)
        t = [generator(sigma.domain, k) for k in range(3)]
        s = [generator(sigma.target, k) for k in range(3)]
        assert sigma(t[0] * t[1].adjoint()) == s[0] * s[1].adjoint()

    def test_sigma_kills_joint_compacts(self):
        sigma = build_map("sigma", 1)
        e = TensorElement(sigma.domain, {(Unit(0, 0), Unit(0, 0)): 1})
        assert sigma(e).is_zero

    def test_del_after_r_on_the_loop(self):
        composite = compose(build_map("del", 2), build_map("r", 2))
        loop = FreeElement.gen(composite.domain, S(2, 2))
        assert composite(loop).is_zero
        assert composite.name == "∂_2∘r_2"

    def test_apply_on_generators_and_words(self):
        rho = build_map("rho", 1)
        assert apply(rho, S(0, 1)) == rho.image(S(0, 1))
        word = FreeElement.gen(rho.domain, S(0, 0)) * FreeElement.gen(rho.domain, S(0, 1))
        assert apply(rho, word) == rho.image(S(0, 0)) * rho.image(S(0, 1))

    def test_compose_mismatch(self):
        with pytest.raises(SignatureMismatch):
            compose(build_map("rho", 1), build_map("sigma", 1))

    def test_wrong_domain(self):
        with pytest.raises(SignatureMismatch):
            build_map("sigma", 1)(TensorElement.one(Signature.toeplitz(3)))

    def test_tensor_identity_adds_circle(self):
        rho = tensor_identity(build_map("rho", 1))
        assert rho.domain.circle
        assert rho.target == Signature.toeplitz(1) + Signature.circle()
        assert rho.image(U) == generator(rho.target, 1)
        assert ck_check(graph_gamma(1), rho).status == "pass"


class TestInjectivity:
    @pytest.mark.parametrize("name,n", [("toeplitz_graph", 1), ("rho", 1), ("rho", 2), ("omega", 1)])
    def test_graph_maps(self, name, n):
        report = injectivity_sample(build_map(name, n), samples=30, seed=7, max_length=3)
        assert report.status == "pass", report.witness
        assert report.metadata["combinations"] == 30

    def test_delta_on_tensor_domain(self):
        report = injectivity_sample(build_map("delta", 1), samples=20, seed=7)
        assert report.status == "pass", report.witness

    def test_zero_maps_to_zero(self):
        rho = build_map("rho", 2)
        assert rho(FreeElement.zero(rho.domain)).is_zero


class TestEquivariance:
    @pytest.mark.parametrize("name", ["sigma", "rho", "omega", "del", "p1", "p2"])
    def test_gauge_equivariant_maps(self, name):
        report = equivariance_check(build_map(name, 2))
        assert report.status == "pass", report.witness
        assert report.metadata["equivariant"] is True

    def test_r_is_not_equivariant(self):
        report = equivariance_check(build_map("r", 2), expect=False)
        assert report.status == "pass"
        assert report.metadata["equivariant"] is False

    def test_delta_doubles_the_gauge_degree(self):
        assert equivariance_check(build_map("delta", 1), expect=False).status == "pass"
        report = equivariance_check(build_map("delta", 1), expect=True)
        assert report.status == "fail"
        assert all(entry["degrees"] == [2] for entry in report.witness["offending"])

    def test_wrong_expectation_fails(self):
        report = equivariance_check(build_map("r", 2), expect=True)
        assert report.status == "fail"
        assert report.witness["offending"][0]["generator"] == "S_e22"


class TestStructuralIdentities:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_rho_range(self, n):
        assert rho_range_identities(n).status == "pass"

    @pytest.mark.parametrize("n", [1, 2])
    def test_compacts(self, n):
        report = compacts_in_image(n, max_index=1)
        assert report.status == "pass", report.witness

    @pytest.mark.parametrize("n", [1, 2])
    def test_corner_unitary(self, n):
        report = corner_unitary(n)
        assert report.status == "pass", report.witness
        assert report.metadata["u_star_u_is_one"] is False
