"""Tests for dgMor, packing and directed homotopies."""
import random
import pytest
from src.ainf.checker import check_ainf_functor
from src.ainf.functor import PreNatTrans
from src.ainf.nattrans import coboundary_transformation, is_closed
from src.dgmor.category import DgMorCategory, MorArrow, dgmor_compose, dgmor_hom
from src.dgmor.homotopy import solve_directed_homotopy
from src.dgmor.packing import (check_projection_functors, pack_transformation, project_functor, source_target_functors,
                               unpack_transformation)
from src.graded.field import Field
from src.utils.errors import (DegreeMismatch, InvalidPrimitive, NotCocycle, ShapeError,
                              VanishingHypothesisFails)
from tests.factories import (MatrixCategoryBuilder, chain_category, inst1, random_cocycle, random_element,
                             random_injective, random_matrix_category, random_pre_transformation,
                             strict_chain_functor)


def random_arrow(rng, Q, src, tgt, degree):
    B = Q.base
    return Q.arrow(src, tgt, random_element(rng, B, src.A, tgt.A, degree),
                   random_element(rng, B, src.B, tgt.B, degree),
                   random_element(rng, B, src.A, tgt.B, degree - 1), degree)


class TestDgMorCategory:
    """Test cases for DgMorCategory."""

    @pytest.fixture
    def Q(self, inst1_data):
        """dgMor of the inst1 target."""
        return DgMorCategory(inst1_data["B"])

    def test_arrow_components_checked(self, Q):
        """Test h must lie in B(A, B')."""
        B = Q.base
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        with pytest.raises(ShapeError):
            MorArrow(src, tgt, B.basis("s0"), B.basis("s1"), B.zero("X", "X"))

    def test_arrow_degrees_agree(self, Q):
        """Test u of degree 0 and h of degree 0 disagree."""
        B = Q.base
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        with pytest.raises(DegreeMismatch):
            MorArrow(src, tgt, B.basis("s0"), B.basis("s1"), B.basis("s0"))

    def test_square_coboundary(self, Q):
        """Test mu1(s0, s1, 0) between identity objects is (0, 0, s0 - s1)."""
        B = Q.base
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        x = Q.arrow(src, tgt, B.basis("s0"), B.basis("s1"), degree=0)
        assert Q.mu1(x) == Q.arrow(src, tgt, h=B.basis("s0") - B.basis("s1"), degree=1)

    def test_object_must_be_closed_degree_zero(self, Q):
        """Test an object (X, Y, t) is reported."""
        obj = Q.make_object("X", "Y", Q.base.basis("t"))
        assert Q.check_object(obj)
        assert Q.check_object(Q.make_object("X", "Y", Q.base.basis("s0"))) == []

    @pytest.mark.parametrize("tag", ["q", "f2", "f3"])
    def test_structure_matches_twist(self, tag):
        """Test mu1 and mu2 agree with the signed plain differential and composition."""
        rng = random.Random(tag)
        field = Field(tag)
        B = random_matrix_category(rng, field, n_objects=2, injective=False)
        Q = DgMorCategory(B)
        objects = [Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0)),
                   Q.make_object("V1", "V1", random_cocycle(rng, B, "V1", "V1", 0))]
        for degree in (-1, 0, 1):
            x1 = random_arrow(rng, Q, objects[0], objects[1], degree)
            x2 = random_arrow(rng, Q, objects[1], objects[1], 0)
            assert Q.mu1(x1) == Q.mu1_via_twist(x1)
            assert Q.mu2(x2, x1) == Q.mu2_via_twist(x2, x1)
            assert Q.mu1(Q.mu1(x1)).is_zero()

    def test_hom_complex_squares_to_zero(self):
        """Test dgMor hom complexes pass the d o d check."""
        rng = random.Random(3)
        B = random_matrix_category(rng, Field("q"), n_objects=2, injective=False)
        Q = DgMorCategory(B)
        src = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
        tgt = Q.make_object("V1", "V0", random_cocycle(rng, B, "V1", "V0", 0))
        assert Q.hom(src, tgt).check_d_squared() == []

    def test_projections_are_functors(self):
        """Test S and T preserve units, differentials and composites."""
        rng = random.Random(5)
        B = random_matrix_category(rng, Field("f3"), n_objects=2, injective=False)
        Q = DgMorCategory(B)
        obj = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
        arrows = [random_arrow(rng, Q, obj, obj, degree) for degree in (-1, 0, 1)]
        assert check_projection_functors(Q, arrows) == []

    def test_hom_and_compose_helpers(self, Q):
        """Test the hom complex dimensions, unit laws and projections on inst1."""
        B = Q.base
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        hom = dgmor_hom(Q, src, tgt)
        assert hom.space.dims == {-1: 2, 0: 5, 1: 2}
        assert hom.check_d_squared() == []

        x = Q.arrow(src, tgt, B.basis("t"), -B.basis("t"), degree=-1)
        assert dgmor_compose(Q, Q.unit(tgt), x) == x
        assert dgmor_compose(Q, x, Q.unit(src)) == x
        assert source_target_functors(Q.unit(src)) == (B.unit("X"), B.unit("X"))
        assert source_target_functors(src) == ("X", "X")
        assert source_target_functors(x) == (B.basis("t"), -B.basis("t"))


class TestPacking:
    """Test cases for packing transformations into dgMor-valued functors."""

    @pytest.fixture
    def lifted(self, inst1_data):
        """inst1 closed transformation."""
        F, G, B = inst1_data["F"], inst1_data["G"], inst1_data["B"]
        return PreNatTrans(F, G, 0, {"E0": B.unit("X"), "E1": B.unit("Y")}, {("a",): -B.basis("t")})

    def test_closed_packs_to_functor(self, lifted):
        """Test the packed functor satisfies the functor equations."""
        phi = pack_transformation(lifted.F, lifted.G, lifted)
        assert check_ainf_functor(phi, 2).is_valid

    def test_open_packs_to_non_functor(self, inst1_data):
        """Test dropping h1 breaks the functor equation on a."""
        F, G, B = inst1_data["F"], inst1_data["G"], inst1_data["B"]
        h = PreNatTrans(F, G, 0, {"E0": B.unit("X"), "E1": B.unit("Y")})
        report = check_ainf_functor(pack_transformation(F, G, h), 2)
        assert [r["tuple"] for r in report.residuals] == [("a",)]

    def test_unpack(self, lifted):
        """Test unpacking recovers F, G and h."""
        phi = pack_transformation(lifted.F, lifted.G, lifted)
        F, G, h = unpack_transformation(phi)
        assert F.component(("a",)) == lifted.F.component(("a",))
        assert G.component(("a",)) == lifted.G.component(("a",))
        assert h.component(("a",)) == lifted.component(("a",))
        assert h.at("E1") == lifted.at("E1")
        assert project_functor(phi, "target").on_object("E0") == "X"

    def test_degree_must_be_zero(self, inst1_data):
        """Test only degree-0 transformations pack."""
        F, G = inst1_data["F"], inst1_data["G"]
        with pytest.raises(DegreeMismatch):
            pack_transformation(F, G, PreNatTrans(F, G, -1))

    @pytest.mark.parametrize("tag, count", [("f3", 50), ("q", 10), ("f2", 10)])
    def test_packing_matches_closedness(self, tag, count):
        """Test the packed functor is valid exactly when h is closed."""
        rng = random.Random(f"pack:{tag}")
        field = Field(tag)
        E = chain_category(field)
        for _ in range(count):
            B = random_matrix_category(rng, field, n_objects=3, shapes=((0, 1), (1, 1)), injective=False)
            F = strict_chain_functor(rng, E, B, "F")
            G = strict_chain_functor(rng, E, B, "G")
            closed = coboundary_transformation(random_pre_transformation(rng, F, G, -1, max_length=1), 2)
            assert is_closed(closed, 2)
            assert check_ainf_functor(pack_transformation(F, G, closed), 2).is_valid
            h = random_pre_transformation(rng, F, G, 0, max_length=2)
            assert check_ainf_functor(pack_transformation(F, G, h), 2).is_valid == is_closed(h, 2)


class TestDirectedHomotopy:
    """Test cases for solve_directed_homotopy."""

    def test_inst1_degree_one(self, inst1_data):
        """Test the square (s0, s1) between identities is filled by -t."""
        B = inst1_data["B"]
        Q = DgMorCategory(B)
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        x = Q.zero(src, tgt, 1)
        h_tilde = solve_directed_homotopy(Q, src, tgt, x, B.basis("s0"), B.basis("s1"), check_vanishing=False)
        assert h_tilde == -B.basis("t")
        assert Q.mu1(Q.arrow(src, tgt, B.basis("s0"), B.basis("s1"), h_tilde, 0)) == x

    def test_inst1_vanishing_checked(self, inst1_data):
        """Test H0(X, Y) != 0 stops the solver when vanishing is checked."""
        B = inst1_data["B"]
        Q = DgMorCategory(B)
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        with pytest.raises(VanishingHypothesisFails) as excinfo:
            solve_directed_homotopy(Q, src, tgt, Q.zero(src, tgt, 1), B.basis("s0"), B.basis("s1"))
        assert excinfo.value.failures[0]["dimension"] == 1

    def test_not_closed(self, inst1_data):
        """Test a non-closed arrow is rejected."""
        B = inst1_data["B"]
        Q = DgMorCategory(B)
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        x = Q.arrow(src, tgt, B.basis("s0"), B.basis("s1"), degree=0)
        with pytest.raises(NotCocycle):
            solve_directed_homotopy(Q, src, tgt, x, B.zero("X", "Y"), B.zero("X", "Y"))

    def test_invalid_primitive(self, inst1_data):
        """Test u~ must be a primitive of u."""
        B = inst1_data["B"]
        Q = DgMorCategory(B)
        src = Q.make_object("X", "X", B.unit("X"))
        tgt = Q.make_object("Y", "Y", B.unit("Y"))
        with pytest.raises(InvalidPrimitive):
            solve_directed_homotopy(Q, src, tgt, Q.zero(src, tgt, 1), B.basis("t"), B.basis("s1"),
                                    check_vanishing=False)

    def test_nonvanishing_cohomology(self):
        """Test H^-1(B(A, B')) != 0 raises even for the zero arrow."""
        field = Field("q")
        B = MatrixCategoryBuilder(field, {"V0": (0, 1), "V1": (1, 0)}, {"V0": [[]], "V1": []}).build()
        Q = DgMorCategory(B)
        obj = Q.make_object("V0", "V1")
        with pytest.raises(VanishingHypothesisFails) as excinfo:
            solve_directed_homotopy(Q, obj, obj, Q.zero(obj, obj, 0), B.zero("V0", "V0"), B.zero("V1", "V1"))
        assert excinfo.value.failures == [{"degree": -1, "source": "V0", "target": "V1", "dimension": 1}]

    @pytest.mark.parametrize("tag", ["q", "f2", "f5"])
    def test_random_coboundaries(self, tag):
        """Test mu1(u~, v~, h~) = x for x = mu1(w) when H^-1 vanishes."""
        rng = random.Random(f"homotopy:{tag}")
        field = Field(tag)
        for _ in range(17):
            B = random_matrix_category(rng, field, n_objects=2)
            Q = DgMorCategory(B)
            src = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
            tgt = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
            w = random_arrow(rng, Q, src, tgt, -1)
            x = Q.mu1(w)
            h_tilde = solve_directed_homotopy(Q, src, tgt, x, w.u, w.v)
            assert Q.mu1(Q.arrow(src, tgt, w.u, w.v, h_tilde, -1)) == x

    @pytest.mark.parametrize("tag", ["q", "f2"])
    def test_random_obstructed_coboundaries(self, tag):
        """Test a coboundary into a shifted target is refused when H^-1(A, B') != 0."""
        rng = random.Random(f"homotopy-negative:{tag}")
        field = Field(tag)
        for _ in range(5):
            a, b = rng.choice([(0, 1), (0, 2), (1, 2)])
            m = rng.choice([1, 2])
            deltas = {"V0": random_injective(rng, field, b, a), "V1": []}
            B = MatrixCategoryBuilder(field, {"V0": (a, b), "V1": (m, 0)}, deltas).build()
            Q = DgMorCategory(B)
            src = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
            tgt = Q.make_object("V0", "V1", random_cocycle(rng, B, "V0", "V1", 0))
            w = random_arrow(rng, Q, src, tgt, -1)
            with pytest.raises(VanishingHypothesisFails) as excinfo:
                solve_directed_homotopy(Q, src, tgt, Q.mu1(w), w.u, w.v)
            assert excinfo.value.failures[0]["degree"] == -1
            assert excinfo.value.failures[0]["dimension"] == (b - a) * m
