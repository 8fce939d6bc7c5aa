#include <doctest.h>

#include <set>

#include "pgw/hermitian.hpp"
#include "pgw/rng.hpp"
#include "test_util.hpp"

using namespace pgw;

namespace {

const Gf& f9() { return Gf::get(3, 2); }

// change of basis S^T D conj(S) keeps conjugate symmetry and the rank of D
Matrix conjugated_diag(const ProjSpace& sp, std::uint32_t rank, std::uint64_t seed) {
    const Gf& f = sp.field();
    const std::uint32_t nc = sp.ncoords();
    for (std::uint64_t draw = 0;; ++draw) {
        CounterRng rng(seed, draw);
        Matrix s(f, nc, nc);
        for (std::uint32_t r = 0; r < nc; ++r)
            for (std::uint32_t c = 0; c < nc; ++c) s.at(r, c) = static_cast<Felt>(rng.below(f.order()));
        if (s.echelon().rank != nc) continue;
        Matrix d(f, nc, nc);
        for (std::uint32_t i = 0; i < rank; ++i) d.at(i, i) = f.one();
        return s.transposed().multiplied(d).multiplied(s.conjugated());
    }
}

}  // namespace

TEST_CASE("standard form counts match the closed formulas") {
    CHECK(expected_count(6, 3, 0) == 199108);
    CHECK(expected_count(4, 3, 2) == 2278);
    CHECK_ERRC(expected_count(6, 3, 7), Errc::bad_parameters);
    CHECK(hermitian_count(2, 3) == 28);
    CHECK(hermitian_count(5, 3) == 22204);

    for (std::uint32_t r = 2; r <= 5; ++r) {
        ProjSpace sp(f9(), r);
        PointSet pts = variety_points(standard_form(sp));
        CHECK(BigInt(pts.card()) == expected_count(r, 3, 0));
    }
    // and exhaustively over GF(4) up to r = 4
    const Gf& f4 = Gf::get(2, 2);
    for (std::uint32_t r = 2; r <= 4; ++r) {
        ProjSpace sp(f4, r);
        CHECK(BigInt(variety_points(standard_form(sp)).card()) == expected_count(r, 2, 0));
    }
    CHECK(variety_points(standard_form(ProjSpace(f4, 2))).card() == 9);  // q^3 + 1 at q = 2
}

TEST_CASE("radical classification") {
    ProjSpace pg6(f9(), 6);
    CHECK(radical_classify(standard_form(pg6)).t == 0);
    CHECK(radical_classify(standard_form(pg6)).radical.dim() == -1);

    Matrix gram(f9(), 7, 7);
    for (int i = 0; i < 5; ++i) gram.at(i, i) = 1;
    DegeneracyClass dc = radical_classify(make_form(pg6, std::move(gram)));
    CHECK(dc.t == 2);
    CHECK(dc.radical.dim() == 1);
    // the radical is the line x0 = .. = x4 = 0
    std::vector<Felt> e5 = {0, 0, 0, 0, 0, 1, 0}, e6 = {0, 0, 0, 0, 0, 0, 1};
    CHECK(dc.radical.contains_point(e5));
    CHECK(dc.radical.contains_point(e6));

    // a disguised rank-5 form: radical vectors annihilate everything
    HermitianForm hidden = make_form(pg6, conjugated_diag(pg6, 5, 77));
    DegeneracyClass hc = radical_classify(hidden);
    CHECK(hc.t == 2);
    for (std::size_t r = 0; r < hc.radical.basis().rows(); ++r) {
        auto w = hc.radical.basis().row(r);
        for (std::uint32_t v = 0; v < 7; ++v) {
            std::vector<Felt> unit(7, 0);
            unit[v] = 1;
            CHECK(form_eval(hidden, unit, w) == 0);
        }
    }
    // cardinality only depends on (r, t)
    CHECK(BigInt(variety_points(hidden).card()) == expected_count(6, 3, 2));
}

TEST_CASE("perp: tangent and secant sections of H(6,9)") {
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);
    CHECK(variety.card() == 199108);
    CHECK(tangent_section_count(6, 3) == 21961);
    CHECK(secant_section_count(6, 3) == 22204);

    // a point on the variety and one off it
    std::uint64_t on = 0, off = 0;
    for (std::uint64_t i = 0;; ++i)
        if (variety.test(i)) { on = i; break; }
    for (std::uint64_t i = 0;; ++i)
        if (!variety.test(i)) { off = i; break; }

    Subspace tangent = perp_point(form, pg6.point_coords(on));
    CHECK(tangent.dim() == 5);
    CHECK(count_points_in(variety, tangent.basis()) == 21961);
    Subspace secant = perp_point(form, pg6.point_coords(off));
    CHECK(count_points_in(variety, secant.basis()) == 22204);

    // P in perp(P) iff P lies on the variety; perp is symmetric
    CounterRng rng(11, 0);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t pi = rng.below(pg6.point_count());
        std::uint64_t qi = rng.below(pg6.point_count());
        auto pc = pg6.point_coords(pi), qc = pg6.point_coords(qi);
        CHECK(perp_point(form, pc).contains_point(pc) == variety.test(pi));
        CHECK((form_eval(form, qc, pc) == 0) == (form_eval(form, pc, qc) == 0));
    }

    HermitianForm degenerate = make_form(pg6, Matrix(f9(), 7, 7));
    CHECK_ERRC(perp_point(degenerate, pg6.point_coords(0)), Errc::degenerate_form);
}

TEST_CASE("hyperplane classification: poles, round trips, tangent count") {
    ProjSpace pg4(f9(), 4);
    HermitianForm form = standard_form(pg4);
    PointSet variety = variety_points(form);
    CHECK(variety.card() == 2440);

    // perp of a variety point comes back as tangent with the same pole
    std::uint64_t on = 0;
    while (!variety.test(on)) ++on;
    auto pc = pg4.point_coords(on);
    HyperplaneClass cls = classify_hyperplane(form, perp_point(form, pc));
    CHECK(cls.tangent);
    CHECK(cls.pole.coords == pg4.point_coords(on));

    // the coordinate hyperplane x0 = 0 is secant with pole (1,0,..,0)
    ProjSpace pg6(f9(), 6);
    HermitianForm form6 = standard_form(pg6);
    PointSet variety6 = variety_points(form6);
    Matrix h0(f9(), 6, 7);
    for (int i = 0; i < 6; ++i) h0.at(i, i + 1) = 1;
    Subspace x0 = Subspace::from_rref(std::move(h0));
    HyperplaneClass c0 = classify_hyperplane(form6, x0);
    CHECK(!c0.tangent);
    CHECK(c0.pole.coords == pg6.point_coords(pg6.point_index(std::vector<Felt>{1, 0, 0, 0, 0, 0, 0})));
    CHECK(count_points_in(variety6, x0.basis()) == 22204);

    // over all 7381 hyperplanes of PG(4,9): exactly 2440 tangents
    FlatSource hyperplanes = FlatSource::full(pg4, 3);
    CHECK(hyperplanes.size() == 7381);
    std::uint64_t tangents = 0;
    for (std::uint64_t i = 0; i < hyperplanes.size(); ++i) {
        HyperplaneClass c = classify_hyperplane(form, Subspace::from_rref(hyperplanes.basis_at(i)));
        if (c.tangent) ++tangents;
    }
    CHECK(tangents == 2440);

    CHECK_ERRC(classify_hyperplane(form, span_points(pg4, {ProjPoint{pg4.point_coords(3)}})),
               Errc::not_hyperplane);
}

TEST_CASE("cones: construction matches the closed count") {
    // vertex line + Hermitian-curve base inside PG(4,9)
    ProjSpace pg4(f9(), 4);
    Matrix vrows(f9(), 2, 5);
    vrows.at(0, 3) = 1;
    vrows.at(1, 4) = 1;
    Subspace vertex = Subspace::from_rref(std::move(vrows));
    Matrix brows(f9(), 3, 5);
    for (int i = 0; i < 3; ++i) brows.at(i, i) = 1;
    Subspace base_flat = Subspace::from_rref(std::move(brows));
    PointSet base(pg4);
    for_each_point_index(pg4, base_flat.basis(), [&](std::uint64_t i) {
        auto c = pg4.point_coords(i);
        Felt acc = 0;
        for (int v = 0; v < 3; ++v) acc = f9().add(acc, f9().norm(c[v]));
        if (acc == 0) base.set(i);
    });
    CHECK(base.card() == 28);
    PointSet cone = cone_points(pg4, vertex, base, base_flat);
    CHECK(cone.card() == 2278);
    CHECK(BigInt(cone.card()) == expected_count(4, 3, 2));

    // vertex point over an H(4,9) base, inside a PG(5,9)
    ProjSpace pg5(f9(), 5);
    Matrix point_row(f9(), 1, 6);
    point_row.at(0, 5) = 1;
    Subspace pvertex = Subspace::from_rref(std::move(point_row));
    Matrix b5(f9(), 5, 6);
    for (int i = 0; i < 5; ++i) b5.at(i, i) = 1;
    Subspace bflat5 = Subspace::from_rref(std::move(b5));
    PointSet base5(pg5);
    for_each_point_index(pg5, bflat5.basis(), [&](std::uint64_t i) {
        auto c = pg5.point_coords(i);
        Felt acc = 0;
        for (int v = 0; v < 5; ++v) acc = f9().add(acc, f9().norm(c[v]));
        if (acc == 0) base5.set(i);
    });
    CHECK(base5.card() == 2440);
    PointSet cone5 = cone_points(pg5, pvertex, base5, bflat5);
    CHECK(cone5.card() == 21961);

    // empty base: the cone degenerates to the vertex
    PointSet nothing(pg4);
    PointSet just_vertex = cone_points(pg4, vertex, nothing, base_flat);
    CHECK(just_vertex.card() == 10);

    // non-complementary flats are rejected
    CHECK_ERRC(cone_points(pg4, base_flat, base, base_flat), Errc::not_complementary);
}

TEST_CASE("degenerate varieties are vertex-over-base cones (small cases)") {
    for (std::uint32_t r = 2; r <= 3; ++r) {
        ProjSpace sp(f9(), r);
        for (std::uint32_t t = 1; t <= std::min(3u, r); ++t) {
            Matrix gram(f9(), r + 1, r + 1);
            for (std::uint32_t i = 0; i < r + 1 - t; ++i) gram.at(i, i) = 1;
            HermitianForm form = make_form(sp, std::move(gram));
            PointSet variety = variety_points(form);
            DegeneracyClass dc = radical_classify(form);
            REQUIRE(dc.t == t);
            Matrix br(f9(), r + 1 - t, r + 1);
            for (std::uint32_t i = 0; i < r + 1 - t; ++i) br.at(i, i) = 1;
            Subspace base_flat = Subspace::from_rref(std::move(br));
            PointSet base(sp);
            for_each_point_index(sp, base_flat.basis(), [&](std::uint64_t i) {
                if (variety.test(i)) base.set(i);
            });
            PointSet cone = cone_points(sp, dc.radical, base, base_flat);
            CHECK(cone == variety);
            CHECK(BigInt(variety.card()) == expected_count(r, 3, t));
        }
    }
}

TEST_CASE("line spectrum: {1, q+1, q^2+1} everywhere") {
    // exhaustive for the plane and the solid space
    for (std::uint32_t r : {2u, 3u}) {
        ProjSpace sp(f9(), r);
        PointSet variety = variety_points(standard_form(sp));
        FlatSource lines = FlatSource::full(sp, 1);
        std::set<std::uint64_t> sizes;
        for (std::uint64_t i = 0; i < lines.size(); ++i)
            sizes.insert(count_points_in(variety, lines.basis_at(i)));
        if (r == 2) CHECK(sizes == std::set<std::uint64_t>{1, 4});
        else CHECK(sizes == std::set<std::uint64_t>{1, 4, 10});
    }
    // sampled plus all lines through a few points for r = 6
    ProjSpace pg6(f9(), 6);
    PointSet variety = variety_points(standard_form(pg6));
    FlatSource sampled = FlatSource::sampled(pg6, 1, 100000, 2024);
    std::set<std::uint64_t> sizes;
    for (std::uint64_t i = 0; i < sampled.size(); ++i)
        sizes.insert(count_points_in(variety, sampled.basis_at(i)));
    for (std::uint64_t s : sizes) CHECK((s == 1 || s == 4 || s == 10));
    CounterRng rng(31, 0);
    for (int trial = 0; trial < 5; ++trial) {
        ProjPoint p{pg6.point_coords(rng.below(pg6.point_count()))};
        FlatSource through = FlatSource::through(pg6, 1, span_points(pg6, {p}));
        CHECK(through.size() == 66430);
        for (std::uint64_t i = 0; i < through.size(); ++i) {
            std::uint64_t s = count_points_in(variety, through.basis_at(i));
            CHECK((s == 1 || s == 4 || s == 10));
        }
    }
}

TEST_CASE("generator flats and their perp solids") {
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);

    Subspace plane = standard_generator_flat(pg6);
    CHECK(plane.dim() == 2);  // (r-2)/2 at r = 6
    std::uint64_t on_variety = 0, total = 0;
    for_each_point_index(pg6, plane.basis(), [&](std::uint64_t i) {
        ++total;
        on_variety += variety.test(i);
    });
    CHECK(total == 91);
    CHECK(on_variety == 91);

    Subspace solid = perp_flat(form, plane);
    CHECK(solid.dim() == 3);
    CHECK(solid.contains(plane));  // a generator is inside its own perp
    CHECK(count_points_in(variety, solid.basis()) == 91);

    // the induced form on the perp solid has a full-plane radical
    DegeneracyClass induced = radical_classify(induced_form(form, solid));
    CHECK(induced.t == 3);

    // generators exist in the odd-dimensional sections too
    ProjSpace pg3(f9(), 3);
    Subspace gline = standard_generator_flat(pg3);
    CHECK(gline.dim() == 1);
    PointSet v3 = variety_points(standard_form(pg3));
    std::uint64_t on3 = 0;
    for_each_point_index(pg3, gline.basis(), [&](std::uint64_t i) { on3 += v3.test(i); });
    CHECK(on3 == 10);
}

TEST_CASE("solid sections fall into the four induced classes") {
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);
    const std::set<std::uint64_t> classes = {91, 253, 280, 334};
    FlatSource solids = FlatSource::sampled(pg6, 3, 3000, 7);
    for (std::uint64_t i = 0; i < solids.size(); ++i) {
        Subspace s = Subspace::from_rref(solids.basis_at(i));
        std::uint64_t size = count_points_in(variety, s.basis());
        CHECK(classes.count(size) == 1);
        CHECK(size >= 91);
        // the induced degeneracy class predicts the size
        DegeneracyClass dc = radical_classify(induced_form(form, s));
        CHECK(BigInt(size) == expected_count(3, 3, dc.t));
    }
}
