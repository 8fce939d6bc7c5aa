#include <doctest.h>

#include <set>
#include <sstream>

#include "pgw/projgeom.hpp"
#include "pgw/rng.hpp"
#include "test_util.hpp"

using namespace pgw;

TEST_CASE("point indexing is a bijection in lexicographic order") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg2(f9, 2);
    CHECK(pg2.point_count() == 91);
    ProjSpace pg6(f9, 6);
    CHECK(pg6.point_count() == 597871);

    // round trips for 1000 seeded points
    CounterRng rng(3, 14);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t idx = rng.below(pg6.point_count());
        auto coords = pg6.point_coords(idx);
        CHECK(pg6.point_index(coords) == idx);
    }
    // normalization invariance
    for (int i = 0; i < 200; ++i) {
        std::uint64_t idx = rng.below(pg6.point_count());
        auto coords = pg6.point_coords(idx);
        Felt lambda = 1 + static_cast<Felt>(rng.below(8));
        for (auto& c : coords) c = f9.mul(lambda, c);
        CHECK(pg6.point_index(coords) == idx);
    }
    // full order check on the small plane
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < pg2.point_count(); ++i) {
        auto coords = pg2.point_coords(i);
        if (i > 0) CHECK(i > prev);
        prev = i;
        CHECK(pg2.point_index(coords) == i);
    }

    std::vector<Felt> zero(7, 0);
    CHECK_ERRC(pg6.point_index(zero), Errc::zero_vector);
    CHECK_ERRC(pg6.point_coords(pg6.point_count()), Errc::index_out_of_range);
}

TEST_CASE("span: dimensions and idempotence") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg6(f9, 6);
    CounterRng rng(5, 0);
    auto random_point = [&] { return ProjPoint{pg6.point_coords(rng.below(pg6.point_count()))}; };

    ProjPoint a = random_point(), b = random_point();
    REQUIRE(!(a.coords == b.coords));
    CHECK(span_points(pg6, {a, b}).dim() == 1);
    CHECK(span_points(pg6, {a, a, a}).dim() == 0);
    CHECK(span_points(pg6, {a}).contains_point(a.coords));

    // span of a flat's points reproduces the flat
    Subspace line = span_points(pg6, {a, b});
    std::vector<ProjPoint> pts;
    for_each_point_index(pg6, line.basis(), [&](std::uint64_t i) {
        pts.push_back(ProjPoint{pg6.point_coords(i)});
    });
    CHECK(pts.size() == 10);
    CHECK(span_points(pg6, pts) == line);
}

TEST_CASE("subspace point counts follow the geometric series") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg6(f9, 6);
    CounterRng rng(6, 0);
    for (std::uint32_t d : {1u, 2u, 3u}) {
        FlatSource sample = FlatSource::sampled(pg6, d, 5, rng.next_u64());
        for (std::uint64_t i = 0; i < sample.size(); ++i) {
            PointSet pts = subspace_point_set(pg6, Subspace::from_rref(sample.basis_at(i)));
            std::uint64_t expect = 0, pw = 1;
            for (std::uint32_t j = 0; j <= d; ++j) { expect += pw; pw *= 9; }
            CHECK(pts.card() == expect);  // 10, 91, 820
        }
    }
    // every enumerated point is in the row space
    FlatSource planes = FlatSource::sampled(pg6, 2, 3, 99);
    for (std::uint64_t i = 0; i < planes.size(); ++i) {
        Subspace s = Subspace::from_rref(planes.basis_at(i));
        for_each_point_index(pg6, s.basis(), [&](std::uint64_t idx) {
            CHECK(s.contains_point(pg6.point_coords(idx)));
        });
    }
}

TEST_CASE("gaussian binomials: identities and the paper instances") {
    CHECK(gaussian_binomial(7, 1, 9) == 597871);
    CHECK(gaussian_binomial(5, 0, 9) == 1);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(7, 2, 9) == gaussian_binomial(7, 5, 9));  // duality
    CHECK_ERRC(gaussian_binomial(3, 4, 9), Errc::bad_parameters);
}

TEST_CASE("full flat enumeration: counts, canonical form, no duplicates") {
    // all lines of PG(3,2), checked against the gaussian binomial
    const Gf& f2 = Gf::get(2, 1);
    ProjSpace pg32(f2, 3);
    FlatSource lines = FlatSource::full(pg32, 1);
    CHECK(lines.size() == 35);
    CHECK(BigInt(lines.size()) == gaussian_binomial(4, 2, 2));
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < lines.size(); ++i) {
        Matrix b = lines.basis_at(i);
        Subspace s = Subspace::from_rref(b);  // validates the echelon shape
        CHECK(s.dim() == 1);
        std::ostringstream key;
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) key << b.at(r, c) << ",";
        CHECK(seen.insert(key.str()).second);
    }

    // exhaustive cross-dimension counts over GF(4) and GF(9)
    const Gf& f4 = Gf::get(2, 2);
    for (std::uint32_t n = 2; n <= 4; ++n) {
        ProjSpace sp(f4, n);
        for (std::uint32_t d = 1; d < n; ++d)
            CHECK(BigInt(FlatSource::full(sp, d).size()) ==
                  gaussian_binomial(n + 1, d + 1, 4));
    }
    const Gf& f9 = Gf::get(3, 2);
    for (std::uint32_t n = 2; n <= 3; ++n) {
        ProjSpace sp(f9, n);
        for (std::uint32_t d = 1; d < n; ++d)
            CHECK(BigInt(FlatSource::full(sp, d).size()) ==
                  gaussian_binomial(n + 1, d + 1, 9));
    }
}

TEST_CASE("through-pivot enumeration works in the quotient geometry") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg2(f9, 2);
    ProjSpace pg6(f9, 6);

    // lines through a point of PG(2,9)
    Subspace pt = span_points(pg2, {ProjPoint{pg2.point_coords(17)}});
    FlatSource pencil = FlatSource::through(pg2, 1, pt);
    CHECK(pencil.size() == 10);
    for (std::uint64_t i = 0; i < pencil.size(); ++i)
        CHECK(Subspace::from_rref(pencil.basis_at(i)).contains(pt));

    // 4-spaces through a solid of PG(6,9): the quotient is PG(2,9)
    FlatSource solids = FlatSource::sampled(pg6, 3, 1, 4242);
    Subspace solid = Subspace::from_rref(solids.basis_at(0));
    FlatSource through4 = FlatSource::through(pg6, 4, solid);
    CHECK(through4.size() == 91);
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < through4.size(); ++i) {
        Subspace s = Subspace::from_rref(through4.basis_at(i));
        CHECK(s.dim() == 4);
        CHECK(s.contains(solid));
        std::ostringstream key;
        for (std::size_t r = 0; r < s.basis().rows(); ++r)
            for (std::size_t c = 0; c < s.basis().cols(); ++c) key << s.basis().at(r, c) << ",";
        CHECK(seen.insert(key.str()).second);
    }
    // solids through a plane: 820 = 9^3 + 9^2 + 9 + 1 of them
    FlatSource planes = FlatSource::sampled(pg6, 2, 1, 4243);
    Subspace plane = Subspace::from_rref(planes.basis_at(0));
    CHECK(FlatSource::through(pg6, 3, plane).size() == 820);

    // through-mode flats are a subset of the full enumeration
    ProjSpace pg3(f9, 3);
    Subspace pt3 = span_points(pg3, {ProjPoint{pg3.point_coords(5)}});
    FlatSource all_lines = FlatSource::full(pg3, 1);
    FlatSource through_lines = FlatSource::through(pg3, 1, pt3);
    std::set<std::string> all;
    for (std::uint64_t i = 0; i < all_lines.size(); ++i) {
        std::ostringstream key;
        Matrix b = all_lines.basis_at(i);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) key << b.at(r, c) << ",";
        all.insert(key.str());
    }
    CHECK(through_lines.size() == 91);
    for (std::uint64_t i = 0; i < through_lines.size(); ++i) {
        std::ostringstream key;
        Matrix b = through_lines.basis_at(i);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) key << b.at(r, c) << ",";
        CHECK(all.count(key.str()) == 1);
    }

    CHECK_ERRC(FlatSource::through(pg6, 2, solid), Errc::bad_pivot);
}

TEST_CASE("guards: too many flats, bad sample budgets") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg6(f9, 6);
    CHECK_ERRC(FlatSource::full(pg6, 3), Errc::too_many_flats);
    CHECK_ERRC(FlatSource::sampled(pg6, 1, std::uint64_t{1} << 62, 1), Errc::bad_parameters);
}

TEST_CASE("sampling is deterministic under the seed and duplicate-free") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg6(f9, 6);
    FlatSource a = FlatSource::sampled(pg6, 3, 50, 42);
    FlatSource b = FlatSource::sampled(pg6, 3, 50, 42);
    FlatSource c = FlatSource::sampled(pg6, 3, 50, 43);
    REQUIRE(a.size() == 50);
    std::set<std::string> keys;
    bool same_seed_equal = true, other_seed_equal = true;
    for (std::uint64_t i = 0; i < 50; ++i) {
        same_seed_equal = same_seed_equal && (a.basis_at(i) == b.basis_at(i));
        other_seed_equal = other_seed_equal && (a.basis_at(i) == c.basis_at(i));
        std::ostringstream key;
        Matrix m = a.basis_at(i);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t col = 0; col < m.cols(); ++col) key << m.at(r, col) << ",";
        CHECK(keys.insert(key.str()).second);
    }
    CHECK(same_seed_equal);
    CHECK(!other_seed_equal);
}

TEST_CASE("PGPS round trip is byte-identical") {
    const Gf& f9 = Gf::get(3, 2);
    ProjSpace pg2(f9, 2);
    PointSet s(pg2);
    CounterRng rng(8, 1);
    for (int i = 0; i < 40; ++i) s.set(rng.below(pg2.point_count()));
    std::ostringstream os;
    s.write_pgps(os);
    const std::string bytes = os.str();
    // magic, version, 3x u32, u64, ceil(91/8) bytes
    CHECK(bytes.size() == 4 + 1 + 12 + 8 + 12);
    CHECK(bytes.substr(0, 4) == "PGPS");
    std::istringstream is(bytes);
    PointSet back = PointSet::read_pgps(is);
    CHECK(back == s);
    CHECK(back.card() == s.card());
    std::ostringstream os2;
    back.write_pgps(os2);
    CHECK(os2.str() == bytes);

    std::istringstream junk("nope");
    CHECK_ERRC(PointSet::read_pgps(junk), Errc::io_error);
}
