#include <doctest.h>

#include <set>

#include "pgw/census.hpp"
#include "pgw/hermitian.hpp"
#include "pgw/rng.hpp"
#include "test_util.hpp"

using namespace pgw;

namespace {

const Gf& f9() { return Gf::get(3, 2); }

// independent line oracle: spans of all point pairs, deduplicated
std::map<std::uint64_t, std::uint64_t> line_bins_by_pairs(const PointSet& X) {
    const ProjSpace& sp = X.space();
    std::set<std::string> seen;
    std::map<std::uint64_t, std::uint64_t> bins;
    for (std::uint64_t i = 0; i < sp.point_count(); ++i)
        for (std::uint64_t j = i + 1; j < sp.point_count(); ++j) {
            Subspace line = span_points(
                sp, {ProjPoint{sp.point_coords(i)}, ProjPoint{sp.point_coords(j)}});
            std::string key(reinterpret_cast<const char*>(line.basis().row(0).data()),
                            line.basis().rows() * line.basis().cols() * sizeof(Felt));
            if (!seen.insert(key).second) continue;
            ++bins[count_points_in(X, line.basis())];
        }
    return bins;
}

}  // namespace

TEST_CASE("line census of the unital, against a pair-span oracle") {
    ProjSpace pg2(f9(), 2);
    PointSet unital = variety_points(standard_form(pg2));
    Histogram h = line_census(unital, CensusOptions::full_mode());
    CHECK(h.family_size == 91);
    CHECK(h.bins == std::map<std::uint64_t, std::uint64_t>{{1, 28}, {4, 63}});
    CHECK(h.bins == line_bins_by_pairs(unital));
    // conservation: counts add to the family, incidences to |X| * 10
    std::uint64_t total = 0;
    for (const auto& [size, count] : h.bins) total += count;
    CHECK(total == h.family_size);
    CHECK(h.first_moment() == BigInt(28) * 10);

    // the whole plane blocks every line with all m+1 points
    PointSet everything(pg2);
    for (std::uint64_t i = 0; i < pg2.point_count(); ++i) everything.set(i);
    Histogram full = line_census(everything, CensusOptions::full_mode());
    CHECK(full.bins == std::map<std::uint64_t, std::uint64_t>{{10, 91}});
}

TEST_CASE("hyperplane census: dual accumulation equals the generic route") {
    // H(4,9): the two-bin tangent/secant spectrum
    ProjSpace pg4(f9(), 4);
    PointSet variety = variety_points(standard_form(pg4));
    Histogram fast = hyperplane_census(variety);
    CHECK(fast.family_size == 7381);
    CHECK(fast.bins == std::map<std::uint64_t, std::uint64_t>{{253, 2440}, {280, 4941}});
    Histogram generic = flat_census(variety, 3, CensusOptions::full_mode());
    CHECK(fast.bins == generic.bins);
    // first moment: |X| times the hyperplanes through a point
    CHECK(fast.first_moment() == BigInt(2440) * 820);

    // on the plane, hyperplanes are lines; engines must agree on random sets
    ProjSpace pg2(f9(), 2);
    CounterRng rng(21, 0);
    PointSet random_set(pg2);
    for (int i = 0; i < 30; ++i) random_set.set(rng.below(pg2.point_count()));
    CHECK(hyperplane_census(random_set).bins ==
          line_census(random_set, CensusOptions::full_mode()).bins);

    // and over GF(4) in dimension 3
    const Gf& f4 = Gf::get(2, 2);
    ProjSpace pg34(f4, 3);
    PointSet random34(pg34);
    for (int i = 0; i < 40; ++i) random34.set(rng.below(pg34.point_count()));
    CHECK(hyperplane_census(random34).bins ==
          flat_census(random34, 2, CensusOptions::full_mode()).bins);

    // a single point meets the expected dual incidence counts
    ProjSpace pg6(f9(), 6);
    PointSet single(pg6);
    single.set(123456);
    Histogram h = hyperplane_census(single);
    CHECK(h.bins == std::map<std::uint64_t, std::uint64_t>{{0, 531441}, {1, 66430}});
}

TEST_CASE("H(6,9): pivot censuses around the generator-plane witness") {
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);
    Subspace plane = standard_generator_flat(pg6);
    Subspace solid = perp_flat(form, plane);

    Histogram four = flat_census(variety, 4, CensusOptions::through_mode(solid));
    CHECK(four.bins == std::map<std::uint64_t, std::uint64_t>{{2278, 91}});
    Histogram five = flat_census(variety, 5, CensusOptions::through_mode(solid));
    CHECK(five.bins == std::map<std::uint64_t, std::uint64_t>{{21961, 91}});

    // lines through a few variety points never miss the set
    CounterRng rng(22, 0);
    for (int trial = 0; trial < 3; ++trial) {
        std::uint64_t idx = rng.below(pg6.point_count());
        while (!variety.test(idx)) idx = (idx + 1) % pg6.point_count();
        Subspace pivot = span_points(pg6, {ProjPoint{pg6.point_coords(idx)}});
        Histogram h = line_census(variety, CensusOptions::through_mode(pivot));
        CHECK(h.family_size == 66430);
        for (const auto& [size, count] : h.bins) {
            CHECK((size == 1 || size == 4 || size == 10));
            CHECK(count > 0);
        }
    }

    // sampled solid census stays within the four section classes
    Histogram sampled = flat_census(variety, 3, CensusOptions::sample_mode(2000, 99));
    CHECK(sampled.family_size == 2000);
    CHECK(sampled.mode == "sample");
    for (const auto& [size, count] : sampled.bins)
        CHECK((size == 91 || size == 253 || size == 280 || size == 334));
    CHECK(sampled.min_size() >= 91);
}

TEST_CASE("blocking numbers") {
    ProjSpace pg2(f9(), 2);
    // a line as the point set: every line meets it (in 1 or 10 points)
    FlatSource lines = FlatSource::full(pg2, 1);
    PointSet hyper(pg2);
    for_each_point_index(pg2, lines.basis_at(17), [&](std::uint64_t i) { hyper.set(i); });
    BlockingNumber b = blocking_number(hyper, 1, CensusOptions::full_mode());
    CHECK(b.min_size == 1);
    CHECK(b.exact);
    // its complement misses the removed line entirely
    PointSet affine(pg2);
    for (std::uint64_t i = 0; i < pg2.point_count(); ++i)
        if (!hyper.test(i)) affine.set(i);
    CHECK(blocking_number(affine, 1, CensusOptions::full_mode()).min_size == 0);

    // solids through the generator plane of H(6,9): exact minimum 91
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);
    Subspace plane = standard_generator_flat(pg6);
    BlockingNumber solids =
        blocking_number(variety, 3, CensusOptions::through_mode(plane));
    CHECK(solids.min_size == 91);
    CHECK(solids.exact);
    // sampling flags inexactness
    CHECK(!blocking_number(variety, 3, CensusOptions::sample_mode(100, 5)).exact);
}

TEST_CASE("spectrum system: the Eq.-style double count at q = 3") {
    SpectrumSystem sys;
    sys.sizes = {21961, 22123, 22204};
    sys.t0 = 597871;
    sys.t1 = BigInt(199108) * 66430;
    sys.t2 = BigInt(199108) * 199107 * 7381;
    auto solved = spectrum_solve(sys);
    CHECK(solved[21961] == 199108);
    CHECK(solved[22123] == 0);
    CHECK(solved[22204] == 398763);

    SpectrumSystem dup = sys;
    dup.sizes = {21961, 21961, 22204};
    CHECK_ERRC(spectrum_solve(dup), Errc::singular_system);

    SpectrumSystem off = sys;
    off.t1 += 1;
    CHECK_ERRC(spectrum_solve(off), Errc::infeasible_solution);
}

TEST_CASE("spectrum solve round-trips a real census") {
    ProjSpace pg4(f9(), 4);
    PointSet variety = variety_points(standard_form(pg4));
    Histogram h = hyperplane_census(variety);
    // moments straight from the census
    SpectrumSystem sys;
    BigInt t0 = 0, t1 = 0, t2 = 0;
    for (const auto& [size, count] : h.bins) {
        sys.sizes.push_back(size);
        t0 += count;
        t1 += BigInt(size) * count;
        t2 += BigInt(size) * (BigInt(size) - 1) * count;
    }
    sys.t0 = t0;
    sys.t1 = t1;
    sys.t2 = t2;
    auto solved = spectrum_solve(sys);  // two sizes: uses the k < 3 branch
    for (const auto& [size, count] : h.bins) CHECK(solved[size] == count);

    // a padded phantom class must come back as zero
    SpectrumSystem padded = sys;
    padded.sizes = {253, 266, 280};
    auto solved3 = spectrum_solve(padded);
    CHECK(solved3[253] == 2440);
    CHECK(solved3[266] == 0);
    CHECK(solved3[280] == 4941);
}

TEST_CASE("minimum solid search") {
    ProjSpace pg6(f9(), 6);
    HermitianForm form = standard_form(pg6);
    PointSet variety = variety_points(form);
    Subspace plane = standard_generator_flat(pg6);

    SolidSearchResult hit = min_solid_search(variety, {plane}, 0, 0);
    CHECK(hit.size == 91);
    CHECK(hit.bound == 91);
    CHECK(hit.met_bound);
    CHECK(!hit.below_bound);
    CHECK(count_points_in(variety, hit.solid.basis()) == hit.size);

    SolidSearchResult sampled = min_solid_search(variety, {}, 500, 12);
    CHECK(sampled.size >= 91);

    // a solid hint is just counted
    SolidSearchResult direct = min_solid_search(variety, {hit.solid}, 0, 0);
    CHECK(direct.size == 91);

    // knock one plane point out of the set: the witness drops below bound
    PointSet dented = variety;
    std::uint64_t plane_point = 0;
    bool got = false;
    for_each_point_index(pg6, plane.basis(), [&](std::uint64_t i) {
        if (!got) { plane_point = i; got = true; }
    });
    dented.reset(plane_point);
    SolidSearchResult below = min_solid_search(dented, {plane}, 0, 0);
    CHECK(below.size == 90);
    CHECK(below.below_bound);

    CHECK_ERRC(min_solid_search(variety, {}, 0, 0), Errc::no_hint_and_no_budget);
}

TEST_CASE("census determinism across worker counts and seeds") {
    ProjSpace pg4(f9(), 4);
    PointSet variety = variety_points(standard_form(pg4));
    Histogram w1 = hyperplane_census(variety, 1);
    Histogram w3 = hyperplane_census(variety, 3);
    CHECK(w1.bins == w3.bins);

    CensusOptions a = CensusOptions::sample_mode(300, 77, 1);
    CensusOptions b = CensusOptions::sample_mode(300, 77, 3);
    CensusOptions c = CensusOptions::sample_mode(300, 78, 1);
    CHECK(flat_census(variety, 2, a).bins == flat_census(variety, 2, b).bins);
    CHECK(flat_census(variety, 2, a).bins != flat_census(variety, 2, c).bins);

    Histogram l1 = flat_census(variety, 1, CensusOptions::full_mode(1));
    Histogram l4 = flat_census(variety, 1, CensusOptions::full_mode(4));
    CHECK(l1.bins == l4.bins);
    CHECK(l1.to_csv() == l4.to_csv());
}

TEST_CASE("full-mode guard rejects oversized families") {
    ProjSpace pg6(f9(), 6);
    PointSet x(pg6);
    x.set(0);
    CHECK_ERRC(flat_census(x, 3, CensusOptions::full_mode()), Errc::too_many_flats);
}
