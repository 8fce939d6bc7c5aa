#include "pgw/census.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pgw/parallel.hpp"

namespace pgw {

std::uint64_t Histogram::min_size() const {
    require(!bins.empty(), Errc::bad_parameters, "empty histogram");
    return bins.begin()->first;
}

std::uint64_t Histogram::max_size() const {
    require(!bins.empty(), Errc::bad_parameters, "empty histogram");
    return bins.rbegin()->first;
}

BigInt Histogram::first_moment() const {
    BigInt acc = 0;
    for (const auto& [size, count] : bins) acc += BigInt(size) * count;
    return acc;
}

std::string Histogram::to_csv() const {
    std::ostringstream os;
    os << "size,count\n";
    for (const auto& [size, count] : bins) os << size << "," << count << "\n";
    return os.str();
}

namespace {

FlatSource resolve_source(const PointSet& X, std::uint32_t d, const CensusOptions& opts) {
    const ProjSpace& sp = X.space();
    switch (opts.mode) {
        case CensusOptions::Mode::full:
            return FlatSource::full(sp, d, opts.flat_guard);
        case CensusOptions::Mode::through:
            require(opts.pivot.has_value(), Errc::bad_pivot, "through mode needs a pivot");
            return FlatSource::through(sp, d, *opts.pivot, opts.flat_guard);
        case CensusOptions::Mode::sample:
            require(opts.sample_count > 0, Errc::bad_parameters,
                    "sample mode needs a positive count");
            return FlatSource::sampled(sp, d, opts.sample_count, opts.seed);
    }
    fail(Errc::bad_parameters, "unknown census mode");
}

}  // namespace

Histogram flat_census(const PointSet& X, std::uint32_t d, const CensusOptions& opts) {
    const FlatSource source = resolve_source(X, d, opts);
    const int w = resolve_workers(opts.workers);
    std::vector<std::map<std::uint64_t, std::uint64_t>> parts(w);
    parallel_ranges(source.size(), w, [&](int wid, std::uint64_t begin, std::uint64_t end) {
        auto& mine = parts[wid];
        for (std::uint64_t i = begin; i < end; ++i)
            ++mine[count_points_in(X, source.basis_at(i))];
    });
    Histogram out;
    out.mode = source.mode_echo();
    out.family_size = source.size();
    for (const auto& part : parts)
        for (const auto& [size, count] : part) out.bins[size] += count;
    return out;
}

Histogram line_census(const PointSet& X, const CensusOptions& opts) {
    return flat_census(X, 1, opts);
}

namespace {

// Bump counters[index(a)] for every normalized dual vector a with a . P = 0.
//
// The kernel's RREF basis solves for the last supported coordinate L of P:
// one row e_j - (P_j / P_L) e_L per column j != L. Each row touches at most
// two coordinates, so a normalized combination is described by its digits
// u_j at the pivot columns plus an accumulated value at column L, and the
// point index can be maintained incrementally instead of re-deriving the
// coordinate vector.
void accumulate_dual_incidences(const ProjSpace& sp, const Felt* coords,
                                std::uint32_t* counters) {
    const Gf& f = sp.field();
    const std::uint32_t nc = sp.ncoords();
    const std::uint32_t n = sp.dim();
    const std::uint32_t m = f.order();

    std::uint32_t last = nc - 1;
    while (coords[last] == 0) --last;
    const Felt inv_last = f.inv(coords[last]);

    std::array<std::uint32_t, ProjSpace::kMaxCoords> cols{};   // pivot column per row
    std::array<std::uint64_t, ProjSpace::kMaxCoords> powm{};   // m^(n - col)
    std::uint32_t rows = 0;
    for (std::uint32_t j = 0; j < nc; ++j)
        if (j != last) cols[rows++] = j;
    std::uint64_t p = 1;
    for (std::uint32_t j = nc; j-- > 0; p *= m) powm[j] = p;
    const std::uint64_t pow_last = powm[last];

    // scaled row coefficients at column L: coef[r][u] = u * (-P_j / P_L)
    std::array<std::array<Felt, 64>, ProjSpace::kMaxCoords> coef;
    for (std::uint32_t r = 0; r < rows; ++r) {
        const Felt c = coords[cols[r]] == 0 ? 0 : f.neg(f.mul(coords[cols[r]], inv_last));
        for (std::uint32_t u = 0; u < m; ++u) coef[r][u] = f.mul(u, c);
    }

    const auto descend = [&](auto&& self, std::uint32_t row, std::uint64_t idx,
                             Felt at_last) -> void {
        if (row == rows) {
            ++counters[idx + static_cast<std::uint64_t>(at_last) * pow_last];
            return;
        }
        const Felt* cf = coef[row].data();
        const std::uint64_t pw = powm[cols[row]];
        if (row + 1 == rows) {
            for (std::uint32_t u = 0; u < m; ++u)
                ++counters[idx + u * pw +
                           static_cast<std::uint64_t>(f.add(at_last, cf[u])) * pow_last];
            return;
        }
        for (std::uint32_t u = 0; u < m; ++u)
            self(self, row + 1, idx + u * pw, f.add(at_last, cf[u]));
    };
    for (std::uint32_t t = 0; t < rows; ++t)
        descend(descend, t + 1, sp.leading_offset(cols[t]), coef[t][1]);
}

}  // namespace

Histogram hyperplane_census(const PointSet& X, int workers) {
    const ProjSpace& sp = X.space();
    const std::uint64_t nhyp = sp.point_count();  // dual count equals the point count
    require(nhyp <= 10'000'000, Errc::too_many_flats,
            "hyperplane census guarded to 10^7 hyperplanes");
    require(sp.field().order() <= 64, Errc::too_many_flats,
            "hyperplane census tuned for desk-scale fields");
    const int w = resolve_workers(workers);

    std::vector<std::vector<std::uint32_t>> counters(w);
    parallel_ranges(sp.point_count(), w, [&](int wid, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t>& mine = counters[wid];
        mine.assign(nhyp, 0);
        for_each_space_point(sp, begin, end, [&](const Felt* coords, std::uint64_t i) {
            if (!X.test(i)) return;
            accumulate_dual_incidences(sp, coords, mine.data());
        });
    });

    std::vector<std::uint64_t> total(nhyp, 0);
    for (const auto& part : counters) {
        if (part.empty()) continue;
        for (std::uint64_t h = 0; h < nhyp; ++h) total[h] += part[h];
    }
    Histogram out;
    out.mode = "full";
    out.family_size = nhyp;
    for (std::uint64_t h = 0; h < nhyp; ++h) ++out.bins[total[h]];
    return out;
}

BlockingNumber blocking_number(const PointSet& X, std::uint32_t d, const CensusOptions& opts) {
    Histogram h = flat_census(X, d, opts);
    return BlockingNumber{h.min_size(), opts.mode != CensusOptions::Mode::sample};
}

std::map<std::uint64_t, BigInt> spectrum_solve(const SpectrumSystem& sys) {
    const std::size_t k = sys.sizes.size();
    require(k >= 1 && k <= 3, Errc::bad_parameters, "spectrum systems carry 1 to 3 sizes");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            require(sys.sizes[i] != sys.sizes[j], Errc::singular_system,
                    "repeated candidate sizes");

    // moment rows: 1, s, s(s-1)
    const std::array<BigInt, 3> totals = {sys.t0, sys.t1, sys.t2};
    auto moment = [&](std::size_t row, std::size_t col) -> BigInt {
        const BigInt s(sys.sizes[col]);
        if (row == 0) return 1;
        if (row == 1) return s;
        return s * (s - 1);
    };

    // Cramer's rule on the leading k x k system
    auto det3 = [&](const std::vector<std::vector<BigInt>>& m) -> BigInt {
        if (m.size() == 1) return m[0][0];
        if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    std::vector<std::vector<BigInt>> base(k, std::vector<BigInt>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) base[r][c] = moment(r, c);
    const BigInt denom = det3(base);
    require(denom != 0, Errc::singular_system, "moment matrix is singular");

    std::map<std::uint64_t, BigInt> out;
    std::vector<BigInt> solution(k);
    for (std::size_t c = 0; c < k; ++c) {
        auto m = base;
        for (std::size_t r = 0; r < k; ++r) m[r][c] = totals[r];
        const BigInt num = det3(m);
        require(num % denom == 0, Errc::infeasible_solution,
                "non-integral solution: the census hypothesis fails");
        BigInt x = num / denom;
        require(x >= 0, Errc::infeasible_solution,
                "negative solution: the census hypothesis fails");
        solution[c] = x;
        out[sys.sizes[c]] = x;
    }
    // leftover moment equations must also hold when k < 3
    for (std::size_t r = k; r < 3; ++r) {
        BigInt acc = 0;
        for (std::size_t c = 0; c < k; ++c) acc += moment(r, c) * solution[c];
        require(acc == totals[r], Errc::infeasible_solution,
                "higher moment equation fails for the solved spectrum");
    }
    return out;
}

SolidSearchResult min_solid_search(const PointSet& X, const std::vector<Subspace>& hints,
                                   std::uint64_t sample_count, std::uint64_t seed, int workers) {
    const ProjSpace& sp = X.space();
    require(sp.dim() >= 4, Errc::bad_parameters, "solid search needs ambient dimension >= 4");
    require(!hints.empty() || sample_count > 0, Errc::no_hint_and_no_budget,
            "need at least one hint flat or a sampling budget");
    const std::uint64_t m = sp.field().order();
    SolidSearchResult best;
    best.bound = m * m + m + 1;
    bool have = false;

    auto consider = [&](const Subspace& solid, std::uint64_t size) {
        if (!have || size < best.size) {
            best.solid = solid;
            best.size = size;
            have = true;
        }
    };

    for (const Subspace& hint : hints) {
        if (hint.dim() == 3) {
            consider(hint, count_points_in(X, hint.basis()));
            continue;
        }
        require(hint.dim() == 2, Errc::bad_parameters, "hints must be planes or solids");
        const FlatSource solids = FlatSource::through(sp, 3, hint);
        const int w = resolve_workers(workers);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> mins(
            w, {~std::uint64_t{0}, ~std::uint64_t{0}});  // (size, first index)
        parallel_ranges(solids.size(), w, [&](int wid, std::uint64_t begin, std::uint64_t end) {
            auto& mine = mins[wid];
            for (std::uint64_t i = begin; i < end; ++i) {
                std::uint64_t size = count_points_in(X, solids.basis_at(i));
                if (size < mine.first) mine = {size, i};
            }
        });
        std::pair<std::uint64_t, std::uint64_t> least = mins[0];
        for (const auto& p : mins)
            if (p.first < least.first || (p.first == least.first && p.second < least.second))
                least = p;
        consider(Subspace::from_rref(solids.basis_at(least.second)), least.first);
    }

    if (sample_count > 0) {
        const FlatSource solids = FlatSource::sampled(sp, 3, sample_count, seed);
        for (std::uint64_t i = 0; i < solids.size(); ++i) {
            std::uint64_t size = count_points_in(X, solids.basis_at(i));
            if (!have || size < best.size)
                consider(Subspace::from_rref(solids.basis_at(i)), size);
        }
    }

    best.met_bound = best.size == best.bound;
    best.below_bound = best.size < best.bound;
    return best;
}

}  // namespace pgw
