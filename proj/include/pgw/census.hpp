#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgw/bigint.hpp"
#include "pgw/projgeom.hpp"

namespace pgw {

/// Intersection spectrum: size -> number of flats meeting the set in that
/// many points.
struct Histogram {
    std::map<std::uint64_t, std::uint64_t> bins;
    std::uint64_t family_size = 0;
    std::string mode;

    std::uint64_t min_size() const;
    std::uint64_t max_size() const;
    /// sum of size * count over the bins
    BigInt first_moment() const;
    std::string to_csv() const;  // "size,count" rows, ascending
};

struct CensusOptions {
    enum class Mode { full, through, sample };
    Mode mode = Mode::full;
    std::optional<Subspace> pivot;   // through mode
    std::uint64_t sample_count = 0;  // sample mode
    std::uint64_t seed = 0;          // sample mode
    int workers = 0;
    std::uint64_t flat_guard = FlatSource::kFullGuard;

    static CensusOptions full_mode(int workers = 0) { return {Mode::full, {}, 0, 0, workers}; }
    static CensusOptions through_mode(Subspace pivot, int workers = 0) {
        return {Mode::through, std::move(pivot), 0, 0, workers};
    }
    static CensusOptions sample_mode(std::uint64_t count, std::uint64_t seed, int workers = 0) {
        return {Mode::sample, {}, count, seed, workers};
    }
};

/// Histogram of |X ∩ S| over the selected family of d-flats.
Histogram flat_census(const PointSet& X, std::uint32_t d, const CensusOptions& opts);
Histogram line_census(const PointSet& X, const CensusOptions& opts);

/// Exact histogram over all hyperplanes via dual accumulation: for every
/// point of X, bump a counter for each hyperplane through it (the dual
/// points of its polar functional's kernel), then bin the counters.
/// Guarded to spaces with at most 10^7 hyperplanes.
Histogram hyperplane_census(const PointSet& X, int workers = 0);

struct BlockingNumber {
    std::uint64_t min_size = 0;
    bool exact = false;  // sampling gives only an upper bound on the minimum
};

BlockingNumber blocking_number(const PointSet& X, std::uint32_t d, const CensusOptions& opts);

/// The double-counting system over candidate intersection sizes s_i:
///   sum x_i = t0,  sum s_i x_i = t1,  sum s_i (s_i - 1) x_i = t2.
struct SpectrumSystem {
    std::vector<std::uint64_t> sizes;  // up to 3, distinct
    BigInt t0, t1, t2;
};

/// Exact rational solution; throws SingularSystem for repeated sizes and
/// InfeasibleSolution when any x_i is negative or non-integral (or, with
/// fewer than 3 sizes, when the leftover moment equations fail).
std::map<std::uint64_t, BigInt> spectrum_solve(const SpectrumSystem& sys);

struct SolidSearchResult {
    Subspace solid;
    std::uint64_t size = 0;
    std::uint64_t bound = 0;  // q^4 + q^2 + 1 = m^2 + m + 1, the blocking-set bound
    bool met_bound = false;   // size == bound
    bool below_bound = false; // size < bound (hypothesis violation signal)
};

/// Search for a minimum-size solid section. Hint planes contained in X are
/// extended by the exact census of all solids through them; hint solids
/// are counted directly; the sample budget adds seeded random solids.
/// Returns the first solid attaining the final minimum.
SolidSearchResult min_solid_search(const PointSet& X, const std::vector<Subspace>& hints,
                                   std::uint64_t sample_count, std::uint64_t seed,
                                   int workers = 0);

}  // namespace pgw
