#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgw/bigint.hpp"
#include "pgw/matrix.hpp"

namespace pgw {

/// Number of k-dimensional vector subspaces of an n-dimensional vector
/// space over a field of order m. Exact.
BigInt gaussian_binomial(std::uint32_t n, std::uint32_t k, const BigInt& m);

/// PG(n, m): projective space of dimension n over a field of order m.
/// Points carry a stable integer index: normalized coordinate tuples
/// (first nonzero coordinate scaled to 1) ordered lexicographically by
/// element index, which sorts points by descending leading position.
class ProjSpace {
public:
    static constexpr std::uint32_t kMaxCoords = 32;

    ProjSpace(const Gf& f, std::uint32_t n);

    const Gf& field() const { return *field_; }
    std::uint32_t dim() const { return n_; }
    std::uint32_t ncoords() const { return n_ + 1; }
    std::uint64_t point_count() const { return npoints_; }

    bool operator==(const ProjSpace& o) const { return field_ == o.field_ && n_ == o.n_; }

    /// Scale so the first nonzero coordinate is 1. Throws on the zero vector.
    std::vector<Felt> normalize(std::span<const Felt> coords) const;

    std::uint64_t point_index(std::span<const Felt> coords) const;
    std::vector<Felt> point_coords(std::uint64_t index) const;

    /// Index of a vector already known to be normalized with leading 1 at
    /// position `lead`. Hot-path variant of point_index.
    std::uint64_t index_of_normalized(const Felt* coords, std::uint32_t lead) const {
        std::uint64_t v = offsets_[lead];
        const std::uint64_t* pw = powers_.data() + lead + 1;
        for (std::uint32_t j = lead + 1; j <= n_; ++j) v += *pw++ * coords[j];
        return v;
    }

    std::uint64_t leading_offset(std::uint32_t lead) const { return offsets_[lead]; }

private:
    const Gf* field_;
    std::uint32_t n_;
    std::uint64_t npoints_;
    std::vector<std::uint64_t> offsets_;  // offsets_[s]: points with leading position > s
    std::vector<std::uint64_t> powers_;   // powers_[j] = m^(n-j)
};

/// A projective point: normalized homogeneous coordinates.
struct ProjPoint {
    std::vector<Felt> coords;
};

ProjPoint make_point(const ProjSpace& space, std::span<const Felt> coords);

/// A flat of PG(n, m), stored as a reduced-row-echelon basis. Two flats are
/// equal iff their bases compare equal bytewise. The empty flat (no rows,
/// projective dimension -1) is allowed as a marker value.
class Subspace {
public:
    /// Validates that the matrix is in reduced echelon form with nonzero rows.
    static Subspace from_rref(Matrix rref);
    /// Canonicalizes arbitrary spanning rows (zero rows are dropped).
    static Subspace span_rows(const Gf& f, const std::vector<std::vector<Felt>>& rows);
    static Subspace empty(const Gf& f, std::uint32_t ncoords);

    int dim() const { return static_cast<int>(basis_.rows()) - 1; }
    std::uint32_t ncoords() const { return static_cast<std::uint32_t>(basis_.cols()); }
    const Matrix& basis() const { return basis_; }

    bool contains_point(std::span<const Felt> coords) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    explicit Subspace(Matrix m) : basis_(std::move(m)) {}
    Matrix basis_;
};

/// Smallest flat through the given points.
Subspace span_points(const ProjSpace& space, const std::vector<ProjPoint>& points);

/// Membership bitset over point indices of one space.
class PointSet {
public:
    explicit PointSet(const ProjSpace& space);

    const ProjSpace& space() const { return space_; }
    std::uint64_t universe() const { return space_.point_count(); }

    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint64_t i) {
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        dirty_ = true;
    }
    void reset(std::uint64_t i) {
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
        dirty_ = true;
    }

    std::uint64_t card() const;
    void or_with(const PointSet& other);
    bool operator==(const PointSet& o) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    /// PGPS binary format: magic "PGPS", version 1, little-endian u32
    /// p, k, n, little-endian u64 point count, then the bit array padded
    /// to a byte boundary (bit i of byte i/8, least significant first).
    void write_pgps(std::ostream& os) const;
    static PointSet read_pgps(std::istream& is);
    void save_pgps(const std::string& path) const;
    static PointSet load_pgps(const std::string& path);

private:
    ProjSpace space_;
    std::vector<std::uint64_t> words_;
    mutable std::uint64_t card_ = 0;
    mutable bool dirty_ = false;
};

/// Enumerate the point indices of the row space of an RREF basis.
/// The basis rows must be in reduced echelon form; every emitted
/// combination is then automatically normalized, so indices come out of
/// index_of_normalized directly.
template <class Fn>
void for_each_point_index(const ProjSpace& space, const Matrix& basis, Fn&& fn) {
    const Gf& f = space.field();
    const std::uint32_t m = f.order();
    const std::uint32_t nc = space.ncoords();
    const std::size_t rows = basis.rows();
    if (rows == 0) return;

    // pivot of each row = its leading column
    std::array<std::uint32_t, ProjSpace::kMaxCoords> lead{};
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint32_t c = 0;
        while (c < nc && basis.at(r, c) == 0) ++c;
        lead[r] = c;
    }

    // row multiples, indexed [row][scalar][col]
    std::vector<Felt> mult(rows * m * nc);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::uint32_t x = 0; x < m; ++x)
            for (std::uint32_t c = 0; c < nc; ++c)
                mult[(r * m + x) * nc + c] = f.mul(x, basis.at(r, c));

    std::array<Felt, ProjSpace::kMaxCoords> acc{};
    const auto descend = [&](auto&& self, std::size_t row, std::size_t top) -> void {
        if (row == rows) {
            fn(space.index_of_normalized(acc.data(), lead[top]));
            return;
        }
        std::array<Felt, ProjSpace::kMaxCoords> saved = acc;
        const Felt* base = &mult[row * m * nc];
        for (std::uint32_t x = 0; x < m; ++x) {
            const Felt* mrow = base + static_cast<std::size_t>(x) * nc;
            for (std::uint32_t c = lead[row]; c < nc; ++c) acc[c] = f.add(saved[c], mrow[c]);
            self(self, row + 1, top);
        }
        acc = saved;
    };
    for (std::size_t top = 0; top < rows; ++top) {
        acc.fill(0);
        for (std::uint32_t c = 0; c < nc; ++c) acc[c] = basis.at(top, c);
        descend(descend, top + 1, top);
    }
}

/// Visit the points with indices in [begin, end) as fn(coords, index),
/// decoding normalized coordinates into a reused buffer.
template <class Fn>
void for_each_space_point(const ProjSpace& space, std::uint64_t begin, std::uint64_t end,
                          Fn&& fn) {
    const std::uint32_t m = space.field().order();
    const std::uint32_t nc = space.ncoords();
    std::vector<Felt> coords(nc);
    for (std::uint64_t i = begin; i < end; ++i) {
        std::uint32_t s = 0;
        while (i < space.leading_offset(s)) ++s;
        std::fill(coords.begin(), coords.end(), 0);
        coords[s] = 1;
        std::uint64_t rest = i - space.leading_offset(s);
        for (std::uint32_t j = nc - 1; j > s; --j) {
            coords[j] = static_cast<Felt>(rest % m);
            rest /= m;
        }
        fn(static_cast<const Felt*>(coords.data()), i);
    }
}

PointSet subspace_point_set(const ProjSpace& space, const Subspace& flat);
std::uint64_t count_points_in(const PointSet& set, const Matrix& rref_basis);

/// A resolved, random-access family of d-flats. Full and through-pivot
/// families are exact enumerations; sampled families are materialized,
/// deterministic under (seed, draw index) and duplicate-free.
class FlatSource {
public:
    static constexpr std::uint64_t kFullGuard = 100'000'000;  // full-mode flat cap

    static FlatSource full(const ProjSpace& space, std::uint32_t d,
                           std::uint64_t guard = kFullGuard);
    static FlatSource through(const ProjSpace& space, std::uint32_t d, const Subspace& pivot,
                              std::uint64_t guard = kFullGuard);
    static FlatSource sampled(const ProjSpace& space, std::uint32_t d, std::uint64_t count,
                              std::uint64_t seed);

    std::uint64_t size() const { return size_; }
    std::uint32_t flat_dim() const { return d_; }
    const std::string& mode_echo() const { return mode_; }

    /// Canonical RREF basis of flat i; safe to call concurrently.
    Matrix basis_at(std::uint64_t i) const;

private:
    FlatSource(const ProjSpace& space, std::uint32_t d) : space_(space), d_(d) {}

    ProjSpace space_;
    std::uint32_t d_;
    std::uint64_t size_ = 0;
    std::string mode_;

    // full-mode decode tables (also used for the quotient of through-mode)
    struct Combo {
        std::vector<std::uint32_t> pivots;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;  // (row, col)
        std::uint64_t block = 0;   // m^free
        std::uint64_t cum = 0;     // block start
    };
    std::vector<Combo> combos_;
    bool quotient_ = false;
    std::optional<Matrix> pivot_basis_;          // through-mode
    std::vector<std::uint32_t> embed_cols_;      // quotient col -> ambient col
    std::optional<ProjSpace> quotient_space_;
    std::vector<Matrix> materialized_;           // sample-mode

    static void build_full_tables(FlatSource& src, const ProjSpace& space, std::uint32_t d,
                                  std::uint64_t guard);
    Matrix decode_full(std::uint64_t i, const ProjSpace& space) const;
};

}  // namespace pgw
