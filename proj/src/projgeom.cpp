#include "pgw/projgeom.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "pgw/rng.hpp"

namespace pgw {

BigInt gaussian_binomial(std::uint32_t n, std::uint32_t k, const BigInt& m) {
    require(k <= n, Errc::bad_parameters, "gaussian binomial needs 0 <= k <= n");
    BigInt num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(m, n - i) - 1;
        den *= boost::multiprecision::pow(m, i + 1) - 1;
    }
    return num / den;
}

ProjSpace::ProjSpace(const Gf& f, std::uint32_t n) : field_(&f), n_(n) {
    require(n + 1 <= kMaxCoords, Errc::bad_parameters, "projective dimension too large");
    const BigInt m = f.order();
    const BigInt total = (boost::multiprecision::pow(m, n + 1) - 1) / (m - 1);
    require(total <= BigInt(std::uint64_t{1} << 40), Errc::order_too_large,
            "point count exceeds the desk-scale cap");
    npoints_ = static_cast<std::uint64_t>(total);
    powers_.assign(n_ + 1, 1);
    for (std::uint32_t j = n_; j-- > 0;) powers_[j] = powers_[j + 1] * f.order();
    offsets_.assign(n_ + 1, 0);
    for (std::uint32_t s = n_; s-- > 0;) offsets_[s] = offsets_[s + 1] + powers_[s + 1] * 1;
}

std::vector<Felt> ProjSpace::normalize(std::span<const Felt> coords) const {
    require(coords.size() == ncoords(), Errc::dimension_mismatch, "coordinate count mismatch");
    std::vector<Felt> out(coords.begin(), coords.end());
    std::size_t lead = out.size();
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] != 0) { lead = i; break; }
    require(lead < out.size(), Errc::zero_vector, "the zero vector is not a projective point");
    const Felt scale = field_->inv(out[lead]);
    for (auto& c : out) c = field_->mul(scale, c);
    return out;
}

std::uint64_t ProjSpace::point_index(std::span<const Felt> coords) const {
    std::vector<Felt> nrm = normalize(coords);
    std::uint32_t lead = 0;
    while (nrm[lead] == 0) ++lead;
    return index_of_normalized(nrm.data(), lead);
}

std::vector<Felt> ProjSpace::point_coords(std::uint64_t index) const {
    require(index < npoints_, Errc::index_out_of_range, "point index out of range");
    std::uint32_t s = 0;
    while (index < offsets_[s]) ++s;
    std::vector<Felt> out(ncoords(), 0);
    out[s] = field_->one();
    std::uint64_t rest = index - offsets_[s];
    for (std::uint32_t j = n_; j > s; --j) {
        out[j] = static_cast<Felt>(rest % field_->order());
        rest /= field_->order();
    }
    return out;
}

ProjPoint make_point(const ProjSpace& space, std::span<const Felt> coords) {
    return ProjPoint{space.normalize(coords)};
}

// --- Subspace ---

Subspace Subspace::from_rref(Matrix rref) {
    const std::size_t rows = rref.rows(), cols = rref.cols();
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t c = 0;
        while (c < cols && rref.at(r, c) == 0) ++c;
        require(c < cols, Errc::bad_parameters, "zero row in rref basis");
        require(rref.at(r, c) == rref.field().one(), Errc::bad_parameters, "pivot not 1");
        require(first || c > prev, Errc::bad_parameters, "pivots not increasing");
        for (std::size_t i = 0; i < rows; ++i)
            require(i == r || rref.at(i, c) == 0, Errc::bad_parameters,
                    "pivot column not cleared");
        prev = c;
        first = false;
    }
    return Subspace(std::move(rref));
}

Subspace Subspace::span_rows(const Gf& f, const std::vector<std::vector<Felt>>& rows) {
    Matrix m = Matrix::from_rows(f, rows);
    return Subspace(m.echelon().rref);
}

Subspace Subspace::empty(const Gf& f, std::uint32_t ncoords) {
    return Subspace(Matrix(f, 0, ncoords));
}

bool Subspace::contains_point(std::span<const Felt> coords) const {
    // reduce the vector against the rref rows; contained iff it drops to zero
    const Gf& f = basis_.field();
    std::vector<Felt> v(coords.begin(), coords.end());
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t c = 0;
        while (c < v.size() && basis_.at(r, c) == 0) ++c;
        if (c == v.size() || v[c] == 0) continue;
        const Felt factor = v[c];
        for (std::size_t j = c; j < v.size(); ++j)
            v[j] = f.sub(v[j], f.mul(factor, basis_.at(r, j)));
    }
    return std::all_of(v.begin(), v.end(), [](Felt x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
        if (!contains_point(other.basis_.row(r))) return false;
    return true;
}

Subspace span_points(const ProjSpace& space, const std::vector<ProjPoint>& points) {
    require(!points.empty(), Errc::bad_parameters, "span of an empty point list");
    std::vector<std::vector<Felt>> rows;
    rows.reserve(points.size());
    for (const auto& p : points) {
        require(p.coords.size() == space.ncoords(), Errc::dimension_mismatch,
                "point from a different space");
        rows.push_back(space.normalize(p.coords));
    }
    return Subspace::span_rows(space.field(), rows);
}

// --- PointSet ---

PointSet::PointSet(const ProjSpace& space)
    : space_(space), words_((space.point_count() + 63) / 64, 0) {}

std::uint64_t PointSet::card() const {
    if (dirty_) {
        std::uint64_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
        card_ = c;
        dirty_ = false;
    }
    return card_;
}

void PointSet::or_with(const PointSet& other) {
    require(space_ == other.space_, Errc::dimension_mismatch, "point sets over different spaces");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    dirty_ = true;
}

bool PointSet::operator==(const PointSet& o) const {
    return space_ == o.space_ && words_ == o.words_;
}

namespace {
void put_u32(std::ostream& os, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::ostream& os, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(is.get())) << (8 * i);
    return v;
}
std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(is.get())) << (8 * i);
    return v;
}
}  // namespace

void PointSet::write_pgps(std::ostream& os) const {
    os.write("PGPS", 4);
    os.put(1);
    put_u32(os, space_.field().p());
    put_u32(os, space_.field().k());
    put_u32(os, space_.dim());
    put_u64(os, space_.point_count());
    const std::uint64_t nbytes = (space_.point_count() + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        unsigned char byte = static_cast<unsigned char>((words_[b >> 3] >> ((b & 7) * 8)) & 0xff);
        os.put(static_cast<char>(byte));
    }
    require(os.good(), Errc::io_error, "write failed");
}

PointSet PointSet::read_pgps(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    require(is.good() && std::string(magic, 4) == "PGPS", Errc::io_error, "bad PGPS magic");
    require(is.get() == 1, Errc::io_error, "unsupported PGPS version");
    const std::uint32_t p = get_u32(is), k = get_u32(is), n = get_u32(is);
    const std::uint64_t count = get_u64(is);
    const Gf& f = Gf::get(p, k);
    ProjSpace space(f, n);
    require(count == space.point_count(), Errc::io_error, "PGPS point count mismatch");
    PointSet out(space);
    const std::uint64_t nbytes = (count + 7) / 8;
    for (std::uint64_t b = 0; b < nbytes; ++b) {
        int ch = is.get();
        require(ch >= 0, Errc::io_error, "truncated PGPS bit array");
        out.words_[b >> 3] |= static_cast<std::uint64_t>(static_cast<unsigned char>(ch))
                              << ((b & 7) * 8);
    }
    const std::uint32_t tail = count % 8;
    if (tail) {
        // padding bits must be zero for byte-identical round trips
        const std::uint64_t last = nbytes - 1;
        const std::uint64_t byte = (out.words_[last >> 3] >> ((last & 7) * 8)) & 0xff;
        require((byte >> tail) == 0, Errc::io_error, "nonzero padding bits");
    }
    out.dirty_ = true;
    return out;
}

void PointSet::save_pgps(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    require(os.good(), Errc::io_error, "cannot open " + path);
    write_pgps(os);
}

PointSet PointSet::load_pgps(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), Errc::io_error, "cannot open " + path);
    return read_pgps(is);
}

PointSet subspace_point_set(const ProjSpace& space, const Subspace& flat) {
    require(flat.ncoords() == space.ncoords(), Errc::dimension_mismatch,
            "flat from a different space");
    PointSet out(space);
    for_each_point_index(space, flat.basis(), [&](std::uint64_t i) { out.set(i); });
    return out;
}

std::uint64_t count_points_in(const PointSet& set, const Matrix& rref_basis) {
    std::uint64_t count = 0;
    for_each_point_index(set.space(), rref_basis,
                         [&](std::uint64_t i) { count += set.test(i); });
    return count;
}

// --- FlatSource ---

void FlatSource::build_full_tables(FlatSource& src, const ProjSpace& space, std::uint32_t d,
                                   std::uint64_t guard) {
    const std::uint32_t nc = space.ncoords();
    const std::uint32_t k = d + 1;
    const std::uint64_t m = space.field().order();

    // Pivot-column combinations in lexicographic order.
    std::vector<std::uint32_t> combo(k);
    for (std::uint32_t i = 0; i < k; ++i) combo[i] = i;
    BigInt total = 0;
    for (;;) {
        Combo c;
        c.pivots = combo;
        std::vector<bool> is_pivot(nc, false);
        for (std::uint32_t p : combo) is_pivot[p] = true;
        for (std::uint32_t r = 0; r < k; ++r)
            for (std::uint32_t col = combo[r] + 1; col < nc; ++col)
                if (!is_pivot[col]) c.free_pos.emplace_back(r, col);
        BigInt block = boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(c.free_pos.size()));
        total += block;
        require(total <= BigInt(guard), Errc::too_many_flats,
                "full enumeration exceeds the flat-count guard");
        c.block = static_cast<std::uint64_t>(block);
        c.cum = static_cast<std::uint64_t>(total - block);
        src.combos_.push_back(std::move(c));

        // next combination
        std::int32_t i = static_cast<std::int32_t>(k) - 1;
        while (i >= 0 && combo[i] == nc - k + i) --i;
        if (i < 0) break;
        ++combo[i];
        for (std::uint32_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
    src.size_ = static_cast<std::uint64_t>(total);
}

Matrix FlatSource::decode_full(std::uint64_t i, const ProjSpace& space) const {
    // locate the combo block
    std::size_t lo = 0, hi = combos_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (combos_[mid].cum <= i) lo = mid; else hi = mid;
    }
    const Combo& c = combos_[lo];
    std::uint64_t local = i - c.cum;
    const std::uint32_t k = static_cast<std::uint32_t>(c.pivots.size());
    const std::uint64_t m = space.field().order();
    Matrix basis(space.field(), k, space.ncoords());
    for (std::uint32_t r = 0; r < k; ++r) basis.at(r, c.pivots[r]) = space.field().one();
    for (std::size_t j = c.free_pos.size(); j-- > 0;) {
        basis.at(c.free_pos[j].first, c.free_pos[j].second) = static_cast<Felt>(local % m);
        local /= m;
    }
    return basis;
}

FlatSource FlatSource::full(const ProjSpace& space, std::uint32_t d, std::uint64_t guard) {
    require(d < space.dim(), Errc::bad_parameters, "flat dimension must be below the space");
    FlatSource src(space, d);
    build_full_tables(src, space, d, guard);
    src.mode_ = "full";
    return src;
}

FlatSource FlatSource::through(const ProjSpace& space, std::uint32_t d, const Subspace& pivot,
                               std::uint64_t guard) {
    require(d < space.dim(), Errc::bad_parameters, "flat dimension must be below the space");
    require(pivot.ncoords() == space.ncoords(), Errc::bad_pivot, "pivot from a different space");
    const int e = pivot.dim();
    require(e >= 0, Errc::bad_pivot, "pivot flat is empty");
    require(static_cast<std::uint32_t>(e) < d, Errc::bad_pivot,
            "pivot dimension must be below the flat dimension");

    FlatSource src(space, d);
    src.pivot_basis_ = pivot.basis();
    std::vector<bool> is_pivot(space.ncoords(), false);
    {
        const Matrix& w = pivot.basis();
        for (std::size_t r = 0; r < w.rows(); ++r) {
            std::uint32_t c = 0;
            while (w.at(r, c) == 0) ++c;
            is_pivot[c] = true;
        }
    }
    for (std::uint32_t c = 0; c < space.ncoords(); ++c)
        if (!is_pivot[c]) src.embed_cols_.push_back(c);

    // flats of dimension d through the pivot correspond to flats of
    // dimension d-e-1 in the quotient geometry on the complement columns
    const std::uint32_t qn = space.dim() - static_cast<std::uint32_t>(e) - 1;
    src.quotient_space_.emplace(space.field(), qn);
    build_full_tables(src, *src.quotient_space_, d - static_cast<std::uint32_t>(e) - 1, guard);
    src.quotient_ = true;
    src.mode_ = "through";
    return src;
}

FlatSource FlatSource::sampled(const ProjSpace& space, std::uint32_t d, std::uint64_t count,
                               std::uint64_t seed) {
    require(d < space.dim(), Errc::bad_parameters, "flat dimension must be below the space");
    const BigInt total = gaussian_binomial(space.dim() + 1, d + 1, BigInt(space.field().order()));
    require(BigInt(count) <= total, Errc::bad_parameters,
            "requested more distinct flats than exist");
    FlatSource src(space, d);
    src.mode_ = "sample";
    std::unordered_set<std::string> seen;
    const std::uint32_t nc = space.ncoords();
    const std::uint32_t k = d + 1;
    const std::uint64_t m = space.field().order();
    std::uint64_t draw = 0;
    while (src.materialized_.size() < count) {
        CounterRng rng(seed, draw++);
        Matrix cand(space.field(), k, nc);
        for (std::uint32_t r = 0; r < k; ++r)
            for (std::uint32_t c = 0; c < nc; ++c)
                cand.at(r, c) = static_cast<Felt>(rng.below(m));
        Matrix::Echelon e = cand.echelon();
        if (e.rank < k) continue;
        std::string key(reinterpret_cast<const char*>(e.rref.row(0).data()),
                        k * nc * sizeof(Felt));
        if (!seen.insert(key).second) continue;
        src.materialized_.push_back(std::move(e.rref));
    }
    src.size_ = src.materialized_.size();
    return src;
}

Matrix FlatSource::basis_at(std::uint64_t i) const {
    require(i < size_, Errc::index_out_of_range, "flat index out of range");
    if (!materialized_.empty()) return materialized_[i];
    if (!quotient_) return decode_full(i, space_);
    // lift the quotient flat and join with the pivot
    Matrix q = decode_full(i, *quotient_space_);
    const Matrix& w = *pivot_basis_;
    Matrix stacked(space_.field(), w.rows() + q.rows(), space_.ncoords());
    for (std::size_t r = 0; r < w.rows(); ++r)
        std::copy(w.row(r).begin(), w.row(r).end(), stacked.row(r).begin());
    for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < q.cols(); ++c)
            stacked.at(w.rows() + r, embed_cols_[c]) = q.at(r, c);
    return stacked.echelon().rref;
}

}  // namespace pgw
