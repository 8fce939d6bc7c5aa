#include "pgw/matrix.hpp"

#include <algorithm>

namespace pgw {

Matrix Matrix::from_rows(const Gf& f, const std::vector<std::vector<Felt>>& rows) {
    require(!rows.empty(), Errc::dimension_mismatch, "matrix needs at least one row");
    Matrix m(f, rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == m.cols_, Errc::dimension_mismatch, "ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols_);
    }
    return m;
}

Matrix Matrix::identity(const Gf& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix::Echelon Matrix::echelon() const {
    const Gf& f = *field_;
    Matrix work(*this);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t sel = rows_;
        for (std::size_t i = r; i < rows_; ++i)
            if (work.at(i, c) != 0) { sel = i; break; }
        if (sel == rows_) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols_; ++j) std::swap(work.at(r, j), work.at(sel, j));
        const Felt scale = f.inv(work.at(r, c));
        for (std::size_t j = c; j < cols_; ++j) work.at(r, j) = f.mul(scale, work.at(r, j));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const Felt factor = work.at(i, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols_; ++j)
                work.at(i, j) = f.sub(work.at(i, j), f.mul(factor, work.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix rref(f, r, cols_);
    for (std::size_t i = 0; i < r; ++i)
        std::copy(work.row(i).begin(), work.row(i).end(), rref.row(i).begin());
    return Echelon{std::move(rref), std::move(pivots), r};
}

Matrix Matrix::kernel() const {
    const Gf& f = *field_;
    Echelon e = echelon();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    const std::size_t nullity = cols_ - e.rank;
    Matrix basis(f, nullity, cols_);
    std::size_t out = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        basis.at(out, c) = f.one();
        for (std::size_t i = 0; i < e.rank; ++i)
            basis.at(out, e.pivots[i]) = f.neg(e.rref.at(i, c));
        ++out;
    }
    if (nullity == 0) return basis;
    return basis.echelon().rref;  // canonical form
}

Matrix Matrix::transposed() const {
    Matrix t(*field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::multiplied(const Matrix& rhs) const {
    require(field_ == rhs.field_, Errc::field_mismatch, "matrix fields differ");
    require(cols_ == rhs.rows_, Errc::dimension_mismatch, "inner dimensions differ");
    const Gf& f = *field_;
    Matrix out(f, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < cols_; ++i) {
            const Felt a = at(r, i);
            if (a == 0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out.at(r, c) = f.add(out.at(r, c), f.mul(a, rhs.at(i, c)));
        }
    return out;
}

Matrix Matrix::conjugated() const {
    Matrix out(*this);
    for (Felt& v : out.data_) v = field_->conj(v);
    return out;
}

std::vector<Felt> Matrix::apply(std::span<const Felt> v) const {
    require(v.size() == cols_, Errc::dimension_mismatch, "vector length != cols");
    const Gf& f = *field_;
    std::vector<Felt> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != 0 && v[c] != 0) out[r] = f.add(out[r], f.mul(at(r, c), v[c]));
    return out;
}

}  // namespace pgw
