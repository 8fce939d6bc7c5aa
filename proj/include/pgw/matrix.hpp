#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pgw/gf.hpp"

namespace pgw {

/// Dense matrix over one field. Row-major storage; equality is exact and
/// requires the same field object.
class Matrix {
public:
    Matrix(const Gf& f, std::size_t rows, std::size_t cols)
        : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix from_rows(const Gf& f, const std::vector<std::vector<Felt>>& rows);
    static Matrix identity(const Gf& f, std::size_t n);

    const Gf& field() const { return *field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Felt at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Felt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Felt> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Felt> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    struct Echelon {
        Matrix rref;                      // zero rows dropped
        std::vector<std::size_t> pivots;  // pivot column per rref row
        std::size_t rank = 0;
    };

    /// Reduced row echelon form with deterministic pivoting: leftmost
    /// column first, lowest row index among candidates.
    Echelon echelon() const;

    /// RREF basis of the right null space {v : M v = 0}, one vector per
    /// row; zero rows when the kernel is trivial.
    Matrix kernel() const;

    Matrix transposed() const;
    Matrix multiplied(const Matrix& rhs) const;
    /// Entrywise conjugate; requires a Hermitian layer.
    Matrix conjugated() const;
    std::vector<Felt> apply(std::span<const Felt> v) const;  // M v

private:
    const Gf* field_;
    std::size_t rows_, cols_;
    std::vector<Felt> data_;
};

}  // namespace pgw
