#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pgw/error.hpp"

namespace pgw {

/// Canonical element handle: 0 is the zero element, 1 + i is g^i for the
/// fixed generator g. The indexing is stable across runs because the
/// modulus is pinned per (p, k).
using Felt = std::uint32_t;

struct FieldSpec {
    std::uint32_t p = 0;                  // prime characteristic
    std::uint32_t k = 0;                  // extension degree over GF(p)
    std::vector<std::uint32_t> modulus;   // monic irreducible, low-to-high, size k+1
};

/// Table-backed arithmetic in GF(p^k). Immutable after construction and
/// safe to share across threads; every operation is pure.
///
/// Moduli follow the Conway-polynomial convention: a built-in table covers
/// p <= 7, k <= 4, and prime fields of any supported size use x - r with r
/// the least primitive root (which is C(p,1)). The class of x is always a
/// generator of the multiplicative group, which is what makes the
/// discrete-log element order well-defined.
///
/// When k is even the field carries a Hermitian layer GF(q) with q = p^{k/2}:
/// conj is x -> x^q, norm is x^{q+1} and trace is x + x^q, both landing in
/// the fixed subfield.
class Gf {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 20;
    static constexpr std::uint32_t kFullTableMax = 1u << 10;

    Gf(std::uint32_t p, std::uint32_t k);

    /// Process-wide cache; the returned reference lives for the program.
    static const Gf& get(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const { return spec_.p; }
    std::uint32_t k() const { return spec_.k; }
    std::uint32_t order() const { return m_; }
    const FieldSpec& spec() const { return spec_; }

    Felt zero() const { return 0; }
    Felt one() const { return 1; }
    Felt generator() const { return m_ > 2 ? 2 : 1; }

    Felt add(Felt a, Felt b) const {
        if (!add_tab_.empty()) return add_tab_[a * m_ + b];
        return add_large(a, b);
    }
    Felt neg(Felt a) const { return neg_tab_[a]; }
    Felt sub(Felt a, Felt b) const { return add(a, neg(b)); }

    Felt mul(Felt a, Felt b) const {
        if (!mul_tab_.empty()) return mul_tab_[a * m_ + b];
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = (a - 1) + (b - 1);
        if (s >= m_ - 1) s -= m_ - 1;
        return s + 1;
    }
    Felt inv(Felt a) const {
        require(a != 0, Errc::division_by_zero, "inverse of zero");
        return inv_tab_[a];
    }
    Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }
    Felt pow(Felt a, std::int64_t e) const;

    bool has_hermitian_layer() const { return layer_q_ != 0; }
    /// q with GF(q) the declared subfield; only defined when k is even.
    std::uint32_t layer_q() const {
        require(layer_q_ != 0, Errc::no_quadratic_subfield,
                "field has odd extension degree, no GF(q) layer");
        return layer_q_;
    }
    Felt conj(Felt a) const {
        layer_q();
        return conj_tab_[a];
    }
    Felt norm(Felt a) const {
        std::uint32_t q = layer_q();
        if (a == 0) return 0;
        return 1 + static_cast<Felt>((static_cast<std::uint64_t>(a - 1) * (q + 1)) % (m_ - 1));
    }
    Felt trace(Felt a) const { return add(a, conj(a)); }
    bool in_layer_subfield(Felt a) const { return conj(a) == a; }

    /// Embedding of the prime residue v in [0, p).
    Felt from_prime(std::uint32_t v) const;
    /// Coefficients over GF(p), low-to-high, length k.
    std::vector<std::uint32_t> poly_coeffs(Felt a) const;
    Felt from_poly(std::span<const std::uint32_t> coeffs) const;

    std::string describe() const;

private:
    Felt add_large(Felt a, Felt b) const;

    FieldSpec spec_;
    std::uint32_t m_ = 0;
    std::uint32_t layer_q_ = 0;
    std::vector<Felt> poly_of_;   // index -> packed base-p polynomial
    std::vector<Felt> idx_of_;    // packed polynomial -> index
    std::vector<Felt> add_tab_;   // m*m, only for m <= kFullTableMax
    std::vector<Felt> zech_;      // index of 1 + g^d, for larger fields
    std::vector<Felt> mul_tab_;   // m*m, only for m <= kFullTableMax
    std::vector<Felt> neg_tab_;
    std::vector<Felt> inv_tab_;
    std::vector<Felt> conj_tab_;  // only when k even
};

}  // namespace pgw
