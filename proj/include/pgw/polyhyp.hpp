#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pgw/projgeom.hpp"
#include "pgw/rng.hpp"

namespace pgw {

/// Homogeneous polynomial over GF(q^2): a term map from exponent vectors
/// (summing to the degree) to nonzero coefficients. The zero polynomial is
/// representable with an empty term map and reported by is_zero();
/// from_terms rejects it, restriction may produce it.
class HomoPoly {
public:
    using Exps = std::vector<std::uint8_t>;
    using TermMap = std::map<Exps, Felt>;

    static HomoPoly from_terms(const Gf& f, std::uint32_t nvars, std::uint32_t degree,
                               TermMap terms);
    /// Internal/derived results; allows the zero polynomial.
    static HomoPoly maybe_zero(const Gf& f, std::uint32_t nvars, std::uint32_t degree,
                               TermMap terms);

    const Gf& field() const { return *field_; }
    std::uint32_t nvars() const { return nvars_; }
    std::uint32_t degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Value at the given coordinates. Zero/nonzero status is
    /// representative-independent by homogeneity.
    Felt evaluate(std::span<const Felt> coords) const;

    bool operator==(const HomoPoly& o) const {
        return field_ == o.field_ && nvars_ == o.nvars_ && degree_ == o.degree_ &&
               terms_ == o.terms_;
    }

private:
    HomoPoly(const Gf& f, std::uint32_t nvars, std::uint32_t degree)
        : field_(&f), nvars_(nvars), degree_(degree) {}

    const Gf* field_;
    std::uint32_t nvars_;
    std::uint32_t degree_;
    TermMap terms_;
};

/// Flattened evaluator with per-exponent power tables, for whole-space runs.
class PolyEvaluator {
public:
    explicit PolyEvaluator(const HomoPoly& p);
    Felt eval(const Felt* coords) const {
        const Gf& f = *field_;
        Felt acc = 0;
        std::size_t fi = 0;
        for (std::size_t t = 0; t < coeffs_.size(); ++t) {
            Felt prod = coeffs_[t];
            const std::size_t fend = term_end_[t];
            for (; fi < fend; ++fi)
                prod = f.mul(prod, pow_tab_[factor_exp_[fi] * m_ + coords[factor_var_[fi]]]);
            acc = f.add(acc, prod);
        }
        return acc;
    }

private:
    const Gf* field_;
    std::uint32_t m_;
    std::vector<Felt> pow_tab_;  // [e * m + x] = x^e
    std::vector<Felt> coeffs_;
    std::vector<std::size_t> term_end_;
    std::vector<std::uint32_t> factor_var_;
    std::vector<std::uint32_t> factor_exp_;
};

/// Exact zero locus over the rational points of the space.
PointSet rational_points(const HomoPoly& f, const ProjSpace& space, int workers = 0);

/// Substitute the flat's parametrization x = sum u_i b_i. Homogeneous of
/// the same degree in dim(flat)+1 variables, or zero when the flat lies in
/// the zero locus.
HomoPoly restrict_to(const HomoPoly& f, const Subspace& flat);

/// True iff the restriction is the zero polynomial (valid as a containment
/// test whenever degree <= field order).
bool contains_flat(const HomoPoly& f, const Subspace& flat);

struct CurveReport {
    std::uint32_t degree = 0;
    std::uint64_t n_points = 0;
    bool has_linear_component = false;
    std::vector<Subspace> component_lines;
};

/// Detect GF(q^2)-lines among the components of a plane curve. A line is a
/// component iff all m+1 of its points vanish; sound and complete for
/// degree <= m since a nonzero binary form of degree d has at most d roots.
CurveReport linear_components(const HomoPoly& f, const ProjSpace& plane);

/// sum_i x_i^{q+1}, the standard Hermitian hypersurface equation.
HomoPoly fermat_poly(const Gf& f, std::uint32_t nvars);

/// Product of the given linear forms (each a coefficient row).
HomoPoly product_of_lines(const Gf& f, const std::vector<std::vector<Felt>>& linear_forms);

/// All exponent vectors of the given total degree, lexicographic order.
std::vector<HomoPoly::Exps> all_exponents(std::uint32_t nvars, std::uint32_t degree);

/// Uniform random polynomial (possibly after internal redraws of the all
/// zero coefficient vector), deterministic for a given rng state.
HomoPoly random_poly(const Gf& f, std::uint32_t nvars, std::uint32_t degree, CounterRng& rng);

}  // namespace pgw
