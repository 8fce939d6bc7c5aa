#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pgw/polyhyp.hpp"

namespace pgw {

/// The classical point-count bounds for degree-d curves and surfaces over
/// a field of order m, all exact integers. The Hermitian-layer entries
/// (piecewise bound, Stohr-Voloch) apply only to degree q+1 curves over
/// GF(q^2) and are emitted only when q is supplied.
struct BoundLedger {
    std::uint32_t field_order = 0;
    std::uint32_t degree = 0;
    std::optional<std::uint32_t> layer_q;

    std::int64_t segre = 0;       // d m + 1; equality iff a pencil of d lines
    std::int64_t homma_kim = 0;   // (d-1) m + 1 for curves without linear components
    std::int64_t surface = 0;     // d m^2 + m + 1 for surfaces in PG(3, m)
    std::optional<std::int64_t> homma_piecewise;  // q^3-(q^2-2) / 24 / 8 by q
    std::optional<std::int64_t> stohr_voloch;     // q (q+1)^2 / 2

    /// The degree-4 GF(4) curves with 14 points sit outside the
    /// homma_kim inequality; they are allow-listed, not bounded.
    bool homma_kim_gf4_exception = false;

    std::map<std::string, std::int64_t> entries() const;
};

BoundLedger make_ledger(std::uint32_t degree, std::uint32_t field_order,
                        std::optional<std::uint32_t> hermitian_layer_q = std::nullopt);

struct CurveCheckReport {
    CurveReport curve;
    BoundLedger ledger;
    bool component_free = false;
    bool hermitian_candidate = false;  // component-free with N = q^3 + 1
    std::string verdict;               // hermitian-candidate | within-piecewise | segre-branch
                                       // | homma-kim-exception | violation
    bool violation = false;
};

/// Lemma-style pipeline for a plane curve of degree q+1 over GF(q^2):
/// detect linear components, then check N against the applicable bound.
/// Component-free curves with N < q^3+1 must satisfy the piecewise bound;
/// N = q^3+1 flags a Hermitian candidate; curves with linear components
/// fall back to the Segre bound.
CurveCheckReport check_curve(const HomoPoly& f, const ProjSpace& plane, std::uint32_t q);

}  // namespace pgw
