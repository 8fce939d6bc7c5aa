#pragma once

#include <json.hpp>

#include "pgw/census.hpp"
#include "pgw/hermitian.hpp"
#include "pgw/polyhyp.hpp"

namespace pgw {

using Json = nlohmann::ordered_json;

/// {p, k, nvars, degree, terms: [{exps: [..], coeff: index}]}
Json poly_to_json(const HomoPoly& poly);
HomoPoly poly_from_json(const nlohmann::json& j);

/// {mode, family_size, bins: {"size": count, ..}} with bins in ascending
/// numeric order.
Json histogram_to_json(const Histogram& h);

/// {p, k, n, gram: row-major element indices}
Json form_to_json(const HermitianForm& form);
HermitianForm form_from_json(const nlohmann::json& j);

/// "size=count,size=count" shorthand used by the CLI --expect flag.
std::map<std::uint64_t, std::uint64_t> parse_expect_bins(const std::string& text);

}  // namespace pgw
