#pragma once

#include <stdexcept>
#include <string>

namespace pgw {

/// Error codes mirror the failure modes of the public operations; tests
/// dispatch on the code, messages are for humans.
enum class Errc {
    non_prime,
    no_modulus_available,
    order_too_large,
    division_by_zero,
    field_mismatch,
    no_quadratic_subfield,
    zero_vector,
    index_out_of_range,
    too_many_flats,
    bad_pivot,
    bad_parameters,
    degenerate_form,
    not_hyperplane,
    not_complementary,
    dimension_mismatch,
    degree_too_high_for_criterion,
    singular_system,
    infeasible_solution,
    no_hint_and_no_budget,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace pgw
