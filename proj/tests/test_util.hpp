#pragma once

#include <doctest.h>

#include "pgw/error.hpp"

namespace pgw::test {

/// Run f and report which error code it threw, if any.
template <class F>
std::optional<Errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace pgw::test

#define CHECK_ERRC(expr, code) CHECK(pgw::test::thrown_code([&] { (void)(expr); }) == (code))
