#include "pgw/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace pgw {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Conway polynomials, coefficients low-to-high. Source of determinism for
// element indexing; x is a primitive root modulo each entry.
const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>&
conway_table() {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> t = {
        {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
        {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
        {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
    };
    return t;
}

std::uint32_t least_primitive_root(std::uint32_t p) {
    if (p == 2) return 1;
    std::vector<std::uint32_t> prime_factors;
    std::uint32_t n = p - 1;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) prime_factors.push_back(n);
    auto pow_mod = [p](std::uint64_t b, std::uint32_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    };
    for (std::uint32_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint32_t f : prime_factors)
            if (pow_mod(g, (p - 1) / f) == 1) { ok = false; break; }
        if (ok) return g;
    }
    fail(Errc::non_prime, "no primitive root found; " + std::to_string(p) + " is not prime");
}

// --- small polynomial helpers over GF(p), used only at construction ---

using Poly = std::vector<std::uint64_t>;  // low-to-high, may carry leading zeros

std::size_t poly_degree(const Poly& a) {
    std::size_t d = a.size();
    while (d > 0 && a[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;  // degree of zero treated as 0 by callers that check
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
    const std::size_t db = poly_degree(b);
    while (!poly_is_zero(a) && poly_degree(a) >= db) {
        const std::size_t da = poly_degree(a);
        const std::uint64_t c = a[da];
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t& t = a[da - db + i];
            t = (t + p * p - c * b[i] % p) % p;
        }
    }
    a.resize(db);
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(prod), mod, p);
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool poly_is_irreducible(const Poly& mod, std::uint64_t p) {
    const std::size_t deg = poly_degree(mod);
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly cand(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) { cand[i] = c % p; c /= p; }
            cand[d] = 1;
            if (poly_is_zero(poly_mod(mod, cand, p))) return false;
        }
    }
    return true;
}

std::uint32_t pack(const Poly& a, std::uint64_t p, std::uint32_t k) {
    std::uint64_t v = 0;
    for (std::size_t i = k; i-- > 0;) v = v * p + (i < a.size() ? a[i] : 0);
    return static_cast<std::uint32_t>(v);
}

}  // namespace

Gf::Gf(std::uint32_t p, std::uint32_t k) {
    require(is_prime(p), Errc::non_prime, std::to_string(p) + " is not prime");
    require(k >= 1, Errc::bad_parameters, "extension degree must be >= 1");
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        m *= p;
        require(m <= kMaxOrder, Errc::order_too_large,
                "field order exceeds the desk-scale cap 2^20");
    }
    m_ = static_cast<std::uint32_t>(m);
    spec_.p = p;
    spec_.k = k;
    if (k == 1) {
        std::uint32_t r = least_primitive_root(p);
        spec_.modulus = {(p - r) % p, 1};  // x - r
    } else {
        auto it = conway_table().find({p, k});
        require(it != conway_table().end(), Errc::no_modulus_available,
                "no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
        spec_.modulus = it->second;
    }
    const Poly modulus(spec_.modulus.begin(), spec_.modulus.end());
    require(poly_is_irreducible(modulus, p), Errc::no_modulus_available,
            "modulus is reducible");
    if (k % 2 == 0) {
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < k / 2; ++i) q *= p;
        layer_q_ = static_cast<std::uint32_t>(q);
    }

    // Discrete-log indexing: walk the powers of x.
    poly_of_.assign(m_, 0);
    idx_of_.assign(m_, 0);
    Poly x = {0, 1};
    if (k == 1) x = poly_mod(x, modulus, p);
    Poly cur = {1};
    for (std::uint32_t i = 1; i < m_; ++i) {
        std::uint32_t packed = pack(cur, p, k);
        require(idx_of_[packed] == 0 && packed != 0, Errc::no_modulus_available,
                "modulus is not primitive: x has order < m-1");
        poly_of_[i] = packed;
        idx_of_[packed] = i;
        cur = poly_mul_mod(cur, x, modulus, p);
    }
    require(pack(cur, p, k) == poly_of_[1], Errc::no_modulus_available,
            "generator order check failed");

    // Additive structure. Coefficientwise addition expressed on indices.
    auto add_packed = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            out += (a % p + b % p) % p * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return out;
    };
    neg_tab_.assign(m_, 0);
    for (std::uint32_t i = 1; i < m_; ++i) {
        std::uint32_t packed = poly_of_[i];
        std::uint32_t negp = 0, mult = 1, a = packed;
        for (std::uint32_t j = 0; j < k; ++j) {
            negp += (p - a % p) % p * mult;
            a /= p;
            mult *= p;
        }
        neg_tab_[i] = idx_of_[negp];
    }
    if (m_ <= kFullTableMax) {
        add_tab_.assign(static_cast<std::size_t>(m_) * m_, 0);
        for (std::uint32_t a = 0; a < m_; ++a)
            for (std::uint32_t b = 0; b <= a; ++b) {
                Felt s = idx_of_[add_packed(poly_of_[a], poly_of_[b])];
                add_tab_[a * m_ + b] = s;
                add_tab_[b * m_ + a] = s;
            }
        mul_tab_.assign(static_cast<std::size_t>(m_) * m_, 0);
        for (std::uint32_t a = 1; a < m_; ++a)
            for (std::uint32_t b = 1; b < m_; ++b) {
                std::uint32_t s = (a - 1) + (b - 1);
                if (s >= m_ - 1) s -= m_ - 1;
                mul_tab_[a * m_ + b] = s + 1;
            }
    } else {
        zech_.assign(m_ - 1, 0);
        for (std::uint32_t d = 0; d < m_ - 1; ++d)
            zech_[d] = idx_of_[add_packed(poly_of_[1], poly_of_[d + 1])];
    }
    inv_tab_.assign(m_, 0);
    for (std::uint32_t a = 1; a < m_; ++a)
        inv_tab_[a] = 1 + (m_ - 1 - (a - 1)) % (m_ - 1);

    if (layer_q_ != 0) {
        conj_tab_.assign(m_, 0);
        for (std::uint32_t a = 1; a < m_; ++a)
            conj_tab_[a] =
                1 + static_cast<Felt>(static_cast<std::uint64_t>(a - 1) * layer_q_ % (m_ - 1));
    }
}

Felt Gf::add_large(Felt a, Felt b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t i = a - 1, j = b - 1;
    std::uint32_t d = j >= i ? j - i : j + (m_ - 1) - i;
    Felt z = zech_[d];
    if (z == 0) return 0;
    std::uint32_t s = i + (z - 1);
    if (s >= m_ - 1) s -= m_ - 1;
    return s + 1;
}

Felt Gf::pow(Felt a, std::int64_t e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        fail(Errc::division_by_zero, "0 raised to a negative power");
    }
    const std::int64_t ord = m_ - 1;
    std::int64_t r = e % ord;
    if (r < 0) r += ord;
    return 1 + static_cast<Felt>(static_cast<std::uint64_t>(a - 1) * r % ord);
}

Felt Gf::from_prime(std::uint32_t v) const {
    require(v < spec_.p, Errc::bad_parameters, "residue out of range");
    return idx_of_[v];
}

std::vector<std::uint32_t> Gf::poly_coeffs(Felt a) const {
    require(a < m_, Errc::index_out_of_range, "element index out of range");
    std::vector<std::uint32_t> out(spec_.k);
    std::uint32_t packed = poly_of_[a];
    for (std::uint32_t i = 0; i < spec_.k; ++i) {
        out[i] = packed % spec_.p;
        packed /= spec_.p;
    }
    return out;
}

Felt Gf::from_poly(std::span<const std::uint32_t> coeffs) const {
    require(coeffs.size() == spec_.k, Errc::dimension_mismatch, "coefficient count != k");
    std::uint32_t packed = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        require(coeffs[i] < spec_.p, Errc::bad_parameters, "coefficient out of range");
        packed = packed * spec_.p + coeffs[i];
    }
    return idx_of_[packed];
}

std::string Gf::describe() const {
    std::ostringstream os;
    os << "GF(" << spec_.p;
    if (spec_.k > 1) os << "^" << spec_.k;
    os << "), modulus";
    for (std::size_t i = 0; i < spec_.modulus.size(); ++i) os << " " << spec_.modulus[i];
    return os.str();
}

const Gf& Gf::get(std::uint32_t p, std::uint32_t k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Gf>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot = std::make_unique<Gf>(p, k);
    return *slot;
}

}  // namespace pgw
