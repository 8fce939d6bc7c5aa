#include "pgw/serial.hpp"

#include <sstream>

namespace pgw {

Json poly_to_json(const HomoPoly& poly) {
    Json j;
    j["p"] = poly.field().p();
    j["k"] = poly.field().k();
    j["nvars"] = poly.nvars();
    j["degree"] = poly.degree();
    Json terms = Json::array();
    for (const auto& [exps, coeff] : poly.terms()) {
        Json t;
        t["exps"] = exps;
        t["coeff"] = coeff;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

HomoPoly poly_from_json(const nlohmann::json& j) {
    const Gf& f = Gf::get(j.at("p").get<std::uint32_t>(), j.at("k").get<std::uint32_t>());
    HomoPoly::TermMap terms;
    for (const auto& t : j.at("terms")) {
        HomoPoly::Exps exps = t.at("exps").get<HomoPoly::Exps>();
        terms[exps] = t.at("coeff").get<Felt>();
    }
    return HomoPoly::from_terms(f, j.at("nvars").get<std::uint32_t>(),
                                j.at("degree").get<std::uint32_t>(), std::move(terms));
}

Json histogram_to_json(const Histogram& h) {
    Json j;
    j["mode"] = h.mode;
    j["family_size"] = h.family_size;
    Json bins = Json::object();
    for (const auto& [size, count] : h.bins) bins[std::to_string(size)] = count;
    j["bins"] = std::move(bins);
    return j;
}

Json form_to_json(const HermitianForm& form) {
    Json j;
    j["p"] = form.space.field().p();
    j["k"] = form.space.field().k();
    j["n"] = form.space.dim();
    std::vector<Felt> gram;
    for (std::size_t r = 0; r < form.gram.rows(); ++r)
        for (std::size_t c = 0; c < form.gram.cols(); ++c) gram.push_back(form.gram.at(r, c));
    j["gram"] = std::move(gram);
    return j;
}

HermitianForm form_from_json(const nlohmann::json& j) {
    const Gf& f = Gf::get(j.at("p").get<std::uint32_t>(), j.at("k").get<std::uint32_t>());
    const std::uint32_t n = j.at("n").get<std::uint32_t>();
    ProjSpace space(f, n);
    const auto flat = j.at("gram").get<std::vector<Felt>>();
    require(flat.size() == static_cast<std::size_t>(n + 1) * (n + 1), Errc::dimension_mismatch,
            "gram entry count != (n+1)^2");
    Matrix gram(f, n + 1, n + 1);
    for (std::uint32_t r = 0; r <= n; ++r)
        for (std::uint32_t c = 0; c <= n; ++c) gram.at(r, c) = flat[r * (n + 1) + c];
    return make_form(space, std::move(gram));
}

std::map<std::uint64_t, std::uint64_t> parse_expect_bins(const std::string& text) {
    std::map<std::uint64_t, std::uint64_t> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        require(eq != std::string::npos, Errc::bad_parameters,
                "--expect wants size=count,size=count");
        out[std::stoull(item.substr(0, eq))] = std::stoull(item.substr(eq + 1));
    }
    require(!out.empty(), Errc::bad_parameters, "--expect parsed no bins");
    return out;
}

}  // namespace pgw
