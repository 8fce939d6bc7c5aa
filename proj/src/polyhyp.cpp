#include "pgw/polyhyp.hpp"

#include <algorithm>
#include <numeric>

#include "pgw/parallel.hpp"

namespace pgw {

HomoPoly HomoPoly::from_terms(const Gf& f, std::uint32_t nvars, std::uint32_t degree,
                              TermMap terms) {
    require(!terms.empty(), Errc::bad_parameters, "the zero polynomial is not accepted here");
    return maybe_zero(f, nvars, degree, std::move(terms));
}

HomoPoly HomoPoly::maybe_zero(const Gf& f, std::uint32_t nvars, std::uint32_t degree,
                              TermMap terms) {
    require(nvars >= 1 && degree >= 1, Errc::bad_parameters, "need nvars >= 1 and degree >= 1");
    for (auto it = terms.begin(); it != terms.end();) {
        require(it->first.size() == nvars, Errc::dimension_mismatch,
                "exponent vector length != nvars");
        std::uint32_t sum = std::accumulate(it->first.begin(), it->first.end(), 0u);
        require(sum == degree, Errc::bad_parameters, "term degree mismatch");
        require(it->second < f.order(), Errc::bad_parameters, "coefficient out of range");
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
    HomoPoly p(f, nvars, degree);
    p.terms_ = std::move(terms);
    return p;
}

Felt HomoPoly::evaluate(std::span<const Felt> coords) const {
    require(coords.size() == nvars_, Errc::dimension_mismatch, "coordinate count != nvars");
    const Gf& f = *field_;
    Felt acc = 0;
    for (const auto& [exps, coeff] : terms_) {
        Felt prod = coeff;
        for (std::uint32_t v = 0; v < nvars_ && prod != 0; ++v)
            if (exps[v]) prod = f.mul(prod, f.pow(coords[v], exps[v]));
        acc = f.add(acc, prod);
    }
    return acc;
}

PolyEvaluator::PolyEvaluator(const HomoPoly& p) : field_(&p.field()), m_(p.field().order()) {
    const Gf& f = *field_;
    pow_tab_.assign(static_cast<std::size_t>(p.degree() + 1) * m_, 0);
    for (std::uint32_t e = 0; e <= p.degree(); ++e)
        for (std::uint32_t x = 0; x < m_; ++x)
            pow_tab_[e * m_ + x] = f.pow(x, e);
    for (const auto& [exps, coeff] : p.terms()) {
        coeffs_.push_back(coeff);
        for (std::uint32_t v = 0; v < p.nvars(); ++v)
            if (exps[v]) {
                factor_var_.push_back(v);
                factor_exp_.push_back(exps[v]);
            }
        term_end_.push_back(factor_var_.size());
    }
}

PointSet rational_points(const HomoPoly& f, const ProjSpace& space, int workers) {
    require(f.nvars() == space.ncoords(), Errc::dimension_mismatch,
            "polynomial variable count != space coordinates");
    require(&f.field() == &space.field(), Errc::field_mismatch,
            "polynomial and space fields differ");
    const int w = resolve_workers(workers);
    const PolyEvaluator ev(f);
    std::vector<PointSet> parts(w, PointSet(space));
    parallel_ranges(space.point_count(), w, [&](int wid, std::uint64_t begin, std::uint64_t end) {
        PointSet& mine = parts[wid];
        for_each_space_point(space, begin, end, [&](const Felt* coords, std::uint64_t i) {
            if (ev.eval(coords) == 0) mine.set(i);
        });
    });
    PointSet out = std::move(parts[0]);
    for (int i = 1; i < w; ++i) out.or_with(parts[i]);
    out.card();
    return out;
}

namespace {

using TermMap = HomoPoly::TermMap;

TermMap term_mul(const TermMap& a, const TermMap& b, const Gf& f) {
    TermMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            HomoPoly::Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
            Felt& slot = out[e];
            slot = f.add(slot, f.mul(ca, cb));
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

HomoPoly restrict_to(const HomoPoly& f, const Subspace& flat) {
    require(f.nvars() == flat.ncoords(), Errc::dimension_mismatch,
            "flat from a different space");
    require(flat.dim() >= 1, Errc::bad_parameters, "restriction needs a flat of dimension >= 1");
    const Gf& gf = f.field();
    const std::uint32_t uvars = static_cast<std::uint32_t>(flat.dim()) + 1;
    const Matrix& b = flat.basis();

    // linear form of each ambient variable in the flat parameters
    std::vector<TermMap> linear(f.nvars());
    for (std::uint32_t v = 0; v < f.nvars(); ++v)
        for (std::uint32_t i = 0; i < uvars; ++i)
            if (b.at(i, v) != 0) {
                HomoPoly::Exps e(uvars, 0);
                e[i] = 1;
                linear[v][e] = b.at(i, v);
            }

    // cache powers of the linear forms as they come up
    std::map<std::pair<std::uint32_t, std::uint32_t>, TermMap> power_cache;
    auto linear_power = [&](std::uint32_t v, std::uint32_t e) -> const TermMap& {
        auto it = power_cache.find({v, e});
        if (it != power_cache.end()) return it->second;
        TermMap r = linear[v];
        for (std::uint32_t i = 1; i < e; ++i) r = term_mul(r, linear[v], gf);
        return power_cache.emplace(std::make_pair(v, e), std::move(r)).first->second;
    };

    TermMap acc;
    for (const auto& [exps, coeff] : f.terms()) {
        TermMap prod;
        prod[HomoPoly::Exps(uvars, 0)] = coeff;
        for (std::uint32_t v = 0; v < f.nvars() && !prod.empty(); ++v)
            if (exps[v]) prod = term_mul(prod, linear_power(v, exps[v]), gf);
        for (const auto& [e, c] : prod) {
            Felt& slot = acc[e];
            slot = gf.add(slot, c);
        }
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second == 0 ? acc.erase(it) : std::next(it);
    return HomoPoly::maybe_zero(gf, uvars, f.degree(), std::move(acc));
}

bool contains_flat(const HomoPoly& f, const Subspace& flat) {
    return restrict_to(f, flat).is_zero();
}

CurveReport linear_components(const HomoPoly& f, const ProjSpace& plane) {
    require(plane.dim() == 2 && f.nvars() == 3, Errc::dimension_mismatch,
            "linear component detection works on plane curves");
    require(f.degree() <= plane.field().order(), Errc::degree_too_high_for_criterion,
            "vanishing criterion needs degree <= field order");
    require(!f.is_zero(), Errc::bad_parameters, "zero polynomial is not a curve");
    const Gf& gf = plane.field();
    CurveReport report;
    report.degree = f.degree();
    report.n_points = rational_points(f, plane).card();

    FlatSource lines = FlatSource::full(plane, 1);
    std::vector<Felt> pt(3);
    for (std::uint64_t i = 0; i < lines.size(); ++i) {
        Matrix basis = lines.basis_at(i);
        bool all_vanish = true;
        // points of the line: b1, then b0 + mu b1 for all mu
        for (std::uint32_t c = 0; c < 3; ++c) pt[c] = basis.at(1, c);
        if (f.evaluate(pt) != 0) continue;
        for (std::uint32_t mu = 0; mu < gf.order() && all_vanish; ++mu) {
            for (std::uint32_t c = 0; c < 3; ++c)
                pt[c] = gf.add(basis.at(0, c), gf.mul(mu, basis.at(1, c)));
            all_vanish = f.evaluate(pt) == 0;
        }
        if (all_vanish) report.component_lines.push_back(Subspace::from_rref(std::move(basis)));
    }
    report.has_linear_component = !report.component_lines.empty();
    return report;
}

HomoPoly fermat_poly(const Gf& f, std::uint32_t nvars) {
    const std::uint32_t d = f.layer_q() + 1;
    HomoPoly::TermMap terms;
    for (std::uint32_t v = 0; v < nvars; ++v) {
        HomoPoly::Exps e(nvars, 0);
        e[v] = static_cast<std::uint8_t>(d);
        terms[e] = f.one();
    }
    return HomoPoly::from_terms(f, nvars, d, std::move(terms));
}

HomoPoly product_of_lines(const Gf& f, const std::vector<std::vector<Felt>>& linear_forms) {
    require(!linear_forms.empty(), Errc::bad_parameters, "need at least one linear form");
    const std::uint32_t nvars = static_cast<std::uint32_t>(linear_forms.front().size());
    TermMap acc;
    acc[HomoPoly::Exps(nvars, 0)] = f.one();
    for (const auto& form : linear_forms) {
        require(form.size() == nvars, Errc::dimension_mismatch, "ragged linear forms");
        TermMap lin;
        for (std::uint32_t v = 0; v < nvars; ++v)
            if (form[v] != 0) {
                HomoPoly::Exps e(nvars, 0);
                e[v] = 1;
                lin[e] = form[v];
            }
        require(!lin.empty(), Errc::zero_vector, "zero linear form");
        acc = term_mul(acc, lin, f);
    }
    return HomoPoly::from_terms(f, nvars, static_cast<std::uint32_t>(linear_forms.size()),
                                std::move(acc));
}

std::vector<HomoPoly::Exps> all_exponents(std::uint32_t nvars, std::uint32_t degree) {
    std::vector<HomoPoly::Exps> out;
    HomoPoly::Exps cur(nvars, 0);
    const auto rec = [&](auto&& self, std::uint32_t var, std::uint32_t left) -> void {
        if (var + 1 == nvars) {
            cur[var] = static_cast<std::uint8_t>(left);
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[var] = static_cast<std::uint8_t>(e);
            self(self, var + 1, left - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

HomoPoly random_poly(const Gf& f, std::uint32_t nvars, std::uint32_t degree, CounterRng& rng) {
    const auto exps = all_exponents(nvars, degree);
    for (;;) {
        HomoPoly::TermMap terms;
        for (const auto& e : exps) {
            Felt c = static_cast<Felt>(rng.below(f.order()));
            if (c != 0) terms[e] = c;
        }
        if (!terms.empty()) return HomoPoly::from_terms(f, nvars, degree, std::move(terms));
    }
}

}  // namespace pgw
