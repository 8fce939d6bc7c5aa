#include "pgw/bounds.hpp"

namespace pgw {

std::map<std::string, std::int64_t> BoundLedger::entries() const {
    std::map<std::string, std::int64_t> out = {
        {"segre", segre}, {"homma_kim", homma_kim}, {"surface", surface}};
    if (homma_piecewise) out["homma_piecewise"] = *homma_piecewise;
    if (stohr_voloch) out["stohr_voloch"] = *stohr_voloch;
    return out;
}

BoundLedger make_ledger(std::uint32_t degree, std::uint32_t field_order,
                        std::optional<std::uint32_t> hermitian_layer_q) {
    require(degree >= 1 && field_order >= 2, Errc::bad_parameters,
            "need degree >= 1 and field order >= 2");
    BoundLedger l;
    l.field_order = field_order;
    l.degree = degree;
    const std::int64_t d = degree, m = field_order;
    l.segre = d * m + 1;
    l.homma_kim = (d - 1) * m + 1;
    l.surface = d * m * m + m + 1;
    l.homma_kim_gf4_exception = (degree == 4 && field_order == 4);
    if (hermitian_layer_q) {
        const std::int64_t q = *hermitian_layer_q;
        require(degree == q + 1 && field_order == static_cast<std::uint32_t>(q * q),
                Errc::bad_parameters,
                "layer entries need degree = q+1 over GF(q^2)");
        l.layer_q = hermitian_layer_q;
        if (q > 3)
            l.homma_piecewise = q * q * q - (q * q - 2);
        else if (q == 3)
            l.homma_piecewise = 24;
        else
            l.homma_piecewise = 8;
        l.stohr_voloch = q * (q + 1) * (q + 1) / 2;
    }
    return l;
}

CurveCheckReport check_curve(const HomoPoly& f, const ProjSpace& plane, std::uint32_t q) {
    require(f.degree() == q + 1, Errc::bad_parameters, "curve degree must be q+1");
    require(plane.field().order() == q * q, Errc::field_mismatch,
            "curve must live over GF(q^2)");
    CurveCheckReport report;
    report.ledger = make_ledger(f.degree(), plane.field().order(), q);
    report.curve = linear_components(f, plane);
    report.component_free = !report.curve.has_linear_component;
    const std::int64_t n = static_cast<std::int64_t>(report.curve.n_points);
    const std::int64_t unital = static_cast<std::int64_t>(q) * q * q + 1;

    if (!report.component_free) {
        report.verdict = n <= report.ledger.segre ? "segre-branch" : "violation";
    } else if (n == unital) {
        report.hermitian_candidate = true;
        report.verdict = "hermitian-candidate";
    } else if (n < unital) {
        report.verdict = n <= *report.ledger.homma_piecewise ? "within-piecewise" : "violation";
    } else if (report.ledger.homma_kim_gf4_exception && n == 14) {
        report.verdict = "homma-kim-exception";
    } else {
        report.verdict = "violation";  // above the Homma-Kim cap q^3 + 1
    }
    report.violation = report.verdict == "violation";
    return report;
}

}  // namespace pgw
