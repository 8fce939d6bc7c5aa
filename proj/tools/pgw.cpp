#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pgw/bounds.hpp"
#include "pgw/verify.hpp"

namespace {

using namespace pgw;

Json read_json_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), Errc::io_error, "cannot open " + path);
    return Json::parse(is);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    require(os.good(), Errc::io_error, "cannot open " + path);
    os << text;
}

Subspace pivot_from_json(const ProjSpace& space, const Json& j) {
    std::vector<std::vector<Felt>> rows;
    for (const auto& row : j.at("basis")) rows.push_back(row.get<std::vector<Felt>>());
    Subspace s = Subspace::span_rows(space.field(), rows);
    require(s.ncoords() == space.ncoords(), Errc::bad_pivot, "pivot has the wrong width");
    return s;
}

int cmd_build(const std::string& kind, std::uint32_t r, std::uint32_t q, std::uint32_t t,
              const std::string& poly_path, const std::string& out,
              const std::string& summary_path, int workers) {
    PointSet* built = nullptr;
    Json summary;
    summary["command"] = "build";
    summary["kind"] = kind;
    summary["out"] = out;

    std::optional<PointSet> points;
    std::optional<BigInt> expected;
    if (kind == "hermitian" || kind == "fermat") {
        const Gf& f = hermitian_layer_field(q);
        ProjSpace space(f, r);
        summary["p"] = f.p();
        summary["k"] = f.k();
        summary["q"] = q;
        summary["r"] = r;
        if (kind == "fermat") {
            require(t == 0, Errc::bad_parameters, "fermat varieties are nondegenerate");
            points = rational_points(fermat_poly(f, r + 1), space, workers);
        } else {
            summary["t"] = t;
            Matrix gram(f, r + 1, r + 1);
            require(t <= r, Errc::bad_parameters, "need t <= r");
            for (std::uint32_t i = 0; i < r + 1 - t; ++i) gram.at(i, i) = f.one();
            points = variety_points(make_form(space, std::move(gram)), workers);
        }
        expected = expected_count(r, q, t);
    } else if (kind == "poly") {
        require(!poly_path.empty(), Errc::bad_parameters, "--poly file required for kind poly");
        HomoPoly f = poly_from_json(read_json_file(poly_path));
        ProjSpace space(f.field(), f.nvars() - 1);
        summary["p"] = f.field().p();
        summary["k"] = f.field().k();
        summary["r"] = space.dim();
        summary["degree"] = f.degree();
        points = rational_points(f, space, workers);
    } else {
        fail(Errc::bad_parameters, "unknown build kind: " + kind);
    }
    built = &*points;

    built->save_pgps(out);
    summary["cardinality"] = built->card();
    bool pass = true;
    if (expected) {
        summary["expected"] = expected->str();
        pass = BigInt(built->card()) == *expected;
    }
    summary["pass"] = pass;
    const std::string text = summary.dump(2) + "\n";
    if (!summary_path.empty()) write_text_file(summary_path, text);
    std::cout << text;
    return pass ? 0 : 1;
}

int cmd_census(const std::string& in, const std::string& family, const std::string& mode,
               const std::string& pivot_path, std::uint64_t samples, std::uint64_t seed,
               const std::string& expect, const std::string& out_csv,
               const std::string& out_json, int workers) {
    PointSet X = PointSet::load_pgps(in);
    const ProjSpace& space = X.space();

    std::uint32_t d = 0;
    if (family == "lines") d = 1;
    else if (family == "planes") d = 2;
    else if (family == "solids") d = 3;
    else if (family == "4spaces") d = 4;
    else if (family == "5spaces") d = 5;
    else if (family == "hyperplanes") d = space.dim() - 1;
    else fail(Errc::bad_parameters, "unknown family: " + family);
    require(d >= 1 && d < space.dim(), Errc::bad_parameters,
            "family dimension must fit the space");

    CensusOptions opts;
    opts.workers = workers;
    if (mode == "full") {
        opts.mode = CensusOptions::Mode::full;
    } else if (mode == "through") {
        opts.mode = CensusOptions::Mode::through;
        require(!pivot_path.empty(), Errc::bad_pivot, "through mode needs --pivot");
        opts.pivot = pivot_from_json(space, read_json_file(pivot_path));
    } else if (mode == "sample") {
        opts.mode = CensusOptions::Mode::sample;
        require(samples > 0, Errc::bad_parameters, "sample mode needs --samples");
        opts.sample_count = samples;
        opts.seed = seed;
    } else {
        fail(Errc::bad_parameters, "unknown mode: " + mode);
    }

    Histogram h;
    if (family == "hyperplanes" && mode == "full")
        h = hyperplane_census(X, workers);
    else
        h = flat_census(X, d, opts);

    const std::string csv = h.to_csv();
    if (!out_csv.empty()) write_text_file(out_csv, csv);
    if (!out_json.empty()) write_text_file(out_json, histogram_to_json(h).dump(2) + "\n");
    std::cout << csv;

    if (!expect.empty()) {
        const auto want = parse_expect_bins(expect);
        if (want != h.bins) {
            std::cerr << "expect mismatch\n";
            return 1;
        }
    }
    return 0;
}

int cmd_bounds_batch(std::uint32_t q, const std::string& in, const std::string& out) {
    std::ifstream is(in);
    require(is.good(), Errc::io_error, "cannot open " + in);
    const Gf& f = hermitian_layer_field(q);
    ProjSpace plane(f, 2);
    std::ostringstream csv;
    csv << "id,degree,n_points,linear_components,hermitian_candidate,verdict,violation\n";
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const Json j = Json::parse(line);
        const std::string id =
            j.contains("id") ? j.at("id").get<std::string>() : std::to_string(lineno);
        CurveCheckReport r = check_curve(poly_from_json(j), plane, q);
        csv << id << "," << r.curve.degree << "," << r.curve.n_points << ","
            << r.curve.component_lines.size() << "," << (r.hermitian_candidate ? 1 : 0) << ","
            << r.verdict << "," << (r.violation ? 1 : 0) << "\n";
    }
    const std::string text = csv.str();
    if (!out.empty()) write_text_file(out, text);
    std::cout << text;
    return 0;
}

int cmd_verify(std::uint32_t q, int workers, std::uint64_t seed,
               const std::vector<std::string>& skips, const std::string& out,
               bool force_offscale) {
    RunReport report = verify_theorem(q, workers, {skips.begin(), skips.end()}, seed,
                                      force_offscale);
    std::cout << report.summary_lines();
    std::cout << (report.all_pass() ? "VERIFY PASS" : "VERIFY FAIL") << " in "
              << report.wall_seconds << " s\n";
    if (!out.empty()) write_text_file(out, report.to_json().dump(2) + "\n");
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pgw: Hermitian varieties and intersection censuses over PG(n, q^2)"};
    app.require_subcommand(1);

    // build
    std::string kind, poly_path, out = "out.pgps", summary_path;
    std::uint32_t r = 6, q = 3, t = 0;
    std::uint64_t seed = 0, samples = 0;
    int workers = 0;
    auto* build = app.add_subcommand("build", "construct a point set and save it as PGPS");
    build->add_option("--kind", kind, "hermitian | fermat | poly")->required();
    build->add_option("--r", r, "projective dimension");
    build->add_option("--q", q, "Hermitian layer order (field is GF(q^2))");
    build->add_option("--t", t, "radical dimension for degenerate Hermitian varieties");
    build->add_option("--poly", poly_path, "polynomial JSON file (kind poly)");
    build->add_option("--out", out, "output PGPS path");
    build->add_option("--summary", summary_path, "write the JSON summary here too");
    build->add_option("--workers", workers, "worker threads (0 = all cores)");

    // census
    std::string in, family, mode = "full", pivot_path, expect, out_csv, out_json;
    auto* census = app.add_subcommand("census", "intersection spectrum of a point set");
    census->add_option("--in", in, "input PGPS file")->required();
    census->add_option("--family", family, "lines | planes | solids | 4spaces | 5spaces | hyperplanes")
        ->required();
    census->add_option("--mode", mode, "full | through | sample");
    census->add_option("--pivot", pivot_path, "pivot flat JSON ({\"basis\": [[..]]})");
    census->add_option("--samples", samples, "sample count (sample mode)");
    census->add_option("--seed", seed, "sample seed (sample mode)");
    census->add_option("--expect", expect, "size=count,.. exact bins; nonzero exit on mismatch");
    census->add_option("--out", out_csv, "write histogram CSV here");
    census->add_option("--json", out_json, "write histogram JSON here");
    census->add_option("--workers", workers, "worker threads (0 = all cores)");

    // bounds-batch
    std::string bounds_in, bounds_out;
    std::uint32_t bounds_q = 3;
    auto* bounds = app.add_subcommand("bounds-batch", "curve bound reports for JSONL input");
    bounds->add_option("--q", bounds_q, "Hermitian layer order");
    bounds->add_option("--in", bounds_in, "JSONL file, one polynomial per line")->required();
    bounds->add_option("--out", bounds_out, "write the CSV report here");

    // verify-theorem
    std::vector<std::string> skips;
    std::string report_path;
    std::uint32_t vq = 3;
    std::uint64_t vseed = 461;
    bool force_offscale = false;
    auto* verify = app.add_subcommand("verify-theorem",
                                      "run the full desk-scale verification pipeline");
    verify->add_option("--q", vq, "Hermitian layer order (guarded to 3)");
    verify->add_option("--workers", workers, "worker threads (0 = all cores)");
    verify->add_option("--seed", vseed, "seed for the sampled sub-checks");
    verify->add_option("--skip", skips, "check name to skip (repeatable)");
    verify->add_option("--out", report_path, "write the JSON report here");
    verify->add_flag("--force-offscale", force_offscale, "allow q != 3 (mind the budget)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return cmd_build(kind, r, q, t, poly_path, out, summary_path, workers);
        if (census->parsed())
            return cmd_census(in, family, mode, pivot_path, samples, seed, expect, out_csv,
                              out_json, workers);
        if (bounds->parsed()) return cmd_bounds_batch(bounds_q, bounds_in, bounds_out);
        if (verify->parsed())
            return cmd_verify(vq, workers, vseed, skips, report_path, force_offscale);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
