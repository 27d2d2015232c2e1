#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "cylcycles/analysis.hpp"
#include "cylcycles/bounds.hpp"
#include "cylcycles/errors.hpp"
#include "cylcycles/model_io.hpp"

namespace {

int run_analyze(const std::string& path, const cylcycles::AnalysisOptions& options,
                const std::optional<std::string>& out_dir) {
    const cylcycles::PiecewiseField field = cylcycles::load_model(path);
    const cylcycles::AnalysisReport report = cylcycles::analyze(field, options);
    const nlohmann::json j = cylcycles::analysis_report_to_json(report);
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        std::ofstream(std::filesystem::path(*out_dir) / "report.json") << j.dump(2) << '\n';
        std::ofstream(std::filesystem::path(*out_dir) / "cycles.csv")
            << cylcycles::analysis_report_to_csv(report);
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_bound(std::size_t n, std::size_t M, bool two_region, std::size_t m, std::size_t N) {
    const cylcycles::BoundReport report =
        two_region ? cylcycles::bound_two_regions(m, N) : cylcycles::bound_general(n, M);
    std::cout << cylcycles::bound_report_to_json(report).dump(2) << '\n';
    return 0;
}

int run_reproduce(const std::string& name, int k, double eps, std::size_t M, std::size_t n) {
    cylcycles::ReproduceResult result;
    if (name == "coll") {
        result = cylcycles::reproduce_coll(k, eps);
    } else if (name == "max-crossings") {
        result = cylcycles::reproduce_max_crossings(M, n);
    } else if (name == "constant-sign") {
        result = cylcycles::reproduce_constant_sign();
    } else if (name == "gasull") {
        result = cylcycles::reproduce_gasull();
    } else {
        std::cerr << "unknown experiment: " << name << '\n';
        return 2;
    }
    nlohmann::json j = result.details;
    j["experiment"] = name;
    j["pass"] = result.pass;
    std::cout << j.dump(2) << '\n';
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossing limit cycles and Hilbert-number bounds for piecewise-linear "
                 "periodic scalar fields"};
    app.require_subcommand(1);

    std::string model_path;
    cylcycles::AnalysisOptions options;
    std::optional<std::string> out_dir;
    double x_lo = 0.0, x_hi = 0.0;
    auto* analyze = app.add_subcommand("analyze", "Analyze a model file");
    analyze->add_option("model", model_path, "Model JSON file")->required();
    auto* lo_opt = analyze->add_option("--x-lo", x_lo, "Lower search bound");
    auto* hi_opt = analyze->add_option("--x-hi", x_hi, "Upper search bound");
    analyze->add_option("--grid", options.grid, "Displacement scan resolution");
    analyze->add_option("--lambda", options.lambda, "Constant shift added to every b");
    analyze->add_option("--threads", options.threads, "Workers for the grid scan");
    std::string out_value;
    auto* out_opt = analyze->add_option("--out", out_value, "Directory for report.json and cycles.csv");

    std::size_t n = 1, M = 1, m = 1, N = 1;
    bool two_region = false;
    auto* bound = app.add_subcommand("bound", "Evaluate a Hilbert-number bound");
    bound->add_option("--n", n, "Number of splitting lines");
    bound->add_option("--M", M, "Coefficient degree");
    bound->add_flag("--two-region", two_region, "Use the single-line bound in m and N");
    bound->add_option("--m", m, "Transition-map degree parameter");
    auto* n_cap_opt = bound->add_option("--N", N, "Forcing degree parameter (defaults to m)");

    std::string experiment;
    int k = 5;
    double eps = 0.1;
    std::size_t rn = 2, rM = 1;
    auto* reproduce = app.add_subcommand("reproduce", "Run a reproduction experiment");
    reproduce->add_option("experiment", experiment,
                          "coll | max-crossings | constant-sign | gasull")
        ->required();
    reproduce->add_option("--k", k, "Harmonic index for coll");
    reproduce->add_option("--eps", eps, "Perturbation size for coll");
    reproduce->add_option("--M", rM, "Degree for max-crossings");
    reproduce->add_option("--n", rn, "Line count for max-crossings");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            if (lo_opt->count()) options.x_lo = x_lo;
            if (hi_opt->count()) options.x_hi = x_hi;
            if (out_opt->count()) out_dir = out_value;
            return run_analyze(model_path, options, out_dir);
        }
        if (bound->parsed()) {
            if (!n_cap_opt->count()) N = m;
            return run_bound(n, M, two_region, m, N);
        }
        return run_reproduce(experiment, k, eps, rM, rn);
    } catch (const cylcycles::ModelParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cylcycles::ArgumentMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cylcycles::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
