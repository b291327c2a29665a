// projfeas run --experiment cs --algorithm averaged --out trace.csv

#include "projfeas/emit.hpp"
#include "projfeas/errors.hpp"
#include "projfeas/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

const std::vector<std::string> kExperiments{"cs",          "two-lines", "subspaces",
                                            "circle-line", "perturbed", "inexact"};
const std::vector<std::string> kAlgorithms{"averaged", "alternating-product", "cyclic",
                                           "alternating"};
const std::vector<std::string> kFormats{"csv", "json"};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projection methods for feasibility problems"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "Run one experiment and write its trace");

    std::string experiment = "cs";
    std::string algorithm = "averaged";
    std::string format = "csv";
    std::string out_path;
    bool quiet = false;

    // Parsed into a scratch config; unset flags keep the per-experiment defaults.
    projfeas::ExperimentConfig v;
    double theta_deg = 0.0;

    run->add_option("--experiment", experiment, "cs | two-lines | subspaces | circle-line | perturbed | inexact")
        ->check(CLI::IsMember(kExperiments));
    auto* alg_opt = run->add_option("--algorithm", algorithm,
                                    "averaged | alternating-product | cyclic (experimental: no "
                                    "rate guarantee for three or more sets) | alternating (two sets)")
                        ->check(CLI::IsMember(kAlgorithms));
    auto* n_opt = run->add_option("--n", v.n, "cs: dictionary rows; subspaces: ambient dimension");
    auto* m_opt = run->add_option("--m-dict", v.m_dict, "cs: dictionary columns");
    auto* d_opt = run->add_option("--d-rows", v.d_rows, "cs: rows of the compression matrix");
    auto* alpha_opt = run->add_option("--alpha", v.alpha, "cs: entrywise bound");
    auto* theta_opt = run->add_option("--theta", v.theta, "two-line angle in radians, in (0, pi/2]");
    auto* theta_deg_opt = run->add_option("--theta-deg", theta_deg, "two-line angle in degrees")
                              ->excludes(theta_opt);
    auto* eps_opt = run->add_option("--eps", v.run.inexact_eps, "inexactness, in [0, 1)");
    auto* seed_opt = run->add_option("--seed", v.run.seed, "RNG seed");
    auto* iter_opt = run->add_option("--max-iter", v.run.max_iter, "iteration budget");
    auto* tol_opt = run->add_option("--stop-tol", v.run.stop_tol, "stop once f <= stop_tol^2");
    auto* sets_opt = run->add_option("--sets", v.sets, "subspaces: number of subspaces");
    auto* sub_opt = run->add_option("--sub-dim", v.sub_dim, "subspaces: dimension of each");
    auto* shift_opt = run->add_option("--shift", v.shift, "perturbed: norm of the shift");
    auto* c_opt = run->add_option("--c", v.c, "perturbed: constant c above cbar");
    auto* proj_flag = run->add_flag("--project-initial", v.project_initial,
                                    "cs: start from the projection of a Gaussian matrix");
    run->add_option("--out", out_path, "output file")->required();
    run->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember(kFormats));
    run->add_flag("--quiet", quiet, "suppress the summary on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    auto cfg = projfeas::ExperimentConfig::for_experiment(*projfeas::parse_experiment(experiment));
    if (alg_opt->count()) cfg.algorithm = *projfeas::parse_algorithm(algorithm);
    if (n_opt->count()) cfg.n = v.n;
    if (m_opt->count()) cfg.m_dict = v.m_dict;
    if (d_opt->count()) cfg.d_rows = v.d_rows;
    if (alpha_opt->count()) cfg.alpha = v.alpha;
    if (theta_opt->count()) cfg.theta = v.theta;
    if (theta_deg_opt->count()) cfg.theta = theta_deg * std::numbers::pi / 180.0;
    if (eps_opt->count()) cfg.run.inexact_eps = v.run.inexact_eps;
    if (seed_opt->count()) cfg.run.seed = v.run.seed;
    if (iter_opt->count()) cfg.run.max_iter = v.run.max_iter;
    if (tol_opt->count()) cfg.run.stop_tol = v.run.stop_tol;
    if (sets_opt->count()) cfg.sets = v.sets;
    if (sub_opt->count()) cfg.sub_dim = v.sub_dim;
    if (shift_opt->count()) cfg.shift = v.shift;
    if (c_opt->count()) cfg.c = v.c;
    if (proj_flag->count()) cfg.project_initial = v.project_initial;

    try {
        cfg.validate();
        auto result = projfeas::run_experiment(cfg);
        projfeas::emit(result, *projfeas::parse_format(format), out_path);
        if (!quiet) std::cout << projfeas::format_summary(result);
        return 0;
    } catch (const projfeas::ArgumentError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const projfeas::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
