#pragma once

#include "projfeas/algorithms.hpp"
#include "projfeas/diagnostics.hpp"
#include "projfeas/regularity.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace projfeas {

enum class ExperimentKind { kCs, kTwoLines, kSubspaces, kCircleLine, kPerturbed, kInexact };

/// kAlternating only applies to two-set experiments.
enum class AlgorithmChoice { kAveraged, kAlternatingProduct, kCyclic, kAlternating };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(AlgorithmChoice a);
std::optional<ExperimentKind> parse_experiment(std::string_view s);
std::optional<AlgorithmChoice> parse_algorithm(std::string_view s);

/// Max ratio reported for the single compression-matrix instance it was
/// originally observed on; echoed for comparison only.
inline constexpr double kReferenceCsMaxRatio = 0.9627;

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kCs;
    AlgorithmChoice algorithm = AlgorithmChoice::kAveraged;

    // cs: W is n x m_dict, P is d_rows x n.  subspaces: n is the ambient dimension.
    Eigen::Index n = 128;
    Eigen::Index m_dict = 512;
    Eigen::Index d_rows = 32;
    double alpha = 0.1;
    bool project_initial = false;  // cs: U0 = P_L(Gaussian) instead of P0 W

    double theta = 1.0471975511965976;  // pi / 3, two-line angle in radians

    int sets = 3;                // subspaces: number of subspaces
    Eigen::Index sub_dim = 4;    // subspaces: dimension of each
    double shift = 0.01;         // perturbed: |d|
    double c = 0.6;              // perturbed: constant in the bound (1+c)/(1-c)|d|

    RunConfig run;

    /// Throws ArgumentError on an inconsistent configuration.
    void validate() const;

    /// Defaults sized for the given experiment (the synthetic ones are small).
    static ExperimentConfig for_experiment(ExperimentKind kind);
};

struct ExperimentSummary {
    std::size_t iterations = 0;  // transitions performed
    double final_f = 0.0;
    double max_ratio = 0.0;        // over qlinear_ratios
    double asymptotic_ratio = 0.0; // last ratio above the floor
    bool monotone = true;          // f nonincreasing
    bool stalled = false;          // f fell by under 0.1% over the last 50 iterations, above stop_tol^2
    std::optional<RateFit> rms_fit;       // fit of sqrt(2 f), the RMS distance
    std::optional<RateFit> solution_fit;  // fit of |x_k - xhat| when xhat is known
    std::vector<std::pair<std::string, double>> predicted;
    std::vector<std::string> notes;
};

struct ExperimentResult {
    ExperimentConfig config;
    Trace trace;
    std::optional<RegularityReport> report;
    std::optional<PerturbedRun> perturbed;
    ExperimentSummary summary;
};

/// Compression-matrix design: averaged (or cyclic / product) projections onto
/// the row space of a Gaussian dictionary, orthonormal rows, and the
/// entrywise box |u_ij| <= alpha.  f is the mean over the three sets.
ExperimentResult experiment_cs(const ExperimentConfig& cfg);

/// Desk-scale instances with exactly known regularity constants.
ExperimentResult experiment_synthetic(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// The three compression-matrix sets in the order (row space, orthonormal rows, box).
std::vector<SetPtr> cs_sets(const Matrix& dictionary, Eigen::Index d_rows, double alpha);

/// Plain-text summary with predicted versus observed rates.
std::string format_summary(const ExperimentResult& result);

} // namespace projfeas
