#pragma once

// Analysis layer around the mean-squared-distance
//
//     f(x) = 1/(2m) * sum_i d_i(x)^2,    grad f(x) = x - (1/m) sum_i P_i(x),
//
// where d_i and P_i are distance and projection for the i-th set.  Averaged
// projections is gradient descent with unit step on f, which is what the
// checks below exercise.

#include "projfeas/sets.hpp"
#include "projfeas/trace.hpp"

#include <optional>
#include <span>
#include <vector>

namespace projfeas {

/// Below these values distances / f are treated as rounding noise.
inline constexpr double kDistanceFloor = 1e-13;
inline constexpr double kValueFloor = 1e-26;

/// Everything an iteration needs from one point: projections, distances, f, grad f.
struct MsdEvaluation {
    std::vector<Point> projections;
    std::vector<double> distances;
    double f = 0.0;
    Point average;   // (1/m) sum_i P_i(x), the averaged-projections update
    Point gradient;  // x - average
    bool degenerate = false;  // some projection was a tie-break
};

MsdEvaluation evaluate_msd(std::span<const SetPtr> sets, const Point& x);

/// Builds the evaluation from projections already computed at x.
MsdEvaluation summarize_projections(const Point& x, std::vector<Projection> projections);

double msd(std::span<const SetPtr> sets, const Point& x);
Point msd_gradient(std::span<const SetPtr> sets, const Point& x);

/// Where the upper half of the sandwich is expected to hold.
struct NearSolution {
    Point reference;
    double radius;

    /// Radius 0.1 * (1 + |reference|).
    static NearSolution around(Point reference);
};

/// 1/2 |grad f|^2 <= f <= (k^2 m / 2) |grad f|^2.
struct SandwichReport {
    double f = 0.0;
    double grad_norm_sq = 0.0;
    double lower_slack = 0.0;  // f - |grad f|^2 / 2
    double upper_slack = 0.0;  // (k^2 m / 2) |grad f|^2 - f
    bool lower_holds = false;
    bool upper_applicable = false;  // x within the near-solution radius
    bool upper_holds = false;
};

/// Violations are reported, never thrown.  Without `near` the upper bound is
/// evaluated and reported as applicable.
SandwichReport check_sandwich(std::span<const SetPtr> sets, const Point& x, double k,
                              const std::optional<NearSolution>& near = std::nullopt);

/// f_{k+1} / f_k along the trace, stopping once f reaches kValueFloor.
std::vector<double> qlinear_ratios(const Trace& trace);
std::vector<double> qlinear_ratios(std::span<const double> f_values);

struct RateFit {
    double rate = 1.0;
    std::size_t window_begin = 0;  // half-open [begin, end) into the series
    std::size_t window_end = 0;
    double residual = 0.0;  // RMS residual of the log10 least-squares line
    std::size_t floor_excluded = 0;
};

/// Least-squares slope of log10(series) over the last half of the leading run
/// of entries above kDistanceFloor; rate = 10^slope.  Needs >= 8 such entries.
RateFit fit_rlinear_rate(std::span<const double> series);

/// |x_k - target| for every iterate.
std::vector<double> distance_series(const Trace& trace, const Point& target);

} // namespace projfeas
