#pragma once

#include "projfeas/sets.hpp"
#include "projfeas/trace.hpp"

#include <cstdint>
#include <random>
#include <span>

namespace projfeas {

struct RunConfig {
    std::size_t max_iter = 500;
    double stop_tol = 1e-10;  // stop once f <= stop_tol^2
    std::uint64_t seed = 0;
    double inexact_eps = 0.0;  // 0 = exact projections

    /// Throws ArgumentError unless max_iter >= 1, stop_tol > 0, 0 <= inexact_eps < 1.
    void validate() const;
};

/// Alternating projections x_{2n+1} = P_F(x_{2n}), x_{2n+2} = P_C(x_{2n+1}).
/// Every projection is one trace entry and one unit of max_iter.  The start
/// must lie in C.  Stops once both distances are <= stop_tol.
Trace run_alternating(const SetPtr& f_set, const SetPtr& c_set, const Point& x0,
                      const RunConfig& cfg);

/// Averaged projections x_{k+1} = (1/m) sum_i P_i(x_k) for m >= 2 sets.
Trace run_averaged(std::span<const SetPtr> sets, const Point& x0, const RunConfig& cfg);

/// Averaged projections computed as alternating projections between the
/// product of the sets and the diagonal, started from the lifted point.  The
/// returned trace lives in the base space and matches run_averaged.
Trace run_averaged_via_product(std::span<const SetPtr> sets, const Point& x0,
                               const RunConfig& cfg);

/// Sequential sweeps x <- P_m(...P_1(x)); one sweep per trace entry.
/// No rate guarantee is claimed for three or more sets.
Trace run_cyclic(std::span<const SetPtr> sets, const Point& x0, const RunConfig& cfg);

/// Alternating projections where the C-steps are exact and each F-step is an
/// accepted inexact point: no longer than the previous step, and with the
/// normalized step direction within cfg.inexact_eps of the normal cone of F.
/// Throws InexactnessInfeasible if an accepted point fails verification.
Trace run_inexact_alternating(const SetPtr& f_set, const SetPtr& c_set, const Point& x0,
                              const RunConfig& cfg);

struct InexactOptions {
    double max_theta = 1.0;  // tangential step is at most max_theta * gap
    int bisection_steps = 30;
};

/// A point of F near P_F(x_cur): the exact projection pushed along a random
/// tangent direction, with the step length bisected until both inexact
/// acceptance conditions verify.  Falls back to the exact projection.
Point inexact_candidate(const ProjectableSet& f_set, const Point& x_prev, const Point& x_cur,
                        double eps, std::mt19937_64& rng, const InexactOptions& opts = {});

/// Acceptance conditions for an inexact F-step x_next from x_cur, where
/// x_prev is the previous F-iterate.
struct InexactCheck {
    double step = 0.0;           // |x_next - x_cur|
    double previous_step = 0.0;  // |x_cur - x_prev|
    double cone_distance = 0.0;  // distance of the unit step direction to N_F(x_next)
    bool accepted(double eps, double tol = 1e-12) const;
};

InexactCheck check_inexact_step(const ProjectableSet& f_set, const Point& x_prev,
                                const Point& x_cur, const Point& x_next);

struct PerturbedRun {
    Trace trace;
    Point limit;
    double shift_norm = 0.0;
    double distance_from_start = 0.0;  // |limit - xbar|
    double c = 0.0;
    double bound = 0.0;  // (1 + c) / (1 - c) * |d|
    bool within_bound = false;
    bool limit_feasible = false;  // limit in (d + F) and C
};

/// Alternating projections on d + F and C started at xbar in F and C.
PerturbedRun run_perturbed(const SetPtr& f_set, const SetPtr& c_set, const Point& shift,
                           const Point& xbar, double c, const RunConfig& cfg);

} // namespace projfeas
