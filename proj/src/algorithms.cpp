#include "projfeas/algorithms.hpp"

#include "projfeas/diagnostics.hpp"
#include "projfeas/errors.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace projfeas {

std::string_view to_string(AlgorithmTag tag) {
    switch (tag) {
    case AlgorithmTag::kAlternating: return "alternating";
    case AlgorithmTag::kAveraged: return "averaged";
    case AlgorithmTag::kAveragedViaProduct: return "alternating-product";
    case AlgorithmTag::kInexactAlternating: return "inexact-alternating";
    case AlgorithmTag::kPerturbed: return "perturbed";
    case AlgorithmTag::kCyclic: return "cyclic";
    }
    return "unknown";
}

void RunConfig::validate() const {
    if (max_iter < 1) throw ArgumentError("RunConfig: max_iter must be >= 1");
    if (!(stop_tol > 0.0)) throw ArgumentError("RunConfig: stop_tol must be positive");
    if (!(inexact_eps >= 0.0 && inexact_eps < 1.0)) {
        throw ArgumentError("RunConfig: inexact_eps must lie in [0, 1)");
    }
}

namespace {

using StopRule = std::function<bool(std::size_t, const Point&, const MsdEvaluation&)>;

void record(Trace& t, Point x, const MsdEvaluation& ev) {
    if (!t.iterates.empty()) {
        t.step_norms.push_back((x - t.iterates.back()).norm());
        const double prev = t.f_values.back();
        t.ratios.push_back(prev > 0.0 ? ev.f / prev
                                      : std::numeric_limits<double>::quiet_NaN());
    }
    t.iterates.push_back(std::move(x));
    t.per_set_distances.push_back(ev.distances);
    t.f_values.push_back(ev.f);
    t.grad_norms.push_back(ev.gradient.norm());
}

void check_start(std::span<const SetPtr> sets, const Point& x0, std::size_t min_sets) {
    if (sets.size() < min_sets) {
        std::ostringstream msg;
        msg << "need at least " << min_sets << " sets, got " << sets.size();
        throw ArgumentError(msg.str());
    }
    for (const auto& s : sets) {
        if (!s) throw ArgumentError("null set in system");
        if (s->ambient_dim() != x0.size()) {
            throw ArgumentError("start point dimension does not match " + s->name());
        }
    }
}

bool distances_below(const MsdEvaluation& ev, double tol) {
    for (double d : ev.distances) {
        if (d > tol) return false;
    }
    return true;
}

/// Projects onto F at even steps and onto C at odd steps; max_transitions
/// bounds the number of projections.
Trace alternate(const SetPtr& f_set, const SetPtr& c_set, const Point& x0,
                std::size_t max_transitions, const StopRule& stop, AlgorithmTag tag,
                std::uint64_t seed) {
    const std::array<SetPtr, 2> pair{f_set, c_set};
    Trace t;
    t.algorithm = tag;
    t.seed = seed;
    Point x = x0;
    for (std::size_t k = 0;; ++k) {
        MsdEvaluation ev = evaluate_msd(pair, x);
        const bool done = stop(k, x, ev);
        Point next = std::move(ev.projections[k % 2]);
        record(t, std::move(x), ev);
        if (done) {
            t.converged = true;
            break;
        }
        if (k == max_transitions) break;
        x = std::move(next);
    }
    return t;
}

} // namespace

Trace run_alternating(const SetPtr& f_set, const SetPtr& c_set, const Point& x0,
                      const RunConfig& cfg) {
    cfg.validate();
    const std::array<SetPtr, 2> pair{f_set, c_set};
    check_start(pair, x0, 2);
    if (!c_set->contains(x0)) {
        throw DomainError("run_alternating: start point must lie in C (" + c_set->name() + ")");
    }
    const double tol = cfg.stop_tol;
    return alternate(
        f_set, c_set, x0, cfg.max_iter,
        [tol](std::size_t, const Point&, const MsdEvaluation& ev) { return distances_below(ev, tol); },
        AlgorithmTag::kAlternating, cfg.seed);
}

Trace run_averaged(std::span<const SetPtr> sets, const Point& x0, const RunConfig& cfg) {
    cfg.validate();
    check_start(sets, x0, 2);
    const double target = cfg.stop_tol * cfg.stop_tol;
    Trace t;
    t.algorithm = AlgorithmTag::kAveraged;
    t.seed = cfg.seed;
    Point x = x0;
    for (std::size_t k = 0;; ++k) {
        MsdEvaluation ev = evaluate_msd(sets, x);
        Point next = std::move(ev.average);
        const double f = ev.f;
        record(t, std::move(x), ev);
        if (f <= target) {
            t.converged = true;
            break;
        }
        if (k == cfg.max_iter) break;
        x = std::move(next);
    }
    return t;
}

Trace run_averaged_via_product(std::span<const SetPtr> sets, const Point& x0,
                               const RunConfig& cfg) {
    cfg.validate();
    check_start(sets, x0, 2);
    const Eigen::Index n = x0.size();
    const int m = static_cast<int>(sets.size());
    auto product = std::make_shared<ProductSet>(std::vector<SetPtr>(sets.begin(), sets.end()));
    auto diagonal = std::make_shared<DiagonalLift>(n, m);
    const double target = cfg.stop_tol * cfg.stop_tol;

    Trace base;
    base.algorithm = AlgorithmTag::kAveragedViaProduct;
    base.seed = cfg.seed;

    // Even product iterates lie on the diagonal; their first block is the
    // base iterate and P_F of them stacks the component projections.
    auto observe = [&](std::size_t k, const Point& z, const MsdEvaluation& ev) {
        if (k % 2 != 0) return false;
        Point x = z.head(n);
        std::vector<Projection> parts;
        parts.reserve(sets.size());
        for (int i = 0; i < m; ++i) {
            parts.push_back({ev.projections[0].segment(i * n, n), ev.degenerate});
        }
        const MsdEvaluation base_ev = summarize_projections(x, std::move(parts));
        record(base, std::move(x), base_ev);
        return base_ev.f <= target;
    };
    const Trace lifted = alternate(product, diagonal, diagonal->lift(x0), 2 * cfg.max_iter,
                                   observe, AlgorithmTag::kAlternating, cfg.seed);
    base.converged = lifted.converged;
    return base;
}

Trace run_cyclic(std::span<const SetPtr> sets, const Point& x0, const RunConfig& cfg) {
    cfg.validate();
    check_start(sets, x0, 2);
    const double target = cfg.stop_tol * cfg.stop_tol;
    Trace t;
    t.algorithm = AlgorithmTag::kCyclic;
    t.seed = cfg.seed;
    Point x = x0;
    for (std::size_t k = 0;; ++k) {
        const MsdEvaluation ev = evaluate_msd(sets, x);
        Point next = ev.projections.front();
        for (std::size_t i = 1; i < sets.size(); ++i) next = sets[i]->project(next);
        record(t, std::move(x), ev);
        if (ev.f <= target) {
            t.converged = true;
            break;
        }
        if (k == cfg.max_iter) break;
        x = std::move(next);
    }
    return t;
}

// ---------------------------------------------------------------------------

bool InexactCheck::accepted(double eps, double tol) const {
    return step <= previous_step * (1.0 + tol) + tol && cone_distance <= eps + tol;
}

InexactCheck check_inexact_step(const ProjectableSet& f_set, const Point& x_prev,
                                const Point& x_cur, const Point& x_next) {
    InexactCheck check;
    const Point dir = x_cur - x_next;
    check.step = dir.norm();
    check.previous_step = (x_cur - x_prev).norm();
    if (check.step > 0.0) {
        check.cone_distance = normal_cone_distance(f_set.normal_cone(x_next), dir / check.step);
    }
    return check;
}

Point inexact_candidate(const ProjectableSet& f_set, const Point& x_prev, const Point& x_cur,
                        double eps, std::mt19937_64& rng, const InexactOptions& opts) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw ArgumentError("inexact_candidate: eps must lie in [0, 1)");
    }
    const Point exact = f_set.project(x_cur);
    const double gap = (x_cur - exact).norm();
    if (eps == 0.0 || gap == 0.0 || !(opts.max_theta > 0.0)) return exact;

    // Random direction with the normal-cone generators at the exact point removed.
    const ConeGenerators gens = generators(f_set.normal_cone(exact));
    Point t = gaussian_vector(x_cur.size(), rng);
    if (gens.lineal.cols() > 0) t -= gens.lineal * (gens.lineal.transpose() * t);
    if (gens.rays.cols() > 0) t -= gens.rays * (gens.rays.transpose() * t);
    const double tn = t.norm();
    if (!(tn > 0.0)) return exact;
    t /= tn;

    auto candidate = [&](double theta) { return f_set.project(exact + theta * gap * t); };
    auto ok = [&](const Point& q) {
        return check_inexact_step(f_set, x_prev, x_cur, q).accepted(eps, 0.0);
    };

    Point best = candidate(opts.max_theta);
    if (ok(best)) return best;
    double lo = 0.0, hi = opts.max_theta;
    best = exact;
    for (int i = 0; i < opts.bisection_steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        Point q = candidate(mid);
        if (ok(q)) {
            lo = mid;
            best = std::move(q);
        } else {
            hi = mid;
        }
    }
    return best;
}

Trace run_inexact_alternating(const SetPtr& f_set, const SetPtr& c_set, const Point& x0,
                              const RunConfig& cfg) {
    cfg.validate();
    const std::array<SetPtr, 2> pair{f_set, c_set};
    check_start(pair, x0, 2);
    if (!c_set->contains(x0)) {
        throw DomainError("run_inexact_alternating: start point must lie in C");
    }
    std::mt19937_64 rng(cfg.seed);
    const double tol = cfg.stop_tol;

    Trace t;
    t.algorithm = AlgorithmTag::kInexactAlternating;
    t.seed = cfg.seed;
    Point x = x0;
    for (std::size_t k = 0;; ++k) {
        const MsdEvaluation ev = evaluate_msd(pair, x);
        const bool done = distances_below(ev, tol);
        Point next;
        if (!done && k < cfg.max_iter) {
            if (k % 2 == 1 || k == 0) {
                // x_1 is the exact projection; every C-step is exact.
                next = ev.projections[k % 2];
            } else {
                const Point& x_prev = t.iterates[k - 1];
                next = inexact_candidate(*f_set, x_prev, x, cfg.inexact_eps, rng);
                const InexactCheck check = check_inexact_step(*f_set, x_prev, x, next);
                if (!check.accepted(cfg.inexact_eps)) {
                    std::ostringstream msg;
                    msg << "run_inexact_alternating: step " << k + 1
                        << " fails acceptance (cone distance " << check.cone_distance
                        << ", step " << check.step << " vs " << check.previous_step << ")";
                    throw InexactnessInfeasible(msg.str());
                }
            }
        }
        record(t, std::move(x), ev);
        if (done) {
            t.converged = true;
            break;
        }
        if (k == cfg.max_iter) break;
        x = std::move(next);
    }
    return t;
}

PerturbedRun run_perturbed(const SetPtr& f_set, const SetPtr& c_set, const Point& shift,
                           const Point& xbar, double c, const RunConfig& cfg) {
    if (!(c > 0.0 && c < 1.0)) throw ArgumentError("run_perturbed: c must lie in (0, 1)");
    if (!f_set || !c_set) throw ArgumentError("run_perturbed: null set");
    if (!f_set->contains(xbar) || !c_set->contains(xbar)) {
        throw DomainError("run_perturbed: xbar must lie in both F and C");
    }
    auto shifted = std::make_shared<Translate>(f_set, shift);
    PerturbedRun out;
    out.trace = run_alternating(shifted, c_set, xbar, cfg);
    out.trace.algorithm = AlgorithmTag::kPerturbed;
    out.limit = out.trace.last();
    out.shift_norm = shift.norm();
    out.distance_from_start = (out.limit - xbar).norm();
    out.c = c;
    out.bound = (1.0 + c) / (1.0 - c) * out.shift_norm;
    out.within_bound = out.distance_from_start <= out.bound;
    out.limit_feasible = shifted->contains(out.limit) && c_set->contains(out.limit);
    return out;
}

} // namespace projfeas
