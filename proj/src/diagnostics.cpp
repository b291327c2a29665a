#include "projfeas/diagnostics.hpp"

#include "projfeas/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace projfeas {

namespace {

void check_system(std::span<const SetPtr> sets, const Point& x) {
    if (sets.empty()) throw ArgumentError("mean-squared-distance: empty set system");
    for (const auto& s : sets) {
        if (!s) throw ArgumentError("mean-squared-distance: null set");
        if (s->ambient_dim() != x.size()) {
            throw ArgumentError("mean-squared-distance: dimension mismatch with " + s->name());
        }
    }
}

} // namespace

MsdEvaluation summarize_projections(const Point& x, std::vector<Projection> projections) {
    if (projections.empty()) throw ArgumentError("mean-squared-distance: no projections");
    const double m = static_cast<double>(projections.size());
    MsdEvaluation ev;
    ev.projections.reserve(projections.size());
    ev.distances.reserve(projections.size());
    Point mean = Point::Zero(x.size());
    double sum_sq = 0.0;
    for (auto& p : projections) {
        const double d = (x - p.point).norm();
        sum_sq += d * d;
        mean += p.point;
        ev.degenerate = ev.degenerate || p.degenerate;
        ev.distances.push_back(d);
        ev.projections.push_back(std::move(p.point));
    }
    mean /= m;
    ev.f = sum_sq / (2.0 * m);
    ev.gradient = x - mean;
    ev.average = std::move(mean);
    return ev;
}

MsdEvaluation evaluate_msd(std::span<const SetPtr> sets, const Point& x) {
    check_system(sets, x);
    std::vector<Projection> projections;
    projections.reserve(sets.size());
    for (const auto& s : sets) projections.push_back(s->projection(x));
    return summarize_projections(x, std::move(projections));
}

double msd(std::span<const SetPtr> sets, const Point& x) {
    check_system(sets, x);
    double sum_sq = 0.0;
    for (const auto& s : sets) {
        const double d = s->distance(x);
        sum_sq += d * d;
    }
    return sum_sq / (2.0 * static_cast<double>(sets.size()));
}

Point msd_gradient(std::span<const SetPtr> sets, const Point& x) {
    return evaluate_msd(sets, x).gradient;
}

NearSolution NearSolution::around(Point reference) {
    const double r = 0.1 * (1.0 + reference.norm());
    return {std::move(reference), r};
}

SandwichReport check_sandwich(std::span<const SetPtr> sets, const Point& x, double k,
                              const std::optional<NearSolution>& near) {
    if (!(k >= 0.0)) throw ArgumentError("check_sandwich: k must be nonnegative");
    const MsdEvaluation ev = evaluate_msd(sets, x);
    const double m = static_cast<double>(sets.size());
    SandwichReport r;
    r.f = ev.f;
    r.grad_norm_sq = ev.gradient.squaredNorm();
    r.lower_slack = r.f - 0.5 * r.grad_norm_sq;
    r.upper_slack = 0.5 * k * k * m * r.grad_norm_sq - r.f;
    r.lower_holds = r.lower_slack >= -1e-10 * (1.0 + r.f);
    r.upper_applicable = !near || (x - near->reference).norm() <= near->radius;
    r.upper_holds = r.upper_slack >= -1e-10 * (1.0 + r.f);
    return r;
}

std::vector<double> qlinear_ratios(std::span<const double> f_values) {
    if (f_values.size() < 2) {
        throw ArgumentError("qlinear_ratios: need at least two f values");
    }
    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < f_values.size(); ++k) {
        if (f_values[k] < kValueFloor || f_values[k + 1] < kValueFloor) break;
        ratios.push_back(f_values[k + 1] / f_values[k]);
    }
    return ratios;
}

std::vector<double> qlinear_ratios(const Trace& trace) {
    return qlinear_ratios(std::span<const double>(trace.f_values));
}

RateFit fit_rlinear_rate(std::span<const double> series) {
    std::size_t admissible = 0;
    while (admissible < series.size() && series[admissible] > kDistanceFloor &&
           std::isfinite(series[admissible])) {
        ++admissible;
    }
    if (admissible < 8) {
        throw EstimationError("fit_rlinear_rate: fewer than 8 entries above the floor");
    }
    RateFit fit;
    fit.floor_excluded = series.size() - admissible;
    fit.window_begin = admissible / 2;
    fit.window_end = admissible;

    const std::size_t n = fit.window_end - fit.window_begin;
    double mean_t = 0.0, mean_y = 0.0;
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        mean_t += static_cast<double>(i);
        mean_y += std::log10(series[i]);
    }
    mean_t /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        const double dt = static_cast<double>(i) - mean_t;
        stt += dt * dt;
        sty += dt * (std::log10(series[i]) - mean_y);
    }
    const double slope = sty / stt;
    double ss_res = 0.0;
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        const double pred = mean_y + slope * (static_cast<double>(i) - mean_t);
        const double e = std::log10(series[i]) - pred;
        ss_res += e * e;
    }
    fit.rate = std::pow(10.0, slope);
    fit.residual = std::sqrt(ss_res / static_cast<double>(n));
    return fit;
}

std::vector<double> distance_series(const Trace& trace, const Point& target) {
    std::vector<double> out;
    out.reserve(trace.size());
    for (const auto& x : trace.iterates) out.push_back((x - target).norm());
    return out;
}

} // namespace projfeas
