#include "projfeas/experiments.hpp"

#include "projfeas/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace projfeas {

namespace {

constexpr std::size_t kStallWindow = 50;
constexpr double kStallRelDrop = 1e-3;

struct Named {
    std::string_view name;
    ExperimentKind kind;
};
constexpr Named kExperimentNames[] = {
    {"cs", ExperimentKind::kCs},
    {"two-lines", ExperimentKind::kTwoLines},
    {"subspaces", ExperimentKind::kSubspaces},
    {"circle-line", ExperimentKind::kCircleLine},
    {"perturbed", ExperimentKind::kPerturbed},
    {"inexact", ExperimentKind::kInexact},
};

struct NamedAlg {
    std::string_view name;
    AlgorithmChoice choice;
};
constexpr NamedAlg kAlgorithmNames[] = {
    {"averaged", AlgorithmChoice::kAveraged},
    {"alternating-product", AlgorithmChoice::kAlternatingProduct},
    {"cyclic", AlgorithmChoice::kCyclic},
    {"alternating", AlgorithmChoice::kAlternating},
};

Point vec2(double a, double b) {
    Point p(2);
    p << a, b;
    return p;
}

SetPtr line_through_origin(double angle) {
    return AffineSubspace::line(Point::Zero(2), vec2(std::cos(angle), std::sin(angle)));
}

SetPtr x_axis() { return AffineSubspace::line(Point::Zero(2), vec2(1.0, 0.0)); }

Trace run_choice(AlgorithmChoice choice, std::span<const SetPtr> sets, const Point& x0,
                 const RunConfig& run) {
    switch (choice) {
    case AlgorithmChoice::kAveraged:
        return run_averaged(sets, x0, run);
    case AlgorithmChoice::kAlternatingProduct:
        return run_averaged_via_product(sets, x0, run);
    case AlgorithmChoice::kCyclic:
        return run_cyclic(sets, x0, run);
    case AlgorithmChoice::kAlternating:
        if (sets.size() != 2)
            throw ArgumentError("alternating needs exactly two sets, got " +
                                std::to_string(sets.size()));
        return run_alternating(sets[0], sets[1], x0, run);
    }
    throw ArgumentError("unknown algorithm");
}

std::optional<RateFit> try_fit(const std::vector<double>& series, std::vector<std::string>& notes,
                               std::string_view what) {
    try {
        return fit_rlinear_rate(series);
    } catch (const EstimationError& e) {
        notes.push_back(std::string(what) + " rate not fitted: " + e.what());
        return std::nullopt;
    }
}

void summarize(ExperimentResult& r, const std::optional<Point>& solution) {
    const Trace& t = r.trace;
    ExperimentSummary& s = r.summary;
    s.iterations = t.empty() ? 0 : t.size() - 1;
    s.final_f = t.empty() ? 0.0 : t.f_values.back();

    for (std::size_t i = 1; i < t.f_values.size(); ++i)
        if (t.f_values[i] > t.f_values[i - 1]) s.monotone = false;

    if (t.f_values.size() >= 2) {
        auto ratios = qlinear_ratios(t);
        for (double q : ratios) {
            if (std::isnan(q)) continue;
            s.max_ratio = std::max(s.max_ratio, q);
            s.asymptotic_ratio = q;
        }
    }

    const double target = r.config.run.stop_tol * r.config.run.stop_tol;
    if (!t.converged && t.f_values.size() > kStallWindow && s.final_f > target) {
        double before = t.f_values[t.f_values.size() - 1 - kStallWindow];
        s.stalled = before - s.final_f <= kStallRelDrop * before;
    }

    std::vector<double> rms;
    rms.reserve(t.f_values.size());
    for (double f : t.f_values) rms.push_back(std::sqrt(2.0 * f));
    s.rms_fit = try_fit(rms, s.notes, "rms distance");
    if (solution) s.solution_fit = try_fit(distance_series(t, *solution), s.notes, "solution distance");
}

void add_report_predictions(ExperimentSummary& s, const RegularityReport& rep) {
    s.predicted.emplace_back("cbar", rep.cbar_pairwise);
    s.predicted.emplace_back("cond", rep.cond.finite() ? rep.cond.value
                                                      : std::numeric_limits<double>::infinity());
    s.predicted.emplace_back("cbar_avg", rep.cbar_avg);
    s.predicted.emplace_back("rate_alternating", rep.rate_alternating_both_super);
    s.predicted.emplace_back("rate_averaged", rep.rate_averaged_super);
    s.predicted.emplace_back("f_ratio_bound", rep.qlinear_factor);
}

ExperimentResult two_lines(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    std::vector<SetPtr> sets{line_through_origin(cfg.theta), x_axis()};
    r.trace = run_choice(cfg.algorithm, sets, vec2(1.0, 0.0), cfg.run);
    r.report = analyze_regularity(sets, Point::Zero(2));
    summarize(r, Point::Zero(2));
    add_report_predictions(r.summary, *r.report);
    r.summary.predicted.emplace_back("f_ratio_exact",
                                     std::pow((1.0 + std::cos(cfg.theta)) / 2.0, 2));
    return r;
}

ExperimentResult subspaces(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    std::mt19937_64 rng(cfg.run.seed);
    Point xbar = gaussian_vector(cfg.n, rng);
    std::vector<SetPtr> sets;
    for (int i = 0; i < cfg.sets; ++i) {
        std::vector<Point> dirs;
        for (Eigen::Index j = 0; j < cfg.sub_dim; ++j) dirs.push_back(gaussian_vector(cfg.n, rng));
        sets.push_back(std::make_shared<AffineSubspace>(xbar, dirs));
    }
    Point x0 = xbar + gaussian_vector(cfg.n, rng);
    if (cfg.algorithm == AlgorithmChoice::kAlternating && sets.size() == 2)
        x0 = sets[1]->project(x0);
    r.trace = run_choice(cfg.algorithm, sets, x0, cfg.run);
    r.report = analyze_regularity(sets, xbar);

    // Averaged and alternating projections on subspaces through xbar converge to
    // the projection of x0 onto the intersection.
    std::vector<Point> normals;
    for (const auto& s : sets) {
        Matrix q = *linear_basis(s->normal_cone(xbar));
        for (Eigen::Index j = 0; j < q.cols(); ++j) normals.push_back(q.col(j));
    }
    Point limit = x0 - xbar;
    for (const Point& u : orthonormal_basis(normals)) limit -= u.dot(limit) * u;
    std::optional<Point> solution = xbar + limit;
    if (cfg.algorithm == AlgorithmChoice::kCyclic) solution.reset();
    summarize(r, solution);
    add_report_predictions(r.summary, *r.report);
    return r;
}

ExperimentResult circle_line(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    Point xbar = vec2(1.0, 0.0);
    SetPtr line = AffineSubspace::line(xbar, vec2(std::sin(cfg.theta), std::cos(cfg.theta)));
    SetPtr circle = std::make_shared<Sphere>(Point::Zero(2), 1.0);
    std::vector<SetPtr> sets{line, circle};
    r.trace = run_choice(cfg.algorithm, sets, vec2(std::cos(0.3), std::sin(0.3)), cfg.run);
    r.report = analyze_regularity(sets, xbar);
    summarize(r, xbar);
    add_report_predictions(r.summary, *r.report);
    return r;
}

ExperimentResult perturbed(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    SetPtr f = line_through_origin(cfg.theta);
    SetPtr c = x_axis();
    Point shift = cfg.shift * vec2(-std::sin(cfg.theta), std::cos(cfg.theta));
    std::vector<SetPtr> sets{f, c};
    r.report = analyze_regularity(sets, Point::Zero(2));
    PerturbedRun run = run_perturbed(f, c, shift, Point::Zero(2), cfg.c, cfg.run);
    r.trace = run.trace;
    summarize(r, run.limit);
    add_report_predictions(r.summary, *r.report);
    r.summary.predicted.emplace_back("shift_bound", run.bound);
    r.summary.predicted.emplace_back("limit_distance", run.distance_from_start);
    if (!run.within_bound) r.summary.notes.emplace_back("limit lies outside the shift bound");
    r.perturbed = std::move(run);
    return r;
}

ExperimentResult inexact(const ExperimentConfig& cfg) {
    ExperimentResult r;
    r.config = cfg;
    std::vector<SetPtr> sets{line_through_origin(cfg.theta), x_axis()};
    r.trace = run_inexact_alternating(sets[0], sets[1], vec2(1.0, 0.0), cfg.run);
    r.report = analyze_regularity(sets, Point::Zero(2));
    summarize(r, Point::Zero(2));
    add_report_predictions(r.summary, *r.report);
    r.summary.predicted.emplace_back("rate_inexact", r.report->rate_inexact(cfg.run.inexact_eps));
    return r;
}

} // namespace

std::string_view to_string(ExperimentKind k) {
    for (const auto& e : kExperimentNames)
        if (e.kind == k) return e.name;
    return "unknown";
}

std::string_view to_string(AlgorithmChoice a) {
    for (const auto& e : kAlgorithmNames)
        if (e.choice == a) return e.name;
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view s) {
    for (const auto& e : kExperimentNames)
        if (e.name == s) return e.kind;
    return std::nullopt;
}

std::optional<AlgorithmChoice> parse_algorithm(std::string_view s) {
    for (const auto& e : kAlgorithmNames)
        if (e.name == s) return e.choice;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    run.validate();
    if (!(theta > 0.0 && theta <= std::numbers::pi / 2 + 1e-15))
        throw ArgumentError("theta must lie in (0, pi/2], got " + std::to_string(theta));
    switch (experiment) {
    case ExperimentKind::kCs:
        if (d_rows < 1 || d_rows > n || n >= m_dict)
            throw ArgumentError("cs needs 1 <= d_rows <= n < m_dict");
        if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
        if (algorithm == AlgorithmChoice::kAlternating)
            throw ArgumentError("alternating needs exactly two sets; cs has three");
        break;
    case ExperimentKind::kSubspaces:
        if (sets < 2) throw ArgumentError("subspaces needs at least two sets");
        if (n < 1 || sub_dim < 0 || sub_dim >= n)
            throw ArgumentError("subspaces needs 0 <= sub_dim < n");
        if (algorithm == AlgorithmChoice::kAlternating && sets != 2)
            throw ArgumentError("alternating needs exactly two sets");
        break;
    case ExperimentKind::kPerturbed:
        if (!(shift >= 0.0)) throw ArgumentError("shift must be nonnegative");
        if (!(c > 0.0 && c < 1.0)) throw ArgumentError("c must lie in (0, 1)");
        break;
    case ExperimentKind::kInexact:
        if (!(run.inexact_eps > 0.0))
            throw ArgumentError("inexact needs eps in (0, 1)");
        break;
    default:
        break;
    }
}

ExperimentConfig ExperimentConfig::for_experiment(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
    case ExperimentKind::kCs:
        break;
    case ExperimentKind::kSubspaces:
        cfg.n = 9;
        cfg.sub_dim = 7;
        break;
    case ExperimentKind::kCircleLine:
        cfg.theta = std::numbers::pi / 2;
        cfg.algorithm = AlgorithmChoice::kAlternating;
        break;
    case ExperimentKind::kTwoLines:
        cfg.algorithm = AlgorithmChoice::kAlternating;
        break;
    case ExperimentKind::kPerturbed:
    case ExperimentKind::kInexact:
        cfg.algorithm = AlgorithmChoice::kAlternating;
        cfg.run.inexact_eps = kind == ExperimentKind::kInexact ? 0.2 : 0.0;
        break;
    }
    return cfg;
}

std::vector<SetPtr> cs_sets(const Matrix& dictionary, Eigen::Index d_rows, double alpha) {
    const Eigen::Index m = dictionary.cols();
    return {std::make_shared<RowSpace>(dictionary, d_rows),
            std::make_shared<OrthonormalRows>(d_rows, m),
            std::make_shared<LinfBall>(d_rows * m, alpha)};
}

ExperimentResult experiment_cs(const ExperimentConfig& cfg) {
    if (cfg.experiment != ExperimentKind::kCs) throw ArgumentError("not a cs configuration");
    cfg.validate();
    ExperimentResult r;
    r.config = cfg;

    Matrix w = gaussian_matrix(cfg.n, cfg.m_dict, cfg.run.seed);
    auto sets = cs_sets(w, cfg.d_rows, cfg.alpha);
    Point x0;
    if (cfg.project_initial) {
        x0 = sets[0]->project(flatten(gaussian_matrix(cfg.d_rows, cfg.m_dict, cfg.run.seed + 1)));
    } else {
        Matrix p0 = gaussian_matrix(cfg.d_rows, cfg.n, cfg.run.seed + 1);
        x0 = flatten(p0 * w);
    }
    r.trace = run_choice(cfg.algorithm, sets, x0, cfg.run);
    summarize(r, std::nullopt);
    r.summary.predicted.emplace_back("reference_max_ratio", kReferenceCsMaxRatio);
    if (cfg.algorithm == AlgorithmChoice::kCyclic)
        r.summary.notes.emplace_back("cyclic: experimental, no rate guarantee for three sets");
    return r;
}

ExperimentResult experiment_synthetic(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.experiment) {
    case ExperimentKind::kTwoLines:
        return two_lines(cfg);
    case ExperimentKind::kSubspaces:
        return subspaces(cfg);
    case ExperimentKind::kCircleLine:
        return circle_line(cfg);
    case ExperimentKind::kPerturbed:
        return perturbed(cfg);
    case ExperimentKind::kInexact:
        return inexact(cfg);
    case ExperimentKind::kCs:
        break;
    }
    throw ArgumentError("cs is not a synthetic experiment");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    return cfg.experiment == ExperimentKind::kCs ? experiment_cs(cfg) : experiment_synthetic(cfg);
}

std::string format_summary(const ExperimentResult& r) {
    std::ostringstream out;
    out.precision(6);
    const ExperimentSummary& s = r.summary;
    out << "experiment: " << to_string(r.config.experiment) << '\n'
        << "algorithm: " << to_string(r.config.algorithm) << '\n'
        << "seed: " << r.config.run.seed << '\n'
        << "iterations: " << s.iterations << '\n'
        << "converged: " << (r.trace.converged ? "yes" : "no") << '\n'
        << "final f: " << s.final_f << '\n'
        << "max f ratio: " << s.max_ratio << '\n'
        << "last f ratio: " << s.asymptotic_ratio << '\n'
        << "monotone: " << (s.monotone ? "yes" : "no") << '\n'
        << "stalled: " << (s.stalled ? "yes" : "no") << '\n';
    if (s.rms_fit) out << "fitted rms-distance rate: " << s.rms_fit->rate << '\n';
    if (s.solution_fit) out << "fitted solution-distance rate: " << s.solution_fit->rate << '\n';
    if (r.report) {
        out << "estimate: " << to_string(r.report->method) << '\n'
            << "cond state: " << to_string(r.report->cond.state) << '\n';
    }
    for (const auto& [name, value] : s.predicted) out << name << ": " << value << '\n';
    for (const auto& note : s.notes) out << "note: " << note << '\n';
    return out.str();
}

} // namespace projfeas
