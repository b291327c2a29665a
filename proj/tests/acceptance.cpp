// Acceptance checks.  One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include "projfeas/algorithms.hpp"
#include "projfeas/diagnostics.hpp"
#include "projfeas/experiments.hpp"
#include "projfeas/regularity.hpp"
#include "set_zoo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace projfeas;

namespace {

// Pinned tolerances.
constexpr double kRateTol = 0.01;           // 1
constexpr double kRatioTol = 0.02;          // 2, 7
constexpr double kEquivTol = 1e-12;         // 3
constexpr double kCbarTol = 1e-10;          // 4
constexpr double kGradRelTol = 1e-6;        // 5
constexpr double kSandwichTol = 1e-10;      // 6
constexpr double kConeTol = 1e-12;          // 7
constexpr double kFeasTol = 1e-9;           // 8
constexpr double kMaxRatioCeiling = 0.99;   // 9
constexpr double kPropertyTol = 1e-8;       // 10

constexpr double kDeg = std::numbers::pi / 180.0;
const double kAngles[] = {30 * kDeg, 45 * kDeg, 60 * kDeg, 80 * kDeg};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            detail << " [" << why << "]";
        }
    }
};

Point pt(double a, double b) {
    Point p(2);
    p << a, b;
    return p;
}

SetPtr line_at(double angle) {
    return AffineSubspace::line(Point::Zero(2), pt(std::cos(angle), std::sin(angle)));
}
SetPtr x_axis() { return AffineSubspace::line(Point::Zero(2), pt(1, 0)); }

std::vector<SetPtr> random_subspaces(std::uint64_t seed, int m, Eigen::Index n, Eigen::Index dim,
                                     Point& xbar) {
    std::mt19937_64 rng(seed);
    xbar = gaussian_vector(n, rng);
    std::vector<SetPtr> sets;
    for (int i = 0; i < m; ++i) {
        std::vector<Point> dirs;
        for (Eigen::Index j = 0; j < dim; ++j) dirs.push_back(gaussian_vector(n, rng));
        sets.push_back(std::make_shared<AffineSubspace>(xbar, dirs));
    }
    return sets;
}

std::vector<NormalCone> cones_at(const std::vector<SetPtr>& sets, const Point& x) {
    std::vector<NormalCone> out;
    for (const auto& s : sets) out.push_back(s->normal_cone(x));
    return out;
}

Outcome criterion1() {
    Outcome o;
    for (double t : kAngles) {
        auto tr = run_alternating(line_at(t), x_axis(), pt(1, 0), {});
        const double rate = fit_rlinear_rate(distance_series(tr, Point::Zero(2))).rate;
        o.detail << " theta=" << std::lround(t / kDeg) << ":rate=" << rate
                 << "/cos=" << std::cos(t);
        o.require(std::abs(rate - std::cos(t)) <= kRateTol, "rate off");
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (double t : kAngles) {
        std::vector<SetPtr> sets{line_at(t), x_axis()};
        auto tr = run_averaged(sets, pt(1, 0), {});
        auto q = qlinear_ratios(tr);
        const double asym = q.back();
        const double cbar_avg_sq = std::pow(std::cos(t / 2), 2);
        const double k = 1.0 / std::sqrt(1.0 - std::cos(t));
        const double bound = 1.0 - 1.0 / (k * k * 2.0);
        double worst = 0;
        for (double r : q) worst = std::max(worst, r);
        o.detail << " theta=" << std::lround(t / kDeg) << ":asym=" << asym
                 << "/target=" << cbar_avg_sq << "/max=" << worst << "/bound=" << bound;
        o.require(std::abs(asym - cbar_avg_sq) <= kRatioTol, "asymptotic ratio");
        o.require(worst <= bound + kRatioTol, "ratio above bound");
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        Point xbar;
        const int m = 2 + static_cast<int>(s % 3);
        auto sets = random_subspaces(1000 + s, m, 7, 4, xbar);
        std::mt19937_64 rng(2000 + s);
        Point x0 = xbar + gaussian_vector(7, rng);
        auto a = run_averaged(sets, x0, {});
        auto b = run_averaged_via_product(sets, x0, {});
        if (a.size() != b.size()) {
            o.require(false, "length mismatch");
            continue;
        }
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, (a.iterates[k] - b.iterates[k]).cwiseAbs().maxCoeff());
    }
    o.detail << " max_coord_diff=" << worst;
    o.require(worst <= kEquivTol, "iterates differ");
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst = 0, min_slack = 1e300;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const int m = 2 + static_cast<int>(s % 3);
        Point xbar;
        auto sets = random_subspaces(3000 + s, m, 8, 6, xbar);
        auto cones = cones_at(sets, xbar);
        auto k = cond_modulus(cones);
        auto [a, b] = product_space_pair(cones);
        const double lhs = cbar_pair(a, b).value;
        const double rhs = cbar_avg(m, k);
        worst = std::max(worst, std::abs(lhs - rhs));
        if (k.finite()) min_slack = std::min(min_slack, k.value - 1.0 / std::sqrt(m));
        o.require(!k.finite() || k.value >= 1.0 / std::sqrt(m) - 1e-12, "cond below floor");
    }
    o.detail << " max_diff=" << worst << " min_floor_slack=" << min_slack;
    o.require(worst <= kCbarTol, "cbar mismatch");
    return o;
}

Outcome criterion5() {
    Outcome o;
    struct Instance {
        std::string label;
        std::vector<SetPtr> sets;
        Eigen::Index dim;
        double scale;
    };
    std::vector<Instance> instances;
    instances.push_back({"two-lines", {line_at(60 * kDeg), x_axis()}, 2, 1.0});
    instances.push_back({"line-circle",
                         {AffineSubspace::line(pt(1, 0), pt(1, 0)),
                          std::make_shared<Sphere>(Point::Zero(2), 1.0)},
                         2, 1.0});
    instances.push_back({"cs-small", cs_sets(gaussian_matrix(6, 12, 5), 3, 0.2), 36, 0.3});

    double worst = 0;
    std::mt19937_64 rng(77);
    for (const auto& inst : instances) {
        int done = 0;
        while (done < 20) {
            Point x = inst.scale * gaussian_vector(inst.dim, rng);
            if (inst.label == "line-circle" && x.norm() < 0.2) continue;
            Point g = msd_gradient(inst.sets, x);
            Point fd = fd_gradient([&](const Point& y) { return msd(inst.sets, y); }, x, 1e-6);
            worst = std::max(worst, (g - fd).norm() / g.norm());
            ++done;
        }
    }
    o.detail << " max_rel_err=" << worst;
    o.require(worst <= kGradRelTol, "gradient mismatch");
    return o;
}

Outcome criterion6() {
    Outcome o;
    int lower_checked = 0, upper_checked = 0;
    double min_upper_slack = 1e300;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const int m = 2 + static_cast<int>(s % 3);
        Point xbar;
        auto sets = random_subspaces(4000 + s, m, 8, 6, xbar);
        auto k = cond_modulus(cones_at(sets, xbar));
        if (!k.finite()) continue;
        auto near = NearSolution::around(xbar);
        std::mt19937_64 rng(5000 + s);
        for (int t = 0; t < 20; ++t) {
            Point dir = gaussian_vector(8, rng).normalized();
            const double r = (t < 10) ? near.radius * (t + 1) / 11.0 : 3.0 * (t - 9);
            auto rep = check_sandwich(sets, xbar + r * dir, k.value, near);
            ++lower_checked;
            o.require(rep.grad_norm_sq / 2 <= rep.f + kSandwichTol * (1 + rep.f), "lower");
            if (rep.upper_applicable) {
                ++upper_checked;
                min_upper_slack = std::min(min_upper_slack, rep.upper_slack);
                o.require(rep.upper_holds, "upper");
            }
        }
    }
    o.detail << " lower_points=" << lower_checked << " upper_points=" << upper_checked
             << " min_upper_slack=" << min_upper_slack;
    o.require(upper_checked > 0, "no near points");
    return o;
}

Outcome criterion7() {
    Outcome o;
    const double eps = 0.2, c = 0.5;
    auto f = line_at(60 * kDeg);
    auto tr = run_inexact_alternating(f, x_axis(), pt(1, 0), {.seed = 7, .inexact_eps = eps});
    double worst_cone = 0;
    int checked = 0;
    for (std::size_t k = 3; k < tr.size(); k += 2) {
        auto chk = check_inexact_step(*f, tr.iterates[k - 2], tr.iterates[k - 1], tr.iterates[k]);
        worst_cone = std::max(worst_cone, chk.cone_distance);
        o.require(chk.cone_distance <= eps + kConeTol, "cone distance");
        o.require(chk.step <= chk.previous_step + kConeTol, "step grew");
        ++checked;
    }
    const double rate = fit_rlinear_rate(distance_series(tr, Point::Zero(2))).rate;
    const double bound = inexact_rate(c, eps);
    o.detail << " steps=" << checked << " max_cone_dist=" << worst_cone << " rate=" << rate
             << " bound=" << bound;
    o.require(rate <= bound + kRatioTol, "rate above bound");
    return o;
}

Outcome criterion8() {
    Outcome o;
    const double c = 0.6;
    auto f = line_at(60 * kDeg);
    auto cset = x_axis();
    Point d = pt(0, 0.01);
    auto r = run_perturbed(f, cset, d, Point::Zero(2), c, {});
    Translate shifted(f, d);
    const double infeas = std::max(shifted.distance(r.limit), cset->distance(r.limit));
    o.detail << " dist=" << r.distance_from_start << " bound=" << r.bound
             << " infeasibility=" << infeas;
    o.require(r.distance_from_start <= r.bound, "outside bound");
    o.require(infeas <= kFeasTol, "limit infeasible");
    return o;
}

Outcome criterion9() {
    Outcome o;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto cfg = ExperimentConfig::for_experiment(ExperimentKind::kCs);
        cfg.run.seed = seed;
        auto r = experiment_cs(cfg);
        double resid = std::nan("");
        try {
            resid = fit_rlinear_rate(r.trace.f_values).residual;
        } catch (const std::exception&) {
        }
        worst = std::max(worst, r.summary.max_ratio);
        o.detail << " seed" << seed << ":max=" << r.summary.max_ratio << "/resid=" << resid;
        o.require(r.summary.monotone, "f not monotone");
        o.require(r.summary.max_ratio < kMaxRatioCeiling, "max ratio");
    }
    auto cyc = ExperimentConfig::for_experiment(ExperimentKind::kCs);
    cyc.algorithm = AlgorithmChoice::kCyclic;
    auto rc = experiment_cs(cyc);
    auto ra = experiment_cs(ExperimentConfig::for_experiment(ExperimentKind::kCs));
    o.detail << " worst_max=" << worst << " reference=" << kReferenceCsMaxRatio
             << " seed0_rms_rate:averaged=" << (ra.summary.rms_fit ? ra.summary.rms_fit->rate : NAN)
             << "/cyclic=" << (rc.summary.rms_fit ? rc.summary.rms_fit->rate : NAN);
    return o;
}

Outcome criterion10() {
    Outcome o;
    double worst_idem = 0, worst_cone = 0;
    int points = 0;
    auto variants = zoo::all_variants(11);
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto& v = variants[i];
        std::mt19937_64 rng(900 + i);
        for (int t = 0; t < 100; ++t) {
            Point x = zoo::fuzz_point(*v.set, rng);
            Point p = v.set->project(x);
            worst_idem = std::max(worst_idem, (v.set->project(p) - p).norm());
            worst_cone = std::max(worst_cone, normal_cone_distance(v.set->normal_cone(p), x - p));
            ++points;
        }
    }
    o.detail << " variants=" << variants.size() << " points=" << points
             << " max_idempotence=" << worst_idem << " max_cone_dist=" << worst_cone;
    o.require(worst_idem <= kPropertyTol, "idempotence");
    o.require(worst_cone <= kPropertyTol, "normal cone inclusion");
    return o;
}

} // namespace

int main() {
    struct Entry {
        int id;
        std::function<Outcome()> run;
        double budget_seconds;
    };
    const Entry entries[] = {
        {1, criterion1, 1.0},  {2, criterion2, 1.0},   {3, criterion3, 5.0},
        {4, criterion4, 5.0},  {5, criterion5, 10.0},  {6, criterion6, 5.0},
        {7, criterion7, 1.0},  {8, criterion8, 1.0},   {9, criterion9, 120.0},
        {10, criterion10, 10.0},
    };
    int failed = 0;
    for (const auto& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail << " [exception: " << ex.what() << "]";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < e.budget_seconds, "runtime");
        std::printf("criterion %2d: %s (%.3fs, budget %.0fs)%s\n", e.id, o.pass ? "PASS" : "FAIL",
                    secs, e.budget_seconds, o.detail.str().c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria failed\n", failed, std::size(entries));
    return failed;
}
