#include "projfeas/algorithms.hpp"
#include "projfeas/diagnostics.hpp"
#include "projfeas/errors.hpp"
#include "projfeas/regularity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace projfeas;

namespace {

Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p(i++) = x;
    return p;
}

const double kSixty = std::numbers::pi / 3;

SetPtr line_at(double angle) {
    return AffineSubspace::line(Point::Zero(2), pt({std::cos(angle), std::sin(angle)}));
}
SetPtr x_axis() { return AffineSubspace::line(Point::Zero(2), pt({1, 0})); }

// Closed-form projection onto the line through the origin at `angle`.
Point line_projection(const Point& x, double angle) {
    Point u = pt({std::cos(angle), std::sin(angle)});
    return u.dot(x) * u;
}

std::vector<SetPtr> random_subspaces(std::uint64_t seed, int m, Eigen::Index n, Eigen::Index dim,
                                     Point* xbar = nullptr) {
    std::mt19937_64 rng(seed);
    Point anchor = gaussian_vector(n, rng);
    std::vector<SetPtr> sets;
    for (int i = 0; i < m; ++i) {
        std::vector<Point> dirs;
        for (Eigen::Index j = 0; j < dim; ++j) dirs.push_back(gaussian_vector(n, rng));
        sets.push_back(std::make_shared<AffineSubspace>(anchor, dirs));
    }
    if (xbar) *xbar = anchor;
    return sets;
}

} // namespace

TEST(RunConfigValidation, RejectsBadValues) {
    RunConfig c;
    c.max_iter = 0;
    EXPECT_THROW(c.validate(), ArgumentError);
    c = RunConfig{};
    c.stop_tol = 0;
    EXPECT_THROW(c.validate(), ArgumentError);
    c = RunConfig{};
    c.inexact_eps = 1.0;
    EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(Alternating, StartInIntersectionIsFixed) {
    auto t = run_alternating(line_at(kSixty), x_axis(), Point::Zero(2), {});
    EXPECT_EQ(t.size(), 1u);
    EXPECT_TRUE(t.converged);
}

TEST(Alternating, StartOutsideCThrows) {
    EXPECT_THROW(run_alternating(line_at(kSixty), x_axis(), pt({0, 1}), {}), DomainError);
}

TEST(Alternating, TwoLinesSecondIterate) {
    auto t = run_alternating(line_at(kSixty), x_axis(), pt({1, 0}), {});
    ASSERT_GE(t.size(), 3u);
    Point oracle = line_projection(line_projection(pt({1, 0}), kSixty), 0.0);
    EXPECT_LE((t.iterates[2] - oracle).norm(), 1e-15);
    EXPECT_LE((t.iterates[2] - pt({0.25, 0})).norm(), 1e-15);
    for (std::size_t k = 1; k < t.size(); ++k)
        EXPECT_NEAR(t.iterates[k].norm(), std::cos(kSixty) * t.iterates[k - 1].norm(), 1e-15);
}

TEST(Alternating, FittedRateIsCosine) {
    auto t = run_alternating(line_at(kSixty), x_axis(), pt({1, 0}), {});
    EXPECT_TRUE(t.converged);
    auto fit = fit_rlinear_rate(distance_series(t, Point::Zero(2)));
    EXPECT_NEAR(fit.rate, std::cos(kSixty), 0.01);
}

TEST(Alternating, StepNormsNonincreasing) {
    Point xbar;
    auto sets = random_subspaces(3, 2, 5, 3, &xbar);
    std::mt19937_64 rng(4);
    Point x0 = sets[1]->project(xbar + gaussian_vector(5, rng));
    auto t = run_alternating(sets[0], sets[1], x0, {});
    for (std::size_t k = 1; k < t.step_norms.size(); ++k)
        EXPECT_LE(t.step_norms[k], t.step_norms[k - 1] + 1e-12);
}

TEST(Alternating, LimitWithinBound) {
    // Limit bound |xhat - x0| <= (1 + c)/(1 - c) |x0 - xbar| with c slightly above cbar.
    auto f = line_at(kSixty);
    auto c = x_axis();
    Point x0 = pt({0.2, 0});
    auto t = run_alternating(f, c, x0, {});
    const double cc = 0.5 + 1e-6;
    EXPECT_LE((t.last() - x0).norm(), (1 + cc) / (1 - cc) * x0.norm());
}

TEST(Alternating, CircleAndLine) {
    SetPtr circle = std::make_shared<Sphere>(Point::Zero(2), 1.0);
    SetPtr line = AffineSubspace::line(pt({1, 0}), pt({std::sin(1.0), std::cos(1.0)}));
    auto t = run_alternating(line, circle, pt({std::cos(0.3), std::sin(0.3)}), {});
    EXPECT_TRUE(t.converged);
    EXPECT_LE(line->distance(t.last()), 1e-10);
    EXPECT_LE(circle->distance(t.last()), 1e-10);
}

TEST(Averaged, StartInIntersectionIsFixed) {
    std::vector<SetPtr> sets{line_at(kSixty), x_axis()};
    auto t = run_averaged(sets, Point::Zero(2), {});
    EXPECT_EQ(t.size(), 1u);
    EXPECT_TRUE(t.converged);
}

TEST(Averaged, TwoLinesFirstIterate) {
    std::vector<SetPtr> sets{line_at(kSixty), x_axis()};
    auto t = run_averaged(sets, pt({1, 0}), {});
    Point oracle = 0.5 * (line_projection(pt({1, 0}), kSixty) + pt({1, 0}));
    EXPECT_LE((t.iterates[1] - oracle).norm(), 1e-15);
    EXPECT_NEAR(t.iterates[1](0), 0.625, 1e-15);
    EXPECT_NEAR(t.iterates[1](1), 0.21650635, 1e-8);
}

TEST(Averaged, TwoLinesAsymptoticRatio) {
    // The averaging map restricted to the plane has eigenvalues (1 +- cos t)/2,
    // so f, a quadratic, contracts by ((1 + cos t)/2)^2 per step.
    std::vector<SetPtr> sets{line_at(kSixty), x_axis()};
    auto t = run_averaged(sets, pt({1, 0}), {});
    auto q = qlinear_ratios(t);
    const double oracle = std::pow((1 + std::cos(kSixty)) / 2, 2);
    EXPECT_NEAR(q.back(), oracle, 1e-6);
    const double bound = 1 - 1.0 / (2.0 * 2.0);  // k = sqrt 2, m = 2
    for (double r : q) EXPECT_LE(r, bound + 1e-12);
}

TEST(Averaged, UpdateIsNegativeGradientStep) {
    auto sets = random_subspaces(7, 3, 6, 4);
    std::mt19937_64 rng(8);
    auto t = run_averaged(sets, gaussian_vector(6, rng), {.max_iter = 20});
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        Point g = msd_gradient(sets, t.iterates[k]);
        EXPECT_LE((t.iterates[k + 1] - t.iterates[k] + g).norm(), 1e-10);
    }
}

TEST(Averaged, FValuesMonotone) {
    auto sets = random_subspaces(9, 3, 6, 4);
    std::mt19937_64 rng(10);
    auto t = run_averaged(sets, gaussian_vector(6, rng), {});
    for (std::size_t k = 1; k < t.f_values.size(); ++k)
        EXPECT_LE(t.f_values[k], t.f_values[k - 1] * (1 + 1e-12));
}

TEST(Averaged, TraceLengthsConsistent) {
    auto sets = random_subspaces(11, 3, 6, 4);
    auto t = run_averaged(sets, Point::Ones(6), {.max_iter = 10});
    EXPECT_EQ(t.size(), 11u);
    EXPECT_EQ(t.f_values.size(), t.size());
    EXPECT_EQ(t.grad_norms.size(), t.size());
    EXPECT_EQ(t.per_set_distances.size(), t.size());
    EXPECT_EQ(t.step_norms.size(), t.size() - 1);
    EXPECT_EQ(t.ratios.size(), t.size() - 1);
    EXPECT_FALSE(t.converged);
}

TEST(AveragedViaProduct, IdenticalToDirect) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto sets = random_subspaces(seed, 3, 5, 3);
        std::mt19937_64 rng(seed + 50);
        Point x0 = gaussian_vector(5, rng);
        auto a = run_averaged(sets, x0, {});
        auto b = run_averaged_via_product(sets, x0, {});
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            EXPECT_LE((a.iterates[k] - b.iterates[k]).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_EQ(b.algorithm, AlgorithmTag::kAveragedViaProduct);
    }
}

TEST(AveragedViaProduct, TwoLinesFirstIterate) {
    std::vector<SetPtr> sets{line_at(kSixty), x_axis()};
    auto t = run_averaged_via_product(sets, pt({1, 0}), {});
    EXPECT_NEAR(t.iterates[1](0), 0.625, 1e-15);
    EXPECT_NEAR(t.iterates[1](1), 0.21650635, 1e-8);
}

TEST(AveragedViaProduct, StartInIntersectionIsFixed) {
    std::vector<SetPtr> sets{line_at(kSixty), x_axis()};
    auto t = run_averaged_via_product(sets, Point::Zero(2), {});
    EXPECT_EQ(t.size(), 1u);
}

TEST(Cyclic, ConvergesOnSubspaces) {
    Point xbar;
    auto sets = random_subspaces(12, 3, 6, 4, &xbar);
    auto t = run_cyclic(sets, xbar + Point::Ones(6), {.max_iter = 2000});
    EXPECT_TRUE(t.converged);
    EXPECT_EQ(t.algorithm, AlgorithmTag::kCyclic);
}

TEST(Inexact, ZeroEpsilonMatchesExact) {
    auto f = line_at(kSixty);
    auto c = x_axis();
    auto exact = run_alternating(f, c, pt({1, 0}), {});
    auto inexact = run_inexact_alternating(f, c, pt({1, 0}), {});
    ASSERT_EQ(exact.size(), inexact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) EXPECT_EQ(exact.iterates[k], inexact.iterates[k]);
}

TEST(Inexact, AcceptedStepsVerify) {
    auto f = line_at(kSixty);
    auto c = x_axis();
    const double eps = 0.2;
    auto t = run_inexact_alternating(f, c, pt({1, 0}), {.seed = 3, .inexact_eps = eps});
    // F-iterates sit at odd indices; the first one is exact.
    for (std::size_t k = 3; k < t.size(); k += 2) {
        auto chk = check_inexact_step(*f, t.iterates[k - 2], t.iterates[k - 1], t.iterates[k]);
        EXPECT_LE(chk.cone_distance, eps + 1e-12);
        EXPECT_LE(chk.step, chk.previous_step + 1e-12);
    }
    auto fit = fit_rlinear_rate(distance_series(t, Point::Zero(2)));
    EXPECT_LE(fit.rate, inexact_rate(0.5, eps) + 0.02);
}

TEST(Inexact, PlanarPerturbationCone) {
    // From x_cur = (0, 1) above the x-axis, step to (0.1, 0): normalized
    // direction (0.1, -1)/|.| is 0.1/sqrt(1.01) from the normal line.
    auto f = x_axis();
    auto chk = check_inexact_step(*f, pt({-5, 0}), pt({0, 1}), pt({0.1, 0}));
    EXPECT_NEAR(chk.cone_distance, 0.1 / std::sqrt(1.01), 1e-12);
    EXPECT_NEAR(chk.cone_distance, 0.0995, 1e-4);
    EXPECT_TRUE(chk.accepted(0.2));
}

TEST(Inexact, ZeroThetaReturnsExactProjection) {
    auto f = line_at(kSixty);
    std::mt19937_64 rng(1);
    Point x_cur = pt({1, 0});
    Point x_prev = pt({3, 3});
    Point p = inexact_candidate(*f, x_prev, x_cur, 0.2, rng, {.max_theta = 0.0});
    EXPECT_EQ(p, f->project(x_cur));
}

TEST(Inexact, CandidateIsAccepted) {
    auto f = line_at(0.7);
    std::mt19937_64 rng(2);
    Point x_prev = line_projection(pt({2, -1}), 0.7);
    Point x_cur = pt({0.4, -0.3});
    Point p = inexact_candidate(*f, x_prev, x_cur, 0.3, rng);
    EXPECT_TRUE(f->contains(p));
    EXPECT_TRUE(check_inexact_step(*f, x_prev, x_cur, p).accepted(0.3));
}

TEST(Perturbed, ZeroShiftStaysPut) {
    auto r = run_perturbed(line_at(kSixty), x_axis(), Point::Zero(2), Point::Zero(2), 0.6, {});
    EXPECT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.limit, Point::Zero(2));
    EXPECT_EQ(r.bound, 0.0);
}

TEST(Perturbed, TwoLinesWithinBound) {
    Point d = pt({0, 0.01});
    auto r = run_perturbed(line_at(kSixty), x_axis(), d, Point::Zero(2), 0.6, {});
    // Closed form: (d + F) meets the x-axis at x = -0.01 / tan 60.
    Point exact = pt({-0.01 / std::tan(kSixty), 0});
    EXPECT_LE((r.limit - exact).norm(), 1e-9);
    EXPECT_TRUE(r.within_bound);
    EXPECT_TRUE(r.limit_feasible);
    EXPECT_NEAR(r.bound, 4.0 * 0.01, 1e-15);
}

TEST(Perturbed, BoundLinearInShift) {
    auto a = run_perturbed(line_at(kSixty), x_axis(), pt({0, 0.01}), Point::Zero(2), 0.6, {});
    auto b = run_perturbed(line_at(kSixty), x_axis(), pt({0, 0.02}), Point::Zero(2), 0.6, {});
    EXPECT_NEAR(b.bound, 2 * a.bound, 1e-15);
}
