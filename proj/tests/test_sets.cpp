#include "projfeas/errors.hpp"
#include "projfeas/sets.hpp"
#include "set_zoo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace projfeas;

namespace {

Point pt(std::initializer_list<double> v) {
    Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p(i++) = x;
    return p;
}

} // namespace

TEST(Project, BoxClampsCoordinates) {
    LinfBall box(2, 0.1);
    Point p = box.project(pt({0.3, -0.05}));
    EXPECT_EQ(p, pt({0.1, -0.05}));
}

TEST(Project, DiagonalAveragesCopies) {
    DiagonalLift lift(1, 2);
    EXPECT_EQ(lift.project(pt({1, 3})), pt({2, 2}));
}

TEST(Project, SingleOrthonormalRowNormalizes) {
    OrthonormalRows rows(1, 2);
    // Oracle: the nearest unit row to u is u / |u|.
    Point u = pt({3, 4});
    Point p = rows.project(u);
    EXPECT_LE((p - u / u.norm()).norm(), 1e-15);
    EXPECT_FALSE(rows.projection(u).degenerate);
}

TEST(Project, AxisProjection) {
    auto axis = AffineSubspace::line(Point::Zero(2), pt({1, 0}));
    EXPECT_EQ(axis->project(pt({1, 2})), pt({1, 0}));
}

TEST(Project, RowSpaceUsesPseudoInverseProjector) {
    Matrix w(2, 3);
    w << 1, 0, 0, 0, 1, 0;
    RowSpace l(w, 1);
    // Oracle: W^+ W via the pseudo-inverse.
    Matrix proj = pseudo_inverse(w) * w;
    Point u = pt({1, 2, 5});
    Point expected = proj * u;
    EXPECT_LE((l.project(u) - expected).norm(), 1e-15);
    EXPECT_LE((expected - pt({1, 2, 0})).norm(), 1e-15);
    EXPECT_LE((l.row_projector() - proj).norm(), 1e-14);
}

TEST(Project, OrthonormalRowsRankDeficientIsFlagged) {
    OrthonormalRows rows(2, 3);
    Matrix u(2, 3);
    u << 1, 0, 0, 2, 0, 0;  // rank one
    auto r = rows.projection(flatten(u));
    EXPECT_TRUE(r.degenerate);
    Matrix p = unflatten(r.point, 2, 3);
    EXPECT_LE((p * p.transpose() - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(Project, SphereCenterThrowsByDefault) {
    Sphere s(Point::Zero(2), 1.0);
    EXPECT_THROW(s.project(Point::Zero(2)), TieBreakError);
}

TEST(Project, SphereCenterFirstAxisPolicy) {
    Sphere s(pt({1, 1}), 2.0, CenterPolicy::kFirstAxis);
    auto r = s.projection(pt({1, 1}));
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.point, pt({3, 1}));
}

TEST(Project, DimensionMismatchThrows) {
    LinfBall box(3, 1.0);
    EXPECT_THROW(box.project(Point::Zero(2)), ArgumentError);
}

TEST(Distance, MemberIsZero) {
    LinfBall box(2, 0.1);
    EXPECT_EQ(box.distance(pt({0.05, -0.1})), 0.0);
}

TEST(Distance, BoxSingleClampedCoordinate) {
    LinfBall box(2, 0.1);
    EXPECT_NEAR(box.distance(pt({0.3, 0})), 0.2, 1e-15);
}

TEST(Distance, SphereRadialGap) {
    Sphere s(Point::Zero(2), 1.0);
    EXPECT_NEAR(s.distance(pt({3, 4})), 4.0, 1e-15);
}

TEST(NormalConeOfSet, AxisIsOrthogonalComplement) {
    auto axis = AffineSubspace::line(Point::Zero(2), pt({1, 0}));
    auto cone = axis->normal_cone(pt({7, 0}));
    EXPECT_EQ(cone.kind(), ConeKind::kSubspace);
    EXPECT_NEAR(normal_cone_distance(cone, pt({0, 3})), 0.0, 1e-15);
    EXPECT_NEAR(normal_cone_distance(cone, pt({1, 0})), 1.0, 1e-15);
}

TEST(NormalConeOfSet, BoxActiveCoordinateRay) {
    LinfBall box(2, 0.1);
    auto cone = box.normal_cone(pt({0.1, 0.02}));
    EXPECT_EQ(cone.kind(), ConeKind::kRaySpan);
    EXPECT_NEAR(normal_cone_distance(cone, pt({1, 0})), 0.0, 1e-15);
    EXPECT_NEAR(normal_cone_distance(cone, pt({-1, 0})), 1.0, 1e-15);
    EXPECT_NEAR(normal_cone_distance(cone, pt({0, 1})), 1.0, 1e-15);
}

TEST(NormalConeOfSet, SphereRadialLine) {
    Sphere s(Point::Zero(2), 1.0);
    auto cone = s.normal_cone(pt({0, 1}));
    EXPECT_NEAR(normal_cone_distance(cone, pt({0, -2})), 0.0, 1e-15);
    EXPECT_NEAR(normal_cone_distance(cone, pt({1, 0})), 1.0, 1e-15);
}

TEST(NormalConeOfSet, DiagonalComplementSumsToZero) {
    DiagonalLift lift(2, 3);
    auto cone = lift.normal_cone(lift.lift(pt({1, -1})));
    EXPECT_NEAR(normal_cone_distance(cone, pt({1, 0, -2, 1, 1, -1})), 0.0, 1e-14);
    EXPECT_NEAR(normal_cone_distance(cone, pt({1, 0, 1, 0, 1, 0})), std::sqrt(3.0), 1e-14);
}

TEST(NormalConeOfSet, TranslateUsesShiftedBase) {
    SetPtr axis = AffineSubspace::line(Point::Zero(2), pt({1, 0}));
    Translate t(axis, pt({0, 2}));
    auto cone = t.normal_cone(pt({5, 2}));
    EXPECT_NEAR(normal_cone_distance(cone, pt({0, 1})), 0.0, 1e-15);
    EXPECT_EQ(cone.base_point(), pt({5, 2}));
}

TEST(NormalConeOfSet, NonMemberThrows) {
    Sphere s(Point::Zero(2), 1.0);
    EXPECT_THROW(s.normal_cone(pt({0, 2})), DomainError);
}

TEST(RegularityClassTags, WeakestWins) {
    SetPtr line = AffineSubspace::line(Point::Zero(2), pt({1, 0}));
    SetPtr sphere = std::make_shared<Sphere>(Point::Zero(2), 1.0);
    ProductSet p({line, sphere});
    EXPECT_EQ(p.regularity_class(), RegularityClass::kProxRegular);
    EXPECT_EQ(weakest(RegularityClass::kConvex, RegularityClass::kUnclassified),
              RegularityClass::kUnclassified);
}

// Fuzzed projection properties for every set variant.
class ProjectionProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ProjectionProperties, IdempotentAndResidualInNormalCone) {
    auto variants = zoo::all_variants();
    const auto& v = variants.at(GetParam());
    std::mt19937_64 rng(100 + GetParam());
    for (int trial = 0; trial < 100; ++trial) {
        Point x = zoo::fuzz_point(*v.set, rng);
        Point p = v.set->project(x);
        EXPECT_LE((v.set->project(p) - p).norm(), 1e-8) << v.label;
        EXPECT_TRUE(v.set->contains(p)) << v.label;
        EXPECT_NEAR(v.set->distance(x), (x - p).norm(), 1e-10) << v.label;
        auto cone = v.set->normal_cone(p);
        EXPECT_LE(normal_cone_distance(cone, x - p), 1e-8) << v.label;
    }
}

TEST_P(ProjectionProperties, NearestAmongSampledMembers) {
    auto variants = zoo::all_variants();
    const auto& v = variants.at(GetParam());
    std::mt19937_64 rng(200 + GetParam());
    for (int trial = 0; trial < 20; ++trial) {
        Point x = zoo::fuzz_point(*v.set, rng);
        const double d = (x - v.set->project(x)).norm();
        for (int k = 0; k < 20; ++k) {
            Point other = v.set->project(zoo::fuzz_point(*v.set, rng));
            EXPECT_LE(d, (x - other).norm() + 1e-10) << v.label;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, ProjectionProperties,
                         ::testing::Range<std::size_t>(0, zoo::all_variants().size()));
