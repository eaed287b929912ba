#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "anosov/errors.hpp"
#include "anosov/geometry.hpp"

using namespace anosov;

namespace {

ModelParams base() {
    ModelParams p;
    p.lambda = 0.5;
    p.r1 = 0.4;
    p.r2 = 0.1;
    return p;
}

bool has(const std::set<BoundaryClass>& s, BoundaryKind k, int q) { return s.count({k, q}) > 0; }

}  // namespace

TEST(Geometry, ValidParamsHaveNoViolations) {
    EXPECT_TRUE(parameter_violations(base()).empty());
    EXPECT_NO_THROW(validate_params(base()));
}

TEST(Geometry, InvalidParamsThrow) {
    auto p = base();
    p.lambda = 1.0;
    EXPECT_THROW(validate_params(p), ParameterError);
    p = base();
    p.m = 0;
    EXPECT_THROW(validate_params(p), ParameterError);
    p = base();
    p.n = 2;
    p.m = 4;
    EXPECT_THROW(validate_params(p), ParameterError);
    p = base();
    p.r2 = 0.5;
    EXPECT_THROW(validate_params(p), ParameterError);
    p = base();
    p.p = 0;
    EXPECT_THROW(validate_params(p), ParameterError);
    EXPECT_THROW(build_cross_region(p), ParameterError);
}

TEST(Geometry, Point3ReducesZ) {
    EXPECT_DOUBLE_EQ(Point3(0, 0, 1.25).z, 0.25);
    EXPECT_DOUBLE_EQ(Point3(0, 0, -0.25).z, 0.75);
    EXPECT_NEAR(circle_distance(0.95, 0.05), 0.1, 1e-15);
}

TEST(Geometry, HyperbolaCornersOfQuadrantOne) {
    const auto region = build_cross_region(base());
    const auto& arc = region.quadrants[0].arc;
    const Vec2 a = arc.at(0.0);
    const Vec2 b = arc.at(1.0);
    EXPECT_NEAR(a.x, 0.4, 1e-15);
    EXPECT_NEAR(a.y, 0.1, 1e-15);
    EXPECT_NEAR(b.x, 0.1, 1e-15);
    EXPECT_NEAR(b.y, 0.4, 1e-15);
}

TEST(Geometry, MembershipExamples) {
    const auto region = build_cross_region(base());
    EXPECT_TRUE(region.contains(0.2, 0.2));
    EXPECT_TRUE(region.on_boundary(0.2, 0.2));
    EXPECT_TRUE(region.contains(0.3, 0.05));
    EXPECT_FALSE(region.on_boundary(0.3, 0.05));
    EXPECT_FALSE(region.contains(0.3, 0.3));
}

TEST(Geometry, QuadrantSymmetry) {
    const auto region = build_cross_region(base());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    for (int i = 0; i < 5000; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        EXPECT_EQ(region.contains(x, y), region.contains(-y, x)) << x << ' ' << y;
    }
}

TEST(Geometry, RegionBetweenDiskAndSquare) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParams p = base();
        p.lambda = lam(rng);
        p.r1 = 0.1 + 0.8 * u(rng);
        p.r2 = p.r1 * (0.05 + 0.9 * u(rng));
        const auto region = build_cross_region(p);
        for (int i = 0; i < 200; ++i) {
            const double a = 2 * M_PI * u(rng);
            const double rad = p.r2 / 2 * u(rng);
            EXPECT_TRUE(region.contains(rad * std::cos(a), rad * std::sin(a), 0.0));
            const double x = (2 * u(rng) - 1) * 1.5 * p.r1;
            const double y = (2 * u(rng) - 1) * 1.5 * p.r1;
            if (region.contains(x, y, 0.0)) {
                EXPECT_LE(std::abs(x), p.r1);
                EXPECT_LE(std::abs(y), p.r1);
            }
        }
    }
}

TEST(Geometry, ClassifyEntranceAnnulus) {
    const auto c = classify_boundary_point({0.4, 0.05, 0.3}, base());
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(has(c, BoundaryKind::EntranceAnnulus, 1));
}

TEST(Geometry, ClassifyStableCorner) {
    const auto c = classify_boundary_point({0.4, 0.0, 0.3}, base());
    EXPECT_TRUE(has(c, BoundaryKind::EntranceAnnulus, 1));
    EXPECT_TRUE(has(c, BoundaryKind::EntranceAnnulus, 4));
    bool stable = false;
    for (const auto& cls : c) stable = stable || cls.kind == BoundaryKind::StableWall;
    EXPECT_TRUE(stable);
}

TEST(Geometry, ClassifyHyperbola) {
    const auto c = classify_boundary_point({0.2, 0.2, 0.0}, base());
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(has(c, BoundaryKind::HyperbolaWall, 1));
}

TEST(Geometry, ClassifyExitAndOtherQuadrants) {
    EXPECT_TRUE(has(classify_boundary_point({0.05, 0.4, 0.0}, base()), BoundaryKind::ExitAnnulus, 1));
    EXPECT_TRUE(has(classify_boundary_point({-0.4, 0.05, 0.0}, base()), BoundaryKind::EntranceAnnulus, 2));
    EXPECT_TRUE(has(classify_boundary_point({-0.05, -0.4, 0.0}, base()), BoundaryKind::ExitAnnulus, 3));
}

TEST(Geometry, ClassifyRejectsInteriorPoint) {
    EXPECT_THROW(classify_boundary_point({0.3, 0.05, 0.0}, base()), ClassificationError);
}

TEST(Geometry, EveryBoundaryPointIsClassified) {
    const auto p = base();
    const auto region = build_cross_region(p);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& q : region.quadrants) {
        for (int i = 0; i < 200; ++i) {
            const double s = u(rng);
            const Vec2 pts[] = {
                {q.entrance.a.x + s * (q.entrance.b.x - q.entrance.a.x),
                 q.entrance.a.y + s * (q.entrance.b.y - q.entrance.a.y)},
                {q.exit.a.x + s * (q.exit.b.x - q.exit.a.x), q.exit.a.y + s * (q.exit.b.y - q.exit.a.y)},
                q.arc.at(s)};
            for (const auto& v : pts) {
                const auto c = classify_boundary_point({v.x, v.y, u(rng)}, p, 1e-12);
                EXPECT_FALSE(c.empty());
            }
        }
    }
}

TEST(Geometry, SeamFourToOneShifts) {
    ModelParams p = base();
    p.n = 2;
    p.m = -1;
    const auto out = chart_seam({0.3, 0.0, 0.1}, 4, 1, p);
    EXPECT_NEAR(out.z, 0.6, 1e-15);
    EXPECT_DOUBLE_EQ(out.x, 0.3);
}

TEST(Geometry, SeamOneToTwoIsIdentity) {
    const auto out = chart_seam({0.0, 0.3, 0.7}, 1, 2, base());
    EXPECT_DOUBLE_EQ(out.y, 0.3);
    EXPECT_DOUBLE_EQ(out.z, 0.7);
}

TEST(Geometry, SeamIntegerShiftIsIdentity) {
    ModelParams p = base();
    p.m = 1;
    EXPECT_NEAR(chart_seam({0.3, 0.0, 0.25}, 4, 1, p).z, 0.25, 1e-15);
}

TEST(Geometry, SeamRejectsOffWallAndNonAdjacent) {
    EXPECT_THROW(chart_seam({0.3, 0.1, 0.0}, 4, 1, base()), DomainError);
    EXPECT_THROW(chart_seam({0.0, 0.0, 0.0}, 1, 3, base()), DomainError);
}

TEST(Geometry, SeamsAroundTheOrbitShiftByMOverN) {
    for (int n = 1; n <= 6; ++n) {
        for (int m = -5; m <= 5; ++m) {
            if (m == 0 || std::gcd(n, std::abs(m)) != 1) continue;
            ModelParams p = base();
            p.n = n;
            p.m = m;
            const double z0 = 0.37;
            Point3 pt(0.2, 0.0, z0);
            pt = chart_seam(pt, 4, 1, p);
            pt = chart_seam({0.0, 0.2, pt.z}, 1, 2, p);
            pt = chart_seam({-0.2, 0.0, pt.z}, 2, 3, p);
            pt = chart_seam({0.0, -0.2, pt.z}, 3, 4, p);
            const double expected = wrap_unit(z0 + static_cast<double>(m) / n);
            EXPECT_LT(circle_distance(pt.z, expected), 1e-12) << n << ' ' << m;
        }
    }
}
