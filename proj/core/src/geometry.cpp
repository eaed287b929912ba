#include "anosov/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "anosov/errors.hpp"

namespace anosov {

std::vector<std::string> parameter_violations(const ModelParams& params) {
    std::vector<std::string> out;
    if (!(params.lambda > 0.0 && params.lambda < 1.0)) out.emplace_back("lambda must lie in (0, 1)");
    if (params.n < 1) out.emplace_back("n must be >= 1");
    if (params.m == 0) out.emplace_back("m must be nonzero");
    if (params.p < 1) out.emplace_back("p must be >= 1");
    if (!(params.r2 > 0.0 && params.r2 < params.r1 && params.r1 < 1.0)) {
        out.emplace_back("radii must satisfy 0 < r2 < r1 < 1");
    }
    if (params.n >= 1 && params.m != 0 && std::gcd(params.n, std::abs(params.m)) != 1) {
        out.emplace_back("gcd(n, |m|) must be 1");
    }
    return out;
}

void validate_params(const ModelParams& params) {
    const auto violations = parameter_violations(params);
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "invalid model parameters:";
    for (const auto& v : violations) msg << ' ' << v << ';';
    throw ParameterError(msg.str());
}

double wrap_unit(double z) {
    double w = z - std::floor(z);
    // floor can leave exactly 1.0 for tiny negative inputs
    if (w >= 1.0) w = 0.0;
    return w;
}

double circle_distance(double z1, double z2) {
    const double d = wrap_unit(z1 - z2);
    return std::min(d, 1.0 - d);
}

double point_distance(const Point3& a, const Point3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), circle_distance(a.z, b.z)});
}

std::string to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::StableWall: return "stable_wall";
        case BoundaryKind::UnstableWall: return "unstable_wall";
        case BoundaryKind::HyperbolaWall: return "hyperbola_wall";
        case BoundaryKind::EntranceAnnulus: return "entrance_annulus";
        case BoundaryKind::ExitAnnulus: return "exit_annulus";
    }
    return "unknown";
}

std::string to_string(const BoundaryClass& cls) {
    return to_string(cls.kind) + "_" + std::to_string(cls.quadrant);
}

Vec2 HyperbolaArc::at(double s) const {
    // geometric interpolation keeps the sample spacing even in log scale
    const double ax = x_max * std::pow(x_min / x_max, s);
    return {sx * ax, sy * product / ax};
}

std::array<int, 2> quadrant_signs(int quadrant) {
    switch (quadrant) {
        case 1: return {1, 1};
        case 2: return {-1, 1};
        case 3: return {-1, -1};
        case 4: return {1, -1};
        default: throw DomainError("quadrant index must be in 1..4");
    }
}

CrossRegion build_cross_region(const ModelParams& params) {
    validate_params(params);
    CrossRegion region;
    region.params = params;
    const double r1 = params.r1;
    const double r2 = params.r2;
    for (int q = 1; q <= 4; ++q) {
        const auto [sx, sy] = quadrant_signs(q);
        QuadrantWalls& w = region.quadrants[static_cast<std::size_t>(q - 1)];
        w.index = q;
        w.sx = sx;
        w.sy = sy;
        w.stable_wall = {{0.0, 0.0}, {sx * r1, 0.0}};
        w.unstable_wall = {{0.0, 0.0}, {0.0, sy * r1}};
        w.entrance = {{sx * r1, 0.0}, {sx * r1, sy * r2}};
        w.exit = {{0.0, sy * r1}, {sx * r2, sy * r1}};
        w.arc = {r1 * r2, r2, r1, sx, sy};
    }
    return region;
}

bool CrossRegion::contains(double x, double y, double tol) const {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    return ax <= params.r1 + tol && ay <= params.r1 + tol && ax * ay <= params.r1 * params.r2 + tol;
}

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool within(double v, double lo, double hi, double tol) { return v >= lo - tol && v <= hi + tol; }

// Membership of (x, y) in each wall of quadrant q.
void collect_walls(double x, double y, int q, const ModelParams& params, double tol,
                   std::set<BoundaryClass>& out) {
    const auto [sx, sy] = quadrant_signs(q);
    // the point must lie in the closed quadrant
    if (sx * x < -tol || sy * y < -tol) return;
    const double ax = sx * x;
    const double ay = sy * y;
    const double r1 = params.r1;
    const double r2 = params.r2;
    if (near(ay, 0.0, tol) && within(ax, 0.0, r1, tol)) out.insert({BoundaryKind::StableWall, q});
    if (near(ax, 0.0, tol) && within(ay, 0.0, r1, tol)) out.insert({BoundaryKind::UnstableWall, q});
    if (near(ax, r1, tol) && within(ay, 0.0, r2, tol)) out.insert({BoundaryKind::EntranceAnnulus, q});
    if (near(ay, r1, tol) && within(ax, 0.0, r2, tol)) out.insert({BoundaryKind::ExitAnnulus, q});
    if (near(ax * ay, r1 * r2, tol) && within(ax, r2, r1, tol) && within(ay, r2, r1, tol)) {
        out.insert({BoundaryKind::HyperbolaWall, q});
    }
}

bool is_outer(BoundaryKind kind) {
    return kind == BoundaryKind::EntranceAnnulus || kind == BoundaryKind::ExitAnnulus ||
           kind == BoundaryKind::HyperbolaWall;
}

}  // namespace

bool CrossRegion::on_boundary(double x, double y, double tol) const {
    std::set<BoundaryClass> classes;
    for (int q = 1; q <= 4; ++q) collect_walls(x, y, q, params, tol, classes);
    return std::any_of(classes.begin(), classes.end(),
                       [](const BoundaryClass& c) { return is_outer(c.kind); });
}

std::set<BoundaryClass> classify_boundary_point(const Point3& pt, const ModelParams& params,
                                                double tol) {
    validate_params(params);
    std::set<BoundaryClass> classes;
    for (int q = 1; q <= 4; ++q) collect_walls(pt.x, pt.y, q, params, tol, classes);
    const bool outer = std::any_of(classes.begin(), classes.end(),
                                   [](const BoundaryClass& c) { return is_outer(c.kind); });
    if (!outer) {
        std::ostringstream msg;
        msg << "point (" << pt.x << ", " << pt.y << ") is not on the boundary of V(r1, r2)";
        throw ClassificationError(msg.str());
    }
    return classes;
}

Point3 chart_seam(const Point3& pt, int from_quadrant, int to_quadrant, const ModelParams& params,
                  double tol) {
    validate_params(params);
    if (from_quadrant < 1 || from_quadrant > 4 || to_quadrant < 1 || to_quadrant > 4) {
        throw DomainError("quadrant index must be in 1..4");
    }
    const int forward = from_quadrant % 4 + 1;
    const int backward = (from_quadrant + 2) % 4 + 1;
    if (to_quadrant != forward && to_quadrant != backward) {
        throw DomainError("chart seam requires adjacent quadrants");
    }
    // the common wall of Q_i and Q_{i+1}: Q1|Q2 on x = 0, y ≥ 0; Q2|Q3 on y = 0, x ≤ 0;
    // Q3|Q4 on x = 0, y ≤ 0; Q4|Q1 on y = 0, x ≥ 0
    const int lower = (to_quadrant == forward) ? from_quadrant : to_quadrant;
    bool on_wall = false;
    switch (lower) {
        case 1: on_wall = near(pt.x, 0.0, tol) && within(pt.y, 0.0, params.r1, tol); break;
        case 2: on_wall = near(pt.y, 0.0, tol) && within(pt.x, -params.r1, 0.0, tol); break;
        case 3: on_wall = near(pt.x, 0.0, tol) && within(pt.y, -params.r1, 0.0, tol); break;
        case 4: on_wall = near(pt.y, 0.0, tol) && within(pt.x, 0.0, params.r1, tol); break;
        default: break;
    }
    if (!on_wall) throw DomainError("point is not on the declared chart seam");
    const double shift = static_cast<double>(params.m) / static_cast<double>(params.n);
    if (from_quadrant == 4 && to_quadrant == 1) return {pt.x, pt.y, pt.z + shift};
    if (from_quadrant == 1 && to_quadrant == 4) return {pt.x, pt.y, pt.z - shift};
    return pt;
}

}  // namespace anosov
