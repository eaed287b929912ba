#pragma once

#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace anosov {

/// Default absolute tolerance for boundary membership tests.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Parameters (λ, n, m, p, r1, r2) of the affine local model and of the surgery.
struct ModelParams {
    double lambda = 0.5;  ///< contraction factor in (0, 1)
    int n = 1;            ///< linking number, n ≥ 1
    int m = -1;           ///< multiplicity, m ≠ 0, gcd(n, |m|) = 1
    int p = 1;            ///< component count, p ≥ 1
    double r1 = 0.4;      ///< outer scale of the cross-shaped region
    double r2 = 0.1;      ///< inner scale, 0 < r2 < r1 < 1

    double log_lambda() const { return std::log(lambda); }

    /// z-speed 1/(n p) of the model vector field.
    double z_speed() const { return 1.0 / (static_cast<double>(n) * static_cast<double>(p)); }
};

/// Lists every violated parameter constraint; empty when the parameters are valid.
std::vector<std::string> parameter_violations(const ModelParams& params);

/// Throws ParameterError when parameter_violations is non-empty.
void validate_params(const ModelParams& params);

/// Reduces a real number into [0, 1).
double wrap_unit(double z);

/// A point of ℝ² × ℝ/ℤ. The z-coordinate is kept reduced modulo 1.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double x_, double y_, double z_) : x(x_), y(y_), z(wrap_unit(z_)) {}
};

/// Circle distance between two z-values.
double circle_distance(double z1, double z2);

/// Largest coordinate distance between two points, with z measured on the circle.
double point_distance(const Point3& a, const Point3& b);

enum class BoundaryKind { StableWall, UnstableWall, HyperbolaWall, EntranceAnnulus, ExitAnnulus };

std::string to_string(BoundaryKind kind);

/// A wall family together with the quadrant (1..4) it belongs to.
struct BoundaryClass {
    BoundaryKind kind;
    int quadrant;

    friend bool operator<(const BoundaryClass& a, const BoundaryClass& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.quadrant < b.quadrant;
    }
    friend bool operator==(const BoundaryClass& a, const BoundaryClass& b) {
        return a.kind == b.kind && a.quadrant == b.quadrant;
    }
};

std::string to_string(const BoundaryClass& cls);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

/// Arc of the hyperbola |x y| = r1 r2 between the two corners of one quadrant.
struct HyperbolaArc {
    double product = 0.0;  ///< r1 · r2
    double x_min = 0.0;    ///< smallest |x| on the arc (r2)
    double x_max = 0.0;    ///< largest |x| on the arc (r1)
    int sx = 1;
    int sy = 1;

    /// Point of the arc at parameter s ∈ [0, 1], running from |x| = x_max to |x| = x_min.
    Vec2 at(double s) const;
};

/// Walls of one closed quadrant Q_i. Quadrants are labelled counterclockwise,
/// Q1 = {x ≥ 0, y ≥ 0}; the signs (sx, sy) reflect Q1 onto Q_i.
struct QuadrantWalls {
    int index = 1;
    int sx = 1;
    int sy = 1;
    Segment stable_wall;    ///< w^s_i on the x-axis
    Segment unstable_wall;  ///< w^u_i on the y-axis
    Segment entrance;       ///< J_in^i, |x| = r1, |y| ≤ r2
    Segment exit;           ///< J_out^i, |y| = r1, |x| ≤ r2
    HyperbolaArc arc;
};

/// The cross-shaped region Q(r1, r2) as the union of its four quadrants.
struct CrossRegion {
    ModelParams params;
    std::array<QuadrantWalls, 4> quadrants;

    /// Closed membership test with absolute tolerance on the defining inequalities.
    bool contains(double x, double y, double tol = kBoundaryTolerance) const;

    /// True when (x, y) lies on the outer boundary ∂Q.
    bool on_boundary(double x, double y, double tol = kBoundaryTolerance) const;
};

/// Signs (sx, sy) of quadrant 1..4.
std::array<int, 2> quadrant_signs(int quadrant);

CrossRegion build_cross_region(const ModelParams& params);

/// Returns every wall class incident to a point of ∂V. Corner points receive all
/// incident classes, axis walls included. Throws ClassificationError off ∂V.
std::set<BoundaryClass> classify_boundary_point(const Point3& pt, const ModelParams& params,
                                                double tol = kBoundaryTolerance);

/// Changes normal-coordinate charts across the wall shared by two adjacent quadrants.
/// Passing from chart 4 to chart 1 adds m/n to z; every other seam is the identity
/// (and 1 → 4 subtracts m/n). Throws DomainError when the point is off that wall
/// or the quadrants are not adjacent.
Point3 chart_seam(const Point3& pt, int from_quadrant, int to_quadrant, const ModelParams& params,
                  double tol = kBoundaryTolerance);

}  // namespace anosov
