#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/geometry.hpp"

namespace anosov {

/// Entry coordinates |r| below this value are treated as lying on the stable wall.
inline constexpr double kNeverExitsThreshold = 1e-300;

/// Flow of the affine field X = (log λ · x, −log λ · y, 1/(n p)):
/// (x, y, z) ↦ (λ^t x, λ^{−t} y, z + t/(n p)).
Point3 flow(const ModelParams& params, const Point3& pt, double t);

/// Time τ(r) = log(r / r1) / log λ spent by the orbit entering at distance r from the
/// stable wall before it reaches the exit annulus. Requires 0 < r ≤ r1.
double transit_time(const ModelParams& params, double r);

struct TransitResult {
    Point3 exit_point;
    double transit_time = 0.0;
    int quadrant = 1;
};

/// Closed-form passage through V(r1, r2) from an entrance annulus A_in^i to A_out^i.
/// Quadrants 2–4 are handled by reflecting onto quadrant 1. Returns std::nullopt for
/// entries on the stable wall (the orbit never exits). Throws DomainError when the
/// entry is not on an entrance annulus.
std::optional<TransitResult> transit_map(const ModelParams& params, const Point3& entry,
                                         double tol = kBoundaryTolerance);

struct ReturnResult {
    double x = 0.0;
    double y = 0.0;
    double time = 0.0;
};

/// First return of the plane z = 0 to itself: ((λ^{np} x, λ^{−np} y), n p).
ReturnResult first_return_to_base(const ModelParams& params, double x, double y);

/// Lower bound (2 / log λ) · log(r1_shrunk / r1) on the return time to the support of
/// the gluing map after the radii are shrunk from r1 to r1_shrunk.
double reentry_time_lower_bound(double r1_shrunk, double r1, double lambda);

/// One sample of an orbit trace inside V.
struct TraceRow {
    double t = 0.0;
    Point3 point;
    std::string region;
};

/// Samples the orbit of an entry point from the entrance annulus to the exit annulus.
/// Rows are tagged "entrance", "interior" or "exit". Entries that never exit are traced
/// for max_time instead and tagged "interior" throughout after the first row.
std::vector<TraceRow> trace_orbit(const ModelParams& params, const Point3& entry, int samples,
                                  double max_time = 10.0);

}  // namespace anosov
