#include "anosov/affine_flow.hpp"

#include <cmath>

#include "anosov/errors.hpp"

namespace anosov {

Point3 flow(const ModelParams& params, const Point3& pt, double t) {
    const double s = std::pow(params.lambda, t);
    return {s * pt.x, pt.y / s, pt.z + t * params.z_speed()};
}

double transit_time(const ModelParams& params, double r) {
    if (!(r > 0.0) || r > params.r1) throw DomainError("transit time requires 0 < r <= r1");
    return std::log(r / params.r1) / params.log_lambda();
}

std::optional<TransitResult> transit_map(const ModelParams& params, const Point3& entry,
                                         double tol) {
    validate_params(params);
    if (std::abs(std::abs(entry.x) - params.r1) > tol) {
        throw DomainError("entry point is not on an entrance annulus (|x| != r1)");
    }
    const double r = std::abs(entry.y);
    if (r > params.r2 + tol) throw DomainError("entry point lies beyond the entrance annulus (|y| > r2)");
    if (r < kNeverExitsThreshold) return std::nullopt;
    const int sx = entry.x >= 0.0 ? 1 : -1;
    const int sy = entry.y >= 0.0 ? 1 : -1;
    int quadrant = 1;
    if (sx < 0 && sy > 0) quadrant = 2;
    if (sx < 0 && sy < 0) quadrant = 3;
    if (sx > 0 && sy < 0) quadrant = 4;
    // conjugate to quadrant 1, where the entry is (r1, r, z)
    const double tau = transit_time(params, r);
    TransitResult result;
    result.transit_time = tau;
    result.exit_point = Point3(sx * r, sy * params.r1, entry.z + tau * params.z_speed());
    result.quadrant = quadrant;
    return result;
}

ReturnResult first_return_to_base(const ModelParams& params, double x, double y) {
    const double period = static_cast<double>(params.n) * static_cast<double>(params.p);
    const double s = std::pow(params.lambda, period);
    return {s * x, y / s, period};
}

double reentry_time_lower_bound(double r1_shrunk, double r1, double lambda) {
    if (!(r1_shrunk > 0.0 && r1_shrunk < r1)) {
        throw DomainError("re-entry bound requires 0 < r1_shrunk < r1");
    }
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
    return 2.0 / std::log(lambda) * std::log(r1_shrunk / r1);
}

std::vector<TraceRow> trace_orbit(const ModelParams& params, const Point3& entry, int samples,
                                  double max_time) {
    if (samples < 2) throw DomainError("an orbit trace needs at least two samples");
    const auto transit = transit_map(params, entry);
    const double total = transit ? transit->transit_time : max_time;
    std::vector<TraceRow> rows;
    rows.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = total * static_cast<double>(i) / static_cast<double>(samples - 1);
        TraceRow row;
        row.t = t;
        row.point = flow(params, entry, t);
        if (i == 0) {
            row.region = "entrance";
        } else if (i == samples - 1 && transit) {
            // use the closed-form exit so the last row sits exactly on A_out
            row.point = transit->exit_point;
            row.region = "exit";
        } else {
            row.region = "interior";
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace anosov
