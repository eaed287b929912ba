#include "anosov/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "anosov/affine_flow.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

using Vec = std::array<double, 3>;

Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec scale(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

double triple(const Vec& a, const Vec& b, const Vec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Vec field(const ModelParams& params, const Vec& p) {
    const double L = params.log_lambda();
    return {L * p[0], -L * p[1], params.z_speed()};
}

bool forward_quadrant(int quadrant) {
    const auto s = quadrant_signs(quadrant);
    return s[0] * s[1] > 0;
}

double placement_sign(TwistPlacement placement) {
    return placement == TwistPlacement::Matched ? 1.0 : -1.0;
}

// Central difference of the surface along the arc parameter, shrunk to stay in [0, 1].
Vec arc_derivative(const HelicoidSection& section, std::size_t arc, double s, double theta, double h) {
    const double lo = std::max(0.0, s - h);
    const double hi = std::min(1.0, s + h);
    return scale(sub(section.surface_point(arc, hi, theta), section.surface_point(arc, lo, theta)),
                 1.0 / (hi - lo));
}

Vec theta_derivative(const HelicoidSection& section, std::size_t arc, double s) {
    // S is linear in θ for fixed s
    return sub(section.surface_point(arc, s, 1.0), section.surface_point(arc, s, 0.0));
}

double frame_determinant(const HelicoidSection& section, std::size_t arc, double s, double theta,
                         double h) {
    const Vec p = section.surface_point(arc, s, theta);
    return triple(field(section.params, p), arc_derivative(section, arc, s, theta, h),
                  theta_derivative(section, arc, s));
}

// Arc parameter of the point at entry height |y| = u on an entrance arc.
double entrance_parameter(const HelicoidSection& section, std::size_t arc, double u) {
    const double t = u / section.params.r2;
    return forward_quadrant(section.arcs[arc].quadrant) ? t : 1.0 - t;
}

// Unwrapped (angle in turns, height) samples of β.
std::vector<std::array<double, 2>> torus_polyline(const HelicoidSection& section) {
    const auto pts = section.polyline();
    std::vector<std::array<double, 2>> out;
    out.reserve(pts.size());
    double phi = 0.0;
    double previous = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double a = std::atan2(pts[i][1], pts[i][0]) / (2.0 * std::numbers::pi);
        if (i == 0) {
            phi = a;
        } else {
            double d = a - previous;
            d -= std::round(d);
            phi += d;
        }
        previous = a;
        out.push_back({phi, pts[i][2]});
    }
    return out;
}

int level_crossings(const std::vector<double>& values, double c) {
    int count = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        count += static_cast<int>(std::abs(std::floor(values[i] - c) - std::floor(values[i - 1] - c)));
    }
    return count;
}

}  // namespace

std::string to_string(ArcKind kind) {
    switch (kind) {
        case ArcKind::In: return "in";
        case ArcKind::Tangent: return "tangent";
        case ArcKind::Out: return "out";
    }
    return "unknown";
}

std::array<double, 3> HelicoidSection::boundary_point(std::size_t index, double s) const {
    const HelicoidArc& arc = arcs.at(index);
    const auto signs = quadrant_signs(arc.quadrant);
    const double t = forward_quadrant(arc.quadrant) ? s : 1.0 - s;
    const double r1 = params.r1;
    const double r2 = params.r2;
    double ax = 0.0;
    double ay = 0.0;
    switch (arc.kind) {
        case ArcKind::In:
            ax = r1;
            ay = r2 * t;
            break;
        case ArcKind::Tangent: {
            const HyperbolaArc h{r1 * r2, r2, r1, 1, 1};
            const Vec2 v = h.at(t);
            ax = v.x;
            ay = v.y;
            break;
        }
        case ArcKind::Out:
            ax = r2 * (1.0 - t);
            ay = r1;
            break;
    }
    const double x = signs[0] * ax;
    const double y = signs[1] * ay;
    double z = arc.level;
    if (arc.twisted) z += twist_offset(params, arc.quadrant, std::abs(y), placement);
    return {x, y, z};
}

std::array<double, 3> HelicoidSection::surface_point(std::size_t index, double s, double theta) const {
    const auto b = boundary_point(index, s);
    return {theta * b[0], theta * b[1], b[2]};
}

std::vector<std::size_t> HelicoidSection::band_arcs() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].twisted) out.push_back(i);
    }
    return out;
}

double HelicoidSection::accumulated_shift() const {
    return boundary_point(arcs.size() - 1, 1.0)[2] - boundary_point(0, 0.0)[2];
}

std::vector<std::array<double, 3>> HelicoidSection::polyline() const {
    std::vector<std::array<double, 3>> out;
    out.reserve(arcs.size() * static_cast<std::size_t>(density) + 1);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        for (int k = 0; k < density; ++k) {
            out.push_back(boundary_point(i, static_cast<double>(k) / density));
        }
    }
    out.push_back(boundary_point(arcs.size() - 1, 1.0));
    return out;
}

HelicoidSection build_helicoid(const ModelParams& params, TwistPlacement placement, double z0,
                               int density) {
    validate_params(params);
    if (density < 2) throw ResolutionError("helicoid density must be at least 2", 2);
    HelicoidSection section;
    section.params = params;
    section.placement = placement;
    section.z0 = z0;
    section.density = density;
    const int twisted = twisted_quadrant(params, placement);
    const double step = static_cast<double>(params.m) / static_cast<double>(params.n);
    for (int copy = 0; copy < 4 * params.n; ++copy) {
        const int quadrant = copy % 4 + 1;
        const double level = z0 + static_cast<double>(copy / 4) * step;
        const std::array<ArcKind, 3> order =
            forward_quadrant(quadrant) ? std::array{ArcKind::In, ArcKind::Tangent, ArcKind::Out}
                                       : std::array{ArcKind::Out, ArcKind::Tangent, ArcKind::In};
        for (ArcKind kind : order) {
            section.arcs.push_back({copy, quadrant, kind, kind == ArcKind::In && quadrant == twisted, level});
        }
    }
    return section;
}

double band_determinant(const ModelParams& params, double s, double theta, TwistPlacement placement) {
    const double k = kappa(params, s);
    return -theta * params.r1 *
           (params.z_speed() - 2.0 * placement_sign(placement) * params.log_lambda() * s * k / params.r2);
}

double numeric_band_determinant(const HelicoidSection& section, std::size_t arc, double s,
                                double theta, double h) {
    if (!section.arcs.at(arc).twisted) throw DomainError("arc does not carry a band");
    // derivative along the traversal, rescaled from the arc parameter to |y|
    return frame_determinant(section, arc, entrance_parameter(section, arc, s), theta, h) /
           section.params.r2;
}

double horizontal_determinant(const HelicoidSection& section, std::size_t arc, double s,
                              double theta, double h) {
    return frame_determinant(section, arc, s, theta, h);
}

TransversalityReport transversality_check(const HelicoidSection& section, int grid, std::ostream* mesh) {
    if (grid < 2) throw ResolutionError("transversality grid must be at least 2", 2);
    TransversalityReport rep;
    rep.grid = grid;
    rep.max_det = -std::numeric_limits<double>::infinity();
    rep.max_normalized_det = rep.max_det;
    rep.min_det = std::numeric_limits<double>::infinity();
    if (mesh) *mesh << "r,theta,x,y,z,det\n";
    const double r2 = section.params.r2;
    for (std::size_t arc : section.band_arcs()) {
        for (int i = 0; i < grid; ++i) {
            const double s = r2 * static_cast<double>(i) / static_cast<double>(grid - 1);
            for (int j = 1; j <= grid; ++j) {
                const double theta = static_cast<double>(j) / static_cast<double>(grid);
                const double det = numeric_band_determinant(section, arc, s, theta);
                ++rep.points;
                rep.max_det = std::max(rep.max_det, det);
                rep.min_det = std::min(rep.min_det, det);
                rep.max_normalized_det = std::max(rep.max_normalized_det, det / theta);
                if (!(det < 0.0)) ++rep.positive_points;
                if (mesh) {
                    const auto p = section.surface_point(arc, entrance_parameter(section, arc, s), theta);
                    *mesh << s << ',' << theta << ',' << p[0] << ',' << p[1] << ','
                          << wrap_unit(p[2]) << ',' << det << '\n';
                }
            }
        }
    }
    for (std::size_t arc = 0; arc < section.arcs.size(); ++arc) {
        if (section.arcs[arc].twisted) continue;
        for (int k = 0; k <= section.density; ++k) {
            const double s = static_cast<double>(k) / section.density;
            if (!(horizontal_determinant(section, arc, s, 1.0) < 0.0)) rep.horizontal_ok = false;
        }
    }
    rep.passed = rep.positive_points == 0 && rep.horizontal_ok;
    return rep;
}

int level_arc_count(const HelicoidSection& section, double c) {
    int count = 0;
    for (std::size_t arc : section.band_arcs()) {
        std::vector<double> zs;
        for (int k = 0; k <= section.density; ++k) {
            zs.push_back(section.boundary_point(arc, static_cast<double>(k) / section.density)[2]);
        }
        count += level_crossings(zs, c);
    }
    return count;
}

int angular_arc_count(const HelicoidSection& section, double phi) {
    std::vector<double> phis;
    for (const auto& pt : torus_polyline(section)) phis.push_back(pt[0]);
    return level_crossings(phis, phi);
}

int signed_crossings(const HelicoidSection& section, int p_coeff, int q_coeff, double c) {
    const auto pts = torus_polyline(section);
    long long total = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double f0 = q_coeff * pts[i - 1][0] - p_coeff * pts[i - 1][1];
        const double f1 = q_coeff * pts[i][0] - p_coeff * pts[i][1];
        total += static_cast<long long>(std::floor(f1 - c) - std::floor(f0 - c));
    }
    return static_cast<int>(total);
}

double catmap_spectral_radius() { return (3.0 + std::sqrt(5.0)) / 2.0; }

FirstReturnSample catmap_first_return_check(double r, std::size_t samples, std::uint64_t seed) {
    const double mu = catmap_spectral_radius();
    const double lambda = 1.0 / mu;
    const Eigen::Vector2d es(1.0, lambda - 2.0);
    const Eigen::Vector2d eu(1.0, mu - 2.0);
    Eigen::Matrix2d A;
    A << 2.0, 1.0,
         1.0, 1.0;
    ModelParams params;
    params.lambda = lambda;
    params.n = 1;
    params.p = 1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-r, r);
    FirstReturnSample out;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = unit(rng);
        const double y = unit(rng);
        Eigen::Vector2d p = x * es + y * eu;
        p = p.array() - p.array().floor();  // point of the torus
        const Eigen::Vector2d image = A * p;
        const ReturnResult ret = first_return_to_base(params, x, y);
        const Eigen::Vector2d expected = ret.x * es + ret.y * eu;
        const Eigen::Vector2d diff = image - expected;
        const Eigen::Vector2d residual = diff.array() - diff.array().round();
        out.max_residual = std::max(out.max_residual, residual.cwiseAbs().maxCoeff());
        ++out.samples;
    }
    return out;
}

FixtureReport catmap_fixture(const FixtureOptions& options, int m) {
    FixtureReport rep;
    rep.spectral_radius = catmap_spectral_radius();
    rep.lambda = 1.0 / rep.spectral_radius;
    rep.boundary = {{1, 1, m}};
    for (const auto& d : rep.boundary) rep.validations.push_back(validate(d));
    rep.blowdown = blowdown_bookkeeping(rep.boundary);
    rep.search = parameter_search(rep.lambda, 1, m, 1, options.ratio, options.budget, options.search);
    double box = 0.1;
    if (rep.search.feasible) {
        const ModelParams& params = rep.search.params;
        rep.transversality =
            transversality_check(build_helicoid(params), options.transversality_grid);
        rep.wrong_signature = transversality_check(build_helicoid(params, TwistPlacement::Swapped),
                                                   options.transversality_grid);
        box = params.r1;
    }
    rep.first_return = catmap_first_return_check(box, options.return_samples, options.search.suite.seed);
    return rep;
}

}  // namespace anosov
