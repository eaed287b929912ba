#include "anosov/surgery.hpp"

#include <cmath>
#include <cstdlib>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("bump profile is defined on [0, 1] only");
}

void require_annulus(const ModelParams& params, double r) {
    if (!(r >= 0.0 && r <= params.r2)) throw DomainError("r must lie in [0, r2]");
}

double abs_m_over_n(const ModelParams& params) {
    return static_cast<double>(std::abs(params.m)) / static_cast<double>(params.n);
}

}  // namespace

double rho(double t) {
    require_unit(t);
    if (t <= 1.0 / 3.0) return 1.0;
    if (t >= 2.0 / 3.0) return 0.0;
    const double u = 3.0 * t - 1.0;
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double rho_prime(double t) {
    require_unit(t);
    if (t <= 1.0 / 3.0 || t >= 2.0 / 3.0) return 0.0;
    const double u = 3.0 * t - 1.0;
    return -90.0 * u * u * (1.0 - u) * (1.0 - u);
}

double kappa(const ModelParams& params, double r) {
    require_annulus(params, r);
    return abs_m_over_n(params) * std::abs(rho_prime(r / params.r2));
}

double su_constant(const ModelParams& params, double r) {
    require_annulus(params, r);
    const double cte = params.p * std::abs(params.m) * std::abs(params.log_lambda());
    return -cte * std::abs(rho_prime(r / params.r2)) * r / params.r2;
}

int twisted_quadrant(const ModelParams& params, TwistPlacement placement) {
    const int matched = params.m < 0 ? 1 : 4;
    if (placement == TwistPlacement::Matched) return matched;
    return matched == 1 ? 4 : 1;
}

double twist_offset(const ModelParams& params, int quadrant, double y, TwistPlacement placement) {
    if (quadrant != twisted_quadrant(params, placement)) return 0.0;
    const double t = std::abs(y) / params.r2;
    if (t > 1.0) return 0.0;
    // Matched twists add |m|/n ρ; the swapped build must subtract it to stay
    // consistent with the m/n seam shift between charts 4 and 1.
    const double sign = placement == TwistPlacement::Matched ? 1.0 : -1.0;
    return sign * abs_m_over_n(params) * rho(t);
}

Point3 glue(const ModelParams& params, const Point3& pt, int chart_quadrant,
            TwistPlacement placement, double tol) {
    const auto classes = classify_boundary_point(pt, params, tol);
    bool incident = false;
    bool on_entrance = false;
    for (const auto& cls : classes) {
        if (cls.quadrant != chart_quadrant) continue;
        incident = true;
        if (cls.kind == BoundaryKind::EntranceAnnulus) on_entrance = true;
    }
    if (!incident) throw DomainError("chart quadrant is not incident to the boundary point");
    if (!on_entrance) return pt;
    return {pt.x, pt.y, pt.z + twist_offset(params, chart_quadrant, pt.y, placement)};
}

Mat3 frame_b(const ModelParams& params, double r) {
    const double L = params.log_lambda();
    Mat3 b;
    b << L * params.r1, 1.0, 0.0,
         -L * r, 0.0, 1.0,
         params.z_speed(), 0.0, 0.0;
    return b;
}

Mat3 frame_c(const ModelParams& params, double r) {
    const double L = params.log_lambda();
    Mat3 c;
    c << L * params.r1, 0.0, 0.0,
         -L * r, 1.0, 0.0,
         params.z_speed(), 0.0, 1.0;
    return c;
}

Mat3 phi_matrix_frame_c(const ModelParams& params, double r) {
    Mat3 m = Mat3::Identity();
    m(2, 1) = -kappa(params, r) / params.r2;
    return m;
}

Mat3 phi_matrix_full(const ModelParams& params, double r) {
    const double k = kappa(params, r);
    if (k == 0.0) return Mat3::Identity();
    const double r1 = params.r1;
    const double r2 = params.r2;
    const double L = params.log_lambda();
    const double knp = k * params.n * params.p;
    Mat3 m;
    m << 1.0, -knp * r / (r1 * r2), -knp / r2,
         0.0, knp * L * r / r2 + 1.0, knp * L * r1 / r2,
         0.0, -knp * L * r * r / (r1 * r2), -knp * L * r / r2 + 1.0;
    return m;
}

Mat2 phi_matrix_su(const ModelParams& params, double r) {
    const double K = su_constant(params, r);
    if (K == 0.0) return Mat2::Identity();
    // K vanishes for r < r2/3, so r > 0 here
    const double a = params.r1 / r;
    Mat2 m;
    m << K + 1.0, K * a,
         -K / a, 1.0 - K;
    return m;
}

CuFactor phi_matrix_cu(const ModelParams& params, double r, double alpha) {
    CuFactor out;
    const double K = su_constant(params, r);
    if (K == 0.0) {
        out.alpha_out = alpha;
        return out;
    }
    const double q = alpha * r / params.r1 + 1.0;
    const double knp = kappa(params, r) * params.n * params.p;
    const double A = -knp / params.r2 * q;
    const double B = 1.0 - K * q;
    out.matrix << 1.0, A,
                  0.0, B;
    out.ill_conditioned = !(B > kCuFloor);
    out.alpha_out = ((K + 1.0) * alpha + K * params.r1 / r) / B;
    return out;
}

double jordan_eta(const ModelParams& params, double r) {
    const Mat2 m = phi_matrix_su(params, r);
    if (r == 0.0) return 0.0;
    Mat2 basis;
    basis << -1.0, r / params.r1,
             r / params.r1, 1.0;
    const Mat2 jordan = basis.inverse() * m * basis;
    return jordan(0, 1) * params.r2 / params.r1;
}

Mat3 flow_matrix_full(const ModelParams& params, double t) {
    const double s = std::pow(params.lambda, t);
    Mat3 m = Mat3::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = s;
    m(2, 2) = 1.0 / s;
    return m;
}

Mat2 flow_matrix_su(const ModelParams& params, double t) {
    const double s = std::pow(params.lambda, t);
    Mat2 m = Mat2::Zero();
    m(0, 0) = s;
    m(1, 1) = 1.0 / s;
    return m;
}

double stable_determinant(const ModelParams& params, const CocycleWord& word) {
    double log_abs = 0.0;
    double sign = 1.0;
    for (const auto& factor : word.factors) {
        double det = 0.0;
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            det = flow_matrix_full(params, seg->duration).determinant();
        } else {
            det = phi_matrix_full(params, std::get<GlueAt>(factor).r).determinant();
        }
        if (det < 0.0) sign = -sign;
        log_abs += std::log(std::abs(det));
    }
    return sign * std::exp(log_abs);
}

double qr_determinant(const ModelParams& params, const CocycleWord& word) {
    Mat3 q = Mat3::Identity();
    double log_abs = 0.0;
    for (const auto& factor : word.factors) {
        Mat3 f;
        if (const auto* seg = std::get_if<FlowSeg>(&factor)) {
            f = flow_matrix_full(params, seg->duration);
        } else {
            f = phi_matrix_full(params, std::get<GlueAt>(factor).r);
        }
        const Mat3 z = f * q;
        Eigen::HouseholderQR<Mat3> qr(z);
        Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
        Mat3 next = qr.householderQ();
        for (int i = 0; i < 3; ++i) {
            if (r(i, i) < 0.0) {
                r.row(i) *= -1.0;
                next.col(i) *= -1.0;
            }
            log_abs += std::log(r(i, i));
        }
        q = next;
    }
    const double sign = q.determinant() < 0.0 ? -1.0 : 1.0;
    return sign * std::exp(log_abs);
}

double volume_check(const ModelParams& params, const CocycleWord& word) {
    return std::abs(stable_determinant(params, word) - 1.0);
}

}  // namespace anosov
