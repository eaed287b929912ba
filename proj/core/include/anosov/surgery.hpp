#pragma once

#include <Eigen/Dense>

#include "anosov/geometry.hpp"
#include "anosov/word.hpp"

namespace anosov {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Bump profile ρ(t) = 1 − s(3t − 1) with s(u) = 6u⁵ − 15u⁴ + 10u³ on [1/3, 2/3],
/// equal to 1 on [0, 1/3] and 0 on [2/3, 1]. Throws DomainError outside [0, 1].
double rho(double t);

/// Derivative of rho. Throws DomainError outside [0, 1].
double rho_prime(double t);

/// Largest value of |ρ′|, attained at t = 1/2.
inline constexpr double kRhoPrimeMax = 45.0 / 8.0;

/// κ(r) = (|m| / n) · |ρ′(r / r2)| for r ∈ [0, r2].
double kappa(const ModelParams& params, double r);

/// K(r) = −p |m| |log λ| · |ρ′(r / r2)| · r / r2, the constant of the su action.
double su_constant(const ModelParams& params, double r);

/// Which entrance annulus carries the z-twist. Matched follows the signature rule
/// (A_in^1 for m < 0, A_in^4 for m > 0). Swapped places the twist on the other
/// annulus with the seam-consistent sign; it is still a well-defined gluing map but
/// it is the wrong-signature build whose bands fail to be transverse.
enum class TwistPlacement { Matched, Swapped };

/// Quadrant (1 or 4) whose entrance annulus carries the twist.
int twisted_quadrant(const ModelParams& params, TwistPlacement placement = TwistPlacement::Matched);

/// Offset added to the z-coordinate of chart `quadrant` by the gluing map at height y
/// on that quadrant's entrance annulus; zero when the annulus is not twisted.
double twist_offset(const ModelParams& params, int quadrant, double y,
                    TwistPlacement placement = TwistPlacement::Matched);

/// Boundary gluing map φ. The point is given in the normal-coordinate chart of
/// `chart_quadrant`, which must be one of the quadrants incident to the point.
/// Throws DomainError when the point is off the boundary or the chart does not touch it.
Point3 glue(const ModelParams& params, const Point3& pt, int chart_quadrant,
            TwistPlacement placement = TwistPlacement::Matched, double tol = kBoundaryTolerance);

/// Ambient coordinates of the frame B = {X, e_s, e_u} at (r1, r, ·), one vector per column.
Mat3 frame_b(const ModelParams& params, double r);

/// Ambient coordinates of the frame C = {X, e2, e3} at (r1, r, ·), one vector per column.
Mat3 frame_c(const ModelParams& params, double r);

/// Φ_p in frame C: [[1, 0, 0], [0, 1, 0], [0, −κ/r2, 1]].
Mat3 phi_matrix_frame_c(const ModelParams& params, double r);

/// Φ_p in frame B written in closed form; columns are images of Y, e_s, e_u.
Mat3 phi_matrix_full(const ModelParams& params, double r);

/// Action of Φ_p on the su-quotient: [[K + 1, K r1/r], [−K r/r1, 1 − K]].
Mat2 phi_matrix_su(const ModelParams& params, double r);

/// Restriction of Φ_p to the cu-plane spanned by Y and α e_s + e_u.
struct CuFactor {
    Mat2 matrix = Mat2::Identity();  ///< [[1, A], [0, B]]
    double alpha_out = 0.0;          ///< inclination of the image plane
    bool ill_conditioned = false;    ///< B fell below the positivity floor
};

/// Floor under which the B entry of a cu-factor is reported as ill-conditioned.
inline constexpr double kCuFloor = 1e-8;

CuFactor phi_matrix_cu(const ModelParams& params, double r, double alpha);

/// Off-diagonal profile η(r) of the Jordan form [[1, η r1/r2], [0, 1]] of the su
/// matrix in the basis w̄1 = (−1, r/r1), w̄2 = (r/r1, 1). Computed by change of basis.
double jordan_eta(const ModelParams& params, double r);

/// Flow factor Ψ_t in frame B: diag(1, λ^t, λ^{−t}).
Mat3 flow_matrix_full(const ModelParams& params, double t);

/// Flow factor on the su-quotient: diag(λ^t, λ^{−t}).
Mat2 flow_matrix_su(const ModelParams& params, double t);

/// Determinant of the word product as the product of the factor determinants,
/// accumulated in log scale. Each factor is well conditioned on its own, so this avoids
/// the error of order cond(Dψ) · eps carried by any determinant of the assembled product.
double stable_determinant(const ModelParams& params, const CocycleWord& word);

/// Determinant of the word product from a QR factorization carried along the product.
/// Its relative error grows like cond(Ψ_t) · eps for long flow segments.
double qr_determinant(const ModelParams& params, const CocycleWord& word);

/// |det Dψ − 1| for the word.
double volume_check(const ModelParams& params, const CocycleWord& word);

}  // namespace anosov
