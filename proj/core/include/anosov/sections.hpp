#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anosov/birkhoff.hpp"
#include "anosov/hyperbolicity.hpp"
#include "anosov/surgery.hpp"

namespace anosov {

enum class ArcKind { In, Tangent, Out };

std::string to_string(ArcKind kind);

/// One arc of the boundary curve β inside a quadrant copy.
struct HelicoidArc {
    int copy = 0;      ///< quadrant copy index in [0, 4n), traversed counterclockwise
    int quadrant = 1;  ///< quadrant 1..4 of V the copy lies in
    ArcKind kind = ArcKind::In;
    bool twisted = false;  ///< the arc carries the band of the gluing twist
    double level = 0.0;    ///< height of the copy before the twist is applied (unwrapped)
};

/// The helicoidal surface S = {(θx, θy, z) : (x, y, z) ∈ β, 0 ≤ θ ≤ 1} represented by its
/// boundary curve β and the coning rule. Heights are kept unwrapped so that the closing
/// shift of β can be read off directly.
struct HelicoidSection {
    ModelParams params;
    TwistPlacement placement = TwistPlacement::Matched;
    double z0 = 0.0;
    int density = 64;  ///< samples per arc used by discretizations
    std::vector<HelicoidArc> arcs;

    /// Point of β on arc `index` at parameter s ∈ [0, 1] in traversal order, with the
    /// z-coordinate unwrapped.
    std::array<double, 3> boundary_point(std::size_t index, double s) const;

    /// Point (θx, θy, z) of S over the boundary point.
    std::array<double, 3> surface_point(std::size_t index, double s, double theta) const;

    /// Index of the twisted arc of each revolution.
    std::vector<std::size_t> band_arcs() const;

    /// z(end of β) − z(start of β); equals m.
    double accumulated_shift() const;

    /// β sampled at `density` points per arc, closed (last point repeats the first
    /// up to the accumulated shift).
    std::vector<std::array<double, 3>> polyline() const;
};

/// Builds S for the given parameters and twist placement, starting the traversal at the
/// entrance arc of quadrant copy 0 at height z0.
HelicoidSection build_helicoid(const ModelParams& params,
                               TwistPlacement placement = TwistPlacement::Matched,
                               double z0 = 0.0, int density = 64);

/// Closed form of X ∧ ∂_s ∧ ∂_θ on a band at entry height s = |y| ∈ [0, r2] and θ ∈ [0, 1],
/// with ∂_s oriented along the counterclockwise traversal of β.
double band_determinant(const ModelParams& params, double s, double theta,
                        TwistPlacement placement = TwistPlacement::Matched);

/// The same determinant evaluated as a triple product of central-difference tangent
/// vectors of the discretized surface.
double numeric_band_determinant(const HelicoidSection& section, std::size_t arc, double s,
                                double theta, double h = 1e-6);

/// Determinant on a horizontal arc at parameter s and θ.
double horizontal_determinant(const HelicoidSection& section, std::size_t arc, double s,
                              double theta, double h = 1e-6);

struct TransversalityReport {
    int grid = 0;
    std::size_t points = 0;
    double max_det = 0.0;             ///< largest determinant on the band grid
    double max_normalized_det = 0.0;  ///< largest determinant divided by θ
    double min_det = 0.0;
    std::size_t positive_points = 0;  ///< grid points with determinant ≥ 0
    bool horizontal_ok = true;        ///< every horizontal arc has negative determinant
    bool passed = false;
};

/// Evaluates the band determinant on a grid × grid (s, θ) grid over each band with
/// s ∈ [0, r2] and θ ∈ (0, 1] (the core circle θ = 0 is excluded). Passes when every
/// value is negative and the horizontal arcs are transverse. Throws ResolutionError
/// when grid < 2. When `mesh` is given, writes CSV rows r,theta,x,y,z,det.
TransversalityReport transversality_check(const HelicoidSection& section, int grid,
                                          std::ostream* mesh = nullptr);

/// Number of band segments meeting the level {z = c}: each sheet crossing of a band
/// contributes one radial segment.
int level_arc_count(const HelicoidSection& section, double c);

/// Number of radial arcs in which S meets the half-plane at angle φ (in turns).
int angular_arc_count(const HelicoidSection& section, double phi);

/// Signed number of crossings of the discretized β with the torus line
/// {q φ − p z ≡ c (mod 1)} in (angle, height) coordinates, φ in turns. Equals the
/// intersection number of the class p·a + q·b with β.
int signed_crossings(const HelicoidSection& section, int p_coeff, int q_coeff, double c = 0.2137);

struct FirstReturnSample {
    std::size_t samples = 0;
    double max_residual = 0.0;
};

/// Compares the linear model first return with the hyperbolic toral map on points of
/// the eigen-box [−r, r]², reduced modulo ℤ².
FirstReturnSample catmap_first_return_check(double r, std::size_t samples, std::uint64_t seed);

struct FixtureOptions {
    int budget = 12;
    double ratio = 0.25;
    int transversality_grid = 200;
    SearchOptions search;
    std::size_t return_samples = 1000;
};

struct FixtureReport {
    double lambda = 0.0;
    double spectral_radius = 0.0;
    std::vector<BirkhoffBoundaryData> boundary;
    std::vector<BoundaryValidation> validations;
    std::vector<MarkedOrbit> blowdown;
    SearchResult search;
    std::optional<TransversalityReport> transversality;
    std::optional<TransversalityReport> wrong_signature;
    FirstReturnSample first_return;
};

/// Spectral radius (3 + √5)/2 of the hyperbolic matrix [[2, 1], [1, 1]].
double catmap_spectral_radius();

/// End-to-end scenario on the suspension of the cat map: boundary data, parameter
/// search, transversality at the feasible parameters and a first-return sample check.
FixtureReport catmap_fixture(const FixtureOptions& options = {}, int m = -1);

}  // namespace anosov
