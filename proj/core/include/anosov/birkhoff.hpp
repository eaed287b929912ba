#pragma once

#include <optional>
#include <string>
#include <vector>

namespace anosov {

/// Boundary data (p, n, m) of a Birkhoff section along one boundary orbit.
struct BirkhoffBoundaryData {
    int p = 1;  ///< number of components
    int n = 1;  ///< linking number
    int m = 1;  ///< multiplicity (signed)

    friend bool operator==(const BirkhoffBoundaryData&, const BirkhoffBoundaryData&) = default;
};

struct BoundaryValidation {
    bool ok = true;
    bool embedded = false;  ///< |m| = 1
    std::vector<std::string> violations;
};

/// Checks p ≥ 1, n ≥ 1, m ≠ 0 and gcd(n, |m|) = 1. Violations are returned as data.
BoundaryValidation validate(const BirkhoffBoundaryData& data);

/// Greatest common divisor of |a| and |b|.
int gcd_abs(int a, int b);

/// Inverse of a modulo n in [0, n − 1]. Throws DomainError when gcd(a, n) ≠ 1.
int mod_inverse(int a, int n);

/// Permutation of the quadrants B_1, ..., B_{4n} induced by the first return map.
struct QuadrantPermutation {
    int n = 1;
    int m = 1;
    int l = 0;      ///< l ≡ m⁻¹ (mod n) in [1, n − 1]; 0 when n = 1
    int shift = 0;  ///< signed shift of the quadrant index, ±4l
    std::vector<int> image;  ///< image[j − 1] is the index of the quadrant B_j is sent to

    /// Image of the quadrant index j ∈ [1, 4n].
    int apply(int j) const;
    /// Smallest k ≥ 1 with the k-th power equal to the identity.
    int order() const;
};

/// j ↦ j + 4l (m > 0) or j ↦ j − 4l (m < 0) modulo 4n. Throws DomainError when
/// gcd(n, |m|) ≠ 1 or m = 0, and ParameterError when n < 1.
QuadrantPermutation quadrant_permutation(int n, int m);

struct PowerShift {
    int k = 0;      ///< k ≡ m (mod n) in [1, n − 1]
    int l = 0;      ///< l ≡ m⁻¹ (mod n) in [1, n − 1]
    int shift = 0;  ///< +4 for m > 0, −4 for m < 0
};

/// The power of the first return map that moves every quadrant by ±4. Returns
/// std::nullopt when n = 1, where no such power is defined.
std::optional<PowerShift> kth_power_shift(int n, int m);

/// Exponent e of the holonomy defect P_D^e across the cut segment; equals m.
int holonomy_defect(int n, int m);

/// Exponent of the composition of two holonomy defects.
int compose_defects(int first, int second);

/// Intersection number of the curve class p_coeff·a + q_coeff·b with a boundary curve of
/// class n·a + m·b, in the meridian/longitude basis {a, b} with a·b = −1.
int homological_intersection(int p_coeff, int q_coeff, int n, int m);

struct MarkedOrbit {
    int period = 1;   ///< period of the marked orbit after blowing down
    int prongs = 2;   ///< 2n
    bool singular = false;  ///< at least three prongs
};

std::vector<MarkedOrbit> blowdown_bookkeeping(const std::vector<BirkhoffBoundaryData>& data);

enum class Verdict { Positive, Negative, Inconclusive };

std::string to_string(Verdict verdict);

/// Compares the combinatorial hypotheses of the equivalence theorem. The fundamental-group
/// conjugacy is supplied as an attestation. Orbits correspond by index. Throws DataError
/// when the orbit counts differ.
Verdict equivalence_check(const std::vector<BirkhoffBoundaryData>& first,
                        const std::vector<BirkhoffBoundaryData>& second, bool conjugacy_attested);

/// log(mu_q) / log(mu_p). Throws DomainError unless both eigenvalues exceed 1.
double saddle_band_invariant(double mu_p, double mu_q);

/// True when the two saddle-band invariants agree within tol (a necessary condition for
/// conjugacy of the bands).
bool saddle_bands_compatible(double mu_p_f, double mu_q_f, double mu_p_g, double mu_q_g,
                             double tol = 1e-12);

/// One row of the combinatorics table.
struct CombinatoricsRow {
    int n = 1;
    int m = 1;
    int p = 1;
    int l = 0;
    int shift = 0;
    std::optional<int> k;
    int order = 1;
    int defect = 0;
    int meridian_intersection = 0;
    int longitude_intersection = 0;
    int prongs = 2;
    bool embedded = false;
};

/// Rows for every coprime (n, m) with 1 ≤ n ≤ n_max, 1 ≤ |m| ≤ m_max, at component count p.
std::vector<CombinatoricsRow> combinatorics_table(int n_max, int m_max, int p = 1);

}  // namespace anosov
