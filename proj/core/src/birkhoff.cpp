#include "anosov/birkhoff.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

int positive_mod(long long a, long long n) {
    const long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

void require_coprime(int n, int m) {
    if (n < 1) throw ParameterError("linking number n must be at least 1");
    if (m == 0) throw DomainError("multiplicity m must be nonzero");
    if (gcd_abs(n, m) != 1) throw DomainError("gcd(n, |m|) must be 1");
}

}  // namespace

BoundaryValidation validate(const BirkhoffBoundaryData& data) {
    BoundaryValidation out;
    if (data.p < 1) out.violations.push_back("p must be a positive integer");
    if (data.n < 1) out.violations.push_back("n must be at least 1");
    if (data.m == 0) out.violations.push_back("m must be nonzero");
    if (data.n >= 1 && data.m != 0 && gcd_abs(data.n, data.m) != 1) {
        out.violations.push_back("gcd(n, |m|) must be 1");
    }
    out.ok = out.violations.empty();
    out.embedded = std::abs(data.m) == 1;
    return out;
}

int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

int mod_inverse(int a, int n) {
    if (n < 1) throw ParameterError("modulus must be at least 1");
    if (n == 1) return 0;
    // extended Euclid on (a mod n, n)
    long long r0 = n;
    long long r1 = positive_mod(a, n);
    long long t0 = 0;
    long long t1 = 1;
    while (r1 != 0) {
        const long long q = r0 / r1;
        const long long r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        const long long t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw DomainError("value is not invertible modulo n");
    return positive_mod(t0, n);
}

int QuadrantPermutation::apply(int j) const {
    const int size = 4 * n;
    if (j < 1 || j > size) throw DomainError("quadrant index out of range");
    return positive_mod(static_cast<long long>(j - 1) + shift, size) + 1;
}

int QuadrantPermutation::order() const {
    const int size = 4 * n;
    std::vector<int> current(static_cast<std::size_t>(size));
    std::iota(current.begin(), current.end(), 1);
    for (int k = 1; k <= size; ++k) {
        bool identity = true;
        for (int j = 0; j < size; ++j) {
            current[static_cast<std::size_t>(j)] = apply(current[static_cast<std::size_t>(j)]);
            if (current[static_cast<std::size_t>(j)] != j + 1) identity = false;
        }
        if (identity) return k;
    }
    throw DomainError("quadrant permutation has no finite order");
}

QuadrantPermutation quadrant_permutation(int n, int m) {
    require_coprime(n, m);
    QuadrantPermutation out;
    out.n = n;
    out.m = m;
    out.l = n == 1 ? 0 : mod_inverse(m, n);
    out.shift = m > 0 ? 4 * out.l : -4 * out.l;
    out.image.resize(static_cast<std::size_t>(4 * n));
    for (int j = 1; j <= 4 * n; ++j) out.image[static_cast<std::size_t>(j - 1)] = out.apply(j);
    return out;
}

std::optional<PowerShift> kth_power_shift(int n, int m) {
    require_coprime(n, m);
    if (n == 1) return std::nullopt;
    PowerShift out;
    out.k = positive_mod(m, n);
    out.l = mod_inverse(m, n);
    out.shift = m > 0 ? 4 : -4;
    return out;
}

int holonomy_defect(int n, int m) {
    require_coprime(n, m);
    return m;
}

int compose_defects(int first, int second) { return first + second; }

int homological_intersection(int p_coeff, int q_coeff, int n, int m) {
    return -p_coeff * m + q_coeff * n;
}

std::vector<MarkedOrbit> blowdown_bookkeeping(const std::vector<BirkhoffBoundaryData>& data) {
    std::vector<MarkedOrbit> out;
    out.reserve(data.size());
    for (const auto& d : data) {
        if (!validate(d).ok) throw ParameterError("invalid boundary data in blow-down bookkeeping");
        out.push_back({d.p, 2 * d.n, d.n >= 2});
    }
    return out;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Positive: return "positive";
        case Verdict::Negative: return "negative";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict equivalence_check(const std::vector<BirkhoffBoundaryData>& first,
                        const std::vector<BirkhoffBoundaryData>& second, bool conjugacy_attested) {
    if (first.size() != second.size()) {
        throw DataError("boundary orbit counts differ: " + std::to_string(first.size()) + " vs " +
                        std::to_string(second.size()));
    }
    if (!conjugacy_attested) return Verdict::Inconclusive;
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (!(first[i] == second[i])) return Verdict::Negative;
    }
    return Verdict::Positive;
}

double saddle_band_invariant(double mu_p, double mu_q) {
    if (!(mu_p > 1.0 && mu_q > 1.0)) throw DomainError("saddle eigenvalues must exceed 1");
    return std::log(mu_q) / std::log(mu_p);
}

bool saddle_bands_compatible(double mu_p_f, double mu_q_f, double mu_p_g, double mu_q_g,
                             double tol) {
    return std::abs(saddle_band_invariant(mu_p_f, mu_q_f) - saddle_band_invariant(mu_p_g, mu_q_g)) <=
           tol;
}

std::vector<CombinatoricsRow> combinatorics_table(int n_max, int m_max, int p) {
    if (n_max < 1 || m_max < 1) throw ConfigError("combinatorics range must be at least 1");
    if (p < 1) throw ConfigError("component count p must be at least 1");
    std::vector<CombinatoricsRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        for (int m = -m_max; m <= m_max; ++m) {
            if (m == 0 || gcd_abs(n, m) != 1) continue;
            const auto perm = quadrant_permutation(n, m);
            CombinatoricsRow row;
            row.n = n;
            row.m = m;
            row.p = p;
            row.l = perm.l;
            row.shift = perm.shift;
            if (const auto ks = kth_power_shift(n, m)) row.k = ks->k;
            row.order = perm.order();
            row.defect = holonomy_defect(n, m);
            row.meridian_intersection = homological_intersection(1, 0, n, m);
            row.longitude_intersection = homological_intersection(0, 1, n, m);
            row.prongs = 2 * n;
            row.embedded = std::abs(m) == 1;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace anosov
