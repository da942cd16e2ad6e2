// Test-only oracles, kept independent of the library code paths they check.
#ifndef PATHENS_TESTS_ORACLES_HPP
#define PATHENS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pathens/rng.hpp"
#include "pathens/stochorder.hpp"

namespace oracles {

/// Exact doubling-map iteration on rationals num/den (den odd, 0 <= num < den).
struct Rational {
    std::uint64_t num;
    std::uint64_t den;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational doubled() const {
        std::uint64_t n = 2 * num;
        if (n >= den) n -= den;
        return {n, den};
    }
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Upper 1% chi-square critical values (Pearson test, reject above).
inline constexpr double kChiSq99_df19 = 36.1909;
inline constexpr double kChiSq99_df99 = 134.642;

/// Random point on the simplex: normalized exponentials (Dirichlet(1,..,1)).
inline Eigen::ArrayXd random_simplex(pathens::SplitMix64& rng, Eigen::Index n) {
    Eigen::ArrayXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = -std::log(rng.uniform_pos01());
    return w / w.sum();
}

/// Shannon entropy by direct summation, independent of the library kernels.
inline double entropy_by_sum(const Eigen::ArrayXd& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) s -= p[i] * std::log(p[i]);
    return s;
}

/// Exhaustive distribution of X_1 + ... + X_n over the full product space.
inline std::map<double, double> brute_force_sum(const std::vector<pathens::DiscreteRV>& parts) {
    std::map<double, double> dist;
    std::vector<Eigen::Index> idx(parts.size(), 0);
    for (;;) {
        double value = 0.0;
        double prob = 1.0;
        for (std::size_t c = 0; c < parts.size(); ++c) {
            value += parts[c].support[idx[c]];
            prob *= parts[c].probs[idx[c]];
        }
        dist[value] += prob;
        std::size_t c = 0;
        while (c < parts.size()) {
            if (++idx[c] < parts[c].size()) break;
            idx[c] = 0;
            ++c;
        }
        if (c == parts.size()) break;
    }
    return dist;
}

/// Random stochastically ordered pair built from a shared uniform variable:
/// both quantile maps strictly increasing (so the per-variable supports are
/// collision-free), psi1 <= psi2 atom by atom.
inline std::pair<pathens::DiscreteRV, pathens::DiscreteRV>
random_ordered_pair(pathens::SplitMix64& rng, Eigen::Index max_support) {
    const Eigen::Index atoms = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(max_support)));
    const Eigen::ArrayXd mass = random_simplex(rng, atoms);
    std::vector<double> lower(atoms);
    std::vector<double> upper(atoms);
    double value = std::floor(rng.uniform(-4.0, 4.0) * 8.0) / 8.0;
    double gap = std::floor(rng.uniform(0.0, 2.0) * 8.0) / 8.0;
    for (Eigen::Index i = 0; i < atoms; ++i) {
        value += (1.0 + static_cast<double>(rng.below(8))) * 0.125;
        if (rng.uniform01() < 0.3) gap += 0.125; // widen the gap monotonically
        lower[i] = value;
        upper[i] = value + gap;
    }
    std::vector<std::pair<double, double>> x_atoms;
    std::vector<std::pair<double, double>> y_atoms;
    for (Eigen::Index i = 0; i < atoms; ++i) {
        x_atoms.emplace_back(lower[i], mass[i]);
        y_atoms.emplace_back(upper[i], mass[i]);
    }
    return {pathens::DiscreteRV::from_weighted(x_atoms), pathens::DiscreteRV::from_weighted(y_atoms)};
}

/// Random RV on a 1/8-spaced grid (collisions between supports are common,
/// which is what the order predicates must handle).
inline pathens::DiscreteRV random_rv(pathens::SplitMix64& rng, Eigen::Index max_support) {
    const Eigen::Index atoms = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(max_support)));
    const Eigen::ArrayXd mass = random_simplex(rng, atoms);
    std::vector<std::pair<double, double>> rv_atoms;
    for (Eigen::Index i = 0; i < atoms; ++i)
        rv_atoms.emplace_back(std::floor(rng.uniform(-4.0, 4.0) * 8.0) / 8.0, mass[i]);
    return pathens::DiscreteRV::from_weighted(rv_atoms);
}

} // namespace oracles

#endif
