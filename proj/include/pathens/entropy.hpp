#ifndef PATHENS_ENTROPY_HPP
#define PATHENS_ENTROPY_HPP

#include <string>

#include <Eigen/Dense>

#include "pathens/ensemble.hpp"

namespace pathens {

/// Macroscopic balance terms for one transformation of an open system.
/// Heats, enthalpy, energies and work in joules; temperatures in kelvin;
/// exchanged entropy in J/K.
struct ThermoAccount {
    double Q_r = 0.0;   ///< heat from the source
    double T_r = 1.0;   ///< source temperature, > 0
    double T_a = 1.0;   ///< ambient / reference temperature, > 0
    double dH = 0.0;    ///< enthalpy change
    double dS_ex = 0.0; ///< net exchanged entropy S_in - S_out
    double dE_k = 0.0;  ///< kinetic energy change
    double dE_g = 0.0;  ///< gravitational energy change
    double W = 0.0;     ///< work done
};

enum class EntropyForm { macroscopic, statistical };

struct EntropyReport {
    double value = 0.0;
    EntropyForm form = EntropyForm::statistical;
    std::string inputs_hash;
};

/// Entropy generation of one transformation:
/// (Q_r/T_a)(1 - T_a/T_r) + dH/T_a - dS_ex + (dE_k + dE_g - W)/T_a.
double entropy_generation_macroscopic(const ThermoAccount& account);

/// Shannon entropy -sum p ln p of a strictly positive probability array.
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::ArrayBase<Derived>& p) {
    return -(p.derived() * p.derived().log()).sum();
}

/// Statistical entropy generation -kB sum_k p_k ln p_k; nonnegative, equal
/// to kB ln(omega) exactly when the distribution is uniform.
double entropy_generation_statistical(const PathDistribution& dist, double kB = 1.0);

/// Partial derivative of the statistical entropy generation with respect to
/// p_k: -kB (1 + ln p_k).
double entropy_gradient(const PathDistribution& dist, Index k, double kB = 1.0);

/// Inverse of entropy_gradient: exp(-g/kB - 1). Throws std::overflow_error
/// if the result is not representable.
double probability_from_gradient(double gradient, double kB = 1.0);

/// First variation -kB sum_k (1 + ln p_k) dp_k for a probability-conserving
/// perturbation (sum dp_k = 0 within 1e-12).
double entropy_variation(const PathDistribution& dist,
                         const Eigen::Ref<const Eigen::ArrayXd>& dp, double kB = 1.0);

} // namespace pathens

#endif
