#ifndef PATHENS_MAXENT_HPP
#define PATHENS_MAXENT_HPP

#include <Eigen/Dense>

#include "pathens/entropy.hpp"

namespace pathens {

/// Exponential-in-action path distribution p_k = exp(-eta A_k) / Q that
/// maximizes Shannon entropy among all distributions with the prescribed
/// mean action. Q is the normalizing sum at eta; gradient_partition_sum is
/// the same quantity rebuilt from entropy gradients, which is identically e
/// for any normalized distribution and is reported alongside so the two
/// normalizations stay visible.
struct MaxEntSolution {
    double eta = 0.0;
    double Q = 0.0;
    Eigen::ArrayXd probabilities;
    double mean_action = 0.0;
    int iterations = 0;
    double gradient_partition_sum = 0.0;
};

/// Mean action under weights exp(-eta * a), computed with a shifted
/// exponent so it is stable for any eta. Strictly decreasing in eta unless
/// all actions coincide.
template <typename Derived>
typename Derived::Scalar gibbs_mean(const Eigen::ArrayBase<Derived>& actions,
                                    typename Derived::Scalar eta) {
    using Scalar = typename Derived::Scalar;
    const Scalar shift = eta >= Scalar(0) ? actions.minCoeff() : actions.maxCoeff();
    const auto weights = (-eta * (actions.derived() - shift)).exp();
    return (weights * actions.derived()).sum() / weights.sum();
}

/// Gibbs weights normalized to a probability vector, shifted like gibbs_mean.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1>
gibbs_distribution(const Eigen::ArrayBase<Derived>& actions, typename Derived::Scalar eta) {
    using Scalar = typename Derived::Scalar;
    const Scalar shift = eta >= Scalar(0) ? actions.minCoeff() : actions.maxCoeff();
    Eigen::Array<Scalar, Eigen::Dynamic, 1> weights = (-eta * (actions.derived() - shift)).exp();
    return weights / weights.sum();
}

/// Solves sum_k A_k exp(-eta A_k) / sum_k exp(-eta A_k) = target_mean for
/// the unique eta by bracketed bisection (bracket grown geometrically from
/// [-1, 1]; tolerance 1e-10 on the achieved mean). All-equal actions return
/// eta = 0 and the uniform distribution. The target must lie strictly
/// inside the action range; a target pinned to min or max has no finite
/// multiplier and is rejected.
MaxEntSolution solve_maxent(const Eigen::Ref<const Eigen::ArrayXd>& actions, double target_mean);

/// Multiplier recovered from one path's entropy gradient:
/// (1/(kB A_k)) dS_irr/dp_k = -(1 + ln p_k) / A_k. Requires A_k != 0.
double eta_from_gradient(double action_k, const PathDistribution& dist, Index k, double kB = 1.0);

/// sum_k exp(-(1/kB) dS_irr/dp_k), rebuilt from the entropy gradients.
/// Analytically equal to e * sum_k p_k = e for every valid distribution.
double partition_identity_check(const PathDistribution& dist, double kB = 1.0);

} // namespace pathens

#endif
