#include "pathens/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace pathens {

namespace {

void require_positive_kB(double kB) {
    if (!(kB > 0.0)) throw std::invalid_argument("kB must be > 0");
}

} // namespace

double entropy_generation_macroscopic(const ThermoAccount& account) {
    if (!(account.T_r > 0.0) || !(account.T_a > 0.0))
        throw std::invalid_argument("ThermoAccount: temperatures must be > 0");
    const double carnot = account.Q_r / account.T_a * (1.0 - account.T_a / account.T_r);
    return carnot + account.dH / account.T_a - account.dS_ex +
           (account.dE_k + account.dE_g - account.W) / account.T_a;
}

double entropy_generation_statistical(const PathDistribution& dist, double kB) {
    require_positive_kB(kB);
    return kB * shannon_entropy(dist.probabilities);
}

double entropy_gradient(const PathDistribution& dist, Index k, double kB) {
    require_positive_kB(kB);
    if (k < 0 || k >= dist.size()) throw std::out_of_range("entropy_gradient: index out of range");
    return -kB * (1.0 + std::log(dist.probabilities[k]));
}

double probability_from_gradient(double gradient, double kB) {
    require_positive_kB(kB);
    const double p = std::exp(-gradient / kB - 1.0);
    if (!std::isfinite(p)) throw std::overflow_error("probability_from_gradient: result overflows");
    return p;
}

double entropy_variation(const PathDistribution& dist,
                         const Eigen::Ref<const Eigen::ArrayXd>& dp, double kB) {
    require_positive_kB(kB);
    if (dp.size() != dist.size())
        throw std::invalid_argument("entropy_variation: perturbation length mismatch");
    if (std::abs(dp.sum()) > 1e-12)
        throw std::invalid_argument("entropy_variation: perturbation must conserve probability");
    return -kB * ((1.0 + dist.probabilities.log()) * dp).sum();
}

} // namespace pathens
