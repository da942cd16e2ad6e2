#include "pathens/maxent.hpp"

#include <cmath>
#include <stdexcept>

namespace pathens {

MaxEntSolution solve_maxent(const Eigen::Ref<const Eigen::ArrayXd>& actions, double target_mean) {
    const Index n = actions.size();
    if (n < 1) throw std::invalid_argument("solve_maxent: at least one action required");
    if (!actions.isFinite().all() || !std::isfinite(target_mean))
        throw std::invalid_argument("solve_maxent: inputs must be finite");

    const double a_min = actions.minCoeff();
    const double a_max = actions.maxCoeff();
    const double scale = std::max({1.0, std::abs(a_min), std::abs(a_max)});
    const double mean_tol = 1e-10 * scale;

    MaxEntSolution sol;
    if (a_min == a_max) {
        if (std::abs(target_mean - a_min) > mean_tol)
            throw std::domain_error("solve_maxent: all actions equal; target must equal them");
        sol.eta = 0.0; // any multiplier gives the uniform distribution
        sol.probabilities = Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
        sol.Q = static_cast<double>(n);
        sol.mean_action = a_min;
        sol.iterations = 0;
    } else {
        if (target_mean < a_min || target_mean > a_max)
            throw std::domain_error("solve_maxent: target mean outside the convex hull of actions");
        if (target_mean == a_min || target_mean == a_max)
            throw std::domain_error("solve_maxent: target mean on the hull boundary has no finite multiplier");

        // gibbs_mean is strictly decreasing, from a_max at eta -> -inf to
        // a_min at eta -> +inf; grow the bracket until it straddles target.
        double lo = -1.0;
        double hi = 1.0;
        int iterations = 0;
        while (gibbs_mean(actions, lo) < target_mean && iterations < 200) {
            lo *= 2.0;
            ++iterations;
        }
        while (gibbs_mean(actions, hi) > target_mean && iterations < 400) {
            hi *= 2.0;
            ++iterations;
        }

        double mid = 0.5 * (lo + hi);
        for (int i = 0; i < 500; ++i) {
            mid = 0.5 * (lo + hi);
            const double mean = gibbs_mean(actions, mid);
            ++iterations;
            if (std::abs(mean - target_mean) <= mean_tol) break;
            if (mean > target_mean)
                lo = mid;
            else
                hi = mid;
        }

        sol.eta = mid;
        sol.probabilities = gibbs_distribution(actions, mid);
        sol.mean_action = (sol.probabilities * actions).sum();
        sol.iterations = iterations;
        if (std::abs(sol.mean_action - target_mean) > 1e-8 * scale)
            throw std::runtime_error("solve_maxent: bisection failed to meet the mean constraint");

        const double shift = sol.eta >= 0.0 ? a_min : a_max;
        sol.Q = std::exp(-sol.eta * shift) * (-sol.eta * (actions - shift)).exp().sum();
    }

    Eigen::ArrayXd positive = sol.probabilities.max(1e-300);
    sol.gradient_partition_sum = (1.0 + positive.log()).exp().sum();
    return sol;
}

double eta_from_gradient(double action_k, const PathDistribution& dist, Index k, double kB) {
    if (action_k == 0.0)
        throw std::domain_error("eta_from_gradient: zero action, multiplier undefined");
    return entropy_gradient(dist, k, kB) / (kB * action_k);
}

double partition_identity_check(const PathDistribution& dist, double kB) {
    double sum = 0.0;
    for (Index k = 0; k < dist.size(); ++k)
        sum += std::exp(-entropy_gradient(dist, k, kB) / kB);
    return sum;
}

} // namespace pathens
