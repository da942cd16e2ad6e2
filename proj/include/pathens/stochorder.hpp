#ifndef PATHENS_STOCHORDER_HPP
#define PATHENS_STOCHORDER_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pathens/entropy.hpp"

namespace pathens {

enum class Relation { less, greater, equal };

/// Verdict of one pairwise path comparison, with the probabilities and
/// entropy gradients that produced it.
struct PathOrderResult {
    Relation relation = Relation::equal;
    double p_i = 0.0;
    double p_j = 0.0;
    double g_i = 0.0;
    double g_j = 0.0;
};

/// Path order by probability: path i is smaller than path j iff p_i < p_j.
/// Ties are reported as equal, never broken silently.
PathOrderResult compare_paths(const PathDistribution& dist, Index i, Index j, double kB = 1.0);

/// The same order read off the entropy gradients. dS_irr/dp = -kB(1 + ln p)
/// is strictly decreasing in p, so p_i < p_j iff g_i > g_j; the result
/// always agrees with compare_paths.
PathOrderResult gradient_order(const PathDistribution& dist, Index i, Index j, double kB = 1.0);

/// All indices attaining the maximal probability (a set, to expose ties).
std::vector<Index> greatest_path(const PathDistribution& dist);

/// A finite-support real random variable: strictly increasing support,
/// strictly positive probabilities summing to one within 1e-12.
struct DiscreteRV {
    Eigen::ArrayXd support;
    Eigen::ArrayXd probs;

    DiscreteRV(Eigen::ArrayXd sup, Eigen::ArrayXd pr);

    Index size() const { return support.size(); }

    /// Cumulative probabilities; the last entry is pinned to exactly 1.
    Eigen::ArrayXd cdf() const;

    /// CDF evaluated at t: P(X <= t).
    double cdf_at(double t) const;

    static DiscreteRV point_mass(double x);

    /// Builds an RV from (value, weight) pairs: sorts, coalesces exactly
    /// equal values, drops zero weights. Weights must sum to ~1 already.
    static DiscreteRV from_weighted(std::vector<std::pair<double, double>> atoms);
};

enum class OrderVerdict { x_below_y, y_below_x, equal, incomparable };

/// Usual stochastic order via the CDF criterion: X <= Y iff
/// F_X(t) >= F_Y(t) at every merged support point. CDF values are compared
/// at 1e-12 resolution to absorb summation rounding.
OrderVerdict usual_order(const DiscreteRV& x, const DiscreteRV& y);

/// Common-variable coupling X = psi1(Z), Y = psi2(Z) with psi1 <= psi2,
/// built on the merged quantile grid: Z is uniform on (0, 1] discretized by
/// the union of both CDFs' jump points, and psi1, psi2 are the quantile
/// functions. z_cdf holds the grid itself (cumulative masses, last entry
/// exactly 1); z_probs are its consecutive differences.
struct Coupling {
    Eigen::ArrayXd z_cdf;
    Eigen::ArrayXd z_probs;
    Eigen::ArrayXd psi1;
    Eigen::ArrayXd psi2;
};

/// Either the coupling (when X <= Y or X = Y) or a witness point t at which
/// F_X(t) < F_Y(t), proving the order fails.
struct CouplingResult {
    std::optional<Coupling> coupling;
    std::optional<double> crossing_witness;

    bool ok() const { return coupling.has_value(); }
};

CouplingResult build_coupling(const DiscreteRV& x, const DiscreteRV& y);

/// Distribution of X + Y for independent X, Y: pairwise sums with product
/// weights, exactly equal sums coalesced.
DiscreteRV convolve(const DiscreteRV& x, const DiscreteRV& y);

/// Weighted mixture on the merged support. Weights must be nonnegative and
/// sum to one within 1e-12; zero-weight components are dropped.
DiscreteRV mixture(const std::vector<DiscreteRV>& components,
                   const Eigen::Ref<const Eigen::ArrayXd>& weights);

} // namespace pathens

#endif
