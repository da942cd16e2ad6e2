#ifndef PATHENS_ENSEMBLE_HPP
#define PATHENS_ENSEMBLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pathens/dynamics.hpp"

namespace pathens {

/// Identity of one trajectory class between two cells: the visited cell
/// sequence with consecutive duplicates collapsed. The travelling time is
/// defined on the collapsed signature, (length - 1) * dt, so it is a
/// property of the class rather than of any particular member.
struct Path {
    std::vector<std::int64_t> signature;
    double travel_time = 0.0;
    double action = 0.0;

    std::string label() const;
};

/// Outcome of simulating L replicas: distinct paths with the number of
/// replicas observed on each, plus the replicas that never reached the
/// target within the horizon. counts.sum() + unresolved == total.
struct PathEnsemble {
    std::vector<Path> paths;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;
    std::int64_t unresolved = 0;
};

/// A finite path probability distribution with one action per path.
/// Probabilities are strictly positive and sum to one within 1e-12;
/// zero-count paths are excluded upstream so that ln p is always defined.
struct PathDistribution {
    Eigen::ArrayXd probabilities;
    Eigen::ArrayXd actions;
    std::vector<std::string> labels;

    PathDistribution(Eigen::ArrayXd probs, Eigen::ArrayXd acts, std::vector<std::string> labs);

    Index size() const { return probabilities.size(); }
};

/// Collapsed cell signature of a trajectory from its start until the first
/// entry into the target cell; std::nullopt if the target is never entered.
/// The trajectory must start in the source cell, and source != target.
std::optional<Path> path_signature(const Trajectory& traj, const CellPartition& partition,
                                   Index source, Index target);

/// Discrete mechanical action of a trajectory: sum over steps of
/// [kinetic - potential] * dt evaluated at the step's initial state.
/// Kinetic term p^2/2 for every map; the standard map adds the kicked-rotor
/// potential (K/4pi^2) cos(2pi q). Trajectory length must be >= 2.
double path_action(const Trajectory& traj, const MapSystem& system);

/// Simulates L replicas started uniformly at random inside the source cell,
/// each integrated until it first enters the target cell or the horizon
/// expires, and classifies the arrivals by path signature. Each replica
/// draws from substream(seed, replica), so the result is reproducible and
/// independent of execution order; threads > 1 parallelizes the sweep
/// without changing the outcome. Per-path action is the mean over the
/// replicas of the class.
PathEnsemble simulate_paths(const MapSystem& system, const CellPartition& partition,
                            Index source, Index target, Index replicas, Index horizon,
                            std::uint64_t seed, int threads = 1);

/// Relative frequencies p_k = L_k / sum_j L_j over the resolved paths.
/// Throws if every replica is unresolved.
PathDistribution estimate_distribution(const PathEnsemble& ensemble);

} // namespace pathens

#endif
