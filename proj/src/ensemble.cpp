#include "pathens/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace pathens {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFourPiSq = 39.478417604357434475337963999505;

double lagrangian(const MapSystem& system, const Eigen::Vector2d& s) {
    const double kinetic = 0.5 * s[1] * s[1];
    if (system.map_id == MapId::standard) {
        const double potential = system.param("K", 0.0) / kFourPiSq * std::cos(kTwoPi * s[0]);
        return kinetic - potential;
    }
    return kinetic;
}

struct ReplicaOutcome {
    bool resolved = false;
    std::vector<std::int64_t> signature;
    double action = 0.0;
};

ReplicaOutcome run_replica(const MapSystem& system, const CellPartition& partition,
                           Index source, Index target, Index horizon,
                           std::uint64_t seed, Index replica) {
    SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(replica));
    MapStepper stepper(system, partition.cell_box(source), rng);

    ReplicaOutcome out;
    out.signature.push_back(source);
    Index last_cell = source;
    for (Index step = 0; step < horizon; ++step) {
        out.action += lagrangian(system, stepper.state()) * system.dt;
        stepper.advance();
        const Index cell = partition.cell_index(stepper.state());
        if (cell != last_cell) {
            out.signature.push_back(cell);
            last_cell = cell;
        }
        if (cell == target) {
            out.resolved = true;
            return out;
        }
    }
    return out;
}

} // namespace

std::string Path::label() const {
    std::string s;
    for (std::size_t i = 0; i < signature.size(); ++i) {
        if (i > 0) s += '-';
        s += std::to_string(signature[i]);
    }
    return s;
}

PathDistribution::PathDistribution(Eigen::ArrayXd probs, Eigen::ArrayXd acts,
                                   std::vector<std::string> labs)
    : probabilities(std::move(probs)), actions(std::move(acts)), labels(std::move(labs)) {
    const Index n = probabilities.size();
    if (n < 1) throw std::invalid_argument("PathDistribution: at least one path required");
    if (actions.size() != n || static_cast<Index>(labels.size()) != n)
        throw std::invalid_argument("PathDistribution: probabilities, actions, labels must align");
    if (!probabilities.isFinite().all() || !actions.isFinite().all())
        throw std::invalid_argument("PathDistribution: entries must be finite");
    if ((probabilities <= 0.0).any() || (probabilities > 1.0).any())
        throw std::invalid_argument("PathDistribution: probabilities must lie in (0, 1]");
    if (std::abs(probabilities.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("PathDistribution: probabilities must sum to 1 within 1e-12");
}

std::optional<Path> path_signature(const Trajectory& traj, const CellPartition& partition,
                                   Index source, Index target) {
    if (traj.length() == 0) throw std::invalid_argument("path_signature: empty trajectory");
    if (source == target)
        throw std::invalid_argument("path_signature: source and target cells must differ");
    if (source < 0 || source >= partition.cell_count() || target < 0 || target >= partition.cell_count())
        throw std::out_of_range("path_signature: invalid cell id");
    if (partition.cell_index(traj.states.col(0)) != source)
        throw std::invalid_argument("path_signature: trajectory does not start in source cell");

    Path path;
    path.signature.push_back(source);
    Index last_cell = source;
    for (Index k = 1; k < traj.length(); ++k) {
        const Index cell = partition.cell_index(traj.states.col(k));
        if (cell != last_cell) {
            path.signature.push_back(cell);
            last_cell = cell;
        }
        if (cell == target) {
            path.travel_time = static_cast<double>(path.signature.size() - 1) * traj.dt;
            return path;
        }
    }
    return std::nullopt;
}

double path_action(const Trajectory& traj, const MapSystem& system) {
    if (traj.length() < 2) throw std::invalid_argument("path_action: trajectory length must be >= 2");
    double action = 0.0;
    for (Index k = 0; k + 1 < traj.length(); ++k)
        action += lagrangian(system, traj.states.col(k).head<2>()) * system.dt;
    if (!std::isfinite(action)) throw std::runtime_error("path_action: non-finite action");
    return action;
}

PathEnsemble simulate_paths(const MapSystem& system, const CellPartition& partition,
                            Index source, Index target, Index replicas, Index horizon,
                            std::uint64_t seed, int threads) {
    if (replicas < 1) throw std::invalid_argument("simulate_paths: replicas must be >= 1");
    if (horizon < 1) throw std::invalid_argument("simulate_paths: horizon must be >= 1");
    const Index cells = partition.cell_count();
    if (source < 0 || source >= cells || target < 0 || target >= cells)
        throw std::out_of_range("simulate_paths: invalid cell id");
    if (source == target)
        throw std::invalid_argument("simulate_paths: source and target cells must differ");
    if (partition.domain.dim() != system.domain.dim() ||
        partition.domain.lo != system.domain.lo || partition.domain.hi != system.domain.hi)
        throw std::invalid_argument("simulate_paths: partition domain must equal system domain");

    std::vector<ReplicaOutcome> outcomes(replicas);
    auto sweep = [&](Index begin, Index end) {
        for (Index r = begin; r < end; ++r)
            outcomes[r] = run_replica(system, partition, source, target, horizon, seed, r);
    };
    if (threads <= 1) {
        sweep(0, replicas);
    } else {
        std::vector<std::thread> pool;
        const Index chunk = (replicas + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const Index begin = std::min<Index>(replicas, t * chunk);
            const Index end = std::min<Index>(replicas, begin + chunk);
            if (begin < end) pool.emplace_back(sweep, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Classification runs sequentially in replica order, so counts and mean
    // actions are bit-identical for any thread count.
    struct ClassStats {
        std::int64_t count = 0;
        double action_sum = 0.0;
    };
    std::map<std::vector<std::int64_t>, ClassStats> classes;
    std::int64_t unresolved = 0;
    for (const ReplicaOutcome& out : outcomes) {
        if (!out.resolved) {
            ++unresolved;
            continue;
        }
        ClassStats& stats = classes[out.signature];
        stats.count += 1;
        stats.action_sum += out.action;
    }

    PathEnsemble ensemble;
    ensemble.total = replicas;
    ensemble.unresolved = unresolved;
    for (const auto& [signature, stats] : classes) {
        Path path;
        path.signature = signature;
        path.travel_time = static_cast<double>(signature.size() - 1) * system.dt;
        path.action = stats.action_sum / static_cast<double>(stats.count);
        ensemble.paths.push_back(std::move(path));
        ensemble.counts.push_back(stats.count);
    }
    // Most-travelled path first; ties break on the lexicographically
    // smaller signature (already the map order).
    std::vector<std::size_t> order(ensemble.paths.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ensemble.counts[a] > ensemble.counts[b];
    });
    PathEnsemble sorted;
    sorted.total = ensemble.total;
    sorted.unresolved = ensemble.unresolved;
    for (const std::size_t i : order) {
        sorted.paths.push_back(std::move(ensemble.paths[i]));
        sorted.counts.push_back(ensemble.counts[i]);
    }
    return sorted;
}

PathDistribution estimate_distribution(const PathEnsemble& ensemble) {
    std::int64_t resolved = 0;
    for (const std::int64_t c : ensemble.counts) {
        if (c < 0) throw std::invalid_argument("estimate_distribution: negative count");
        resolved += c;
    }
    if (resolved == 0) throw std::runtime_error("estimate_distribution: all replicas unresolved");
    if (ensemble.paths.size() != ensemble.counts.size())
        throw std::invalid_argument("estimate_distribution: paths and counts must align");

    std::vector<double> probs;
    std::vector<double> actions;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < ensemble.paths.size(); ++i) {
        if (ensemble.counts[i] == 0) continue; // zero-count paths carry no mass
        probs.push_back(static_cast<double>(ensemble.counts[i]) / static_cast<double>(resolved));
        actions.push_back(ensemble.paths[i].action);
        labels.push_back(ensemble.paths[i].label());
    }
    return PathDistribution(
        Eigen::Map<const Eigen::ArrayXd>(probs.data(), static_cast<Index>(probs.size())),
        Eigen::Map<const Eigen::ArrayXd>(actions.data(), static_cast<Index>(actions.size())),
        std::move(labels));
}

} // namespace pathens
