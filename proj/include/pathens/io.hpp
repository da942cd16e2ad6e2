#ifndef PATHENS_IO_HPP
#define PATHENS_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pathens/dynamics.hpp"
#include "pathens/ensemble.hpp"
#include "pathens/entropy.hpp"
#include "pathens/maxent.hpp"
#include "pathens/stochorder.hpp"

namespace pathens {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64-bit over a byte string, rendered as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

namespace io {

using nlohmann::json;

json to_json(const MapSystem& system);
MapSystem map_system_from_json(const json& j);

json to_json(const CellPartition& partition);
CellPartition partition_from_json(const json& j, const Box& domain);

/// Ensemble provenance carried alongside counts in every serialized file.
struct EnsembleMeta {
    MapSystem system;
    Eigen::VectorXi resolution;
    Index source = 0;
    Index target = 0;
    Index horizon = 0;
    std::uint64_t seed = 0;
};

json to_json(const PathEnsemble& ensemble, const EnsembleMeta& meta);
json to_json(const PathDistribution& dist);
PathDistribution distribution_from_json(const json& j);

ThermoAccount account_from_json(const json& j);
json to_json(const ThermoAccount& account);

std::string entropy_form_name(EntropyForm form);
json to_json(const EntropyReport& report);

json to_json(const MaxEntSolution& sol);

DiscreteRV rv_from_json(const json& j);
json to_json(const DiscreteRV& rv);
json to_json(const Coupling& coupling);

std::string order_verdict_name(OrderVerdict verdict);
std::string relation_name(Relation relation);

/// Canonical dump: sorted keys (nlohmann default for object maps) and
/// round-trip-exact doubles, so identical inputs give identical bytes.
std::string canonical_dump(const json& j);

/// CSV table of one path distribution with counts when available.
std::string paths_csv(const PathEnsemble& ensemble, const PathDistribution& dist);

/// Standalone SVG bar chart of path probabilities (highest first).
std::string probability_histogram_svg(const PathDistribution& dist, Index max_bars = 50);

} // namespace io
} // namespace pathens

#endif
