#include "pathens/dynamics.hpp"

#include <cmath>

namespace pathens {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Fractional part mapped onto [0, 1). Guards the wrap case where
/// x - floor(x) rounds up to exactly 1 for tiny negative x.
double wrap01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;
    return f;
}

Eigen::Vector2d step_cat(const Eigen::Vector2d& s) {
    return {wrap01(2.0 * s[0] + s[1]), wrap01(s[0] + s[1])};
}

Eigen::Vector2d step_doubling(const Eigen::Vector2d& s) {
    return {wrap01(2.0 * s[0]), s[1]};
}

Eigen::Vector2d step_standard(const Eigen::Vector2d& s, double kick) {
    const double p_next = wrap01(s[1] + kick / kTwoPi * std::sin(kTwoPi * s[0]));
    const double q_next = wrap01(s[0] + p_next);
    return {q_next, p_next};
}

Eigen::Vector2d step2(const MapSystem& system, const Eigen::Vector2d& s) {
    switch (system.map_id) {
        case MapId::arnold_cat: return step_cat(s);
        case MapId::doubling: return step_doubling(s);
        case MapId::standard: return step_standard(s, system.param("K", 0.0));
    }
    throw std::invalid_argument("step_map: unknown map id");
}

} // namespace

std::string to_string(MapId id) {
    switch (id) {
        case MapId::arnold_cat: return "arnold_cat";
        case MapId::doubling: return "doubling";
        case MapId::standard: return "standard";
    }
    throw std::invalid_argument("to_string: unknown map id");
}

MapId map_id_from_string(const std::string& name) {
    if (name == "arnold_cat" || name == "cat") return MapId::arnold_cat;
    if (name == "doubling") return MapId::doubling;
    if (name == "standard") return MapId::standard;
    throw std::invalid_argument("unknown map id: " + name);
}

MapSystem make_arnold_cat(double dt) {
    if (dt <= 0.0) throw std::invalid_argument("MapSystem: dt must be > 0");
    MapSystem sys;
    sys.map_id = MapId::arnold_cat;
    sys.dt = dt;
    return sys;
}

MapSystem make_doubling(double dt) {
    if (dt <= 0.0) throw std::invalid_argument("MapSystem: dt must be > 0");
    MapSystem sys;
    sys.map_id = MapId::doubling;
    sys.dt = dt;
    return sys;
}

MapSystem make_standard(double kick, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("MapSystem: dt must be > 0");
    MapSystem sys;
    sys.map_id = MapId::standard;
    sys.params["K"] = kick;
    sys.dt = dt;
    return sys;
}

PhaseState step_map(const MapSystem& system, const PhaseState& s) {
    if (s.coords.size() != 2)
        throw std::invalid_argument("step_map: shipped maps act on 2-dimensional states");
    if (!system.domain.contains(s.coords))
        throw std::domain_error("step_map: state outside system domain");
    const Eigen::Vector2d out = step2(system, s.coords.head<2>());
    return PhaseState(out[0], out[1]);
}

Index CellPartition::cell_index(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (!domain.contains(x))
        throw std::domain_error("cell_index: state outside partition domain");
    Index flat = 0;
    Index stride = 1;
    for (Index a = 0; a < resolution.size(); ++a) {
        const double span = domain.hi[a] - domain.lo[a];
        const double t = (x[a] - domain.lo[a]) / span;
        Index i = static_cast<Index>(std::floor(t * resolution[a]));
        // x < hi mathematically implies i < resolution; clamp the rare case
        // where the division rounds the ratio up to the next cell edge.
        if (i >= resolution[a]) i = resolution[a] - 1;
        if (i < 0) i = 0;
        flat += stride * i;
        stride *= resolution[a];
    }
    return flat;
}

Eigen::VectorXi CellPartition::cell_coords(Index flat) const {
    if (flat < 0 || flat >= cell_count())
        throw std::out_of_range("cell_coords: invalid cell id");
    Eigen::VectorXi coords(resolution.size());
    for (Index a = 0; a < resolution.size(); ++a) {
        coords[a] = static_cast<int>(flat % resolution[a]);
        flat /= resolution[a];
    }
    return coords;
}

Box CellPartition::cell_box(Index flat) const {
    const Eigen::VectorXi coords = cell_coords(flat);
    Box b;
    b.lo.resize(resolution.size());
    b.hi.resize(resolution.size());
    for (Index a = 0; a < resolution.size(); ++a) {
        const double span = domain.hi[a] - domain.lo[a];
        const double w = span / resolution[a];
        b.lo[a] = domain.lo[a] + w * coords[a];
        b.hi[a] = coords[a] + 1 == resolution[a] ? domain.hi[a] : domain.lo[a] + w * (coords[a] + 1);
    }
    return b;
}

Index cell_index(const CellPartition& partition, const PhaseState& s) {
    return partition.cell_index(s.coords);
}

MapStepper::MapStepper(const MapSystem& system, const PhaseState& s0) : system_(&system) {
    if (s0.coords.size() != 2)
        throw std::invalid_argument("MapStepper: shipped maps act on 2-dimensional states");
    if (!system.domain.contains(s0.coords))
        throw std::domain_error("MapStepper: start state outside system domain");
    x_ = s0.coords.head<2>();
    if (system.map_id == MapId::doubling) {
        on_lattice_ = true;
        const double scaled = x_[0] * static_cast<double>(kDoublingLatticeModulus);
        lattice_ = static_cast<std::uint64_t>(std::llround(scaled)) % kDoublingLatticeModulus;
    }
}

MapStepper::MapStepper(const MapSystem& system, const Box& cell, SplitMix64& rng) : system_(&system) {
    if (cell.dim() != 2)
        throw std::invalid_argument("MapStepper: shipped maps act on 2-dimensional states");
    if (system.map_id == MapId::doubling) {
        on_lattice_ = true;
        const auto P = static_cast<double>(kDoublingLatticeModulus);
        const auto lo = static_cast<std::uint64_t>(std::ceil(cell.lo[0] * P));
        const auto hi = static_cast<std::uint64_t>(std::ceil(cell.hi[0] * P));
        lattice_ = lo + rng.below(hi > lo ? hi - lo : 1);
        x_[0] = static_cast<double>(lattice_) / P;
        // ceil(edge * P) carries the rounding error of edge * P (~2^9 lattice
        // units); nudge edge draws back inside the half-open cell.
        while (x_[0] < cell.lo[0]) x_[0] = static_cast<double>(++lattice_) / P;
        while (x_[0] >= cell.hi[0] && lattice_ > 0) x_[0] = static_cast<double>(--lattice_) / P;
        x_[1] = rng.uniform(cell.lo[1], cell.hi[1]);
    } else {
        for (int a = 0; a < 2; ++a) {
            x_[a] = rng.uniform(cell.lo[a], cell.hi[a]);
            if (x_[a] >= cell.hi[a]) x_[a] = std::nextafter(cell.hi[a], cell.lo[a]);
        }
    }
}

void MapStepper::advance() {
    if (on_lattice_) {
        lattice_ <<= 1; // 2a < 2^63: no overflow for a < 2^62
        if (lattice_ >= kDoublingLatticeModulus) lattice_ -= kDoublingLatticeModulus;
        x_[0] = static_cast<double>(lattice_) / static_cast<double>(kDoublingLatticeModulus);
    } else {
        x_ = step2(*system_, x_);
    }
}

Eigen::Vector2d MapStepper::state() const { return x_; }

Trajectory integrate_trajectory(const MapSystem& system, const PhaseState& s0, Index n) {
    if (n < 1) throw std::invalid_argument("integrate_trajectory: n must be >= 1");
    MapStepper stepper(system, s0);
    Trajectory traj;
    traj.dt = system.dt;
    traj.states.resize(2, n + 1);
    traj.states.col(0) = s0.coords;
    for (Index k = 1; k <= n; ++k) {
        stepper.advance();
        traj.states.col(k) = stepper.state();
    }
    return traj;
}

bool steady_state_check(std::span<const double> series, double zeta, double epsilon) {
    if (series.empty()) throw std::invalid_argument("steady_state_check: empty series");
    if (epsilon < 0.0) throw std::invalid_argument("steady_state_check: epsilon must be >= 0");
    for (const double v : series)
        if (std::abs(v - zeta) > epsilon) return false;
    return true;
}

} // namespace pathens
