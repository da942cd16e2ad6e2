#ifndef PATHENS_DYNAMICS_HPP
#define PATHENS_DYNAMICS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "pathens/rng.hpp"

namespace pathens {

using Index = Eigen::Index;

/// Axis-aligned box, half-open on every axis: lo <= x < hi.
struct Box {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    Index dim() const { return lo.size(); }

    bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        if (x.size() != lo.size()) return false;
        return (x.array() >= lo.array()).all() && (x.array() < hi.array()).all();
    }

    static Box unit_square() {
        Box b;
        b.lo = Eigen::Vector2d::Zero();
        b.hi = Eigen::Vector2d::Ones();
        return b;
    }
};

/// A point in phase space. Coordinates come in (position, momentum) pairs,
/// so the dimension is even and at least 2; every component must be finite.
struct PhaseState {
    Eigen::VectorXd coords;

    explicit PhaseState(Eigen::VectorXd c) : coords(std::move(c)) {
        if (coords.size() < 2 || coords.size() % 2 != 0)
            throw std::invalid_argument("PhaseState: dimension must be even and >= 2");
        if (!coords.allFinite())
            throw std::invalid_argument("PhaseState: coordinates must be finite");
    }

    PhaseState(double q, double p) : PhaseState(Eigen::Vector2d(q, p)) {}

    double q() const { return coords[0]; }
    double p() const { return coords[1]; }
};

enum class MapId { arnold_cat, doubling, standard };

std::string to_string(MapId id);
MapId map_id_from_string(const std::string& name);

/// A deterministic self-map of its domain, advanced in discrete steps of dt.
struct MapSystem {
    MapId map_id = MapId::arnold_cat;
    std::map<std::string, double> params;
    Box domain = Box::unit_square();
    double dt = 1.0;

    double param(const std::string& name, double fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
};

MapSystem make_arnold_cat(double dt = 1.0);
MapSystem make_doubling(double dt = 1.0);
MapSystem make_standard(double kick, double dt = 1.0);

/// One application of the map. Pure in its inputs; throws std::domain_error
/// if s lies outside the system domain.
PhaseState step_map(const MapSystem& system, const PhaseState& s);

/// Uniform grid over a box. Cells are half-open, so every in-domain point
/// belongs to exactly one cell. Flat indices run first-axis-fastest:
/// flat = i0 + res0 * (i1 + res1 * (...)).
struct CellPartition {
    Box domain;
    Eigen::VectorXi resolution;

    CellPartition(Box d, Eigen::VectorXi res) : domain(std::move(d)), resolution(std::move(res)) {
        if (resolution.size() != domain.dim())
            throw std::invalid_argument("CellPartition: resolution rank must match domain");
        if ((resolution.array() < 1).any())
            throw std::invalid_argument("CellPartition: resolution must be >= 1 per axis");
    }

    Index cell_count() const {
        Index n = 1;
        for (Index a = 0; a < resolution.size(); ++a) n *= resolution[a];
        return n;
    }

    Index cell_index(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    /// Axis indices of a flat cell id.
    Eigen::VectorXi cell_coords(Index flat) const;

    /// The half-open box of one cell.
    Box cell_box(Index flat) const;
};

Index cell_index(const CellPartition& partition, const PhaseState& s);

/// A discrete orbit stored densely: column k is the state after k steps.
struct Trajectory {
    Eigen::MatrixXd states;
    double dt = 1.0;

    Index length() const { return states.cols(); }
    Eigen::VectorXd state(Index k) const { return states.col(k); }
};

/// Iterates a map from a given start. The doubling map degrades under
/// binary floating point (x -> 2x mod 1 sheds one mantissa bit per step and
/// reaches 0 after ~53 steps), so it is advanced exactly on the rational
/// lattice a / kDoublingLatticeModulus and projected to double on output.
/// The other maps iterate step_map directly.
class MapStepper {
public:
    /// Lattice denominator for doubling-map orbits: a safe prime congruent
    /// to 3 mod 8, so 2 is a primitive root and orbits of x -> 2x mod 1 on
    /// {a/p} have period p - 1 ~ 4.6e18.
    static constexpr std::uint64_t kDoublingLatticeModulus = 4611686018427377339ull;

    MapStepper(const MapSystem& system, const PhaseState& s0);

    /// Start uniformly at random inside a box (used for ensemble replicas).
    /// For the doubling map the position is drawn directly on the lattice.
    MapStepper(const MapSystem& system, const Box& cell, SplitMix64& rng);

    void advance();
    Eigen::Vector2d state() const;

private:
    const MapSystem* system_;
    Eigen::Vector2d x_;
    std::uint64_t lattice_ = 0;
    bool on_lattice_ = false;
};

/// Orbit of n+1 states starting at s0; n >= 1.
Trajectory integrate_trajectory(const MapSystem& system, const PhaseState& s0, Index n);

/// Arithmetic mean of an observable over the trajectory states.
template <typename F>
double time_average(const Trajectory& traj, F&& observable) {
    if (traj.length() == 0) throw std::invalid_argument("time_average: empty trajectory");
    double sum = 0.0;
    for (Index k = 0; k < traj.length(); ++k)
        sum += observable(traj.states.col(k));
    return sum / static_cast<double>(traj.length());
}

/// Monte Carlo mean of an observable under the invariant measure of the
/// shipped maps (uniform on the domain box). Deterministic given the seed.
template <typename F>
double space_average(const MapSystem& system, F&& observable, Index samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("space_average: samples must be >= 1");
    SplitMix64 rng(detail::mix64(seed));
    const Index dim = system.domain.dim();
    Eigen::VectorXd x(dim);
    double sum = 0.0;
    for (Index i = 0; i < samples; ++i) {
        for (Index a = 0; a < dim; ++a)
            x[a] = rng.uniform(system.domain.lo[a], system.domain.hi[a]);
        sum += observable(x);
    }
    return sum / static_cast<double>(samples);
}

/// True iff every element of the series stays within epsilon of zeta.
bool steady_state_check(std::span<const double> series, double zeta, double epsilon);

} // namespace pathens

#endif
