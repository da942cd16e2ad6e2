#include "pathens/stochorder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pathens {

namespace {

constexpr double kCdfTol = 1e-12;

Relation relation_from(double a, double b) {
    if (a < b) return Relation::less;
    if (a > b) return Relation::greater;
    return Relation::equal;
}

Relation flip(Relation r) {
    if (r == Relation::less) return Relation::greater;
    if (r == Relation::greater) return Relation::less;
    return Relation::equal;
}

Eigen::ArrayXd merged_support(const DiscreteRV& x, const DiscreteRV& y) {
    std::vector<double> merged(x.support.data(), x.support.data() + x.size());
    merged.insert(merged.end(), y.support.data(), y.support.data() + y.size());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Eigen::Map<const Eigen::ArrayXd>(merged.data(), static_cast<Index>(merged.size()));
}

/// Quantile function on a stored CDF: smallest support index whose
/// cumulative probability reaches u, at kCdfTol resolution.
Index quantile_index(const Eigen::ArrayXd& cdf, double u) {
    for (Index i = 0; i < cdf.size(); ++i)
        if (cdf[i] >= u - kCdfTol) return i;
    return cdf.size() - 1;
}

} // namespace

PathOrderResult compare_paths(const PathDistribution& dist, Index i, Index j, double kB) {
    if (i < 0 || i >= dist.size() || j < 0 || j >= dist.size())
        throw std::out_of_range("compare_paths: index out of range");
    PathOrderResult res;
    res.p_i = dist.probabilities[i];
    res.p_j = dist.probabilities[j];
    res.g_i = entropy_gradient(dist, i, kB);
    res.g_j = entropy_gradient(dist, j, kB);
    res.relation = relation_from(res.p_i, res.p_j);
    return res;
}

PathOrderResult gradient_order(const PathDistribution& dist, Index i, Index j, double kB) {
    PathOrderResult res = compare_paths(dist, i, j, kB);
    // The gradient decreases strictly in p, so a larger gradient marks the
    // stochastically smaller path.
    res.relation = flip(relation_from(res.g_i, res.g_j));
    return res;
}

std::vector<Index> greatest_path(const PathDistribution& dist) {
    const double top = dist.probabilities.maxCoeff();
    std::vector<Index> argmax;
    for (Index k = 0; k < dist.size(); ++k)
        if (dist.probabilities[k] == top) argmax.push_back(k);
    return argmax;
}

DiscreteRV::DiscreteRV(Eigen::ArrayXd sup, Eigen::ArrayXd pr)
    : support(std::move(sup)), probs(std::move(pr)) {
    const Index n = support.size();
    if (n < 1) throw std::invalid_argument("DiscreteRV: empty support");
    if (probs.size() != n) throw std::invalid_argument("DiscreteRV: support/probs length mismatch");
    if (!support.isFinite().all() || !probs.isFinite().all())
        throw std::invalid_argument("DiscreteRV: entries must be finite");
    for (Index i = 0; i + 1 < n; ++i)
        if (!(support[i] < support[i + 1]))
            throw std::invalid_argument("DiscreteRV: support must be strictly increasing");
    if ((probs <= 0.0).any() || (probs > 1.0).any())
        throw std::invalid_argument("DiscreteRV: probabilities must lie in (0, 1]");
    if (std::abs(probs.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("DiscreteRV: probabilities must sum to 1 within 1e-12");
}

Eigen::ArrayXd DiscreteRV::cdf() const {
    Eigen::ArrayXd cum(size());
    double run = 0.0;
    for (Index i = 0; i < size(); ++i) {
        run += probs[i];
        cum[i] = run;
    }
    cum[size() - 1] = 1.0; // absorb summation rounding into the last atom
    return cum;
}

double DiscreteRV::cdf_at(double t) const {
    const Eigen::ArrayXd cum = cdf();
    double value = 0.0;
    for (Index i = 0; i < size(); ++i) {
        if (support[i] <= t)
            value = cum[i];
        else
            break;
    }
    return value;
}

DiscreteRV DiscreteRV::point_mass(double x) {
    return DiscreteRV(Eigen::ArrayXd::Constant(1, x), Eigen::ArrayXd::Constant(1, 1.0));
}

DiscreteRV DiscreteRV::from_weighted(std::vector<std::pair<double, double>> atoms) {
    std::map<double, double> grouped;
    for (const auto& [value, weight] : atoms) {
        if (weight < 0.0) throw std::invalid_argument("DiscreteRV: negative weight");
        if (weight > 0.0) grouped[value] += weight;
    }
    if (grouped.empty()) throw std::invalid_argument("DiscreteRV: no mass");
    Eigen::ArrayXd sup(static_cast<Index>(grouped.size()));
    Eigen::ArrayXd pr(static_cast<Index>(grouped.size()));
    Index i = 0;
    for (const auto& [value, weight] : grouped) {
        sup[i] = value;
        pr[i] = weight;
        ++i;
    }
    return DiscreteRV(std::move(sup), std::move(pr));
}

namespace {

/// Both CDFs evaluated along the merged support grid in one sweep.
struct CdfSweep {
    Eigen::ArrayXd grid;
    Eigen::ArrayXd fx;
    Eigen::ArrayXd fy;
};

CdfSweep sweep_cdfs(const DiscreteRV& x, const DiscreteRV& y) {
    CdfSweep sweep;
    sweep.grid = merged_support(x, y);
    sweep.fx.resize(sweep.grid.size());
    sweep.fy.resize(sweep.grid.size());
    const Eigen::ArrayXd cdf_x = x.cdf();
    const Eigen::ArrayXd cdf_y = y.cdf();
    Index ix = 0;
    Index iy = 0;
    for (Index g = 0; g < sweep.grid.size(); ++g) {
        const double t = sweep.grid[g];
        while (ix < x.size() && x.support[ix] <= t) ++ix;
        while (iy < y.size() && y.support[iy] <= t) ++iy;
        sweep.fx[g] = ix == 0 ? 0.0 : cdf_x[ix - 1];
        sweep.fy[g] = iy == 0 ? 0.0 : cdf_y[iy - 1];
    }
    return sweep;
}

} // namespace

OrderVerdict usual_order(const DiscreteRV& x, const DiscreteRV& y) {
    const CdfSweep sweep = sweep_cdfs(x, y);
    bool x_ge = true; // F_X >= F_Y everywhere  <=>  X <= Y
    bool y_ge = true;
    bool all_eq = true;
    for (Index g = 0; g < sweep.grid.size(); ++g) {
        if (sweep.fx[g] < sweep.fy[g] - kCdfTol) x_ge = false;
        if (sweep.fy[g] < sweep.fx[g] - kCdfTol) y_ge = false;
        if (std::abs(sweep.fx[g] - sweep.fy[g]) > kCdfTol) all_eq = false;
    }
    if (all_eq) return OrderVerdict::equal;
    if (x_ge) return OrderVerdict::x_below_y;
    if (y_ge) return OrderVerdict::y_below_x;
    return OrderVerdict::incomparable;
}

CouplingResult build_coupling(const DiscreteRV& x, const DiscreteRV& y) {
    CouplingResult result;
    const OrderVerdict verdict = usual_order(x, y);
    if (verdict != OrderVerdict::x_below_y && verdict != OrderVerdict::equal) {
        // both remaining verdicts imply a strict gap F_X(t) < F_Y(t) somewhere
        const CdfSweep sweep = sweep_cdfs(x, y);
        for (Index g = 0; g < sweep.grid.size(); ++g) {
            if (sweep.fx[g] < sweep.fy[g] - kCdfTol) {
                result.crossing_witness = sweep.grid[g];
                return result;
            }
        }
        throw std::logic_error("build_coupling: verdict without a witness");
    }

    const Eigen::ArrayXd cdf_x = x.cdf();
    const Eigen::ArrayXd cdf_y = y.cdf();
    std::vector<double> grid(cdf_x.data(), cdf_x.data() + cdf_x.size());
    grid.insert(grid.end(), cdf_y.data(), cdf_y.data() + cdf_y.size());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    Coupling coupling;
    const Index m = static_cast<Index>(grid.size());
    coupling.z_cdf.resize(m);
    coupling.z_probs.resize(m);
    coupling.psi1.resize(m);
    coupling.psi2.resize(m);
    double prev = 0.0;
    for (Index k = 0; k < m; ++k) {
        coupling.z_cdf[k] = grid[static_cast<std::size_t>(k)];
        coupling.z_probs[k] = grid[static_cast<std::size_t>(k)] - prev;
        prev = grid[static_cast<std::size_t>(k)];
        coupling.psi1[k] = x.support[quantile_index(cdf_x, prev)];
        coupling.psi2[k] = y.support[quantile_index(cdf_y, prev)];
        if (coupling.psi1[k] > coupling.psi2[k])
            throw std::logic_error("build_coupling: quantile maps out of order on an ordered pair");
    }

    // Marginal reproduction: the pushforward CDF of psi1 must reproduce the
    // stored CDF of X exactly (likewise for Y).
    for (Index i = 0; i < x.size(); ++i) {
        double mass = 0.0;
        for (Index k = 0; k < m; ++k)
            if (coupling.psi1[k] <= x.support[i]) mass = grid[static_cast<std::size_t>(k)];
        if (mass != cdf_x[i])
            throw std::logic_error("build_coupling: X marginal not reproduced");
    }
    for (Index i = 0; i < y.size(); ++i) {
        double mass = 0.0;
        for (Index k = 0; k < m; ++k)
            if (coupling.psi2[k] <= y.support[i]) mass = grid[static_cast<std::size_t>(k)];
        if (mass != cdf_y[i])
            throw std::logic_error("build_coupling: Y marginal not reproduced");
    }

    result.coupling = std::move(coupling);
    return result;
}

DiscreteRV convolve(const DiscreteRV& x, const DiscreteRV& y) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(static_cast<std::size_t>(x.size()) * static_cast<std::size_t>(y.size()));
    for (Index i = 0; i < x.size(); ++i)
        for (Index j = 0; j < y.size(); ++j)
            atoms.emplace_back(x.support[i] + y.support[j], x.probs[i] * y.probs[j]);
    return DiscreteRV::from_weighted(std::move(atoms));
}

DiscreteRV mixture(const std::vector<DiscreteRV>& components,
                   const Eigen::Ref<const Eigen::ArrayXd>& weights) {
    if (components.empty()) throw std::invalid_argument("mixture: no components");
    if (weights.size() != static_cast<Index>(components.size()))
        throw std::invalid_argument("mixture: weights/components length mismatch");
    if ((weights < 0.0).any())
        throw std::invalid_argument("mixture: weights must be nonnegative");
    if (std::abs(weights.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("mixture: weights must sum to 1 within 1e-12");

    std::vector<std::pair<double, double>> atoms;
    for (std::size_t c = 0; c < components.size(); ++c) {
        const double w = weights[static_cast<Index>(c)];
        if (w == 0.0) continue;
        for (Index i = 0; i < components[c].size(); ++i)
            atoms.emplace_back(components[c].support[i], w * components[c].probs[i]);
    }
    return DiscreteRV::from_weighted(std::move(atoms));
}

} // namespace pathens
