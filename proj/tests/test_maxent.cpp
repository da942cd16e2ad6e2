#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathens/maxent.hpp"

using namespace pathens;

namespace {

/// Independent root finder for the mean-action constraint: coarse scan over
/// eta followed by secant refinement, long double throughout.
double solve_eta_oracle(const Eigen::ArrayXd& actions, double target) {
    const auto mean_at = [&](long double eta) {
        const long double shift = eta >= 0 ? actions.minCoeff() : actions.maxCoeff();
        long double wsum = 0.0L;
        long double asum = 0.0L;
        for (Eigen::Index i = 0; i < actions.size(); ++i) {
            const long double w = std::exp(-eta * (static_cast<long double>(actions[i]) - shift));
            wsum += w;
            asum += w * actions[i];
        }
        return asum / wsum;
    };
    long double lo = -1.0L;
    long double hi = 1.0L;
    while (mean_at(lo) < target) lo *= 2.0L;
    while (mean_at(hi) > target) hi *= 2.0L;
    // secant with bisection fallback
    long double a = lo;
    long double b = hi;
    for (int i = 0; i < 200; ++i) {
        const long double fa = mean_at(a) - target;
        const long double fb = mean_at(b) - target;
        long double c = (fb - fa) != 0.0L ? b - fb * (b - a) / (fb - fa) : 0.5L * (a + b);
        if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5L * (a + b);
        const long double fc = mean_at(c) - target;
        if (std::abs(static_cast<double>(fc)) < 1e-13) return static_cast<double>(c);
        if ((fa > 0) == (fc > 0))
            a = c;
        else
            b = c;
    }
    return static_cast<double>(0.5L * (a + b));
}

PathDistribution dist_from(const Eigen::ArrayXd& p, const Eigen::ArrayXd& actions) {
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < p.size(); ++i) labels.push_back(std::to_string(i));
    return PathDistribution(p, actions, labels);
}

} // namespace

TEST_CASE("solve_maxent: all-equal actions return the uniform distribution") {
    Eigen::ArrayXd actions = Eigen::ArrayXd::Constant(5, 2.5);
    const MaxEntSolution sol = solve_maxent(actions, 2.5);
    CHECK(sol.eta == 0.0);
    CHECK(sol.iterations == 0);
    for (Index i = 0; i < 5; ++i) CHECK(sol.probabilities[i] == 0.2);
    CHECK(sol.mean_action == 2.5);
    CHECK_THROWS_AS(solve_maxent(actions, 2.6), std::domain_error);
}

TEST_CASE("solve_maxent: symmetric two-action case is uniform at eta = 0") {
    Eigen::ArrayXd actions(2);
    actions << 0.0, 1.0;
    const MaxEntSolution sol = solve_maxent(actions, 0.5);
    CHECK(std::abs(sol.eta) < 1e-9);
    CHECK(sol.probabilities[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.probabilities[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sol.mean_action == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("solve_maxent: three actions, target 0.8, against the oracle") {
    Eigen::ArrayXd actions(3);
    actions << 0.0, 1.0, 2.0;
    const MaxEntSolution sol = solve_maxent(actions, 0.8);
    CHECK(std::abs(sol.mean_action - 0.8) <= 1e-8);

    const double eta_oracle = solve_eta_oracle(actions, 0.8);
    CHECK(sol.eta == doctest::Approx(eta_oracle).epsilon(1e-7));

    // solution invariant: p_k = exp(-eta A_k) / Q with Q the plain sum
    double q_direct = 0.0;
    for (Index k = 0; k < 3; ++k) q_direct += std::exp(-sol.eta * actions[k]);
    CHECK(sol.Q == doctest::Approx(q_direct).epsilon(1e-12));
    for (Index k = 0; k < 3; ++k)
        CHECK(sol.probabilities[k] == doctest::Approx(std::exp(-sol.eta * actions[k]) / q_direct).epsilon(1e-10));
    CHECK(std::abs(sol.probabilities.sum() - 1.0) < 1e-12);

    // MaxEnt optimality against 1000 random feasible same-mean distributions
    SplitMix64 rng(17);
    const double s_star = oracles::entropy_by_sum(sol.probabilities);
    for (int trial = 0; trial < 1000; ++trial) {
        // random direction in the null space of [1; A], then a step that
        // keeps the distribution strictly positive
        Eigen::ArrayXd dir(3);
        for (Index i = 0; i < 3; ++i) dir[i] = rng.uniform(-1.0, 1.0);
        const Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(3);
        // project out <1> and <A>
        Eigen::ArrayXd a_centered = actions - actions.mean();
        dir -= dir.mean();
        const double a_norm2 = (a_centered * a_centered).sum();
        if (a_norm2 > 0.0) dir -= (dir * a_centered).sum() / a_norm2 * a_centered;
        const double dnorm = std::sqrt((dir * dir).sum());
        if (dnorm < 1e-12) continue;
        dir /= dnorm;
        double step_max = 1e18;
        for (Index i = 0; i < 3; ++i) {
            if (dir[i] < 0.0) step_max = std::min(step_max, (1e-9 - sol.probabilities[i]) / dir[i]);
            if (dir[i] > 0.0) step_max = std::min(step_max, (1.0 - sol.probabilities[i]) / dir[i]);
        }
        const Eigen::ArrayXd q = sol.probabilities + rng.uniform01() * step_max * dir;
        if ((q <= 0.0).any()) continue;
        CHECK((q * actions).sum() == doctest::Approx(0.8).epsilon(1e-9));
        CHECK(oracles::entropy_by_sum(q) <= s_star + 1e-9);
    }
}

TEST_CASE("solve_maxent: hull violations and boundary targets are rejected") {
    Eigen::ArrayXd actions(3);
    actions << 0.0, 1.0, 2.0;
    CHECK_THROWS_AS(solve_maxent(actions, -0.5), std::domain_error);
    CHECK_THROWS_AS(solve_maxent(actions, 2.5), std::domain_error);
    CHECK_THROWS_AS(solve_maxent(actions, 0.0), std::domain_error);
    CHECK_THROWS_AS(solve_maxent(actions, 2.0), std::domain_error);
    CHECK_THROWS_AS(solve_maxent(Eigen::ArrayXd(0), 1.0), std::invalid_argument);
}

TEST_CASE("solve_maxent: single action and near-boundary targets") {
    Eigen::ArrayXd one(1);
    one << 1.5;
    const MaxEntSolution sol = solve_maxent(one, 1.5);
    CHECK(sol.probabilities[0] == 1.0);
    CHECK(sol.eta == 0.0);
    CHECK(sol.Q == 1.0);

    // a target a hair inside the hull still solves (eta is just large)
    Eigen::ArrayXd actions(3);
    actions << 0.0, 1.0, 2.0;
    const double target = 1e-10;
    const MaxEntSolution tight = solve_maxent(actions, target);
    CHECK(std::abs(tight.mean_action - target) <= 1e-8);
    CHECK(tight.eta > 10.0);
    CHECK(std::abs(tight.probabilities.sum() - 1.0) < 1e-12);
}

TEST_CASE("solve_maxent: monotone constraint map underwrites bisection") {
    Eigen::ArrayXd actions(4);
    actions << -1.0, 0.25, 0.5, 3.0;
    double prev = std::numeric_limits<double>::infinity();
    for (double eta = -6.0; eta <= 6.0; eta += 0.25) {
        const double mean = gibbs_mean(actions, eta);
        CHECK(mean < prev);
        prev = mean;
    }
    // saturates at the extremes of the hull
    CHECK(gibbs_mean(actions, 800.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(gibbs_mean(actions, -800.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("solve_maxent: least-action dominance when eta > 0") {
    SplitMix64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.below(19));
        Eigen::ArrayXd actions(n);
        for (Index i = 0; i < n; ++i) actions[i] = rng.uniform(-1.0, 2.0);
        const double a_min = actions.minCoeff();
        const double a_max = actions.maxCoeff();
        if (a_max - a_min < 1e-6) continue;
        // a target below the arithmetic mean forces eta > 0
        const double target = a_min + (actions.mean() - a_min) * rng.uniform(0.1, 0.9);
        const MaxEntSolution sol = solve_maxent(actions, target);
        CHECK(sol.eta > 0.0);
        Index argmin_a = 0;
        Index argmax_p = 0;
        for (Index i = 1; i < n; ++i) {
            if (actions[i] < actions[argmin_a]) argmin_a = i;
            if (sol.probabilities[i] > sol.probabilities[argmax_p]) argmax_p = i;
        }
        CHECK(argmax_p == argmin_a);
    }
}

TEST_CASE("eta_from_gradient: frozen values") {
    const double e = std::exp(1.0);
    Eigen::ArrayXd p(2);
    p << 1.0 / e, 1.0 - 1.0 / e;
    const PathDistribution at_1_over_e = dist_from(p, Eigen::ArrayXd::Ones(2));
    CHECK(eta_from_gradient(3.7, at_1_over_e, 0) == doctest::Approx(0.0).epsilon(1e-14));

    Eigen::ArrayXd p2(2);
    p2 << std::exp(-2.0), 1.0 - std::exp(-2.0);
    const PathDistribution at_e2 = dist_from(p2, Eigen::ArrayXd::Ones(2));
    // 1 + ln p = -1, action 1, kB 1 -> eta = 1
    CHECK(eta_from_gradient(1.0, at_e2, 0) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(eta_from_gradient(0.0, at_e2, 0), std::domain_error);
}

TEST_CASE("eta_from_gradient: reproduces the solver multiplier when Q = e") {
    // Shift the actions so the normalizing sum is exactly e; then
    // p_k = exp(-eta A_k - 1) and the gradient identity returns eta on
    // every path.
    Eigen::ArrayXd actions(4);
    actions << 0.3, 0.9, 1.7, 2.4;
    const MaxEntSolution first = solve_maxent(actions, 1.1);
    REQUIRE(first.eta != 0.0);
    const double shift = std::log(first.Q / std::exp(1.0)) / first.eta;
    const Eigen::ArrayXd shifted = actions + shift;
    const MaxEntSolution sol = solve_maxent(shifted, 1.1 + shift);
    CHECK(sol.Q == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

    const PathDistribution dist = dist_from(sol.probabilities, shifted);
    for (Index k = 0; k < shifted.size(); ++k)
        CHECK(eta_from_gradient(shifted[k], dist, k) == doctest::Approx(sol.eta).epsilon(1e-7));

    // Eq-24/Eq-16 consistency: p rebuilt from eta with Q = e satisfies the
    // reconstruction identity to machine precision
    for (Index k = 0; k < shifted.size(); ++k) {
        const double p_from_eq24 = std::exp(-sol.eta * shifted[k]) / std::exp(1.0);
        const double g = entropy_gradient(dist, k);
        CHECK(probability_from_gradient(g) == doctest::Approx(dist.probabilities[k]).epsilon(1e-12));
        CHECK(p_from_eq24 == doctest::Approx(dist.probabilities[k]).epsilon(1e-9));
        // the action scale is pinned: A_k = -(1 + ln p_k)/eta
        CHECK(shifted[k] == doctest::Approx(-(1.0 + std::log(dist.probabilities[k])) / sol.eta).epsilon(1e-9));
    }
}

TEST_CASE("partition identity: e for frozen cases and random distributions") {
    const double e = std::exp(1.0);
    Eigen::ArrayXd single(1);
    single << 1.0;
    CHECK(partition_identity_check(dist_from(single, Eigen::ArrayXd::Zero(1))) ==
          doctest::Approx(e).epsilon(1e-15));

    Eigen::ArrayXd uniform4 = Eigen::ArrayXd::Constant(4, 0.25);
    CHECK(partition_identity_check(dist_from(uniform4, Eigen::ArrayXd::Zero(4))) ==
          doctest::Approx(e).epsilon(1e-14));

    SplitMix64 rng(23);
    const Eigen::ArrayXd p = oracles::random_simplex(rng, 50);
    const double check = partition_identity_check(dist_from(p, Eigen::ArrayXd::Zero(50)));
    CHECK(std::abs(check - e) < 1e-10);

    // the identity is kB-independent
    CHECK(partition_identity_check(dist_from(p, Eigen::ArrayXd::Zero(50)), 1.380649e-23) ==
          doctest::Approx(e).epsilon(1e-10));
}

TEST_CASE("gradient partition sum is reported next to the normalizing Q") {
    Eigen::ArrayXd actions(3);
    actions << 0.0, 1.0, 2.0;
    const MaxEntSolution sol = solve_maxent(actions, 0.8);
    CHECK(sol.gradient_partition_sum == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    // the normalizing Q generally differs from e; both are visible
    CHECK(sol.Q != doctest::Approx(std::exp(1.0)).epsilon(1e-3));
}
