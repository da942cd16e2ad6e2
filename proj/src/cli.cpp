#include "pathens/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "pathens/io.hpp"

namespace pathens::cli {

namespace {

using io::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

json load_config(const Options& options) {
    std::ifstream in(options.config_path);
    if (!in) throw ConfigError("cannot open config file: " + options.config_path.string());
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (config.contains("command") && config.at("command").get<std::string>() != options.command)
        throw ConfigError("config command does not match the invoked subcommand");
    if (options.seed_override) config["seed"] = *options.seed_override;
    if (!config.contains("seed"))
        throw ConfigError("config missing key: seed (every run is seeded)");
    return config;
}

template <typename T>
T require(const json& config, const char* key) {
    if (!config.contains(key)) throw ConfigError(std::string("config missing key: ") + key);
    try {
        return config.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key has wrong type: ") + key);
    }
}

MapSystem system_from_config(const json& config) {
    if (!config.contains("system")) throw ConfigError("config missing key: system");
    try {
        return io::map_system_from_json(config.at("system"));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad system config: ") + e.what());
    }
}

CellPartition partition_from_config(const json& config, const MapSystem& system) {
    if (!config.contains("partition")) throw ConfigError("config missing key: partition");
    try {
        return io::partition_from_json(config.at("partition"), system.domain);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad partition config: ") + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

struct SimulationProducts {
    PathEnsemble ensemble;
    PathDistribution distribution;
    io::EnsembleMeta meta;
};

struct CommandOutput {
    json report;
    std::map<std::string, std::string> side_files;
};

SimulationProducts run_simulation(const json& config) {
    const MapSystem system = system_from_config(config);
    const CellPartition partition = partition_from_config(config, system);
    const auto source = require<Index>(config, "source");
    const auto target = require<Index>(config, "target");
    const auto replicas = require<Index>(config, "replicas");
    const auto horizon = require<Index>(config, "horizon");
    const auto seed = require<std::uint64_t>(config, "seed");
    const int threads = config.value("threads", 1);

    PathEnsemble ensemble;
    try {
        ensemble = simulate_paths(system, partition, source, target, replicas, horizon, seed, threads);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError(e.what());
    }
    PathDistribution distribution = estimate_distribution(ensemble);
    io::EnsembleMeta meta{system, partition.resolution, source, target, horizon, seed};
    return {std::move(ensemble), std::move(distribution), std::move(meta)};
}

CommandOutput command_simulate(const json& config, const std::string& format) {
    SimulationProducts sim = run_simulation(config);
    CommandOutput out;
    out.report["command"] = "simulate";
    out.report["ensemble"] = io::to_json(sim.ensemble, sim.meta);
    out.report["distribution"] = io::to_json(sim.distribution);
    out.report["seed"] = sim.meta.seed;
    if (format == "csv")
        out.side_files["paths.csv"] = io::paths_csv(sim.ensemble, sim.distribution);
    return out;
}

CommandOutput command_pipeline(const json& config, const std::string& format) {
    SimulationProducts sim = run_simulation(config);
    const double kB = config.value("kB", 1.0);

    CommandOutput out;
    json& report = out.report;
    report["command"] = "pipeline";
    report["ensemble"] = io::to_json(sim.ensemble, sim.meta);
    report["distribution"] = io::to_json(sim.distribution);
    report["kB"] = kB;
    report["entropy_generation_statistical"] = entropy_generation_statistical(sim.distribution, kB);
    const std::vector<Index> argmax = greatest_path(sim.distribution);
    report["greatest_paths"] = json::array();
    for (const Index k : argmax) report["greatest_paths"].push_back(k);
    report["partition_identity"] = partition_identity_check(sim.distribution, kB);
    report["seed"] = sim.meta.seed;
    report["unresolved_fraction"] =
        static_cast<double>(sim.ensemble.unresolved) / static_cast<double>(sim.ensemble.total);

    out.side_files["paths.csv"] = io::paths_csv(sim.ensemble, sim.distribution);
    if (config.value("svg", false))
        out.side_files["histogram.svg"] = io::probability_histogram_svg(sim.distribution);
    (void)format;
    return out;
}

json command_entropy(const json& config) {
    json report;
    report["command"] = "entropy";
    EntropyReport result;
    if (config.contains("account")) {
        ThermoAccount acct;
        try {
            acct = io::account_from_json(config.at("account"));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad account: ") + e.what());
        }
        result.form = EntropyForm::macroscopic;
        result.value = entropy_generation_macroscopic(acct);
        result.inputs_hash = fnv1a_hex(io::canonical_dump(io::to_json(acct)));
        report["account"] = io::to_json(acct);
    } else if (config.contains("probabilities")) {
        json dist_j;
        dist_j["probabilities"] = config.at("probabilities");
        if (config.contains("actions")) dist_j["actions"] = config.at("actions");
        if (config.contains("labels")) dist_j["labels"] = config.at("labels");
        PathDistribution dist = [&] {
            try {
                return io::distribution_from_json(dist_j);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad distribution: ") + e.what());
            }
        }();
        const double kB = config.value("kB", 1.0);
        result.form = EntropyForm::statistical;
        result.value = entropy_generation_statistical(dist, kB);
        result.inputs_hash = fnv1a_hex(io::canonical_dump(dist_j));
        if (result.value < 0.0)
            throw std::runtime_error("entropy: statistical value must be nonnegative");
        report["kB"] = kB;
    } else {
        throw ConfigError("entropy: config needs either an \"account\" or \"probabilities\"");
    }
    report.update(io::to_json(result));
    return report;
}

json command_maxent(const json& config) {
    if (!config.contains("actions")) throw ConfigError("maxent: config missing key: actions");
    Eigen::ArrayXd actions(static_cast<Index>(config.at("actions").size()));
    Index i = 0;
    for (const auto& v : config.at("actions")) actions[i++] = v.get<double>();
    const double target = require<double>(config, "target_mean");

    MaxEntSolution sol;
    try {
        sol = solve_maxent(actions, target);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    json report = io::to_json(sol);
    report["command"] = "maxent";
    report["target_mean"] = target;
    return report;
}

json command_order(const json& config) {
    json report;
    report["command"] = "order";
    if (config.contains("rv_x") && config.contains("rv_y")) {
        DiscreteRV x = [&] {
            try {
                return io::rv_from_json(config.at("rv_x"));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad rv_x: ") + e.what());
            }
        }();
        DiscreteRV y = [&] {
            try {
                return io::rv_from_json(config.at("rv_y"));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad rv_y: ") + e.what());
            }
        }();
        const OrderVerdict verdict = usual_order(x, y);
        report["mode"] = "random_variables";
        report["verdict"] = io::order_verdict_name(verdict);
        if (verdict == OrderVerdict::y_below_x) {
            // couple in the direction that is actually ordered
            const CouplingResult coupling = build_coupling(y, x);
            if (coupling.ok()) {
                report["coupling"] = io::to_json(*coupling.coupling);
                report["coupling_direction"] = "y_below_x";
            }
        } else {
            const CouplingResult coupling = build_coupling(x, y);
            if (coupling.ok()) {
                report["coupling"] = io::to_json(*coupling.coupling);
                report["coupling_direction"] = "x_below_y";
            } else {
                report["crossing_witness"] = *coupling.crossing_witness;
            }
        }
    } else if (config.contains("distribution")) {
        PathDistribution dist = [&] {
            try {
                return io::distribution_from_json(config.at("distribution"));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad distribution: ") + e.what());
            }
        }();
        const auto i = require<Index>(config, "i");
        const auto j = require<Index>(config, "j");
        const double kB = config.value("kB", 1.0);
        if (i < 0 || i >= dist.size() || j < 0 || j >= dist.size())
            throw ConfigError("order: path index out of range");
        const PathOrderResult by_p = compare_paths(dist, i, j, kB);
        const PathOrderResult by_g = gradient_order(dist, i, j, kB);
        report["mode"] = "paths";
        report["relation"] = io::relation_name(by_p.relation);
        report["gradient_relation"] = io::relation_name(by_g.relation);
        report["p_i"] = by_p.p_i;
        report["p_j"] = by_p.p_j;
        report["g_i"] = by_p.g_i;
        report["g_j"] = by_p.g_j;
    } else {
        throw ConfigError("order: config needs either rv_x/rv_y or distribution with i, j");
    }
    return report;
}

json command_ergodic(const json& config) {
    const MapSystem system = system_from_config(config);
    const auto steps = require<Index>(config, "steps");
    const auto samples = require<Index>(config, "samples");
    const auto seed = require<std::uint64_t>(config, "seed");
    if (steps < 1 || samples < 1) throw ConfigError("ergodic: steps and samples must be >= 1");

    SplitMix64 rng = substream(seed, 0);
    Eigen::VectorXd start(system.domain.dim());
    for (Index a = 0; a < start.size(); ++a)
        start[a] = rng.uniform(system.domain.lo[a], system.domain.hi[a]);
    const Trajectory traj = integrate_trajectory(system, PhaseState(start), steps);

    const auto obs_x = [](const auto& s) { return s[0]; };
    const auto obs_x2 = [](const auto& s) { return s[0] * s[0]; };
    const auto obs_sin = [](const auto& s) { return std::sin(kTwoPi * s[0]); };

    json report;
    report["command"] = "ergodic";
    report["seed"] = seed;
    report["steps"] = steps;
    report["samples"] = samples;
    report["birkhoff_bound"] = 5.0 / std::sqrt(static_cast<double>(steps));
    json table = json::object();
    const auto emit = [&](const char* name, auto&& f) {
        json row;
        row["time_average"] = time_average(traj, f);
        row["space_average"] = space_average(system, f, samples, seed + 1);
        row["abs_difference"] = std::abs(row["time_average"].get<double>() -
                                         row["space_average"].get<double>());
        table[name] = row;
    };
    emit("x", obs_x);
    emit("x2", obs_x2);
    emit("sin_2pi_x", obs_sin);
    report["observables"] = table;

    if (config.contains("steady_state")) {
        const json& ss = config.at("steady_state");
        const double zeta = require<double>(ss, "zeta");
        const double epsilon = require<double>(ss, "epsilon");
        const Index blocks = ss.value("blocks", Index{10});
        if (blocks < 1 || blocks > traj.length())
            throw ConfigError("ergodic: blocks must be in [1, steps]");
        // block time-averages of the first coordinate
        std::vector<double> series;
        const Index block_len = traj.length() / blocks;
        for (Index b = 0; b < blocks; ++b) {
            double sum = 0.0;
            for (Index k = b * block_len; k < (b + 1) * block_len; ++k)
                sum += traj.states(0, k);
            series.push_back(sum / static_cast<double>(block_len));
        }
        json ss_report;
        ss_report["zeta"] = zeta;
        ss_report["epsilon"] = epsilon;
        ss_report["block_averages"] = series;
        ss_report["steady"] = steady_state_check(series, zeta, epsilon);
        report["steady_state"] = ss_report;
    }
    return report;
}

} // namespace

json run(const Options& options) {
    json config = load_config(options);
    const std::string effective = io::canonical_dump(config);

    CommandOutput out;
    if (options.command == "simulate")
        out = command_simulate(config, options.format);
    else if (options.command == "pipeline")
        out = command_pipeline(config, options.format);
    else if (options.command == "entropy")
        out.report = command_entropy(config);
    else if (options.command == "maxent")
        out.report = command_maxent(config);
    else if (options.command == "order")
        out.report = command_order(config);
    else if (options.command == "ergodic")
        out.report = command_ergodic(config);
    else
        throw ConfigError("unknown command: " + options.command);

    out.report["schema"] = "pathens.report.v1";
    out.report["version"] = kVersion;
    out.report["config_hash"] = fnv1a_hex(effective);
    out.report["seed"] = config.at("seed");

    std::filesystem::create_directories(options.out_dir);
    write_file(options.out_dir / (options.command + ".json"), io::canonical_dump(out.report));
    for (const auto& [name, bytes] : out.side_files)
        write_file(options.out_dir / name, bytes);
    return out.report;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"path-ensemble thermodynamics toolkit"};
    app.require_subcommand(1);

    Options options;
    std::uint64_t seed_flag = 0;
    bool seed_set = false;

    const auto add = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", options.config_path, "JSON config file")->required();
        sub->add_option("--out", options.out_dir, "output directory");
        sub->add_option("--seed", seed_flag, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--format", options.format, "json|csv tabular output")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->callback([&, name] { options.command = name; });
        return sub;
    };
    add("simulate", "simulate a path ensemble between two cells");
    add("pipeline", "simulate, estimate, and analyze in one run");
    add("entropy", "entropy generation from an account or a distribution");
    add("maxent", "solve the maximum-entropy path distribution");
    add("order", "stochastic order verdicts and couplings");
    add("ergodic", "time-average vs space-average diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }
    if (seed_set) options.seed_override = seed_flag;

    try {
        run(options);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace pathens::cli
