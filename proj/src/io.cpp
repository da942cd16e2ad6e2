#include "pathens/io.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <vector>

namespace pathens {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace io {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json array_to_json(const Eigen::Ref<const Eigen::ArrayXd>& a) {
    json out = json::array();
    for (Index i = 0; i < a.size(); ++i) out.push_back(a[i]);
    return out;
}

Eigen::ArrayXd array_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": array expected");
    Eigen::ArrayXd out(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& v : j) out[i++] = v.get<double>();
    return out;
}

} // namespace

json to_json(const MapSystem& system) {
    json j;
    j["map"] = to_string(system.map_id);
    j["dt"] = system.dt;
    j["params"] = json::object();
    for (const auto& [name, value] : system.params) j["params"][name] = value;
    return j;
}

MapSystem map_system_from_json(const json& j) {
    const std::string name = j.at("map").get<std::string>();
    const double dt = j.value("dt", 1.0);
    const MapId id = map_id_from_string(name);
    MapSystem sys;
    switch (id) {
        case MapId::arnold_cat: sys = make_arnold_cat(dt); break;
        case MapId::doubling: sys = make_doubling(dt); break;
        case MapId::standard: sys = make_standard(0.0, dt); break;
    }
    if (j.contains("params"))
        for (const auto& [key, value] : j.at("params").items())
            sys.params[key] = value.get<double>();
    return sys;
}

json to_json(const CellPartition& partition) {
    json j;
    j["resolution"] = json::array();
    for (Index a = 0; a < partition.resolution.size(); ++a)
        j["resolution"].push_back(partition.resolution[a]);
    return j;
}

CellPartition partition_from_json(const json& j, const Box& domain) {
    const auto& res = j.at("resolution");
    if (!res.is_array() || res.size() != static_cast<std::size_t>(domain.dim()))
        throw std::invalid_argument("partition: resolution must list one count per axis");
    Eigen::VectorXi resolution(static_cast<Index>(res.size()));
    Index i = 0;
    for (const auto& v : res) resolution[i++] = v.get<int>();
    return CellPartition(domain, std::move(resolution));
}

json to_json(const PathEnsemble& ensemble, const EnsembleMeta& meta) {
    json j;
    j["schema"] = "pathens.ensemble.v1";
    json meta_j;
    meta_j["system"] = to_json(meta.system);
    meta_j["resolution"] = json::array();
    for (Index a = 0; a < meta.resolution.size(); ++a)
        meta_j["resolution"].push_back(meta.resolution[a]);
    meta_j["source"] = meta.source;
    meta_j["target"] = meta.target;
    meta_j["horizon"] = meta.horizon;
    meta_j["seed"] = meta.seed;
    meta_j["replicas"] = ensemble.total;
    meta_j["renormalized_over_resolved"] = true;
    j["metadata"] = meta_j;
    j["paths"] = json::array();
    for (std::size_t i = 0; i < ensemble.paths.size(); ++i) {
        json p;
        p["signature"] = ensemble.paths[i].signature;
        p["count"] = ensemble.counts[i];
        p["travel_time"] = ensemble.paths[i].travel_time;
        p["action"] = ensemble.paths[i].action;
        j["paths"].push_back(std::move(p));
    }
    j["unresolved"] = ensemble.unresolved;
    return j;
}

json to_json(const PathDistribution& dist) {
    json j;
    j["schema"] = "pathens.distribution.v1";
    j["labels"] = dist.labels;
    j["probabilities"] = array_to_json(dist.probabilities);
    j["actions"] = array_to_json(dist.actions);
    return j;
}

PathDistribution distribution_from_json(const json& j) {
    Eigen::ArrayXd probs = array_from_json(j.at("probabilities"), "distribution.probabilities");
    Eigen::ArrayXd actions = j.contains("actions")
                                 ? array_from_json(j.at("actions"), "distribution.actions")
                                 : Eigen::ArrayXd::Zero(probs.size()).eval();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = j.at("labels").get<std::vector<std::string>>();
    } else {
        for (Index i = 0; i < probs.size(); ++i) labels.push_back(std::to_string(i));
    }
    return PathDistribution(std::move(probs), std::move(actions), std::move(labels));
}

ThermoAccount account_from_json(const json& j) {
    ThermoAccount acct;
    acct.Q_r = j.value("Q_r", 0.0);
    acct.T_r = j.at("T_r").get<double>();
    acct.T_a = j.at("T_a").get<double>();
    acct.dH = j.value("dH", 0.0);
    acct.dS_ex = j.value("dS_ex", 0.0);
    acct.dE_k = j.value("dE_k", 0.0);
    acct.dE_g = j.value("dE_g", 0.0);
    acct.W = j.value("W", 0.0);
    return acct;
}

json to_json(const ThermoAccount& account) {
    json j;
    j["Q_r"] = account.Q_r;
    j["T_r"] = account.T_r;
    j["T_a"] = account.T_a;
    j["dH"] = account.dH;
    j["dS_ex"] = account.dS_ex;
    j["dE_k"] = account.dE_k;
    j["dE_g"] = account.dE_g;
    j["W"] = account.W;
    return j;
}

std::string entropy_form_name(EntropyForm form) {
    return form == EntropyForm::macroscopic ? "macroscopic" : "statistical";
}

json to_json(const EntropyReport& report) {
    json j;
    j["value"] = report.value;
    j["form"] = entropy_form_name(report.form);
    j["inputs_hash"] = report.inputs_hash;
    return j;
}

json to_json(const MaxEntSolution& sol) {
    json j;
    j["schema"] = "pathens.maxent.v1";
    j["eta"] = sol.eta;
    j["Q"] = sol.Q;
    j["probabilities"] = array_to_json(sol.probabilities);
    j["mean_action"] = sol.mean_action;
    j["iterations"] = sol.iterations;
    j["gradient_partition_sum"] = sol.gradient_partition_sum;
    return j;
}

DiscreteRV rv_from_json(const json& j) {
    return DiscreteRV(array_from_json(j.at("support"), "rv.support"),
                      array_from_json(j.at("probs"), "rv.probs"));
}

json to_json(const DiscreteRV& rv) {
    json j;
    j["support"] = array_to_json(rv.support);
    j["probs"] = array_to_json(rv.probs);
    return j;
}

json to_json(const Coupling& coupling) {
    json j;
    j["z_cdf"] = array_to_json(coupling.z_cdf);
    j["z_probs"] = array_to_json(coupling.z_probs);
    j["psi1"] = array_to_json(coupling.psi1);
    j["psi2"] = array_to_json(coupling.psi2);
    return j;
}

std::string order_verdict_name(OrderVerdict verdict) {
    switch (verdict) {
        case OrderVerdict::x_below_y: return "x_below_y";
        case OrderVerdict::y_below_x: return "y_below_x";
        case OrderVerdict::equal: return "equal";
        case OrderVerdict::incomparable: return "incomparable";
    }
    return "unknown";
}

std::string relation_name(Relation relation) {
    switch (relation) {
        case Relation::less: return "less";
        case Relation::greater: return "greater";
        case Relation::equal: return "equal";
    }
    return "unknown";
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string paths_csv(const PathEnsemble& ensemble, const PathDistribution& dist) {
    std::string csv = "label,count,probability,action,travel_time\n";
    Index row = 0;
    for (std::size_t i = 0; i < ensemble.paths.size(); ++i) {
        if (ensemble.counts[i] == 0) continue;
        csv += ensemble.paths[i].label();
        csv += ',' + std::to_string(ensemble.counts[i]);
        csv += ',' + fmt17(dist.probabilities[row]);
        csv += ',' + fmt17(dist.actions[row]);
        csv += ',' + fmt17(ensemble.paths[i].travel_time);
        csv += '\n';
        ++row;
    }
    return csv;
}

std::string probability_histogram_svg(const PathDistribution& dist, Index max_bars) {
    std::vector<Index> order(static_cast<std::size_t>(dist.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return dist.probabilities[a] > dist.probabilities[b]; });
    const Index bars = std::min<Index>(max_bars, dist.size());
    const int bar_w = 14;
    const int gap = 4;
    const int height = 240;
    const int width = std::max(200, static_cast<int>(bars) * (bar_w + gap) + 40);
    const double top = dist.probabilities.maxCoeff();

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(height + 40) + "\">\n";
    svg += "<text x=\"8\" y=\"16\" font-size=\"12\">path probabilities (top " +
           std::to_string(bars) + " of " + std::to_string(dist.size()) + ")</text>\n";
    for (Index b = 0; b < bars; ++b) {
        const Index k = order[static_cast<std::size_t>(b)];
        const int h = std::max(1, static_cast<int>(dist.probabilities[k] / top * height));
        const int x = 20 + static_cast<int>(b) * (bar_w + gap);
        const int y = 20 + height - h;
        svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
               std::to_string(bar_w) + "\" height=\"" + std::to_string(h) +
               "\" fill=\"#4472c4\"><title>" + dist.labels[static_cast<std::size_t>(k)] + ": " +
               fmt17(dist.probabilities[k]) + "</title></rect>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace io
} // namespace pathens
