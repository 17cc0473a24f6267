#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexband/aggregation.hpp"
#include "flexband/case.hpp"
#include "flexband/disaggregation.hpp"
#include "flexband/harness.hpp"

namespace flexband {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Serializer with a fixed float policy (12 significant digits) so that equal
// data always produces identical bytes.
inline void write_json(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<size_t>(indent) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + "  " + json(it.key()).dump() + ": ";
                write_json(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            bool scalars = true;
            for (const auto& v : j) scalars = scalars && !v.is_structured();
            if (scalars) {
                out += "[";
                for (size_t k = 0; k < j.size(); ++k) {
                    if (k) out += ", ";
                    write_json(j[k], out, indent);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (size_t k = 0; k < j.size(); ++k) {
                if (k) out += ",\n";
                out += pad + "  ";
                write_json(j[k], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

inline void require_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed,
                         std::initializer_list<const char*> required) {
    if (!j.is_object()) throw ValidationError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || (it.key() == k);
        if (!known) throw ValidationError(where + " has unknown key \"" + it.key() + "\"");
    }
    for (const char* k : required)
        if (!j.contains(k)) throw ValidationError(where + " is missing key \"" + k + "\"");
}

inline double get_num(const json& j, const std::string& where, const char* key) {
    if (!j.at(key).is_number()) throw ValidationError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

inline std::vector<double> get_vec(const json& j, const std::string& where, const char* key) {
    const json& a = j.at(key);
    if (!a.is_array()) throw ValidationError(where + "." + key + " must be an array");
    std::vector<double> v;
    for (const auto& x : a) {
        if (!x.is_number()) throw ValidationError(where + "." + key + " must hold numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

inline void check_format_version(const json& j, const std::string& where) {
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer() ||
        j.at("format_version").get<int>() != kFormatVersion)
        throw ValidationError(where + " must declare format_version " + std::to_string(kFormatVersion));
}

} // namespace detail

inline std::string to_text(const json& j) {
    std::string out;
    detail::write_json(j, out, 0);
    out += "\n";
    return out;
}

inline json case_to_json(const Case& c) {
    json j;
    j["format_version"] = kFormatVersion;
    j["units"] = {{"power", "MW"}, {"energy", "MWh"}, {"time", "hours"}, {"cost", "$/MWh"}};
    j["meta"] = {{"periods", c.periods}, {"tau", c.tau}};
    json lines = json::array();
    for (const auto& l : c.lines)
        lines.push_back({{"from", l.from}, {"to", l.to}, {"susceptance", l.susceptance},
                         {"flow_limit", l.flow_limit}});
    j["network"] = {{"nodes", c.node_count}, {"lines", lines}};
    json loads = json::array(), gens = json::array(), esses = json::array();
    json gen_costs = json::array(), ess_costs = json::array();
    for (const auto& d : c.loads)
        loads.push_back({{"node", d.node}, {"p_min", d.p_min}, {"p_max", d.p_max}});
    for (const auto& g : c.gens) {
        gens.push_back({{"node", g.node}, {"p_min", g.p_min}, {"p_max", g.p_max}});
        gen_costs.push_back(g.cost);
    }
    for (const auto& s : c.esses) {
        esses.push_back({{"node", s.node}, {"kappa", s.kappa}, {"eta_d", s.eta_d},
                         {"eta_c", s.eta_c}, {"p_dis_max", s.p_dis_max}, {"p_chg_max", s.p_chg_max},
                         {"e_min", s.e_min}, {"e_max", s.e_max}, {"e0", s.e0}});
        ess_costs.push_back(s.cost);
    }
    j["devices"] = {{"loads", loads}, {"gens", gens}, {"esses", esses}};
    j["costs"] = {{"gens", gen_costs}, {"esses", ess_costs}};
    j["weights"] = c.weights;
    j["seed"] = c.seed;
    return j;
}

inline Case case_from_json(const json& j) {
    using namespace detail;
    check_format_version(j, "case file");
    require_keys(j, "case file",
                 {"format_version", "units", "meta", "network", "devices", "costs", "weights", "seed"},
                 {"meta", "network", "devices", "weights"});
    if (j.contains("units"))
        require_keys(j.at("units"), "units", {"power", "energy", "time", "cost"}, {});
    Case c;
    const json& meta = j.at("meta");
    require_keys(meta, "meta", {"periods", "tau"}, {"periods", "tau"});
    c.periods = meta.at("periods").get<int>();
    c.tau = get_num(meta, "meta", "tau");
    const json& net = j.at("network");
    require_keys(net, "network", {"nodes", "lines"}, {"nodes"});
    c.node_count = net.at("nodes").get<int>();
    if (net.contains("lines"))
        for (size_t k = 0; k < net.at("lines").size(); ++k) {
            const json& lj = net.at("lines")[k];
            const std::string where = "network.lines[" + std::to_string(k) + "]";
            require_keys(lj, where, {"from", "to", "susceptance", "flow_limit"},
                         {"from", "to", "susceptance", "flow_limit"});
            c.lines.push_back({lj.at("from").get<int>(), lj.at("to").get<int>(),
                               get_num(lj, where, "susceptance"), get_num(lj, where, "flow_limit")});
        }
    const json& dev = j.at("devices");
    require_keys(dev, "devices", {"loads", "gens", "esses"}, {});
    if (dev.contains("loads"))
        for (size_t k = 0; k < dev.at("loads").size(); ++k) {
            const json& dj = dev.at("loads")[k];
            const std::string where = "devices.loads[" + std::to_string(k) + "]";
            require_keys(dj, where, {"node", "p_min", "p_max"}, {"node", "p_min", "p_max"});
            c.loads.push_back({dj.at("node").get<int>(), get_vec(dj, where, "p_min"),
                               get_vec(dj, where, "p_max")});
        }
    if (dev.contains("gens"))
        for (size_t k = 0; k < dev.at("gens").size(); ++k) {
            const json& gj = dev.at("gens")[k];
            const std::string where = "devices.gens[" + std::to_string(k) + "]";
            require_keys(gj, where, {"node", "p_min", "p_max"}, {"node", "p_min", "p_max"});
            GenSpec g;
            g.node = gj.at("node").get<int>();
            g.p_min = get_vec(gj, where, "p_min");
            g.p_max = get_vec(gj, where, "p_max");
            c.gens.push_back(std::move(g));
        }
    if (dev.contains("esses"))
        for (size_t k = 0; k < dev.at("esses").size(); ++k) {
            const json& sj = dev.at("esses")[k];
            const std::string where = "devices.esses[" + std::to_string(k) + "]";
            require_keys(sj, where,
                         {"node", "kappa", "eta_d", "eta_c", "p_dis_max", "p_chg_max", "e_min", "e_max", "e0"},
                         {"node", "kappa", "eta_d", "eta_c", "p_dis_max", "p_chg_max", "e_min", "e_max", "e0"});
            EssParams s;
            s.node = sj.at("node").get<int>();
            s.kappa = get_num(sj, where, "kappa");
            s.eta_d = get_num(sj, where, "eta_d");
            s.eta_c = get_num(sj, where, "eta_c");
            s.p_dis_max = get_num(sj, where, "p_dis_max");
            s.p_chg_max = get_num(sj, where, "p_chg_max");
            s.e_min = get_num(sj, where, "e_min");
            s.e_max = get_num(sj, where, "e_max");
            s.e0 = get_num(sj, where, "e0");
            c.esses.push_back(s);
        }
    if (j.contains("costs")) {
        const json& costs = j.at("costs");
        require_keys(costs, "costs", {"gens", "esses"}, {});
        if (costs.contains("gens")) {
            std::vector<double> gc = get_vec(costs, "costs", "gens");
            if (gc.size() != c.gens.size())
                throw ValidationError("costs.gens must have one entry per generator");
            for (size_t k = 0; k < gc.size(); ++k) c.gens[k].cost = gc[k];
        }
        if (costs.contains("esses")) {
            std::vector<double> sc = get_vec(costs, "costs", "esses");
            if (sc.size() != c.esses.size())
                throw ValidationError("costs.esses must have one entry per ESS");
            for (size_t k = 0; k < sc.size(); ++k) c.esses[k].cost = sc[k];
        }
    }
    c.weights = detail::get_vec(j, "case file", "weights");
    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned long long>();
    validate_case(c);
    return c;
}

inline json result_to_json(const AggregationResult& r) {
    json j;
    j["format_version"] = kFormatVersion;
    j["model"] = r.model;
    j["objective"] = r.objective;
    j["band"] = {{"lower", r.band.lower}, {"upper", r.band.upper}};
    json cert;
    switch (r.certificate) {
        case CertificateKind::None:
            cert = {{"kind", "none"}};
            break;
        case CertificateKind::Tree:
            cert = {{"kind", "tree"}};
            break;
        case CertificateKind::Box:
            cert = {{"kind", "box"}, {"soc_lo", r.box.lo}, {"soc_hi", r.box.hi}};
            break;
        case CertificateKind::Envelope:
            cert = {{"kind", "envelope"},
                    {"p_lo", r.envelopes.p_lo},       {"p_hi", r.envelopes.p_hi},
                    {"delta_lo", r.envelopes.delta_lo}, {"delta_hi", r.envelopes.delta_hi},
                    {"e_lo", r.envelopes.e_lo},       {"e_hi", r.envelopes.e_hi}};
            break;
    }
    j["certificate"] = cert;
    j["stats"] = {{"lp_iterations", r.lp_iterations},
                  {"lazy_rounds", r.lazy_rounds},
                  {"lazy_added", r.lazy_added}};
    return j;
}

namespace detail {
inline std::vector<std::vector<double>> get_mat(const json& j, const std::string& where, const char* key) {
    const json& a = j.at(key);
    if (!a.is_array()) throw ValidationError(where + "." + key + " must be an array of arrays");
    std::vector<std::vector<double>> m;
    for (const auto& row : a) {
        m.emplace_back();
        for (const auto& x : row) m.back().push_back(x.get<double>());
    }
    return m;
}
} // namespace detail

inline AggregationResult result_from_json(const json& j) {
    using namespace detail;
    check_format_version(j, "result file");
    require_keys(j, "result file",
                 {"format_version", "model", "objective", "band", "certificate", "stats"},
                 {"model", "objective", "band", "certificate"});
    AggregationResult r;
    r.model = j.at("model").get<std::string>();
    r.objective = get_num(j, "result file", "objective");
    const json& band = j.at("band");
    require_keys(band, "band", {"lower", "upper"}, {"lower", "upper"});
    r.band.lower = get_vec(band, "band", "lower");
    r.band.upper = get_vec(band, "band", "upper");
    if (r.band.lower.size() != r.band.upper.size())
        throw ValidationError("band.lower and band.upper lengths differ");
    const json& cert = j.at("certificate");
    const std::string kind = cert.at("kind").get<std::string>();
    if (kind == "none") {
        r.certificate = CertificateKind::None;
    } else if (kind == "tree") {
        r.certificate = CertificateKind::Tree;
    } else if (kind == "box") {
        r.certificate = CertificateKind::Box;
        r.box.lo = get_mat(cert, "certificate", "soc_lo");
        r.box.hi = get_mat(cert, "certificate", "soc_hi");
    } else if (kind == "envelope") {
        r.certificate = CertificateKind::Envelope;
        r.envelopes.p_lo = get_mat(cert, "certificate", "p_lo");
        r.envelopes.p_hi = get_mat(cert, "certificate", "p_hi");
        r.envelopes.delta_lo = get_mat(cert, "certificate", "delta_lo");
        r.envelopes.delta_hi = get_mat(cert, "certificate", "delta_hi");
        r.envelopes.e_lo = get_mat(cert, "certificate", "e_lo");
        r.envelopes.e_hi = get_mat(cert, "certificate", "e_hi");
    } else {
        throw ValidationError("result file has unknown certificate kind \"" + kind + "\"");
    }
    if (j.contains("stats")) {
        const json& st = j.at("stats");
        require_keys(st, "stats", {"lp_iterations", "lazy_rounds", "lazy_added"}, {});
        if (st.contains("lp_iterations")) r.lp_iterations = st.at("lp_iterations").get<int>();
        if (st.contains("lazy_rounds")) r.lazy_rounds = st.at("lazy_rounds").get<int>();
        if (st.contains("lazy_added")) r.lazy_added = st.at("lazy_added").get<int>();
    }
    return r;
}

inline json log_to_json(const DispatchLog& log) {
    json j;
    j["format_version"] = kFormatVersion;
    j["completed"] = log.completed;
    j["total_cost"] = log.total_cost;
    if (log.failed_period >= 0) {
        j["failed_period"] = log.failed_period + 1; // 1-based on the wire
        j["failure"] = log.failure;
    }
    json periods = json::array();
    for (const auto& d : log.periods)
        periods.push_back({{"setpoint", d.setpoint}, {"cost", d.cost}, {"loads", d.loads},
                           {"gens", d.gens}, {"ess_dis", d.ess_dis}, {"ess_chg", d.ess_chg},
                           {"soc_after", d.soc_after}, {"flows", d.flows}});
    j["periods"] = periods;
    return j;
}

inline std::vector<double> trajectory_from_json(const json& j) {
    detail::check_format_version(j, "trajectory file");
    detail::require_keys(j, "trajectory file", {"format_version", "setpoints"}, {"setpoints"});
    return detail::get_vec(j, "trajectory file", "setpoints");
}

inline json trajectory_to_json(const std::vector<double>& setpoints) {
    return {{"format_version", kFormatVersion}, {"setpoints", setpoints}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
}

// Wall-clock columns are opt-in so that reports stay byte-deterministic by
// default.
inline std::string report_csv(const ComparisonReport& rep, const std::vector<double>& weights,
                              bool timing = false) {
    using detail::format_number;
    std::string out =
        "section,name,objective,band_width,avg_cost,avg_baseline_cost,feasibility_rate,"
        "lazy_rounds,lazy_added,wall_seconds\n";
    for (const auto& m : rep.models) {
        out += "model," + m.model + "," + format_number(m.objective) + "," +
               format_number(flexibility_index(m.band, weights)) + ",,,," +
               std::to_string(m.lazy_rounds) + "," + std::to_string(m.lazy_added) + ",";
        if (timing) out += format_number(m.wall_seconds);
        out += "\n";
    }
    for (const auto& s : rep.strategies)
        out += "strategy," + s.strategy + ",,," + format_number(s.avg_cost) + "," +
               format_number(s.avg_baseline_cost) + "," + format_number(s.feasibility_rate) +
               ",,,\n";
    return out;
}

// Band curves for external plotting: one row per (model, period).
inline std::string plot_csv(const std::vector<AggregationResult>& results) {
    std::string out = "period,lower,upper,model\n";
    for (const auto& r : results)
        for (int t = 0; t < r.band.periods(); ++t)
            out += std::to_string(t + 1) + "," + detail::format_number(r.band.lower[t]) + "," +
                   detail::format_number(r.band.upper[t]) + "," + r.model + "\n";
    return out;
}

} // namespace flexband
