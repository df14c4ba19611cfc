#include "relayser/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relayser/power_opt.hpp"
#include "relayser/units.hpp"

namespace relayser {
namespace {

using nlohmann::json;

LinkSpec parse_link(const json& j, const std::string& where) {
    LinkSpec spec;
    try {
        spec.eta = j.at("eta").get<double>();
        spec.mu = j.at("mu").get<double>();
        spec.format = j.value("format", 1);
        spec.omega_db = j.value("omega_db", 0.0);
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    if (spec.format != 1 && spec.format != 2)
        throw ConfigError(where + ": format must be 1 or 2");
    if (!std::isfinite(spec.omega_db)) throw ConfigError(where + ": omega_db must be finite");
    return spec;
}

Modulation parse_modulation(const json& j) {
    std::string scheme = j.value("scheme", "psk");
    int m = j.value("m", 4);
    try {
        if (scheme == "psk") return Modulation::mpsk(m);
        if (scheme == "qam") return Modulation::mqam(m);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("modulation: ") + e.what());
    }
    throw ConfigError("modulation.scheme must be \"psk\" or \"qam\"");
}

}  // namespace

LinkParams LinkSpec::to_link() const {
    auto shape = format == 1 ? EtaMuParams::format1(eta, mu) : EtaMuParams::format2(eta, mu);
    return LinkParams(shape, db_to_linear(omega_db));
}

std::vector<double> RunConfig::sweep_points() const {
    std::vector<double> pts;
    for (double s = sweep_start_db; s <= sweep_stop_db + 1e-9; s += sweep_step_db)
        pts.push_back(s);
    return pts;
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    cfg.description = j.value("description", "");

    if (!j.contains("network")) throw ConfigError("missing \"network\" section");
    const json& net = j["network"];
    cfg.noise = net.value("noise", 1.0);
    if (!(cfg.noise > 0.0)) throw ConfigError("network.noise must be positive");
    if (!net.contains("links")) throw ConfigError("missing \"network.links\" section");
    const json& links = net["links"];
    if (!links.contains("sd")) throw ConfigError("missing \"network.links.sd\"");
    cfg.sd = parse_link(links["sd"], "links.sd");
    if (links.contains("sr") != links.contains("rd"))
        throw ConfigError("links.sr and links.rd must be given together");
    if (links.contains("sr")) {
        int idx = 0;
        for (const auto& e : links["sr"])
            cfg.sr.push_back(parse_link(e, "links.sr[" + std::to_string(idx++) + "]"));
        idx = 0;
        for (const auto& e : links["rd"])
            cfg.rd.push_back(parse_link(e, "links.rd[" + std::to_string(idx++) + "]"));
    }
    if (cfg.sr.size() != cfg.rd.size())
        throw ConfigError("links.sr and links.rd must have equal length");

    if (j.contains("modulation")) cfg.modulation = parse_modulation(j["modulation"]);

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        cfg.sweep_start_db = sw.value("start_db", cfg.sweep_start_db);
        cfg.sweep_stop_db = sw.value("stop_db", cfg.sweep_stop_db);
        cfg.sweep_step_db = sw.value("step_db", cfg.sweep_step_db);
        if (!(cfg.sweep_step_db > 0.0)) throw ConfigError("sweep.step_db must be positive");
        if (cfg.sweep_stop_db < cfg.sweep_start_db)
            throw ConfigError("sweep.stop_db must be >= sweep.start_db");
    }

    if (j.contains("methods")) {
        cfg.method_exact = cfg.method_asymptotic = cfg.method_mc = false;
        for (const auto& m : j["methods"]) {
            std::string s = m.get<std::string>();
            if (s == "exact")
                cfg.method_exact = true;
            else if (s == "asymptotic")
                cfg.method_asymptotic = true;
            else if (s == "mc")
                cfg.method_mc = true;
            else
                throw ConfigError("unknown method \"" + s + "\"");
        }
    }

    if (j.contains("allocation")) {
        const json& al = j["allocation"];
        std::string mode = al.value("mode", "epa");
        if (mode == "epa") {
            cfg.alloc_mode = AllocationMode::Epa;
        } else if (mode == "opa") {
            cfg.alloc_mode = AllocationMode::Opa;
        } else if (mode == "explicit") {
            cfg.alloc_mode = AllocationMode::Explicit;
            if (!al.contains("a")) throw ConfigError("allocation.a required for explicit mode");
            cfg.explicit_alloc = al["a"].get<std::vector<double>>();
            if (static_cast<int>(cfg.explicit_alloc.size()) != cfg.relay_count() + 1)
                throw ConfigError("allocation.a must have K+1 entries (a0 first)");
            PowerAllocation pa;
            pa.a0 = cfg.explicit_alloc[0];
            pa.ar.assign(cfg.explicit_alloc.begin() + 1, cfg.explicit_alloc.end());
            try {
                pa.validate();
            } catch (const std::exception& e) {
                throw ConfigError(std::string("allocation.a: ") + e.what());
            }
        } else {
            throw ConfigError("allocation.mode must be epa, opa or explicit");
        }
    }

    if (j.contains("mc")) {
        const json& mc = j["mc"];
        cfg.mc_symbols = mc.value("symbols", cfg.mc_symbols);
        cfg.mc_seed = mc.value("seed", cfg.mc_seed);
        cfg.mc_batch = mc.value("batch", cfg.mc_batch);
        cfg.threads = mc.value("threads", cfg.threads);
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

NetworkModel build_network(const RunConfig& cfg, double snr_db) {
    NetworkModel net;
    net.sd = cfg.sd.to_link();
    for (const auto& s : cfg.sr) net.sr.push_back(s.to_link());
    for (const auto& s : cfg.rd) net.rd.push_back(s.to_link());
    net.noise = cfg.noise;
    net.total_power = db_to_linear(snr_db) * cfg.noise;
    if (cfg.alloc_mode == AllocationMode::Explicit) {
        net.allocation.a0 = cfg.explicit_alloc[0];
        net.allocation.ar.assign(cfg.explicit_alloc.begin() + 1, cfg.explicit_alloc.end());
    } else {
        net.allocation = epa(cfg.relay_count());
    }
    net.validate();
    return net;
}

}  // namespace relayser
