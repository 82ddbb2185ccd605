#include "kcenter/coreset_json.hpp"

namespace kcenter {

nlohmann::json coreset_to_json(const WeightedCoreset& cs) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : cs.entries) {
        entries.push_back({{"index", e.index}, {"weight", e.weight}});
    }
    const auto& m = cs.meta;
    nlohmann::json meta = {
        {"algorithm", to_string(m.algorithm)},
        {"r_tilde", m.r_tilde},
        {"r_phase1", m.r_phase1},
        {"k", m.k},
        {"z", m.z},
        {"eps", m.eps},
        {"eta", m.eta},
        {"mu", m.mu},
        {"rho", m.rho},
        {"centers", m.centers},
        {"far_count", m.far_count},
        {"rounds", m.rounds},
        {"fallback", m.fallback},
        {"cap_hit", m.cap_hit},
    };
    nlohmann::json out = {{"source_n", cs.source_n}, {"entries", entries}, {"meta", meta}};
    if (!cs.absorbed_by.empty()) {
        out["absorbed_by"] = cs.absorbed_by;
    }
    return out;
}

WeightedCoreset coreset_from_json(const nlohmann::json& j) {
    try {
        WeightedCoreset cs;
        cs.source_n = j.at("source_n").get<std::size_t>();
        for (const auto& e : j.at("entries")) {
            cs.entries.push_back({e.at("index").get<Index>(), e.at("weight").get<std::uint64_t>()});
        }
        const auto& m = j.at("meta");
        cs.meta.algorithm = coreset_algorithm_from_string(m.at("algorithm").get<std::string>());
        cs.meta.r_tilde = m.at("r_tilde").get<double>();
        cs.meta.r_phase1 = m.at("r_phase1").get<double>();
        cs.meta.k = m.at("k").get<std::size_t>();
        cs.meta.z = m.at("z").get<std::size_t>();
        cs.meta.eps = m.at("eps").get<double>();
        cs.meta.eta = m.at("eta").get<double>();
        cs.meta.mu = m.at("mu").get<double>();
        cs.meta.rho = m.at("rho").get<double>();
        cs.meta.centers = m.at("centers").get<std::size_t>();
        cs.meta.far_count = m.at("far_count").get<std::size_t>();
        cs.meta.rounds = m.at("rounds").get<std::size_t>();
        cs.meta.fallback = m.at("fallback").get<bool>();
        cs.meta.cap_hit = m.at("cap_hit").get<bool>();
        if (j.contains("absorbed_by")) {
            cs.absorbed_by = j.at("absorbed_by").get<std::vector<Index>>();
        }
        for (const auto& e : cs.entries) {
            if (e.index >= cs.source_n || e.weight == 0) {
                throw ArgumentError("coreset entry out of range or with zero weight");
            }
        }
        return cs;
    } catch (const nlohmann::json::exception& ex) {
        throw ArgumentError(std::string("malformed coreset JSON: ") + ex.what());
    }
}

std::string dump_coreset(const WeightedCoreset& cs) {
    return coreset_to_json(cs).dump();
}

WeightedCoreset parse_coreset(const std::string& text) {
    try {
        return coreset_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& ex) {
        throw ArgumentError(std::string("malformed coreset JSON: ") + ex.what());
    }
}

}  // namespace kcenter
