#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "default_registry.hpp"

namespace semipred {

// Registry manifest: a JSON list of {index, name, family, parameters,
// code_length, is_measure}; rational parameters are exact "num/den" text.
inline nlohmann::json registry_to_json(const ModelRegistry& reg) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 1; i <= reg.size(); ++i) {
        const RegistryEntry& e = reg.entry(i);
        entries.push_back({{"index", i},
                           {"name", e.name},
                           {"family", e.family},
                           {"parameters", e.params},
                           {"code_length", e.code_length},
                           {"is_measure", e.is_measure}});
    }
    return nlohmann::json{{"registry", entries}};
}

inline void save_registry_manifest(const ModelRegistry& reg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << registry_to_json(reg).dump(2) << "\n";
}

// Rebuild one entry from its manifest row. The leftmost-mass family is
// defined relative to the entries preceding it, so the partially loaded
// registry doubles as its bootstrap class.
inline RegistryEntry entry_from_manifest(const nlohmann::json& row,
                                         const ModelRegistry& preceding) {
    std::string name = row.at("name").get<std::string>();
    std::string family = row.at("family").get<std::string>();
    std::string params = row.value("parameters", std::string{});
    unsigned codelen = row.at("code_length").get<unsigned>();
    bool is_measure = row.at("is_measure").get<bool>();

    auto wrap = [&](Semimeasure s) {
        return RegistryEntry{name, constant_stages(std::move(s)), codelen, is_measure,
                             family, params};
    };

    if (family == "uniform") return wrap(family_uniform());
    if (family == "bernoulli") return wrap(family_bernoulli(rat_from_string(params)));
    if (family == "poly3") return wrap(family_poly3());
    if (family == "deterministic-pattern") {
        if (params.empty())
            throw std::invalid_argument("deterministic-pattern needs a digit cycle");
        std::string cycle = params;
        return wrap(family_deterministic([cycle](std::size_t pos) {
            return static_cast<uint8_t>(cycle[(pos - 1) % cycle.size()] - '0');
        }));
    }
    if (family == "scaled-uniform")
        return wrap(scale(family_uniform(), rat_from_string(params)));
    if (family == "leftmost-mass") {
        unsigned depth = params.empty() ? kDefaultTraceDepth
                                        : static_cast<unsigned>(std::stoul(params));
        ModelRegistry bootstrap = preceding;
        bootstrap.freeze();
        RegistryEntry e = leftmost_entry_from(bootstrap, depth);
        e.name = name;
        e.code_length = codelen;
        e.is_measure = is_measure;
        return e;
    }
    throw std::invalid_argument("unknown registry family: " + family);
}

inline ModelRegistry registry_from_json(const nlohmann::json& doc) {
    ModelRegistry reg;
    for (const auto& row : doc.at("registry")) reg.add(entry_from_manifest(row, reg));
    reg.freeze();
    return reg;
}

inline ModelRegistry load_registry_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    return registry_from_json(doc);
}

}  // namespace semipred
