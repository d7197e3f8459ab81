#include "aprs/estimates/constants.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "aprs/errors.hpp"

namespace aprs {

double FrozenConstants::at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw UncalibratedError("frozen constant '" + key +
                                "' missing; run the calibrate command first");
    return it->second;
}

std::optional<double> FrozenConstants::maybe(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string FrozenConstants::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : values_) j[k] = v;
    return j.dump(2) + "\n";
}

FrozenConstants FrozenConstants::from_json(const std::string& text) {
    FrozenConstants c;
    nlohmann::json j = nlohmann::json::parse(text);
    for (auto it = j.begin(); it != j.end(); ++it) c.values_[it.key()] = it.value().get<double>();
    return c;
}

void FrozenConstants::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw ConfigError("constants: cannot write " + path);
    os << to_json();
}

FrozenConstants FrozenConstants::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UncalibratedError("constants file not found: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return from_json(ss.str());
    } catch (const std::exception& e) {
        throw ConfigError("constants: malformed JSON in " + path + ": " + e.what());
    }
}

std::string FrozenConstants::resolve_path(const std::string& fallback) {
    if (const char* env = std::getenv("APRS_CONSTANTS")) return env;
    return fallback;
}

}  // namespace aprs
