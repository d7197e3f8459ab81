#pragma once

#include <map>
#include <optional>
#include <string>

namespace aprs {

/// Measured regression constants for the inequality suite.  Calibration
/// writes them as JSON; verification refuses to run without them.
class FrozenConstants {
  public:
    FrozenConstants() = default;

    double at(const std::string& key) const;  // throws UncalibratedError
    std::optional<double> maybe(const std::string& key) const;
    void set(const std::string& key, double value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, double>& values() const { return values_; }

    std::string to_json() const;
    static FrozenConstants from_json(const std::string& text);

    void save(const std::string& path) const;
    static FrozenConstants load(const std::string& path);

    /// APRS_CONSTANTS env var, else the given default path.
    static std::string resolve_path(const std::string& fallback);

  private:
    std::map<std::string, double> values_;
};

}  // namespace aprs
