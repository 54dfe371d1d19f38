#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <stdexcept>

namespace conekit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Key-value configuration with [section] headers. Values are numbers,
/// booleans, strings or flat numeric lists.
class Config {
public:
    using Value = std::variant<double, bool, std::string, std::vector<double>>;

    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;

    double number(const std::string& section, const std::string& key, double fallback) const;
    double number_req(const std::string& section, const std::string& key) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::string str(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::vector<double> list(const std::string& section, const std::string& key,
                             const std::vector<double>& fallback = {}) const;

    /// Canonical text round-trip (sections and keys sorted) used for run ids.
    std::string canonical() const;

    void set(const std::string& section, const std::string& key, Value v);

private:
    const Value* find(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, Value>> sections_;
};

}  // namespace conekit
