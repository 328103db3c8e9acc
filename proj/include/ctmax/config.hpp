#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctmax/types.hpp"

namespace ctmax {

/// Malformed config text, an unknown key or a value of the wrong type.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct ConfigKey {
    std::string name;
    std::string default_value;
    std::string doc;
};

/// Every key a RunConfig accepts, with its default.
const std::vector<ConfigKey>& config_keys();

/// Flat key=value settings. Every key has a default; unknown keys are errors.
class RunConfig {
public:
    RunConfig();

    /// Lines `key = value`; `#` starts a comment, blank lines are skipped.
    void load_text(const std::string& text, const std::string& source = "config");
    void load_file(const std::string& path);
    /// `key=value`, as given to --set.
    void assign(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    const std::string& text(const std::string& key) const;
    double number(const std::string& key) const;
    Index integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    /// Comma-separated numbers; empty text gives an empty list.
    std::vector<double> numbers(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace ctmax
