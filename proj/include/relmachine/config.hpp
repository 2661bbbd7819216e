#pragma once

// Flat key = value run configuration.
//
//   # comment
//   omega_A = 1.0
//   speed_A = 0.8
//
// Values are real numbers except a handful of string keys (mode). Keys are
// validated by the command that consumes them.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relmachine::cli {

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {
inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}
}  // namespace detail

class RunConfig {
public:
    static RunConfig parse(std::string_view text, std::string_view origin = "<config>") {
        RunConfig cfg;
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const std::string body = detail::trim(line);
            if (body.empty()) continue;
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": expected key = value");
            }
            cfg.set(detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
        }
        return cfg;
    }

    static RunConfig load(const std::string& path) {
        std::ifstream f(path);
        if (!f) {
            throw ConfigError("cannot read config file " + path);
        }
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str(), path);
    }

    /// Accepts "key=value" as used by --set.
    void set_assignment(std::string_view assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
        }
        set(detail::trim(assignment.substr(0, eq)), detail::trim(assignment.substr(eq + 1)));
    }

    void set(const std::string& key, const std::string& value) {
        if (key.empty()) {
            throw ConfigError("empty key");
        }
        values_[key] = value;
    }

    void set_number(const std::string& key, double value) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        values_[key] = buf;
    }

    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }

    [[nodiscard]] std::optional<double> number(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it->second.size() || !std::isfinite(v)) {
            throw ConfigError(key + ": expected a finite number, got '" + it->second + "'");
        }
        return v;
    }

    [[nodiscard]] double number_or(const std::string& key, double fallback) const {
        return number(key).value_or(fallback);
    }

    [[nodiscard]] std::string string_or(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    /// Rejects any key outside `allowed`.
    void require_known(const std::set<std::string>& allowed, std::string_view command) const {
        for (const auto& [k, v] : values_) {
            if (!allowed.count(k)) {
                throw ConfigError(std::string(command) + ": unknown config key '" + k + "'");
            }
        }
    }

    /// Canonical "key=value" lines in key order.
    [[nodiscard]] std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : values_) {
            out += k;
            out += '=';
            out += v;
            out += '\n';
        }
        return out;
    }

    [[nodiscard]] const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Field validators; each failure names the offending key.

inline double require_positive(const RunConfig& c, const std::string& key, double fallback) {
    const double v = c.number_or(key, fallback);
    if (!(v > 0.0)) {
        throw ConfigError(key + " must be > 0, got " + std::to_string(v));
    }
    return v;
}

inline double require_speed(const RunConfig& c, const std::string& key, double fallback) {
    const double v = c.number_or(key, fallback);
    if (!(v >= 0.0 && v < 1.0)) {
        throw ConfigError(key + " must lie in [0, 1), got " + std::to_string(v));
    }
    return v;
}

inline int require_count(const RunConfig& c, const std::string& key, int fallback, int minimum = 2) {
    const double v = c.number_or(key, fallback);
    if (!(v >= minimum) || v != std::floor(v) || v > 1e8) {
        throw ConfigError(key + " must be an integer >= " + std::to_string(minimum));
    }
    return static_cast<int>(v);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace relmachine::cli
