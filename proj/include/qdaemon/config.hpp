// config.hpp — flat `key = value` run configuration files: `#` comments,
// typed accessors, line-numbered diagnostics, canonical re-serialization
// (the manifest snapshot).

#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qdaemon/common.hpp"

namespace qdaemon {

class Config {
public:
    Config() = default;

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str(), path);
    }

    static Config parse_text(const std::string& text, const std::string& origin = "<inline>") {
        Config cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string stripped = strip(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected `key = value`, got: " + stripped);
            const std::string key = strip(stripped.substr(0, eq));
            const std::string value = strip(stripped.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
            if (cfg.values_.count(key))
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": duplicate key `" + key + "`");
            cfg.values_[key] = value;
            cfg.lines_[key] = lineno;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError(origin_ + ": missing required key `" + key + "`");
        used_.insert(key);
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        return get_string(key);
    }

    double get_real(const std::string& key) const {
        return to_real(key, get_string(key));
    }
    double get_real(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return get_real(key);
    }

    int get_int(const std::string& key) const {
        const double v = get_real(key);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError(where(key) + ": expected an integer for `" + key + "`");
        return i;
    }
    int get_int(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        return get_int(key);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string v = get_string(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(where(key) + ": expected a boolean for `" + key + "`");
    }

    std::vector<double> get_real_list(const std::string& key) const {
        const std::string raw = get_string(key);
        std::vector<double> out;
        std::string item;
        std::istringstream in(raw);
        while (std::getline(in, item, ',')) {
            const std::string s = strip(item);
            if (s.empty())
                throw ConfigError(where(key) + ": empty element in list `" + key + "`");
            out.push_back(to_real(key, s));
        }
        if (out.empty()) throw ConfigError(where(key) + ": empty list for `" + key + "`");
        return out;
    }

    /// Keys never read by the subcommand; reported as configuration errors so
    /// typos do not silently change runs.
    std::vector<std::string> unused_keys() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) out.push_back(k);
        return out;
    }

    /// Canonical snapshot: sorted `key = value` lines.  This is the text the
    /// determinism hash is computed over.
    std::string canonical_text() const {
        std::string out;
        for (const auto& [k, v] : values_) {
            out += k;
            out += " = ";
            out += v;
            out += "\n";
        }
        return out;
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    static std::string strip(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    std::string where(const std::string& key) const {
        auto it = lines_.find(key);
        if (it == lines_.end()) return origin_;
        return origin_ + ":" + std::to_string(it->second);
    }

    double to_real(const std::string& key, const std::string& s) const {
        // accept plain numbers plus the `pi`-scaled forms used by presets
        // (`pi`, `pi/4`, `16pi`, `2pi/3`)
        auto parse_pi = [](const std::string& t, double& out) -> bool {
            const auto p = t.find("pi");
            if (p == std::string::npos) return false;
            const std::string pre = t.substr(0, p);
            const std::string post = t.substr(p + 2);
            double scale = 1.0;
            if (!pre.empty()) {
                char* end = nullptr;
                scale = std::strtod(pre.c_str(), &end);
                if (end != pre.c_str() + pre.size()) return false;
            }
            double divisor = 1.0;
            if (!post.empty()) {
                if (post[0] != '/') return false;
                char* end = nullptr;
                divisor = std::strtod(post.c_str() + 1, &end);
                if (end != post.c_str() + post.size() || divisor == 0.0) return false;
            }
            out = scale * pi / divisor;
            return true;
        };
        double v = 0.0;
        if (parse_pi(s, v)) return v;
        char* end = nullptr;
        v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size())
            throw ConfigError(where(key) + ": expected a number for `" + key + "`, got `" + s + "`");
        return v;
    }

    std::string origin_ = "<empty>";
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
    mutable std::set<std::string> used_;
};

} // namespace qdaemon
