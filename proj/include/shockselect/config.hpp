#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shockselect {

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& text, const std::string& key) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::runtime_error("value for '" + key + "' is not a number: '" + text + "'");
    return v;
}

} // namespace detail

// Flat key=value configuration with '#' comments.  Later sources override
// earlier ones (file, then command-line --set pairs).
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_text(const std::string& text, const std::string& origin = "<text>") {
        KeyValueConfig cfg;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::string stripped = detail::trim(line);
            if (stripped.empty()) continue;
            auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": expected key = value, got '" + stripped + "'");
            std::string key = detail::trim(stripped.substr(0, eq));
            std::string value = detail::trim(stripped.substr(eq + 1));
            if (key.empty())
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
            cfg.set(key, value);
        }
        return cfg;
    }

    static KeyValueConfig from_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read config file " + path.string());
        std::ostringstream text;
        text << in.rdbuf();
        return from_text(text.str(), path.string());
    }

    void set(const std::string& key, const std::string& value) { entries_[key] = value; }

    // One "key=value" fragment as given to a --set flag.
    void set_pair(const std::string& pair) {
        auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error("--set expects key=value, got '" + pair + "'");
        set(detail::trim(pair.substr(0, eq)), detail::trim(pair.substr(eq + 1)));
    }

    void merge(const KeyValueConfig& overrides) {
        for (const auto& [k, v] : overrides.entries_) entries_[k] = v;
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? fallback : it->second;
    }

    std::string require_string(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw std::runtime_error("missing required key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? fallback : detail::parse_double(it->second, key);
    }

    int get_int(const std::string& key, int fallback) const {
        double v = get_double(key, fallback);
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::runtime_error("value for '" + key + "' is not an integer");
        return i;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        auto it = entries_.find(key);
        if (it == entries_.end()) return out;
        std::istringstream in(it->second);
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(detail::parse_double(detail::trim(item), key));
        return out;
    }

    // Enforces the closed key set; unknown keys are configuration mistakes.
    void require_known(const std::set<std::string>& allowed) const {
        std::string unknown;
        for (const auto& [k, v] : entries_)
            if (!allowed.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
        if (!unknown.empty())
            throw std::runtime_error("unknown config keys: " + unknown);
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    // Deterministic echo; the output re-parses to the same configuration.
    std::string echo() const {
        std::string out;
        for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
        return out;
    }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace shockselect
