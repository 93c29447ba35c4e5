#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace growth {

/// Renders a real with 9 significant digits; +/-infinity become "inf"/"-inf".
/// This is the single formatting routine for every text, CSV and SVG output,
/// so outputs are byte-stable across runs.
inline std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

/// Flat `key = value` text block used by every report serializer.
class KeyValueBlock {
public:
    void add(const std::string& key, const std::string& value) {
        items_.emplace_back(key, value);
    }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, double value) { add(key, format_real(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) { add(key, format_bool(value)); }

    std::string str() const {
        std::string out;
        for (const auto& [k, v] : items_) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace growth
