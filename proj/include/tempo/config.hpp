#pragma once

#include <array>
#include <map>
#include <string>

#include "tempo/common.hpp"

namespace tempo {

// Minimal sectioned key-value format:
//   [section]
//   key = value      # comment
// Vectors are comma-separated: key = x,y,z.  Parse and type errors carry
// file name and line number.
struct ConfigEntry {
    std::string value;
    int line = 0;
};

struct ConfigFile {
    std::string name;
    std::map<std::string, std::map<std::string, ConfigEntry>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    // Accepts a single scalar (broadcast to all axes) or three components.
    Vec3 get_vec3(const std::string& section, const std::string& key, const Vec3& fallback) const;
    std::array<int, 3> get_int3(const std::string& section, const std::string& key,
                                const std::array<int, 3>& fallback) const;
};

ConfigFile parse_config_text(const std::string& text, const std::string& name);
ConfigFile load_config(const std::string& path);

}  // namespace tempo
