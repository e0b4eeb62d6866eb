#include "tempo/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace tempo {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail_at(const std::string& name, int line, const std::string& msg) {
    std::ostringstream os;
    os << name << ":" << line << ": " << msg;
    throw validation_error(os.str());
}

const ConfigEntry* find_entry(const ConfigFile& cfg, const std::string& section,
                              const std::string& key) {
    auto sit = cfg.sections.find(section);
    if (sit == cfg.sections.end()) return nullptr;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    return &kit->second;
}

double parse_double(const ConfigFile& cfg, const ConfigEntry& entry, const std::string& key,
                    const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) fail_at(cfg.name, entry.line, "empty value for key '" + key + "'");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        fail_at(cfg.name, entry.line, "expected a number for key '" + key + "', got '" + t + "'");
    return v;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find_entry(*this, section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    const ConfigEntry* e = find_entry(*this, section, key);
    return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    const ConfigEntry* e = find_entry(*this, section, key);
    if (!e) return fallback;
    return parse_double(*this, *e, key, e->value);
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const {
    const ConfigEntry* e = find_entry(*this, section, key);
    if (!e) return fallback;
    const double v = parse_double(*this, *e, key, e->value);
    const int n = static_cast<int>(v);
    if (static_cast<double>(n) != v)
        fail_at(name, e->line, "expected an integer for key '" + key + "', got '" + e->value + "'");
    return n;
}

Vec3 ConfigFile::get_vec3(const std::string& section, const std::string& key,
                          const Vec3& fallback) const {
    const ConfigEntry* e = find_entry(*this, section, key);
    if (!e) return fallback;
    const std::vector<std::string> parts = split_commas(e->value);
    if (parts.size() == 1) {
        const double v = parse_double(*this, *e, key, parts[0]);
        return {v, v, v};
    }
    if (parts.size() != 3)
        fail_at(name, e->line,
                "key '" + key + "' wants one value or three comma-separated components");
    Vec3 out{};
    for (int a = 0; a < 3; ++a) out[a] = parse_double(*this, *e, key, parts[static_cast<size_t>(a)]);
    return out;
}

std::array<int, 3> ConfigFile::get_int3(const std::string& section, const std::string& key,
                                        const std::array<int, 3>& fallback) const {
    const ConfigEntry* e = find_entry(*this, section, key);
    if (!e) return fallback;
    const std::vector<std::string> parts = split_commas(e->value);
    std::array<int, 3> out{};
    auto to_int = [&](const std::string& s) {
        const double v = parse_double(*this, *e, key, s);
        const int n = static_cast<int>(v);
        if (static_cast<double>(n) != v)
            fail_at(name, e->line, "expected an integer for key '" + key + "'");
        return n;
    };
    if (parts.size() == 1) {
        const int n = to_int(parts[0]);
        return {n, n, n};
    }
    if (parts.size() != 3)
        fail_at(name, e->line,
                "key '" + key + "' wants one value or three comma-separated components");
    for (int a = 0; a < 3; ++a) out[a] = to_int(parts[static_cast<size_t>(a)]);
    return out;
}

ConfigFile parse_config_text(const std::string& text, const std::string& name) {
    ConfigFile cfg;
    cfg.name = name;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail_at(name, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail_at(name, line_no, "empty section name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail_at(name, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_at(name, line_no, "missing key before '='");
        if (section.empty()) fail_at(name, line_no, "key '" + key + "' appears before any [section]");
        cfg.sections[section][key] = ConfigEntry{value, line_no};
    }
    return cfg;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace tempo
