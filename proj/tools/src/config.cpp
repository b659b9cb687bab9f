#include "config.hpp"

#include "zcsim/errors.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zctool {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw zcsim::InvalidArgument("cannot open config file: " + path);
    Config cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw zcsim::InvalidArgument("malformed section header at " + path + ":" +
                                             std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw zcsim::InvalidArgument("empty section name at " + path + ":" +
                                             std::to_string(lineno));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw zcsim::InvalidArgument("expected key = value at " + path + ":" +
                                         std::to_string(lineno));
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw zcsim::InvalidArgument("empty key at " + path + ":" + std::to_string(lineno));
        if (section.empty())
            throw zcsim::InvalidArgument("key outside any [section] at " + path + ":" +
                                         std::to_string(lineno));
        cfg.kv_[section + "." + key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    const std::string& v = it == kv_.end() ? fallback : it->second;
    used_[key] = v;
    return v;
}

double Config::get_num(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", fallback);
        used_[key] = buf;
        return fallback;
    }
    const std::string& s = it->second;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw zcsim::InvalidArgument("config key " + key + " is not a number: " + s);
    used_[key] = s;
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        used_[key] = std::to_string(fallback);
        return fallback;
    }
    const std::string& s = it->second;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw zcsim::InvalidArgument("config key " + key + " is not an integer: " + s);
    used_[key] = s;
    return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        used_[key] = fallback ? "true" : "false";
        return fallback;
    }
    const std::string& s = it->second;
    bool v;
    if (s == "true" || s == "1" || s == "yes" || s == "on")
        v = true;
    else if (s == "false" || s == "0" || s == "no" || s == "off")
        v = false;
    else
        throw zcsim::InvalidArgument("config key " + key + " is not a boolean: " + s);
    used_[key] = s;
    return v;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        std::string joined;
        for (std::size_t k = 0; k < fallback.size(); ++k) {
            if (k) joined += ',';
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", fallback[k]);
            joined += buf;
        }
        used_[key] = joined;
        return fallback;
    }
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        if (t.empty())
            throw zcsim::InvalidArgument("config key " + key + " has an empty list entry");
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str() || *end != '\0')
            throw zcsim::InvalidArgument("config key " + key + " has a non-numeric entry: " + t);
        out.push_back(v);
    }
    if (out.empty())
        throw zcsim::InvalidArgument("config key " + key + " is an empty list");
    used_[key] = it->second;
    return out;
}

} // namespace zctool
