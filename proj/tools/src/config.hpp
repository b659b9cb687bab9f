#pragma once

#include <map>
#include <string>
#include <vector>

namespace zctool {

// Flat INI-style configuration: [section] headers followed by key = value
// lines.  Keys are stored as "section.key".  Values stay strings until a
// typed getter is called, so flag overrides can be spliced in as text.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_num(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of numbers; empty or missing gives the fallback.
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

    // Every key a command resolved, with the value it resolved to (the file
    // or override text when present, the formatted fallback otherwise).
    // Echoed into summaries so a run can be reproduced exactly.
    const std::map<std::string, std::string>& used() const { return used_; }

private:
    std::map<std::string, std::string> kv_;
    mutable std::map<std::string, std::string> used_;
};

} // namespace zctool
