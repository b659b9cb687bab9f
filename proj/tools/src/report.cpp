#include "report.hpp"

#include "zcsim/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace zctool {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Table::Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != headers_.size())
        throw zcsim::InvalidArgument("table row width does not match header");
    rows_.push_back(std::move(cells));
}

void Table::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw zcsim::InvalidArgument("cannot open output file: " + path);
    for (std::size_t k = 0; k < headers_.size(); ++k) {
        if (k) out << ',';
        out << headers_[k];
    }
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            out << row[k];
        }
        out << '\n';
    }
    if (!out)
        throw zcsim::InvalidArgument("write failed: " + path);
}

void Summary::add(const std::string& key, const std::string& value) {
    items_.emplace_back(key, value);
}

void Summary::add(const std::string& key, const char* value) {
    items_.emplace_back(key, std::string(value));
}

void Summary::add(const std::string& key, double value) { add(key, fmt17(value)); }

void Summary::add(const std::string& key, int value) { add(key, std::to_string(value)); }

void Summary::add_flag(const std::string& key, bool value) {
    add(key, value ? "true" : "false");
}

bool Summary::has_error() const {
    for (const auto& [k, v] : items_)
        if (k == "error") return true;
    return false;
}

std::vector<std::pair<std::string, std::string>> Summary::sorted() const {
    auto out = items_;
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void Summary::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw zcsim::InvalidArgument("cannot open output file: " + path);
    for (const auto& [k, v] : sorted()) out << k << " = " << v << '\n';
    if (!out)
        throw zcsim::InvalidArgument("write failed: " + path);
}

void Summary::print() const {
    for (const auto& [k, v] : sorted()) std::printf("%s = %s\n", k.c_str(), v.c_str());
}

} // namespace zctool
