#pragma once

#include <string>
#include <utility>
#include <vector>

namespace zctool {

// 17 significant digits, enough to round-trip a double exactly.
std::string fmt17(double v);

// CSV with a single header row. Cells are preformatted strings so column
// formatting stays under the caller's control (e.g. empty cells).
class Table {
public:
    explicit Table(std::vector<std::string> headers);
    void add_row(std::vector<std::string> cells);
    void write(const std::string& path) const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

// Flat key = value report, written sorted by key so reruns are byte-stable.
// The exit-status contract keys off the presence of an "error" record.
class Summary {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value);
    void add(const std::string& key, double value);
    void add(const std::string& key, int value);
    void add_flag(const std::string& key, bool value);
    bool has_error() const;
    void write(const std::string& path) const;
    void print() const; // same lines to stdout

private:
    std::vector<std::pair<std::string, std::string>> sorted() const;
    std::vector<std::pair<std::string, std::string>> items_;
};

} // namespace zctool
