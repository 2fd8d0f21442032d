#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace symdyn {

// Ordered key=value report. The first line is always command=<name>.
class Report {
public:
    explicit Report(std::string command);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, double value);
    void set(const std::string& key, long double value) { set(key, static_cast<double>(value)); }
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }
    void set(const std::string& key, std::size_t value) { set(key, static_cast<std::int64_t>(value)); }
    void set(const std::string& key, bool value);

    const std::string& command() const { return command_; }
    std::string str() const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> lines_;
};

std::string format_real(double v);  // %.12g, "inf"/"nan" spelled out

// Declared keys per command; a trailing '*' matches any suffix.
const std::map<std::string, std::vector<std::string>>& report_schema();

struct SchemaCheck {
    bool ok = true;
    int line = 0;  // first offending line (1-based), 0 when ok
    std::string message;
};
SchemaCheck report_schema_check(const std::string& text);

}  // namespace symdyn
