#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace chl {

// INI-style run configuration: [section] lines of key = value, '#' comments
class Config {
public:
    Config() = default;

    static Config from_file(const std::filesystem::path& file);
    static Config from_string(const std::string& text);

    bool has(const std::string& sec, const std::string& key) const;
    std::string str(const std::string& sec, const std::string& key) const;
    std::string str_or(const std::string& sec, const std::string& key,
                       const std::string& def) const;
    double num(const std::string& sec, const std::string& key) const;
    double num_or(const std::string& sec, const std::string& key, double def) const;
    long int_or(const std::string& sec, const std::string& key, long def) const;
    bool flag_or(const std::string& sec, const std::string& key, bool def) const;
    std::vector<double> list(const std::string& sec, const std::string& key) const;

    void set(const std::string& sec, const std::string& key, const std::string& value);
    // "section.key=value" as accepted on the command line
    void set_dotted(const std::string& assignment);

    // sorted canonical text; basis of the manifest hash
    std::string normalized() const;
    std::string hash_hex() const;

private:
    std::map<std::string, std::map<std::string, std::string>> s_;
};

} // namespace chl
