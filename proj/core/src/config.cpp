#include "chl/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chl/errors.hpp"
#include "chl/io.hpp"

namespace chl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_num(const std::string& sec, const std::string& key, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ValidationFailure(strf("config: [%s] %s = '%s' is not a number",
                                     sec.c_str(), key.c_str(), v.c_str()));
    return x;
}

} // namespace

Config Config::from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(strf("config: cannot open '%s'", file.string().c_str()));
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line, sec;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationFailure(strf("config: malformed section header at line %d", lineno));
            sec = trim(line.substr(1, line.size() - 2));
            if (sec.empty())
                throw ValidationFailure(strf("config: empty section name at line %d", lineno));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationFailure(strf("config: expected key = value at line %d", lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationFailure(strf("config: empty key at line %d", lineno));
        if (sec.empty())
            throw ValidationFailure(strf("config: key outside any section at line %d", lineno));
        c.s_[sec][key] = val;
    }
    return c;
}

bool Config::has(const std::string& sec, const std::string& key) const {
    auto it = s_.find(sec);
    return it != s_.end() && it->second.count(key) > 0;
}

std::string Config::str(const std::string& sec, const std::string& key) const {
    auto it = s_.find(sec);
    if (it != s_.end()) {
        auto jt = it->second.find(key);
        if (jt != it->second.end()) return jt->second;
    }
    throw ValidationFailure(strf("config: missing [%s] %s", sec.c_str(), key.c_str()));
}

std::string Config::str_or(const std::string& sec, const std::string& key,
                           const std::string& def) const {
    return has(sec, key) ? str(sec, key) : def;
}

double Config::num(const std::string& sec, const std::string& key) const {
    return parse_num(sec, key, str(sec, key));
}

double Config::num_or(const std::string& sec, const std::string& key, double def) const {
    return has(sec, key) ? num(sec, key) : def;
}

long Config::int_or(const std::string& sec, const std::string& key, long def) const {
    if (!has(sec, key)) return def;
    double v = num(sec, key);
    long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
        throw ValidationFailure(strf("config: [%s] %s must be an integer", sec.c_str(), key.c_str()));
    return l;
}

bool Config::flag_or(const std::string& sec, const std::string& key, bool def) const {
    if (!has(sec, key)) return def;
    std::string v = str(sec, key);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ValidationFailure(strf("config: [%s] %s = '%s' is not a flag",
                                 sec.c_str(), key.c_str(), v.c_str()));
}

std::vector<double> Config::list(const std::string& sec, const std::string& key) const {
    std::string v = str(sec, key);
    std::vector<double> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_num(sec, key, item));
    }
    if (out.empty())
        throw ValidationFailure(strf("config: [%s] %s is an empty list", sec.c_str(), key.c_str()));
    return out;
}

void Config::set(const std::string& sec, const std::string& key, const std::string& value) {
    s_[sec][key] = value;
}

void Config::set_dotted(const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationFailure(strf("config: override '%s' must look like section.key=value",
                                     assignment.c_str()));
    std::string path = trim(assignment.substr(0, eq));
    std::string val = trim(assignment.substr(eq + 1));
    std::size_t dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size())
        throw ValidationFailure(strf("config: override '%s' must look like section.key=value",
                                     assignment.c_str()));
    set(path.substr(0, dot), path.substr(dot + 1), val);
}

std::string Config::normalized() const {
    std::string out;
    for (const auto& [sec, kv] : s_) {
        out += "[" + sec + "]\n";
        for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    }
    return out;
}

std::string Config::hash_hex() const { return hex64(fnv1a(normalized())); }

} // namespace chl
