#include "chl/io.hpp"

#include <cstdarg>
#include <cstdio>
#include <fstream>

#include "chl/errors.hpp"

namespace chl {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string strf(const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    va_list ap2;
    va_copy(ap2, ap);
    int need = std::vsnprintf(nullptr, 0, fmt, ap);
    va_end(ap);
    std::string out(static_cast<std::size_t>(need), '\0');
    std::vsnprintf(out.data(), out.size() + 1, fmt, ap2);
    va_end(ap2);
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(file);
    if (!os) throw Error("write_csv: cannot open " + file.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << g17(r[i]);
        os << "\n";
    }
    if (!os) throw Error("write_csv: write failed for " + file.string());
}

void write_csv(const std::filesystem::path& file, const std::string& header_line,
               const std::vector<std::vector<double>>& rows) {
    write_csv(file, std::vector<std::string>{header_line}, rows);
}

void write_text(const std::filesystem::path& file, const std::string& content) {
    std::ofstream os(file);
    if (!os) throw Error("write_text: cannot open " + file.string());
    os << content;
    if (!os) throw Error("write_text: write failed for " + file.string());
}

} // namespace chl
