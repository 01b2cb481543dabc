#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace chl {

// shortest round-trip decimal form (printf %.17g)
std::string g17(double x);

// printf-style formatting into a std::string
std::string strf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

// deterministic CSV: header row then %.17g cells
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv(const std::filesystem::path& file, const std::string& header_line,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::filesystem::path& file, const std::string& content);

} // namespace chl
