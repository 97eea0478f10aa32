#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace kc {

/// FNV-1a 64-bit over a byte string; used for config and output checksums.
std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

/// Opens for writing, throws std::runtime_error on failure.
std::ofstream open_out(const std::string& path);

/// Full-precision float formatting (round-trip exact, locale-independent).
std::string fmt(double v);

void ensure_dir(const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::string& path);

}  // namespace kc
