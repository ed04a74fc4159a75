#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace diracsym {

/// FNV-1a 64-bit digest, hex-encoded. Stable across runs and platforms;
/// used to fingerprint canonicalized configs in run reports.
std::string fnv1a_hex(const std::string& text);

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_number(double value);

/// Writes content to path atomically (temp file in the same directory,
/// then rename).
void atomic_write(const std::string& path, const std::string& content);

/// Minimal CSV assembly: quoted-free numeric tables with a fixed header.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const;
    std::size_t rows() const { return rows_; }

  private:
    std::string body_;
    std::size_t columns_;
    std::size_t rows_ = 0;
};

}  // namespace diracsym
