#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gaa {

// Shortest round-trip decimal form, '.' decimal point, no locale dependence.
std::string format_double(double v);

// Line-oriented CSV accumulator; rows are joined with ',' and written with a
// trailing newline each. Cell values must already be formatted.
class CsvTable {
  public:
    explicit CsvTable(std::string_view header);

    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    std::size_t rows() const { return rows_; }

  private:
    std::string text_;
    std::size_t rows_ = 0;
};

// Writes content to path, creating parent directories. Throws on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit hash of a canonical configuration string; hex-encoded.
std::uint64_t fnv1a64(std::string_view text);
std::string hash_hex(std::uint64_t h, int digits = 8);

}  // namespace gaa
