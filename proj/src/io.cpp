#include "gaa/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gaa {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

CsvTable::CsvTable(std::string_view header) {
    text_.append(header);
    text_.push_back('\n');
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_.push_back(',');
        text_.append(cells[i]);
    }
    text_.push_back('\n');
    ++rows_;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h, int digits) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (int i = digits - 1; i >= 0; --i) s.push_back(hex[(h >> (4 * i)) & 0xF]);
    return s;
}

}  // namespace gaa
