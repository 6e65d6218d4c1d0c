#pragma once
// Minimal CSV writer. Numbers go through std::to_chars, so output is
// locale-independent and bit-stable across runs.

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fresnel2d {

inline std::string format_number(double v, int precision = 10) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::ios_base::failure("cannot open for writing: " + path);
    }

    void comment(std::string_view text) { out_ << "# " << text << "\n"; }
    void raw_line(std::string_view line) { out_ << line << "\n"; }

    CsvWriter& field(std::string_view s) {
        sep();
        out_ << s;
        return *this;
    }
    CsvWriter& field(double v) { return field(std::string_view(format_number(v))); }
    CsvWriter& field(int v) { return field(std::string_view(std::to_string(v))); }
    CsvWriter& field(std::size_t v) { return field(std::string_view(std::to_string(v))); }

    void end_row() {
        out_ << "\n";
        first_ = true;
    }

  private:
    void sep() {
        if (!first_) out_ << ",";
        first_ = false;
    }
    std::ofstream out_;
    bool first_ = true;
};

} // namespace fresnel2d
