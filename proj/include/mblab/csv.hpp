// csv.hpp — deterministic CSV emission: comma-separated, '.' decimal, header
// row, LF endings, %.17g floats (numeric payloads never need quoting).

#pragma once

#include <string>
#include <vector>

namespace mblab {

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& cell(const std::string& s);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    void end_row();

    const std::string& text() const { return text_; }
    void write_file(const std::string& path) const;

  private:
    std::size_t width_;
    std::size_t col_ = 0;
    std::string text_;
};

std::string format_double(double v);  // %.17g

}  // namespace mblab
