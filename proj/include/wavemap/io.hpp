#pragma once

#include <string>
#include <vector>

namespace wavemap {

/// CSV with a header row and 17-significant-digit decimal floats, so repeated
/// runs with identical configs are byte-identical.
class CsvWriter {
  public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

    static std::string format(double v);

  private:
    struct Impl;
    Impl* impl_;
};

/// Write a JSON document (pretty, sorted keys come from the caller's order).
void write_json_file(const std::string& path, const std::string& dump);

}  // namespace wavemap
