#include "wavemap/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wavemap {

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t ncols;
};

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns) : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) throw std::runtime_error("CsvWriter: cannot open " + path);
    impl_->ncols = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 == columns.size() ? "\n" : ",");
}

CsvWriter::~CsvWriter() { delete impl_; }

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->ncols) throw std::invalid_argument("CsvWriter: column mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << format(values[i]) << (i + 1 == values.size() ? "\n" : ",");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != impl_->ncols) throw std::invalid_argument("CsvWriter: column mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << values[i] << (i + 1 == values.size() ? "\n" : ",");
}

void write_json_file(const std::string& path, const std::string& dump) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json_file: cannot open " + path);
    out << dump << "\n";
}

}  // namespace wavemap
