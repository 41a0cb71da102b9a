#include "latticeflux/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace latticeflux {

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw std::runtime_error("CsvWriter(): cannot open " + path);
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::columns(const std::vector<std::string>& names) {
  if (columns_ >= 0) throw std::logic_error("CsvWriter::columns(): header already written");
  columns_ = static_cast<long>(names.size());
  for (std::size_t i = 0; i < names.size(); ++i)
    out_ << (i ? "," : "") << names[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (columns_ < 0) throw std::logic_error("CsvWriter::row(): no header yet");
  if (static_cast<long>(values.size()) != columns_)
    throw std::logic_error("CsvWriter::row(): column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_full(values[i]);
  out_ << "\n";
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
  if (columns_ < 0) throw std::logic_error("CsvWriter::row(): no header yet");
  if (static_cast<long>(values.size()) + 1 != columns_)
    throw std::logic_error("CsvWriter::row(): column count mismatch");
  out_ << label;
  for (double v : values) out_ << "," << format_full(v);
  out_ << "\n";
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw std::runtime_error("CsvWriter::close(): write failed for " + path_);
  out_.close();
}

}  // namespace latticeflux
