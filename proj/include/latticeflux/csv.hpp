#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace latticeflux {

// Shortest text that scans back to exactly the same double.
std::string format_full(double value);

/**
 * Column-oriented CSV with a commented provenance block: '#' lines first,
 * then one plain header row of column names, then %.17g data rows. Bodies
 * carry no timestamps or environment state, so equal inputs give equal
 * bytes.
 */
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void comment(const std::string& text);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  // A leading text cell (case label), then numeric cells; the label counts
  // toward the declared column number.
  void row(const std::string& label, const std::vector<double>& values);

  // Flushes and throws on any accumulated stream error. The destructor
  // closes silently; call close() where failure must not pass unnoticed.
  void close();

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  long columns_ = -1;
};

}  // namespace latticeflux
