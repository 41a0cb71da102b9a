#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace latticeflux {

/**
 * Declarative run description: "key = value" lines grouped under
 * [section] headers, '#' comments, keys addressed by their dotted path
 * ("lattice.dims"). Values stay raw strings until a typed getter pulls
 * them, and every getter marks its key as consumed so finish() can reject
 * anything a recipe never asked for. Unknown keys are config mistakes,
 * not extension points.
 */
class Config {
 public:
  static Config parse_file(const std::string& path);
  // origin labels error messages when the text does not come from a file.
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  // Required getters: missing key or malformed value throws with the path.
  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string word(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;

  // Defaulted getters.
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string word(const std::string& key, const std::string& fallback) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;

  // An angle in radians; the words pi and -pi are kept exact.
  double angle(const std::string& key, double fallback) const;

  // Throws listing every key no getter consumed.
  void finish() const;

  // Insertion-ordered (path, raw value) pairs, for output provenance.
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::string origin_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;

  const std::string& raw(const std::string& key) const;
  [[noreturn]] void fail(const std::string& message) const;
};

}  // namespace latticeflux
