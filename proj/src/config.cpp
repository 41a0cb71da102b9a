#include "latticeflux/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latticeflux {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return {};
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

// Comments start the line or follow whitespace, so values may not contain
// a bare '#' but need no quoting otherwise.
std::string strip_comment(const std::string& line) {
  if (!line.empty() && line[0] == '#') return {};
  for (std::size_t i = 1; i < line.size(); ++i)
    if (line[i] == '#' && (line[i - 1] == ' ' || line[i - 1] == '\t'))
      return line.substr(0, i);
  return line;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + text.size() && !text.empty();
}

}  // namespace

void Config::fail(const std::string& message) const {
  throw std::runtime_error("config " + origin_ + ": " + message);
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config " + path + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        cfg.fail("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        cfg.fail("line " + std::to_string(line_no) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      cfg.fail("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cfg.fail("line " + std::to_string(line_no) + ": empty key");
    const std::string path = section.empty() ? key : section + "." + key;
    if (cfg.values_.count(path))
      cfg.fail("line " + std::to_string(line_no) + ": duplicate key '" + path + "'");
    cfg.values_[path] = value;
    cfg.entries_.emplace_back(path, value);
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail("missing key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

double Config::number(const std::string& key) const {
  double out = 0.0;
  if (!parse_double(raw(key), out)) fail("key '" + key + "': expected a number");
  return out;
}

long Config::integer(const std::string& key) const {
  const std::string& text = raw(key);
  char* end = nullptr;
  const long out = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty())
    fail("key '" + key + "': expected an integer");
  return out;
}

bool Config::flag(const std::string& key) const {
  const std::string& text = raw(key);
  if (text == "true" || text == "on" || text == "1") return true;
  if (text == "false" || text == "off" || text == "0") return false;
  fail("key '" + key + "': expected true/false");
}

std::string Config::word(const std::string& key) const { return raw(key); }

std::vector<double> Config::numbers(const std::string& key) const {
  std::istringstream in(raw(key));
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    double v = 0.0;
    if (!parse_double(token, v)) fail("key '" + key + "': expected numbers, got '" + token + "'");
    out.push_back(v);
  }
  if (out.empty()) fail("key '" + key + "': expected at least one number");
  return out;
}

std::vector<int> Config::integers(const std::string& key) const {
  std::vector<int> out;
  for (double v : numbers(key)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail("key '" + key + "': expected integers");
    out.push_back(i);
  }
  return out;
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Config::flag(const std::string& key, bool fallback) const {
  return has(key) ? flag(key) : fallback;
}

std::string Config::word(const std::string& key, const std::string& fallback) const {
  return has(key) ? word(key) : fallback;
}

std::vector<int> Config::integers(const std::string& key, const std::vector<int>& fallback) const {
  return has(key) ? integers(key) : fallback;
}

double Config::angle(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string text = raw(key);
  if (text == "pi") return M_PI;
  if (text == "-pi") return -M_PI;
  double out = 0.0;
  if (!parse_double(text, out)) fail("key '" + key + "': expected an angle or pi/-pi");
  return out;
}

void Config::finish() const {
  std::string unknown;
  for (const auto& [path, value] : entries_) {
    (void)value;
    if (!consumed_.count(path)) unknown += (unknown.empty() ? "" : ", ") + ("'" + path + "'");
  }
  if (!unknown.empty()) fail("unknown keys: " + unknown);
}

}  // namespace latticeflux
