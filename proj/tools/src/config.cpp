#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sphc/cli.hpp"
#include "sphc/error.hpp"
#include "sphc/field.hpp"

namespace sphc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const long x = std::stol(v, &used, 0);
    if (used != v.size()) throw Error("");
    return x;
  } catch (const std::exception&) {
    throw Error("config: '" + key + "' expects an integer, got '" + v + "'");
  }
}

} // namespace

uint64_t parse_byte_size(const std::string& text) {
  static const std::vector<std::pair<std::string, uint64_t>> units{
      {"KiB", uint64_t(1) << 10}, {"MiB", uint64_t(1) << 20}, {"GiB", uint64_t(1) << 30},
      {"K", uint64_t(1) << 10},   {"M", uint64_t(1) << 20},   {"G", uint64_t(1) << 30}};
  std::string s = trim(text);
  uint64_t scale = 1;
  for (const auto& [suffix, factor] : units)
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
      s = trim(s.substr(0, s.size() - suffix.size()));
      scale = factor;
      break;
    }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error("malformed byte size '" + text + "'");
  return std::stoull(s) * scale;
}

Config parse_config(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.rfind("poly.", 0) == 0) {
      const int k = int(parse_int(key, key.substr(5)));
      const auto poly = unsigned(parse_int(key, value));
      if (k < 1 || k > 8 || !is_irreducible_gf2(poly, k))
        throw Error("config: " + key + " = " + value + " is not an irreducible polynomial of degree " + key.substr(5));
      c.field_polynomials[k] = poly;
    } else if (key == "memory_limit") {
      c.memory_limit = parse_byte_size(value);
    } else if (key == "probe_qs") {
      c.probe_qs.clear();
      std::istringstream qs(value);
      std::string part;
      while (std::getline(qs, part, ',')) {
        const long q = parse_int(key, trim(part));
        if (q < 2 || q > 256 || (q & (q - 1))) throw Error("config: probe size " + trim(part) + " is not a power of 2 in [2, 256]");
        c.probe_qs.push_back(int(q));
      }
      if (c.probe_qs.empty()) throw Error("config: probe_qs is empty");
    } else if (key == "max_classical_rank") {
      c.max_classical_rank = int(parse_int(key, value));
      if (c.max_classical_rank < 1) throw Error("config: max_classical_rank must be positive");
    } else if (key == "format") {
      if (value != "json" && value != "csv" && value != "text") throw Error("config: unknown format '" + value + "'");
      c.format = value;
    } else {
      throw Error("config: unknown key '" + key + "'");
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Config config_from_environment() {
  const char* path = std::getenv("SPHC_CONFIG");
  if (!path || !*path) return Config{};
  return load_config(path);
}

void apply_config(const Config& config) {
  for (const auto& [k, poly] : config.field_polynomials) set_field_polynomial(k, poly);
}

} // namespace sphc
