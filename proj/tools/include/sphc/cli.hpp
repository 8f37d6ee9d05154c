#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sphc {

/// Settings read from a key-value file (path in SPHC_CONFIG).
///
///   poly.K = 0x...          irreducible polynomial for GF(2^K)
///   memory_limit = 2GiB     census guard (plain bytes or K/M/G[iB] suffix)
///   probe_qs = 2,4
///   max_classical_rank = 6
///   format = json | csv | text
struct Config {
  std::map<int, unsigned> field_polynomials;
  uint64_t memory_limit = uint64_t(2) << 30;
  std::vector<int> probe_qs{2, 4};
  int max_classical_rank = 6;
  std::string format = "json";
};

/// Throws Error on unknown keys, malformed values, reducible polynomials or
/// probe sizes that are not powers of 2.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);
/// Defaults when SPHC_CONFIG is unset.
Config config_from_environment();
/// Installs the configured field polynomials.
void apply_config(const Config& config);

uint64_t parse_byte_size(const std::string& text);

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitResource = 3 };

/// Entry point of `sphc`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sphc
