#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gml/moments.hpp"
#include "gml/numeric.hpp"

namespace gml {

enum class ResidueClass { all, one_mod4, three_mod4 };

struct SweepConfig {
  std::int64_t pmin = 3;
  std::int64_t pmax = 3;
  ResidueClass residue_class = ResidueClass::all;
  std::vector<std::int64_t> n_list = {1};
  std::vector<std::int64_t> m_list = {1, 2, 3, 4};
  Precision precision = Precision::standard;
  int workers = 1;
  std::string out_dir = "sweep_out";
  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = false;
  std::uint64_t seed = 1;
  std::string cache_dir;  // empty disables the cache; GML_CACHE overrides
  std::int64_t cmax_pmax = 100000;
  int cmax_k = 20;
  // Deliberately corrupts the quadratic-character table of this prime before
  // any computation, to prove the identity battery actually trips. 0 = off.
  std::int64_t inject_fault_p = 0;
};

// Throws std::invalid_argument on violated invariants; sorts and dedupes the
// n and m lists in place.
void validate_config(SweepConfig& cfg);

struct CharSumSummary {
  std::int64_t N = 0;
  std::int64_t T = 0;
  std::int64_t tripleFull = 0;
  double maxS_norm = 0.0;   // max over sampled a of |S(a)| / p^{3/2}
  double maxR_norm = 0.0;   // max over sampled a of |R(a)| / p
  double weil_margin = 0.0; // max |K(x)| / (3 sqrt p), x^2 != 1
};

struct PrimeRecord {
  std::int64_t p = 0;
  CharSumSummary charsum;
  double diag_G3 = 0.0;
  double diag_g3_ratio = 0.0;   // diag_G3 / ((C/2) p)
  double diag_gen6 = 0.0;
  double diag_gen6_norm = 0.0;  // diag_gen6 / (p ln p)
  std::vector<MomentReport> moments;  // one row per (n, m), n-major
  std::int64_t runtimeMillis = 0;
  std::vector<std::string> failures;  // identity checks that tripped
  std::vector<std::string> skipped;   // "field: reason" markers
};

struct SweepResult {
  int exit_status = 0;  // 0 clean, 2 at least one identity check failed
  double constant_c = 0.0;
  std::vector<PrimeRecord> records;       // ascending by p
  std::vector<std::string> failures;      // flattened "p=...: check: detail"
};

// Full verification pass over every prime the config selects. Parallel
// across primes only; results merge in ascending order regardless of worker
// count. Writes the requested report files into out_dir.
SweepResult run_sweep(const SweepConfig& cfg);

// One prime, no cache, no file output. The building block of run_sweep,
// exposed for tests and the acceptance suite.
PrimeRecord compute_prime(const SweepConfig& cfg, std::int64_t p, double C);

// Flattened projection of the records; one line per (p, n, m) row, LF ends,
// 17 significant digits, "na" for the closed form when none exists.
std::string render_csv(const std::vector<PrimeRecord>& records);

std::string render_json(const SweepConfig& cfg, const SweepResult& result);

// Cache entries are one JSON document per prime, keyed by prime, precision,
// the code-version tag and a hash of the sweep parameters that shape the
// record. store is atomic (temp file + rename). load returns nullopt on any
// mismatch; a corrupt entry logs a warning and reads as absent.
std::string cache_entry_name(const SweepConfig& cfg, std::int64_t p);
bool store_cache(const std::string& dir, const SweepConfig& cfg, const PrimeRecord& rec);
std::optional<PrimeRecord> load_cache(const std::string& dir, const SweepConfig& cfg,
                                      std::int64_t p);

// cfg.cache_dir unless the GML_CACHE environment variable is set.
std::string effective_cache_dir(const SweepConfig& cfg);

}  // namespace gml
