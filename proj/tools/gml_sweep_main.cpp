// Sweep driver. Exit status: 0 when every identity check passed, 2 when at
// least one failed, 1 for usage or runtime errors.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gml/sweep.hpp"

namespace {

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer in list: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification sweep over generalized quadratic Gauss-sum moments"};

  gml::SweepConfig cfg;
  cfg.pmax = 500;
  std::string cls = "all";
  std::string n_csv = "1";
  std::string m_csv = "1,2,3,4";
  std::string precision = "standard";
  std::string emit = "csv,json";

  app.add_option("--pmin", cfg.pmin, "smallest prime considered (>= 3)");
  app.add_option("--pmax", cfg.pmax, "largest prime considered");
  app.add_option("--class", cls, "residue class of p mod 4")
      ->check(CLI::IsMember({"all", "1mod4", "3mod4"}));
  app.add_option("--n", n_csv, "comma list of n values");
  app.add_option("--m", m_csv, "comma list of moment orders, each in [1, 4]");
  app.add_option("--precision", precision, "floating-point mode")
      ->check(CLI::IsMember({"standard", "extended"}));
  app.add_option("--workers", cfg.workers, "worker threads (parallel across primes)");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--emit", emit, "comma list of report kinds: csv,json,svg");
  app.add_option("--seed", cfg.seed, "seed for the sampled multiplier scans");
  app.add_option("--cache", cfg.cache_dir,
                 "per-prime result cache directory (GML_CACHE overrides)");
  app.add_option("--cmax-pmax", cfg.cmax_pmax, "prime cutoff for the Euler constant");
  app.add_option("--cmax-k", cfg.cmax_k, "series cutoff per Euler factor");
  app.add_option("--inject-fault", cfg.inject_fault_p,
                 "corrupt the character table at this prime (self-test of the battery)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    cfg.residue_class = cls == "all" ? gml::ResidueClass::all
                        : cls == "1mod4" ? gml::ResidueClass::one_mod4
                                         : gml::ResidueClass::three_mod4;
    cfg.precision = precision == "standard" ? gml::Precision::standard : gml::Precision::extended;
    cfg.n_list = parse_int_list(n_csv);
    cfg.m_list = parse_int_list(m_csv);
    cfg.emit_csv = cfg.emit_json = cfg.emit_svg = false;
    {
      std::stringstream ss(emit);
      std::string kind;
      while (std::getline(ss, kind, ',')) {
        if (kind == "csv") {
          cfg.emit_csv = true;
        } else if (kind == "json") {
          cfg.emit_json = true;
        } else if (kind == "svg") {
          cfg.emit_svg = true;
        } else if (!kind.empty()) {
          throw std::invalid_argument("unknown emit kind: " + kind);
        }
      }
    }

    const gml::SweepResult result = gml::run_sweep(cfg);

    std::size_t rows = 0;
    for (const auto& rec : result.records) rows += rec.moments.size();
    std::cout << "primes: " << result.records.size() << ", rows: " << rows
              << ", C = " << result.constant_c << "\n";
    if (cfg.emit_csv) std::cout << "wrote " << cfg.out_dir << "/sweep.csv\n";
    if (cfg.emit_json) std::cout << "wrote " << cfg.out_dir << "/sweep.json\n";
    if (cfg.emit_svg) {
      std::cout << "wrote " << cfg.out_dir << "/ratio.svg and " << cfg.out_dir
                << "/residual.svg\n";
    }
    if (result.failures.empty()) {
      std::cout << "all identity checks passed\n";
    } else {
      std::cout << result.failures.size() << " identity check(s) FAILED:\n";
      for (const auto& f : result.failures) std::cout << "  " << f << "\n";
    }
    return result.exit_status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
