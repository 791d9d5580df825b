#include "gml/sweep.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gml/charsum_engine.hpp"
#include "gml/l_functions.hpp"
#include "gml/parallel.hpp"
#include "gml/sampling.hpp"
#include "gml/version.hpp"

namespace gml {

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

const char* precision_str(Precision prec) {
  return prec == Precision::standard ? "standard" : "extended";
}

const char* class_str(std::int64_t p) { return p % 4 == 1 ? "1mod4" : "3mod4"; }

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_i64(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Everything that shapes a per-prime record besides (p, precision, version).
std::string config_token(const SweepConfig& cfg) {
  return "n=" + join_i64(cfg.n_list) + ";m=" + join_i64(cfg.m_list) +
         ";seed=" + std::to_string(cfg.seed) + ";cmax=" + std::to_string(cfg.cmax_pmax) + "," +
         std::to_string(cfg.cmax_k);
}

njson moment_to_json(const MomentReport& r) {
  njson j;
  j["p"] = r.p;
  j["n"] = r.n;
  j["m"] = r.m;
  j["unweighted_all"] = r.unweighted_all;
  j["unweighted_err"] = r.unweighted_err;
  j["has_closed_form"] = r.has_closed_form;
  j["closed_form"] = r.closed_form;
  j["closed_residual"] = r.closed_residual;
  j["weighted"] = r.weighted;
  j["weighted_err"] = r.weighted_err;
  j["main_term"] = r.main_term;
  j["residual_norm"] = r.residual_norm;
  j["conjecture_ratio"] = r.conjecture_ratio;
  return j;
}

MomentReport moment_from_json(const njson& j) {
  MomentReport r;
  r.p = j.at("p").get<std::int64_t>();
  r.n = j.at("n").get<std::int64_t>();
  r.m = j.at("m").get<std::int64_t>();
  r.unweighted_all = j.at("unweighted_all").get<double>();
  r.unweighted_err = j.at("unweighted_err").get<double>();
  r.has_closed_form = j.at("has_closed_form").get<bool>();
  r.closed_form = j.at("closed_form").get<double>();
  r.closed_residual = j.at("closed_residual").get<double>();
  r.weighted = j.at("weighted").get<double>();
  r.weighted_err = j.at("weighted_err").get<double>();
  r.main_term = j.at("main_term").get<double>();
  r.residual_norm = j.at("residual_norm").get<double>();
  r.conjecture_ratio = j.at("conjecture_ratio").get<double>();
  return r;
}

njson record_to_json(const PrimeRecord& rec) {
  njson j;
  j["p"] = rec.p;
  j["class"] = class_str(rec.p);
  njson cs;
  cs["N"] = rec.charsum.N;
  cs["T"] = rec.charsum.T;
  cs["triple_full"] = rec.charsum.tripleFull;
  cs["maxS_norm"] = rec.charsum.maxS_norm;
  cs["maxR_norm"] = rec.charsum.maxR_norm;
  cs["weil_margin"] = rec.charsum.weil_margin;
  j["charsum"] = std::move(cs);
  j["diag_G3"] = rec.diag_G3;
  j["diag_g3_ratio"] = rec.diag_g3_ratio;
  j["diag_gen6"] = rec.diag_gen6;
  j["diag_gen6_norm"] = rec.diag_gen6_norm;
  j["moments"] = njson::array();
  for (const auto& m : rec.moments) j["moments"].push_back(moment_to_json(m));
  j["runtime_ms"] = rec.runtimeMillis;
  j["failures"] = rec.failures;
  j["skipped"] = rec.skipped;
  return j;
}

PrimeRecord record_from_json(const njson& j) {
  PrimeRecord rec;
  rec.p = j.at("p").get<std::int64_t>();
  const njson& cs = j.at("charsum");
  rec.charsum.N = cs.at("N").get<std::int64_t>();
  rec.charsum.T = cs.at("T").get<std::int64_t>();
  rec.charsum.tripleFull = cs.at("triple_full").get<std::int64_t>();
  rec.charsum.maxS_norm = cs.at("maxS_norm").get<double>();
  rec.charsum.maxR_norm = cs.at("maxR_norm").get<double>();
  rec.charsum.weil_margin = cs.at("weil_margin").get<double>();
  rec.diag_G3 = j.at("diag_G3").get<double>();
  rec.diag_g3_ratio = j.at("diag_g3_ratio").get<double>();
  rec.diag_gen6 = j.at("diag_gen6").get<double>();
  rec.diag_gen6_norm = j.at("diag_gen6_norm").get<double>();
  for (const auto& m : j.at("moments")) rec.moments.push_back(moment_from_json(m));
  rec.runtimeMillis = j.at("runtime_ms").get<std::int64_t>();
  rec.failures = j.at("failures").get<std::vector<std::string>>();
  rec.skipped = j.at("skipped").get<std::vector<std::string>>();
  return rec;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

// Ratio chart: conjecture_ratio vs p. Residual chart: residual_norm vs p on
// a log scale. Static polylines only; every coordinate is formatted with a
// fixed precision so reruns emit identical bytes.
std::string render_svg(const std::vector<PrimeRecord>& records, std::int64_t n_front,
                       bool residual_chart) {
  constexpr double W = 720.0, H = 400.0;
  constexpr double L = 70.0, R = 700.0, Tm = 40.0, B = 360.0;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::map<std::int64_t, std::vector<std::pair<double, double>>> series;
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  bool have = false;
  for (const auto& rec : records) {
    for (const auto& mr : rec.moments) {
      if (mr.n != n_front) continue;
      double y = residual_chart ? mr.residual_norm : mr.conjecture_ratio;
      if (residual_chart) y = std::log10(std::max(y, 1e-9));
      const double x = std::log10(static_cast<double>(rec.p));
      series[mr.m].push_back({x, y});
      if (!have) {
        xlo = xhi = x;
        ylo = yhi = y;
        have = true;
      } else {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
      }
    }
  }
  if (!have) {
    xlo = ylo = 0;
    xhi = yhi = 1;
  }
  if (xhi - xlo < 1e-9) xhi = xlo + 1;
  if (yhi - ylo < 1e-9) {
    yhi += 0.5;
    ylo -= 0.5;
  }
  auto px = [&](double x) { return L + (x - xlo) / (xhi - xlo) * (R - L); };
  auto py = [&](double y) { return B - (y - ylo) / (yhi - ylo) * (B - Tm); };
  auto f2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << L << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\">"
      << (residual_chart ? "residual_norm vs p (log-log)" : "conjecture_ratio vs p (log p)")
      << ", n = " << n_front << "</text>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << Tm << "\" x2=\"" << L << "\" y2=\"" << B
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << B << "\" x2=\"" << R << "\" y2=\"" << B
      << "\" stroke=\"black\"/>\n";
  auto axis_label = [&](double xpix, double ypix, const std::string& text,
                        const char* anchor) {
    svg << "<text x=\"" << f2(xpix) << "\" y=\"" << f2(ypix)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" << anchor << "\">"
        << text << "</text>\n";
  };
  axis_label(L, B + 16, "p = " + g17(std::pow(10.0, xlo)).substr(0, 8), "start");
  axis_label(R, B + 16, "p = " + g17(std::pow(10.0, xhi)).substr(0, 8), "end");
  axis_label(L - 6, B, residual_chart ? ("1e" + f2(ylo)) : f2(ylo), "end");
  axis_label(L - 6, Tm + 4, residual_chart ? ("1e" + f2(yhi)) : f2(yhi), "end");

  int ci = 0;
  double legend_x = L + 10;
  for (const auto& [m, pts] : series) {
    const char* color = kColors[ci % 4];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) svg << ' ';
      svg << f2(px(pts[i].first)) << ',' << f2(py(pts[i].second));
    }
    svg << "\"/>\n";
    for (const auto& pt : pts) {
      svg << "<circle cx=\"" << f2(px(pt.first)) << "\" cy=\"" << f2(py(pt.second))
          << "\" r=\"1.6\" fill=\"" << color << "\"/>\n";
    }
    svg << "<text x=\"" << f2(legend_x) << "\" y=\"" << Tm - 6
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">m=" << m
        << "</text>\n";
    legend_x += 46;
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void validate_config(SweepConfig& cfg) {
  if (cfg.pmin < 3) throw std::invalid_argument("pmin must be >= 3");
  if (cfg.pmax < cfg.pmin) throw std::invalid_argument("pmax must be >= pmin");
  if (cfg.n_list.empty()) throw std::invalid_argument("n list must be non-empty");
  if (cfg.m_list.empty()) throw std::invalid_argument("m list must be non-empty");
  for (std::int64_t n : cfg.n_list) {
    if (n < 1) throw std::invalid_argument("n values must be positive");
  }
  for (std::int64_t m : cfg.m_list) {
    if (m < 1 || m > 4) throw std::invalid_argument("m values must be in [1, 4]");
  }
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.out_dir.empty()) throw std::invalid_argument("out dir must be set");
  if (cfg.cmax_pmax < 2) throw std::invalid_argument("cmax-pmax must be >= 2");
  if (cfg.cmax_k < 1) throw std::invalid_argument("cmax-k must be >= 1");
  auto canon = [](std::vector<std::int64_t>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  };
  canon(cfg.n_list);
  canon(cfg.m_list);
}

std::string effective_cache_dir(const SweepConfig& cfg) {
  if (const char* env = std::getenv("GML_CACHE"); env && *env) return env;
  return cfg.cache_dir;
}

std::string cache_entry_name(const SweepConfig& cfg, std::int64_t p) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(config_token(cfg))));
  return "p" + std::to_string(p) + "_" + precision_str(cfg.precision) + "_v" +
         std::string(kCacheVersionTag) + "_" + hash + ".json";
}

bool store_cache(const std::string& dir, const SweepConfig& cfg, const PrimeRecord& rec) {
  if (dir.empty()) return false;
  std::error_code ec;
  fs::create_directories(dir, ec);
  njson doc;
  doc["tag"] = kCacheVersionTag;
  doc["p"] = rec.p;
  doc["precision"] = precision_str(cfg.precision);
  doc["seed"] = cfg.seed;
  doc["n_list"] = cfg.n_list;
  doc["m_list"] = cfg.m_list;
  doc["cmax_pmax"] = cfg.cmax_pmax;
  doc["cmax_k"] = cfg.cmax_k;
  doc["record"] = record_to_json(rec);

  const fs::path final_path = fs::path(dir) / cache_entry_name(cfg, rec.p);
  const fs::path tmp_path = final_path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp_path, std::ios::binary);
    if (!out) return false;
    out << doc.dump() << '\n';
    if (!out.flush()) {
      out.close();
      fs::remove(tmp_path, ec);
      return false;
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) {
    fs::remove(tmp_path, ec);
    return false;
  }
  return true;
}

std::optional<PrimeRecord> load_cache(const std::string& dir, const SweepConfig& cfg,
                                      std::int64_t p) {
  if (dir.empty()) return std::nullopt;
  const fs::path path = fs::path(dir) / cache_entry_name(cfg, p);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    njson doc = njson::parse(in);
    if (doc.at("tag").get<std::string>() != kCacheVersionTag) return std::nullopt;
    if (doc.at("p").get<std::int64_t>() != p) return std::nullopt;
    if (doc.at("precision").get<std::string>() != precision_str(cfg.precision))
      return std::nullopt;
    if (doc.at("seed").get<std::uint64_t>() != cfg.seed) return std::nullopt;
    if (doc.at("n_list").get<std::vector<std::int64_t>>() != cfg.n_list) return std::nullopt;
    if (doc.at("m_list").get<std::vector<std::int64_t>>() != cfg.m_list) return std::nullopt;
    if (doc.at("cmax_pmax").get<std::int64_t>() != cfg.cmax_pmax) return std::nullopt;
    if (doc.at("cmax_k").get<int>() != cfg.cmax_k) return std::nullopt;
    return record_from_json(doc.at("record"));
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what()
              << "\n";
    return std::nullopt;
  }
}

PrimeRecord compute_prime(const SweepConfig& cfg, std::int64_t p, double C) {
  const auto t0 = std::chrono::steady_clock::now();
  PrimeRecord rec;
  rec.p = p;
  auto fail = [&rec](const char* check, const std::string& detail) {
    rec.failures.push_back(std::string(check) + ": " + detail);
  };

  PrimeContext ctx = build_context(p);
  if (cfg.inject_fault_p == p) {
    // One flipped entry in the quadratic-character table; the battery below
    // must notice or the whole suite is decorative.
    ctx.legendre[2] = static_cast<std::int8_t>(-ctx.legendre[2]);
  }
  const double pd = static_cast<double>(p);
  const double sp = std::sqrt(pd);

  // Quadratic-character table battery.
  {
    std::int64_t sum = 0;
    for (std::int64_t a = 1; a < p; ++a) sum += ctx.legendre[static_cast<std::size_t>(a)];
    if (sum != 0) fail("legendre-sum", "sum over a of rho(a) = " + std::to_string(sum));
    for (std::int64_t a : {std::int64_t{2}, std::int64_t{3}, std::int64_t{5}, p - 2, p - 1}) {
      const std::int64_t r = ((a % p) + p) % p;
      if (r == 0) continue;
      if (ctx.legendre[static_cast<std::size_t>(r)] != legendre_symbol(r, p)) {
        fail("legendre-euler", "table disagrees with Euler criterion at a = " + std::to_string(r));
      }
    }
    SplitMix64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(p)));
    for (int i = 0; i < 8; ++i) {
      const std::int64_t a = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(p - 1));
      const std::int64_t b = 1 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(p - 1));
      const std::int64_t ab = a * b % p;
      const int lhs = ab == 0 ? 0 : ctx.legendre[static_cast<std::size_t>(ab)];
      const int rhs = ctx.legendre[static_cast<std::size_t>(a)] * ctx.legendre[static_cast<std::size_t>(b)];
      if (lhs != rhs) {
        fail("legendre-mult",
             "rho(ab) != rho(a) rho(b) at a = " + std::to_string(a) + ", b = " + std::to_string(b));
        break;
      }
    }
  }

  // Exact character-sum battery.
  CharSumEngine cs(ctx);
  if (cs.kernel_at(1) != p - 3 || cs.kernel_at(p - 1) != p - 3) {
    fail("kernel-edge", "K(1) or K(p-1) != p - 3");
  }
  for (std::int64_t x = 1; x <= p / 2; ++x) {
    if (cs.kernel_at(x) != cs.kernel_at(p - x)) {
      fail("kernel-symmetry", "K(x) != K(p-x) at x = " + std::to_string(x));
      break;
    }
  }
  rec.charsum.N = cs.sum_N();
  rec.charsum.T = cs.sum_T();
  rec.charsum.tripleFull = cs.triple_full();
  rec.charsum.weil_margin = cs.weil_max_ratio();
  if (rec.charsum.weil_margin > 1.0) {
    fail("weil-bound", "max |K(x)| / (3 sqrt p) = " + g17(rec.charsum.weil_margin));
  }
  if (rec.charsum.tripleFull != 2 * (p - 3) * (p - 3) + rec.charsum.T) {
    fail("triple-decomposition", "sum over all c of K(c)^2 != 2 (p-3)^2 + T");
  }
  if (rec.charsum.N != cs.sum_R(1)) {
    fail("n-equals-r1", "N = " + std::to_string(rec.charsum.N) + " but R(1) = " +
                            std::to_string(cs.sum_R(1)));
  }
  if (p % 4 == 3 && rec.charsum.N != 0) {
    fail("n-vanishes", "N = " + std::to_string(rec.charsum.N) + " for p = 3 mod 4");
  }
  {
    const auto samples = sample_multipliers(p, cfg.seed);
    double max_s = 0.0, max_r = 0.0;
    for (std::int64_t a : samples) {
      max_s = std::max(max_s, std::fabs(static_cast<double>(cs.triple_S(a))) / (pd * sp));
      max_r = std::max(max_r, std::fabs(static_cast<double>(cs.sum_R(a))) / pd);
    }
    rec.charsum.maxS_norm = max_s;
    rec.charsum.maxR_norm = max_r;
  }

  // Analytic battery and the moment table.
  Workspace ws(ctx, cfg.precision);
  const std::int64_t u = p - 1;
  SplitMix64 chi_rng((cfg.seed + 0x632BE59BD9B4E019ull) ^ static_cast<std::uint64_t>(p));

  std::vector<std::int64_t> m_want = cfg.m_list;
  if (!std::count(m_want.begin(), m_want.end(), std::int64_t{1})) {
    m_want.insert(m_want.begin(), 1);
  }

  bool noted_no_even = false;
  for (std::int64_t n : cfg.n_list) {
    if (n % p == 0) {
      rec.skipped.push_back("n=" + std::to_string(n) + ": divisible by p, rows skipped");
      continue;
    }
    const double tw = twist_identity_residual(ctx, n, cfg.precision);
    if (tw > 1e-8 * sp) {
      fail("gauss-twist", "n = " + std::to_string(n) + ", residual = " + g17(tw));
    }

    // Lemma battery over even non-principal characters: all of them when
    // there are few, a deterministic sample otherwise.
    std::set<std::int64_t> even_ks;
    if (u / 2 - 1 <= 10) {
      for (std::int64_t k = 2; k < u; k += 2) even_ks.insert(k);
    } else {
      even_ks = {2, 4, u - 2};
      while (even_ks.size() < 10) {
        even_ks.insert(2 * (1 + static_cast<std::int64_t>(
                                    chi_rng.next() % static_cast<std::uint64_t>((u - 2) / 2))));
      }
    }
    for (std::int64_t k : even_ks) {
      const double res = gen1_residual(ws, n, Character{p, k});
      if (res > 1e-8 * pd) {
        fail("lemma4", "n = " + std::to_string(n) + ", k = " + std::to_string(k) +
                           ", residual = " + g17(res));
        break;
      }
    }
    if (even_ks.empty() && !noted_no_even) {
      rec.skipped.push_back("lemma4: no even non-principal characters (p = 3)");
      noted_no_even = true;
    }

    std::set<std::int64_t> odd_ks = {1, u - 1};
    for (int i = 0; i < 4; ++i) {
      odd_ks.insert(1 + 2 * static_cast<std::int64_t>(
                            chi_rng.next() % static_cast<std::uint64_t>(u / 2)));
    }
    for (std::int64_t k : odd_ks) {
      const auto g = generalized_gauss(ws, n, Character{p, k});
      const double mag = std::hypot(g.value.re, g.value.im);
      if (mag > 4.0 * g.value.err + 1e-12 * pd) {
        fail("odd-vanishing", "n = " + std::to_string(n) + ", k = " + std::to_string(k) +
                                  ", |G| = " + g17(mag));
        break;
      }
    }

    auto reports = moment_reports_fused(ws, n, m_want, C, rec.charsum.N, rec.charsum.T);
    for (const auto& rep : reports) {
      if (rep.m == 1) {
        const double target = static_cast<double>(u) * static_cast<double>(u);
        const double tol = 4.0 * rep.unweighted_err + 1e-9 * pd * pd;
        if (std::fabs(rep.unweighted_all - target) > tol) {
          fail("m1-orthogonality", "n = " + std::to_string(n) + ", sum = " +
                                       g17(rep.unweighted_all) + ", expected " + g17(target));
        }
      }
      if (rep.has_closed_form && std::count(cfg.m_list.begin(), cfg.m_list.end(), rep.m)) {
        const double tol =
            std::max(8.0 * rep.unweighted_err, 1e-8 * std::fabs(rep.closed_form));
        if (rep.closed_residual > tol) {
          fail(rep.m == 3 ? "closed-moment-6" : "closed-moment-8",
               "n = " + std::to_string(n) + ", residual = " + g17(rep.closed_residual));
        }
      }
      if (std::count(cfg.m_list.begin(), cfg.m_list.end(), rep.m)) rec.moments.push_back(rep);
    }
  }

  rec.diag_G3 = diag_G3(ws);
  rec.diag_g3_ratio = rec.diag_G3 / (0.5 * C * pd);
  rec.diag_gen6 = diag_gen6(ws);
  rec.diag_gen6_norm = rec.diag_gen6 / (pd * std::log(pd));
  if (p == 3) {
    rec.skipped.push_back("weighted moments, diag_g3_ratio: no even non-principal characters");
  }

  rec.runtimeMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return rec;
}

std::string render_csv(const std::vector<PrimeRecord>& records) {
  std::string out =
      "p,class,n,m,unweighted_all,closed_form,weighted,main_term,residual_norm,"
      "conjecture_ratio,N,T,maxS_norm,maxR_norm,weil_margin,diag_g3_ratio,diag_gen6_norm,"
      "runtime_ms\n";
  for (const auto& rec : records) {
    for (const auto& mr : rec.moments) {
      out += std::to_string(rec.p);
      out += ',';
      out += class_str(rec.p);
      out += ',';
      out += std::to_string(mr.n);
      out += ',';
      out += std::to_string(mr.m);
      out += ',';
      out += g17(mr.unweighted_all);
      out += ',';
      out += mr.has_closed_form ? g17(mr.closed_form) : "na";
      out += ',';
      out += g17(mr.weighted);
      out += ',';
      out += g17(mr.main_term);
      out += ',';
      out += g17(mr.residual_norm);
      out += ',';
      out += g17(mr.conjecture_ratio);
      out += ',';
      out += std::to_string(rec.charsum.N);
      out += ',';
      out += std::to_string(rec.charsum.T);
      out += ',';
      out += g17(rec.charsum.maxS_norm);
      out += ',';
      out += g17(rec.charsum.maxR_norm);
      out += ',';
      out += g17(rec.charsum.weil_margin);
      out += ',';
      out += g17(rec.diag_g3_ratio);
      out += ',';
      out += g17(rec.diag_gen6_norm);
      out += ',';
      out += std::to_string(rec.runtimeMillis);
      out += '\n';
    }
  }
  return out;
}

std::string render_json(const SweepConfig& cfg, const SweepResult& result) {
  njson j;
  j["version_tag"] = kCacheVersionTag;
  njson c;
  c["pmin"] = cfg.pmin;
  c["pmax"] = cfg.pmax;
  c["class"] = cfg.residue_class == ResidueClass::all
                   ? "all"
                   : (cfg.residue_class == ResidueClass::one_mod4 ? "1mod4" : "3mod4");
  c["n"] = cfg.n_list;
  c["m"] = cfg.m_list;
  c["precision"] = precision_str(cfg.precision);
  c["workers"] = cfg.workers;
  c["seed"] = cfg.seed;
  c["cache"] = effective_cache_dir(cfg);
  c["cmax_pmax"] = cfg.cmax_pmax;
  c["cmax_k"] = cfg.cmax_k;
  c["inject_fault_p"] = cfg.inject_fault_p;
  j["config"] = std::move(c);
  j["constant_c"] = result.constant_c;
  j["exit_status"] = result.exit_status;
  j["failures"] = result.failures;
  j["records"] = njson::array();
  for (const auto& rec : result.records) j["records"].push_back(record_to_json(rec));
  return j.dump(2) + "\n";
}

SweepResult run_sweep(const SweepConfig& cfg_in) {
  SweepConfig cfg = cfg_in;
  validate_config(cfg);
  const std::string cache = effective_cache_dir(cfg);
  if (!cache.empty()) fs::create_directories(cache);

  const ConstantC cc = cache.empty() ? constant_C(cfg.cmax_pmax, cfg.cmax_k)
                                     : constant_C_cached(cfg.cmax_pmax, cfg.cmax_k, cache);

  std::vector<std::int64_t> primes;
  for (std::int64_t p : primes_in_range(std::max<std::int64_t>(3, cfg.pmin), cfg.pmax)) {
    if (cfg.residue_class == ResidueClass::one_mod4 && p % 4 != 1) continue;
    if (cfg.residue_class == ResidueClass::three_mod4 && p % 4 != 3) continue;
    primes.push_back(p);
  }

  SweepResult out;
  out.constant_c = cc.value;
  out.records.resize(primes.size());

  // Workers pull the largest primes first so the tail of the run is not one
  // giant prime on an otherwise idle pool. Slots keep ascending order.
  parallel_for(cfg.workers, primes.size(), [&](std::size_t i) {
    const std::size_t slot = primes.size() - 1 - i;
    const std::int64_t p = primes[slot];
    const bool cacheable = !cache.empty() && p != cfg.inject_fault_p;
    if (cacheable) {
      if (auto hit = load_cache(cache, cfg, p)) {
        out.records[slot] = std::move(*hit);
        return;
      }
    }
    PrimeRecord rec = compute_prime(cfg, p, cc.value);
    if (cacheable) store_cache(cache, cfg, rec);
    out.records[slot] = std::move(rec);
  });

  for (const auto& rec : out.records) {
    for (const auto& f : rec.failures) {
      out.failures.push_back("p=" + std::to_string(rec.p) + ": " + f);
    }
  }
  out.exit_status = out.failures.empty() ? 0 : 2;

  fs::create_directories(cfg.out_dir);
  if (cfg.emit_csv) write_file(fs::path(cfg.out_dir) / "sweep.csv", render_csv(out.records));
  if (cfg.emit_json) write_file(fs::path(cfg.out_dir) / "sweep.json", render_json(cfg, out));
  if (cfg.emit_svg) {
    const std::int64_t n_front = cfg.n_list.front();
    write_file(fs::path(cfg.out_dir) / "ratio.svg", render_svg(out.records, n_front, false));
    write_file(fs::path(cfg.out_dir) / "residual.svg", render_svg(out.records, n_front, true));
  }
  return out;
}

}  // namespace gml
