#pragma once

// Grid sweeps over the dimensionless time axis, plus the canned series
// bundles behind the two shipped figures. Output is CSV or JSON; both embed
// enough to rerun the exact sweep.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qcorr/amid.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/mid.hpp"

namespace qcorr {

enum class Measure { Mid, Amid, Both };
enum class OutputFormat { Csv, Json };

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::Mid: return "mid";
    case Measure::Amid: return "amid";
    default: return "both";
  }
}

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

struct SweepConfig {
  StateKind state = StateKind::Ghz;
  NoiseKind noise = NoiseKind::PauliX;
  Measure measure = Measure::Both;
  double kt_min = 0.0;
  double kt_max = 3.0;
  int points = 61;
  int restarts = 24;
  std::uint64_t seed = 42;
  OutputFormat format = OutputFormat::Csv;
  std::string out;
};

struct CorrelationPoint {
  double kt = 0.0;
  double mid = 0.0;
  std::optional<double> amid;
  double mutual_information = 0.0;
  double s_rho = 0.0;
  double s_pi_rho = 0.0;
};

inline void validate_config(const SweepConfig& cfg) {
  if (!std::isfinite(cfg.kt_min) || cfg.kt_min < 0.0)
    throw std::invalid_argument("sweep: kt_min must be finite and >= 0");
  if (!std::isfinite(cfg.kt_max) || cfg.kt_max <= cfg.kt_min)
    throw std::invalid_argument("sweep: kt_max must exceed kt_min");
  if (cfg.points < 2) throw std::invalid_argument("sweep: need at least 2 grid points");
  if (cfg.restarts < 1) throw std::invalid_argument("sweep: restarts must be >= 1");
}

namespace detail {

// Stateless per-point stream split: the optimizer at grid index i must see
// the same seed no matter which worker picks the point up.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline int worker_count(int points) {
  long n = 0;
  if (const char* env = std::getenv("QCORR_THREADS")) {
    char* end = nullptr;
    n = std::strtol(env, &end, 10);
    if (end == env) n = 0;
  }
  if (n <= 0) n = static_cast<long>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (n > points) n = points;
  return static_cast<int>(n);
}

inline CorrelationPoint sweep_point(const SweepConfig& cfg, int index) {
  const double span = cfg.kt_max - cfg.kt_min;
  const double kt = cfg.kt_min + span * (static_cast<double>(index) / (cfg.points - 1));
  const DensityMatrix rho = evolve_analytic({cfg.state, cfg.noise, kt});

  const MidResult m = mid(rho, kt);
  CorrelationPoint row;
  row.kt = kt;
  row.mid = m.mid;
  row.mutual_information = m.mutual_information;
  row.s_rho = m.s_rho;
  row.s_pi_rho = m.s_pi_rho;
  if (cfg.measure != Measure::Mid) {
    AmidConfig ac;
    ac.restarts = cfg.restarts;
    ac.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(index));
    row.amid = amid(rho, ac, kt).amid;
  }
  return row;
}

inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Round through the 9-significant-digit text form so JSON and CSV agree on
// the digits they carry.
inline double round9(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

}  // namespace detail

inline std::vector<CorrelationPoint> sweep(const SweepConfig& cfg) {
  validate_config(cfg);
  std::vector<CorrelationPoint> rows(static_cast<std::size_t>(cfg.points));
  const int workers = detail::worker_count(cfg.points);

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.points));
  auto run = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.points) return;
      try {
        rows[static_cast<std::size_t>(i)] = detail::sweep_point(cfg, i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<CorrelationPoint>& rows) {
  os << "kt,mid,amid,mutual_information,s_rho,s_pi_rho\n";
  for (const auto& r : rows) {
    os << detail::fmt9(r.kt) << ',' << detail::fmt9(r.mid) << ',';
    if (r.amid) os << detail::fmt9(*r.amid);
    os << ',' << detail::fmt9(r.mutual_information) << ',' << detail::fmt9(r.s_rho) << ','
       << detail::fmt9(r.s_pi_rho) << '\n';
  }
}

inline void write_json(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<CorrelationPoint>& rows) {
  nlohmann::ordered_json doc;
  doc["config"] = {{"state", to_string(cfg.state)},
                   {"noise", to_string(cfg.noise)},
                   {"measure", to_string(cfg.measure)},
                   {"kt_min", cfg.kt_min},
                   {"kt_max", cfg.kt_max},
                   {"points", cfg.points},
                   {"restarts", cfg.restarts},
                   {"seed", cfg.seed},
                   {"format", to_string(cfg.format)},
                   {"out", cfg.out}};
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json p;
    p["kt"] = detail::round9(r.kt);
    p["mid"] = detail::round9(r.mid);
    p["amid"] = r.amid ? nlohmann::ordered_json(detail::round9(*r.amid))
                       : nlohmann::ordered_json(nullptr);
    p["mutual_information"] = detail::round9(r.mutual_information);
    p["s_rho"] = detail::round9(r.s_rho);
    p["s_pi_rho"] = detail::round9(r.s_pi_rho);
    pts.push_back(std::move(p));
  }
  doc["points"] = std::move(pts);
  os << doc.dump(2) << '\n';
}

inline void write_output(const SweepConfig& cfg, const std::vector<CorrelationPoint>& rows,
                         std::ostream& os) {
  if (cfg.format == OutputFormat::Csv)
    write_csv(os, rows);
  else
    write_json(os, cfg, rows);
}

// One file per legend entry of the corresponding shipped plot. The W state
// produces identical curves under X and Y noise, so that pair shares a
// single series file.
inline std::vector<std::filesystem::path> figure(int id, const std::filesystem::path& out_dir) {
  if (id != 1 && id != 2) throw std::invalid_argument("figure: id must be 1 or 2");
  std::filesystem::create_directories(out_dir);

  struct Series {
    NoiseKind noise;
    Measure measure;
    const char* file;
  };
  const std::vector<Series> plan =
      id == 1 ? std::vector<Series>{{NoiseKind::PauliX, Measure::Mid, "fig1_ghz_x_mid.csv"},
                                    {NoiseKind::PauliX, Measure::Amid, "fig1_ghz_x_amid.csv"},
                                    {NoiseKind::PauliY, Measure::Mid, "fig1_ghz_y_mid.csv"},
                                    {NoiseKind::PauliZ, Measure::Mid, "fig1_ghz_z_mid.csv"},
                                    {NoiseKind::Isotropic, Measure::Mid, "fig1_ghz_iso_mid.csv"}}
              : std::vector<Series>{{NoiseKind::PauliX, Measure::Mid, "fig2_w_xy_mid.csv"},
                                    {NoiseKind::PauliX, Measure::Amid, "fig2_w_x_amid.csv"},
                                    {NoiseKind::PauliY, Measure::Amid, "fig2_w_y_amid.csv"},
                                    {NoiseKind::PauliZ, Measure::Mid, "fig2_w_z_mid.csv"},
                                    {NoiseKind::Isotropic, Measure::Mid, "fig2_w_iso_mid.csv"}};

  std::vector<std::filesystem::path> written;
  for (const auto& s : plan) {
    SweepConfig cfg;
    cfg.state = id == 1 ? StateKind::Ghz : StateKind::W;
    cfg.noise = s.noise;
    cfg.measure = s.measure;
    const auto rows = sweep(cfg);
    const auto path = out_dir / s.file;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("figure: cannot open " + path.string() + " for writing");
    write_csv(os, rows);
    written.push_back(path);
  }
  return written;
}

}  // namespace qcorr
