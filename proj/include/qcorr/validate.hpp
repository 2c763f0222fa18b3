#pragma once

// Self-contained acceptance suite. Every check prints one line with the
// measured quantity next to the pinned expectation, so a failure is
// diagnosable from the report alone. Tolerances live here and nowhere else.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/amid.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/lindblad.hpp"
#include "qcorr/mid.hpp"
#include "qcorr/reference.hpp"
#include "qcorr/sweep.hpp"

namespace qcorr {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::vector<double> default_grid() {
  std::vector<double> g(61);
  for (int i = 0; i < 61; ++i) g[static_cast<std::size_t>(i)] = 3.0 * i / 60.0;
  return g;
}

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

constexpr ChannelPoint kAllChannels[8] = {
    {StateKind::Ghz, NoiseKind::PauliX, 0.0},  {StateKind::Ghz, NoiseKind::PauliY, 0.0},
    {StateKind::Ghz, NoiseKind::PauliZ, 0.0},  {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
    {StateKind::W, NoiseKind::PauliX, 0.0},    {StateKind::W, NoiseKind::PauliY, 0.0},
    {StateKind::W, NoiseKind::PauliZ, 0.0},    {StateKind::W, NoiseKind::Isotropic, 0.0}};

inline std::string channel_label(StateKind s, NoiseKind n) {
  return std::string(to_string(s)) + "-" + to_string(n);
}

// A density matrix sampled as a convex mixture of a few random pure states;
// rank varies from 1 to 4 so both degenerate-ish and generic spectra occur.
inline DensityMatrix random_density(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> rank_pick(1, 4);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  const int rank = rank_pick(rng);
  ComplexMatrix acc(dim);
  double total = 0.0;
  std::vector<double> weights(static_cast<std::size_t>(rank));
  for (auto& w : weights) {
    w = unif(rng);
    total += w;
  }
  for (int r = 0; r < rank; ++r) {
    std::vector<cdouble> v(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (auto& x : v) {
      x = cdouble(gauss(rng), gauss(rng));
      norm2 += std::norm(x);
    }
    const double scale = weights[static_cast<std::size_t>(r)] / (total * norm2);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        acc(i, j) += v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]) *
                     scale;
  }
  // scrub the tiny anti-Hermitian dust left by accumulation order
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const cdouble m = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
      acc(i, j) = m;
      acc(j, i) = std::conj(m);
    }
  return DensityMatrix(acc);
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix h(dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = gauss(rng);
    for (int j = i + 1; j < dim; ++j) {
      const cdouble v(gauss(rng), gauss(rng));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

template <typename Fn>
inline CriterionResult timed_criterion(int id, std::string name, double budget_seconds,
                                       Fn&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && r.seconds >= budget_seconds) {
    r.passed = false;
    r.detail += "; over the " + std::to_string(static_cast<int>(budget_seconds)) +
                " s time budget";
  }
  return r;
}

}  // namespace detail

// cli_path, when non-empty, points at the command-line binary; the
// determinism check then invokes it the way a user would instead of calling
// the library entry point directly.
inline AcceptanceReport run_acceptance(std::ostream& log, const std::string& cli_path = "") {
  AcceptanceReport report;
  const auto grid = detail::default_grid();

  auto emit = [&](CriterionResult r) {
    log << "criterion " << r.id << (r.passed ? " [PASS] " : " [FAIL] ") << r.name << ": "
        << r.detail;
    {
      std::ostringstream os;
      os.precision(2);
      os << std::fixed << r.seconds;
      log << " (" << os.str() << " s)" << std::endl;
    }
    report.criteria.push_back(std::move(r));
  };

  emit(detail::timed_criterion(1, "ghz-x disturbance stays at unity", 1.0,
                               [&](CriterionResult& r) {
    double worst = 0.0;
    for (double kt : grid) {
      const auto m = mid(evolve_analytic({StateKind::Ghz, NoiseKind::PauliX, kt}), kt);
      worst = std::max(worst, std::abs(m.mid - 1.0));
    }
    r.passed = worst <= 1e-9;
    r.detail = "max |mid - 1| = " + detail::sci(worst) + " over 61 points, tol 1e-9";
  }));

  emit(detail::timed_criterion(2, "pipeline matches closed-form disturbance", 5.0,
                               [&](CriterionResult& r) {
    const ChannelPoint channels[5] = {{StateKind::Ghz, NoiseKind::PauliY, 0.0},
                                      {StateKind::Ghz, NoiseKind::PauliZ, 0.0},
                                      {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
                                      {StateKind::W, NoiseKind::PauliZ, 0.0},
                                      {StateKind::W, NoiseKind::Isotropic, 0.0}};
    double worst = 0.0;
    std::string worst_at;
    for (const auto& ch : channels) {
      for (double kt : grid) {
        const auto m = mid(evolve_analytic({ch.state, ch.noise, kt}), kt);
        const double ref = reference_mid(ch.state, ch.noise, kt);
        const double err = std::abs(m.mid - ref);
        if (err > worst) {
          worst = err;
          worst_at = detail::channel_label(ch.state, ch.noise) + " kt=" + detail::sci(kt);
        }
      }
    }
    r.passed = worst <= 1e-8;
    r.detail = "max |mid - reference| = " + detail::sci(worst) + " (" + worst_at + "), tol 1e-8";
  }));

  emit(detail::timed_criterion(3, "integrator reproduces every analytic channel", 120.0,
                               [&](CriterionResult& r) {
    double worst = 0.0;
    std::string worst_at;
    for (const auto& ch : detail::kAllChannels) {
      for (double kt : {0.1, 0.5, 1.0}) {
        const auto numeric =
            evolve_lindblad_numeric(ch.state, ch.noise, /*kappa=*/1.0, /*t=*/kt, /*dt=*/1e-4);
        const auto analytic = evolve_analytic({ch.state, ch.noise, kt});
        const double err = max_abs_diff(numeric.matrix(), analytic.matrix());
        if (err > worst) {
          worst = err;
          worst_at = detail::channel_label(ch.state, ch.noise) + " kt=" + detail::sci(kt);
        }
      }
    }
    r.passed = worst <= 1e-6;
    r.detail = "max entrywise gap = " + detail::sci(worst) + " (" + worst_at + "), tol 1e-6";
  }));

  emit(detail::timed_criterion(4, "w state: x and y disturbance curves coincide", 0.0,
                               [&](CriterionResult& r) {
    double worst = 0.0;
    for (double kt : grid) {
      const auto mx = mid(evolve_analytic({StateKind::W, NoiseKind::PauliX, kt}), kt);
      const auto my = mid(evolve_analytic({StateKind::W, NoiseKind::PauliY, kt}), kt);
      worst = std::max(worst, std::abs(mx.mid - my.mid));
    }
    r.passed = worst <= 1e-9;
    r.detail = "max |mid_x - mid_y| = " + detail::sci(worst) + ", tol 1e-9";
  }));

  emit(detail::timed_criterion(5, "both measures start at unity", 0.0,
                               [&](CriterionResult& r) {
    double worst_mid = 0.0, worst_amid = 0.0;
    for (const auto& ch : detail::kAllChannels) {
      const auto rho = evolve_analytic({ch.state, ch.noise, 0.0});
      worst_mid = std::max(worst_mid, std::abs(mid(rho).mid - 1.0));
      worst_amid = std::max(worst_amid, std::abs(amid(rho).amid - 1.0));
    }
    r.passed = worst_mid <= 1e-9 && worst_amid <= 2e-3;
    r.detail = "max |mid - 1| = " + detail::sci(worst_mid) + " (tol 1e-9), max |amid - 1| = " +
               detail::sci(worst_amid) + " (tol 2e-3)";
  }));

  emit(detail::timed_criterion(6, "optimized measure agrees where the curves coincide", 0.0,
                               [&](CriterionResult& r) {
    const ChannelPoint channels[5] = {{StateKind::Ghz, NoiseKind::PauliY, 0.0},
                                      {StateKind::Ghz, NoiseKind::PauliZ, 0.0},
                                      {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
                                      {StateKind::W, NoiseKind::PauliZ, 0.0},
                                      {StateKind::W, NoiseKind::Isotropic, 0.0}};
    double worst = 0.0;
    std::string per_channel;
    for (const auto& ch : channels) {
      SweepConfig cfg;
      cfg.state = ch.state;
      cfg.noise = ch.noise;
      cfg.measure = Measure::Both;
      const auto rows = sweep(cfg);
      double channel_worst = 0.0;
      for (const auto& row : rows)
        channel_worst = std::max(channel_worst, std::abs(*row.amid - row.mid));
      if (!per_channel.empty()) per_channel += ", ";
      per_channel += detail::channel_label(ch.state, ch.noise) + "=" + detail::sci(channel_worst);
      worst = std::max(worst, channel_worst);
    }
    r.passed = worst <= 2e-3;
    r.detail = "max |amid - mid| per channel: " + per_channel + "; tol 2e-3, 24 restarts";
  }));

  emit(detail::timed_criterion(7, "optimized measure never exceeds the unoptimized one", 0.0,
                               [&](CriterionResult& r) {
    const ChannelPoint channels[3] = {{StateKind::Ghz, NoiseKind::PauliX, 0.0},
                                      {StateKind::W, NoiseKind::PauliX, 0.0},
                                      {StateKind::W, NoiseKind::PauliY, 0.0}};
    double worst = -1.0;  // most positive amid - mid
    std::string worst_at;
    for (const auto& ch : channels) {
      SweepConfig cfg;
      cfg.state = ch.state;
      cfg.noise = ch.noise;
      cfg.measure = Measure::Both;
      const auto rows = sweep(cfg);
      for (const auto& row : rows) {
        const double excess = *row.amid - row.mid;
        if (excess > worst) {
          worst = excess;
          worst_at = detail::channel_label(ch.state, ch.noise) + " kt=" + detail::sci(row.kt);
        }
      }
    }
    r.passed = worst <= 1e-6;
    r.detail = "max (amid - mid) = " + detail::sci(worst) + " (" + worst_at + "), tol 1e-6";
  }));

  emit(detail::timed_criterion(8, "w-y optimized value at the end of the range", 0.0,
                               [&](CriterionResult& r) {
    const auto rho = evolve_analytic({StateKind::W, NoiseKind::PauliY, 3.0});
    const double a = amid(rho, AmidConfig{}, 3.0).amid;
    r.passed = std::abs(a - 0.58) <= 0.02;
    r.detail = "amid(w, y, kt=3) = " + detail::sci(a) + ", expected 0.58 +/- 0.02";
  }));

  emit(detail::timed_criterion(9, "ghz-z spot value", 0.0, [&](CriterionResult& r) {
    const double kt = std::log(2.0) / 6.0;
    const double m = mid(evolve_analytic({StateKind::Ghz, NoiseKind::PauliZ, kt}), kt).mid;
    r.passed = std::abs(m - 0.188722) <= 1e-6;
    r.detail = "mid(ghz, z, kt=ln2/6) = " + detail::sci(m) + ", expected 0.188722 +/- 1e-6";
  }));

  emit(detail::timed_criterion(10, "dephased w-x state matches its closed form", 0.0,
                               [&](CriterionResult& r) {
    bool sparsity_ok = true;
    double worst = 0.0;
    for (double kt : {0.1, 0.5}) {
      const auto rho = evolve_analytic({StateKind::W, NoiseKind::PauliX, kt});
      const auto pa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
      const auto pb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
      const auto pi = dephase(rho, pa, pb);
      const auto ref = reference_pi_w_x(kt);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          const bool nz_pi = std::abs(pi.matrix()(i, j)) > 1e-10;
          const bool nz_ref = std::abs(ref.matrix()(i, j)) > 1e-10;
          if (nz_pi != nz_ref) sparsity_ok = false;
          worst = std::max(worst, std::abs(pi.matrix()(i, j) - ref.matrix()(i, j)));
        }
    }
    const bool entries_ok = worst <= 1e-6;
    r.passed = sparsity_ok && entries_ok;
    r.detail = std::string("sparsity pattern ") + (sparsity_ok ? "matches" : "DIFFERS") +
               ", max entrywise gap = " + detail::sci(worst) + " (expected <= 1e-6)";
    if (!entries_ok && sparsity_ok)
      r.detail += "; coefficient-level mismatch, see the known-issues notes";
  }));

  emit(detail::timed_criterion(11, "randomized property suites", 30.0,
                               [&](CriterionResult& r) {
    std::mt19937_64 rng(0x51c0ffee);
    const int cases = 200;
    int failures = 0;
    std::string first_failure;
    auto tally = [&](bool ok, const char* suite, int k) {
      if (!ok) {
        ++failures;
        if (first_failure.empty())
          first_failure = std::string(suite) + " case " + std::to_string(k);
      }
    };

    for (int k = 0; k < cases; ++k) {
      const int dim = (k % 3 == 0) ? 2 : (k % 3 == 1) ? 4 : 8;

      // density-matrix axioms survive construction
      const auto rho = detail::random_density(rng, dim);
      const auto spectrum = hermitian_eig(rho.matrix());
      double min_ev = spectrum.values[0];
      double ev_sum = 0.0;
      for (int i = 0; i < dim; ++i) {
        min_ev = std::min(min_ev, spectrum.values[static_cast<std::size_t>(i)]);
        ev_sum += spectrum.values[static_cast<std::size_t>(i)];
      }
      tally(hermiticity_defect(rho.matrix()) <= 1e-12 && std::abs(ev_sum - 1.0) <= 1e-9 &&
                min_ev >= -1e-10,
            "density-axioms", k);

      // projector sets resolve the identity and are mutually orthogonal
      const Party party = dim == 2 ? Party::b : Party::a;
      if (dim != 8) {
        const auto set = marginal_projectors(rho, party);
        ComplexMatrix sum(dim);
        bool ortho = true;
        for (std::size_t m = 0; m < set.projectors.size(); ++m) {
          sum += set.projectors[m];
          for (std::size_t l = 0; l < set.projectors.size(); ++l) {
            const auto prod = matmul(set.projectors[m], set.projectors[l]);
            const auto expect = m == l ? set.projectors[m] : ComplexMatrix(dim);
            if (max_abs_diff(prod, expect) > 1e-10) ortho = false;
          }
        }
        tally(ortho && max_abs_diff(sum, ComplexMatrix::identity(dim)) <= 1e-10,
              "projector-sets", k);
      } else {
        // dephasing is idempotent and never lowers entropy
        const auto pa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
        const auto pb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
        const auto once = dephase(rho, pa, pb);
        const auto twice = dephase(once, pa, pb);
        tally(max_abs_diff(once.matrix(), twice.matrix()) <= 1e-12, "dephase-idempotent", k);
        tally(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-9,
              "entropy-monotone", k);
      }

      // entropy stays inside [0, log2 dim]
      const double s = von_neumann_entropy(rho);
      tally(s >= -1e-9 && s <= std::log2(static_cast<double>(dim)) + 1e-9, "entropy-bounds", k);

      // eigendecomposition reconstructs its input
      const auto h = detail::random_hermitian(rng, dim);
      const auto hs = hermitian_eig(h);
      tally(max_abs_diff(hs.reconstruct(), h) <= 1e-11 * std::max(1.0, frobenius_norm(h)),
            "eig-reconstruct", k);
    }
    r.passed = failures == 0;
    r.detail = std::to_string(cases) + " cases per suite, " + std::to_string(failures) +
               " failures" + (failures ? " (first: " + first_failure + ")" : "");
  }));

  emit(detail::timed_criterion(12, "figure export is byte-identical on rerun", 0.0,
                               [&](CriterionResult& r) {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "qcorr-acceptance";
    const fs::path run_a = base / "run-a", run_b = base / "run-b";
    fs::remove_all(base);
    std::vector<fs::path> files_a, files_b;
    bool via_cli = false;
    if (!cli_path.empty() && fs::exists(cli_path)) {
      via_cli = true;
      for (const auto* dir : {&run_a, &run_b}) {
        fs::create_directories(*dir);
        const std::string cmd =
            "\"" + cli_path + "\" figure --id 1 --out \"" + dir->string() + "\" > /dev/null";
        if (std::system(cmd.c_str()) != 0)
          throw std::runtime_error("figure subcommand failed: " + cmd);
      }
      for (const auto& entry : fs::directory_iterator(run_a)) files_a.push_back(entry.path());
      std::sort(files_a.begin(), files_a.end());
      for (const auto& f : files_a) files_b.push_back(run_b / f.filename());
    } else {
      files_a = figure(1, run_a);
      files_b = figure(1, run_b);
    }
    bool identical = files_a.size() == 5 && files_b.size() == 5;
    std::string diff_file;
    for (std::size_t i = 0; identical && i < files_a.size(); ++i) {
      std::ifstream fa(files_a[i], std::ios::binary), fb(files_b[i], std::ios::binary);
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      if (!fa || !fb || sa.str() != sb.str()) {
        identical = false;
        diff_file = files_a[i].filename().string();
      }
    }
    fs::remove_all(base);
    r.passed = identical;
    r.detail = std::string(via_cli ? "via the cli binary: " : "via the library call: ") +
               (identical ? "5 series files, reruns byte-identical"
                          : files_a.size() != 5 ? "expected 5 series files"
                                                : "rerun differs in " + diff_file);
  }));

  log << (report.all_passed() ? "acceptance: ALL PASS" : "acceptance: FAILURES PRESENT")
      << std::endl;
  return report;
}

inline nlohmann::ordered_json acceptance_json(const AcceptanceReport& report) {
  nlohmann::ordered_json doc;
  doc["all_passed"] = report.all_passed();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : report.criteria) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"detail", c.detail},
                   {"seconds", c.seconds}});
  }
  doc["criteria"] = std::move(arr);
  return doc;
}

}  // namespace qcorr
