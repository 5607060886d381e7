// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here, next to each check.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rqa/rqa.hpp"
#include "support/oracle.hpp"
#include "support/synthetic.hpp"

namespace {

int failures = 0;

void report(int idx, const std::string& text, bool ok,
            const std::string& note = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
              text.c_str(), note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

bool close(const std::optional<double>& a, const std::optional<double>& b,
           double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

bool matches_oracle(const rqa::MeasureSet& ms, const oracle::Measures& om,
                    std::string& why) {
  struct Row {
    const char* name;
    const std::optional<double>& a;
    const std::optional<double>& b;
    bool exact;
  };
  const Row rows[] = {
      {"rr", ms.rr, om.rr, true},       {"det", ms.det, om.det, true},
      {"l", ms.l_mean, om.l_mean, true}, {"lmax", ms.l_max, om.l_max, true},
      {"div", ms.div, om.div, true},     {"entr", ms.entr, om.entr, false},
      {"trend", ms.trend, om.trend, false}, {"lam", ms.lam, om.lam, true},
      {"tt", ms.tt, om.tt, true},        {"t1", ms.t1, om.t1, true},
      {"t2", ms.t2, om.t2, true},
  };
  for (const Row& r : rows) {
    const bool ok = r.exact ? same(r.a, r.b) : close(r.a, r.b, 1e-12);
    if (!ok) {
      why = std::string("measure ") + r.name + " diverges";
      return false;
    }
  }
  return true;
}

rqa::RecurrencePlot scalar_plot(const std::vector<double>& v, double eps) {
  rqa::EmbeddedSeries e;
  e.m = 1;
  e.tau = 1;
  e.data = v;
  return rqa::build_rp(e, eps, rqa::NormKind::Maximum);
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

// --- criterion bodies ------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20110711);
  std::uniform_int_distribution<std::int64_t> size(5, 50);
  rqa::EmbeddingConfig cfg;
  std::string why;
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    auto [rp, mat] = testsup::random_symmetric_rp(rng, size(rng));
    const rqa::MeasureSet ms = rqa::compute_measures(rp, cfg);
    const oracle::Measures om =
        oracle::measures(mat, cfg.l_min, cfg.v_min, cfg.theiler);
    if (!matches_oracle(ms, om, why)) {
      why = "trial " + std::to_string(trial) + ": " + why;
      ok = false;
    }
  }
  const double elapsed = seconds_since(t0);
  if (ok && elapsed >= 10.0) {
    ok = false;
    why = "took " + std::to_string(elapsed) + " s (budget 10 s)";
  }
  report(1, "1000 random plots match the naive enumerator exactly", ok, why);
}

void criterion_2() {
  rqa::EmbeddingConfig cfg;  // l_min = v_min = 2, theiler = 1
  const rqa::MeasureSet ms =
      rqa::compute_measures(testsup::example_5x5_rp(), cfg);
  std::string why;
  bool ok = true;
  auto expect = [&](const char* name, const std::optional<double>& got,
                    double want) {
    if (ok && got != want) {
      ok = false;
      why = std::string(name) + " != expected";
    }
  };
  expect("rr", ms.rr, 0.68);
  expect("det", ms.det, 1.0 / 3.0);
  expect("l", ms.l_mean, 2.0);
  expect("div", ms.div, 0.5);
  expect("entr", ms.entr, 0.0);
  expect("lam", ms.lam, 16.0 / 17.0);
  expect("tt", ms.tt, 2.0);
  report(2, "hand-checked 5x5 fixture values", ok, why);
}

void criterion_3() {
  rqa::EmbeddingConfig cfg;
  std::string why;
  bool ok = true;

  const std::int64_t n = 250;
  const rqa::MeasureSet sat =
      rqa::compute_measures(scalar_plot(std::vector<double>(n, 1.0), 0.1), cfg);
  if (sat.rr != 1.0 || sat.lam != 1.0 ||
      sat.tt != static_cast<double>(n) || sat.t1 != 1.0) {
    ok = false;
    why = "saturated plot off";
  }
  // The two corner cells are length-1 diagonal lines, so DET of the
  // saturated plot is 1 - 2/(n^2 - n), not exactly 1; asserted to 1e-4.
  if (ok && std::abs(*sat.det - 1.0) > 1e-4) {
    ok = false;
    why = "DET of saturated plot off";
  }

  std::vector<double> apart(40);
  for (std::size_t i = 0; i < apart.size(); ++i)
    apart[i] = 10.0 * static_cast<double>(i);
  const rqa::MeasureSet id = rqa::compute_measures(scalar_plot(apart, 0.1), cfg);
  if (ok && (id.lam != 0.0 || id.div.has_value() || id.tt.has_value() ||
             id.rr != 1.0 / 40.0)) {
    ok = false;
    why = "identity plot off";
  }
  report(3, "analytic saturation and identity extremes", ok, why);
}

void criterion_4() {
  std::string why;
  bool ok = true;
  for (unsigned seed = 0; seed < 20 && ok; ++seed) {
    std::mt19937 rng(1000 + seed);
    const std::vector<double> v = testsup::random_walk(rng, 1200);

    rqa::MonitorConfig mc;
    mc.lpr = 1000;
    mc.ws = 250;
    mc.scope = rqa::NormalizationScope::Global;
    const rqa::MonitorResult run = rqa::monitor_series(v, mc);

    rqa::EmbeddedSeries e;
    e.m = 1;
    e.tau = 1;
    e.data = rqa::normalize(v);
    const rqa::RecurrencePlot rp = rqa::build_rp(e, mc.embedding);
    const rqa::WindowedMeasures wm =
        rqa::windowed_measures(rp, mc.embedding, 250, 1,
                               rqa::MeasureSelection::of({rqa::Measure::Lam}));

    for (const auto& [t, ms] : run.points) {
      const rqa::MeasureSet& row =
          wm.rows[static_cast<std::size_t>(t - 249)];
      if (row.window_end != t || !ms || !(*ms->lam == *row.lam)) {
        ok = false;
        why = "seed " + std::to_string(seed) + ", t = " + std::to_string(t);
        break;
      }
    }
  }
  report(4, "global-scope monitor equals end-aligned windowed LAM bit-exactly",
         ok, why);
}

void criterion_5() {
  std::string why;
  bool ok = true;
  std::mt19937 seeds(5);
  int done = 0;
  for (int series_i = 0; series_i < 5 && ok; ++series_i) {
    std::mt19937 rng(300 + static_cast<unsigned>(series_i));
    const std::vector<double> v = testsup::random_walk(rng, 700);
    rqa::MonitorConfig mc;
    mc.lpr = 250;
    mc.ws = 80;
    const rqa::MonitorResult full = rqa::monitor_series(v, mc);

    std::uniform_int_distribution<std::size_t> cut(250, 699);
    for (int k = 0; k < 10 && ok; ++k, ++done) {
      const std::size_t t = cut(seeds);
      const std::vector<double> prefix(
          v.begin(), v.begin() + static_cast<std::ptrdiff_t>(t) + 1);
      const rqa::MonitorResult part = rqa::monitor_series(prefix, mc);
      for (std::size_t i = 0; i < part.points.size(); ++i) {
        const auto& [ta, a] = part.points[i];
        const auto& [tb, b] = full.points[i];
        if (ta != tb || a.has_value() != b.has_value() ||
            (a && !(*a->lam == *b->lam))) {
          ok = false;
          why = "truncation at " + std::to_string(t);
          break;
        }
      }
    }
  }
  if (ok && done != 50) {
    ok = false;
    why = "ran " + std::to_string(done) + " truncations";
  }
  report(5, "monitor output is causal under 50 random truncations", ok, why);
}

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  rqa::EmbeddingConfig cfg;  // m=1, tau=1, eps=0.1, maximum norm
  int hits = 0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    const std::vector<double> raw = testsup::two_regime_series(seed);
    const rqa::RecurrencePlot rp = scalar_plot(rqa::normalize(raw), cfg.epsilon);
    const rqa::WindowedMeasures wm = rqa::windowed_measures(
        rp, cfg, 250, 1, rqa::MeasureSelection::of({rqa::Measure::Lam}));

    std::vector<double> regime1, regime2;
    for (const rqa::MeasureSet& row : wm.rows) {
      if (!row.lam) continue;
      if (row.window_end <= 2499) regime1.push_back(*row.lam);
      if (row.window_end - 249 >= 2500) regime2.push_back(*row.lam);
    }
    if (!regime1.empty() && !regime2.empty() &&
        median(regime1) > median(regime2))
      ++hits;
  }
  const double elapsed = seconds_since(t0);
  bool ok = hits >= 95;
  std::string note = std::to_string(hits) + "/100 seeds, " +
                     std::to_string(elapsed).substr(0, 5) + " s";
  if (ok && elapsed >= 60.0) {
    ok = false;
    note += " (budget 60 s)";
  }
  report(6, "two-regime median LAM ordering holds in >= 95/100 runs", ok, note);
}

void criterion_7() {
  std::string why;
  bool ok = true;

  // AMI minimum of the period-67 sine, against brute force. The binned
  // curve is jagged for deterministic signals, so the delay pick reads the
  // scanned-range minimum (the literal first strict dip fires on estimator
  // noise at lag 1, on the brute-force route as well).
  const std::vector<double> sine = testsup::sine_series(1000, 67.0);
  const std::vector<double> ami = rqa::average_mutual_information(sine, 40, 16);
  const std::vector<double> ami_ref = oracle::naive_ami(sine, 40, 16);
  for (std::size_t i = 0; i < ami.size() && ok; ++i)
    if (std::abs(ami[i] - ami_ref[i]) > 1e-12) {
      ok = false;
      why = "AMI diverges from brute force at lag " + std::to_string(i);
    }
  const auto dip = rqa::ami_minimum_lag(ami);
  if (ok && (!dip || *dip < 15 || *dip > 19)) {
    ok = false;
    why = "sine AMI minimum outside [15, 19]";
  }
  if (ok) {
    std::size_t ref_dip = 1;
    for (std::size_t i = 1; i < ami_ref.size(); ++i)
      if (ami_ref[i] < ami_ref[ref_dip]) ref_dip = i;
    if (*dip != ref_dip) {
      ok = false;
      why = "AMI minimum disagrees with brute force";
    }
  }

  // FNN on the Lorenz x-series reaches < 0.05 at m = 3.
  if (ok) {
    const std::vector<double> x = testsup::lorenz_x(5000);
    const std::vector<double> x_ami =
        rqa::average_mutual_information(x, 40, 16);
    const auto x_dip = rqa::ami_minimum_lag(x_ami);
    const int tau = x_dip ? static_cast<int>(*x_dip) : 17;
    const std::vector<double> fnn =
        rqa::false_nearest_neighbors(x, tau, 4);
    const std::vector<double> fnn_ref = oracle::naive_fnn(x, tau, 4, 15.0, 2.0);
    for (std::size_t i = 0; i < fnn.size() && ok; ++i)
      if (std::abs(fnn[i] - fnn_ref[i]) > 1e-9) {
        ok = false;
        why = "FNN diverges from brute force at m " + std::to_string(i + 1);
      }
    if (ok && !(fnn[2] < 0.05)) {
      ok = false;
      why = "Lorenz FNN at m=3 is " + std::to_string(fnn[2]);
    }
  }
  report(7, "AMI and FNN agree with brute force and land where expected", ok,
         why);
}

void criterion_8() {
  rqa::MeasureSeries lam;
  lam.name = "lam";
  const std::vector<double> values = testsup::piecewise_lam();
  for (std::size_t i = 0; i < values.size(); ++i)
    lam.points.push_back({static_cast<std::int64_t>(i), values[i]});

  rqa::SegmentParams params;  // w=11, f=0.02, delta=0.02
  params.crisis_drop = 0.10;
  const rqa::SegmentReport report_out = rqa::segment_lam(
      lam, params, [](std::int64_t i) {
        rqa::Date d{2000, 1, 1};
        d.year += static_cast<int>(i / 365);
        return d;
      });

  std::string why;
  bool ok = report_out.crisis_detected();
  if (!ok) why = "no crisis detected";
  std::int64_t onset = -1;
  for (const rqa::Period& p : report_out.periods)
    if (p.kind == rqa::PeriodKind::Crisis) onset = p.start_index;
  if (ok && std::abs(onset - 500) > 11) {
    ok = false;
    why = "crisis onset at " + std::to_string(onset);
  }
  if (ok && !(std::abs(*report_out.lam_drop_pct - 0.21) <= 0.01)) {
    ok = false;
    why = "drop pct " + std::to_string(*report_out.lam_drop_pct);
  }
  report(8, "piecewise LAM fixture segments at the built-in change points", ok,
         why);
}

void criterion_9() {
  namespace fs = std::filesystem;
  const fs::path repro = RQA_REPRO_DIR;
  std::string why;
  bool ok = true;
  for (const char* name : {"README.md", "paper_values.csv", "run.sh"})
    if (!fs::exists(repro / name)) {
      ok = false;
      why = std::string("missing repro/") + name;
    }
  if (ok) {
    std::ifstream in(repro / "paper_values.csv");
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    if (rows != 22) {  // 12 indexes + 6 currency pairs + 4 commodities
      ok = false;
      why = "paper_values.csv has " + std::to_string(rows) + " rows";
    }
  }
  report(9,
         "Tables 1-6 need user-supplied data; documented repro recipe ships "
         "instead",
         ok, why);
}

void criterion_10() {
  namespace fs = std::filesystem;
  std::string why;
  bool ok = true;

  const fs::path dir =
      fs::temp_directory_path() /
      ("rqa_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");

  // Deterministic input fixture.
  {
    std::mt19937 rng(10);
    const std::vector<double> v = testsup::random_walk(rng, 400);
    const rqa::TimeSeries ts =
        rqa::TimeSeries::from_values(v, rqa::Date{2006, 1, 2});
    std::ofstream out(dir / "prices.csv", std::ios::binary);
    out << "date,close\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
      out << ts.dates[i].to_string() << ','
          << rqa::detail::format_double(ts.values[i]) << '\n';
  }

  auto run = [&](const std::string& args) {
    const std::string cmd = std::string("RQA_LOG=0 ") + RQA_CLI_PATH + " " +
                            args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };

  const std::string input = (dir / "prices.csv").string();
  for (const char* sub : {"a", "b"}) {
    const std::string out = (dir / sub).string();
    if (!run("analyze " + input + " --ws 100 --outdir " + out) ||
        !run("monitor " + input + " --lpr 300 --ws 100 --outdir " + out) ||
        !run("segment " + out + "/monitor.csv --outdir " + out) ||
        !run("render " + input + " --rp " + out + "/rp.pgm --chart " + out +
             "/chart.svg --measures-csv " + out + "/monitor.csv")) {
      ok = false;
      why = "a pipeline command failed";
      break;
    }
  }
  if (ok)
    for (const char* name :
         {"measures.csv", "monitor.csv", "segments.json", "rp.pgm",
          "chart.svg"})
      if (slurp(dir / "a" / name) != slurp(dir / "b" / name)) {
        ok = false;
        why = std::string(name) + " differs between runs";
        break;
      }
  fs::remove_all(dir);
  report(10, "repeated CLI invocations produce byte-identical artifacts", ok,
         why);
}

}  // namespace

int main() {
  std::printf("RQA acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
