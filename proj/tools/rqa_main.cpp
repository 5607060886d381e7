// Command-line surface of the RQA pipeline: embedding diagnostics, windowed
// analysis, the rolling monitor, LAM segmentation, and plot/chart rendering.
//
// Exit codes: 0 success, 1 usage error, 2 data/processing error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rqa/rqa.hpp"
#include "rqa/run_config.hpp"

namespace {

struct Flags {
  std::string input;
  std::string config_path;
  std::string column = "close";
  int m = 1;
  int tau = 1;
  double eps = 0.1;
  std::string norm = "maximum";
  int lmin = 2;
  int vmin = 2;
  int theiler = 1;
  int ws = 250;
  int step = 1;
  long long lpr = 1500;
  int smooth = 11;
  double band_frac = 0.02;
  double delta = 0.02;
  double drop = 0.05;
  std::string outdir = ".";
  std::vector<std::string> measures;
  std::string scope = "window";

  // embed-only knobs
  int max_lag = 50;
  int bins = 16;
  int max_m = 10;
  double rtol = 15.0;
  double atol = 2.0;
  double fnn_drop = 0.05;
  std::optional<int> fnn_tau;

  // render-only knobs
  std::string rp_path;
  std::string chart_path;
  std::string measures_csv;
  std::string measure = "lam";
};

void add_config_flag(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file; explicit flags win over it");
}

void add_io_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--column", f.column, "value column name (default close)");
  cmd->add_option("--outdir", f.outdir, "output directory (default .)");
}

void add_embedding_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--m", f.m, "embedding dimension");
  cmd->add_option("--tau", f.tau, "embedding delay");
  cmd->add_option("--eps", f.eps, "recurrence threshold in sd units");
  cmd->add_option("--norm", f.norm, "state norm: maximum|euclidean");
  cmd->add_option("--lmin", f.lmin, "minimal diagonal line length");
  cmd->add_option("--vmin", f.vmin, "minimal vertical line length");
  cmd->add_option("--theiler", f.theiler,
                  "exclude diagonal offsets |i-j| < theiler");
}

void add_segment_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--smooth", f.smooth, "moving-average width (odd)");
  cmd->add_option("--band-frac", f.band_frac,
                  "normal band depth below the smoothed maximum");
  cmd->add_option("--delta", f.delta, "sustained drop marking instability");
  cmd->add_option("--drop", f.drop, "decline-run drop marking a crisis");
}

bool given(const CLI::App* cmd, const std::string& flag) {
  const CLI::Option* opt = cmd->get_option_no_throw(flag);
  return opt != nullptr && opt->count() > 0;
}

// Precedence: built-in defaults < JSON config < explicit flags.
rqa::RunConfig resolve(const CLI::App* cmd, const Flags& f) {
  rqa::RunConfig cfg;
  cfg.input = f.input;

  if (given(cmd, "--config")) {
    std::ifstream in(f.config_path);
    if (!in) throw rqa::IoError("cannot open config " + f.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw rqa::Error("config " + f.config_path + ": " + e.what());
    }
    cfg.apply_json(j);
  }

  if (given(cmd, "--column")) cfg.column = f.column;
  if (given(cmd, "--m")) cfg.embedding.m = f.m;
  if (given(cmd, "--tau")) cfg.embedding.tau = f.tau;
  if (given(cmd, "--eps")) cfg.embedding.epsilon = f.eps;
  if (given(cmd, "--norm")) {
    const auto norm = rqa::parse_norm(f.norm);
    if (!norm) throw rqa::Error("unknown norm '" + f.norm + "'");
    cfg.embedding.norm = *norm;
  }
  if (given(cmd, "--lmin")) cfg.embedding.l_min = f.lmin;
  if (given(cmd, "--vmin")) cfg.embedding.v_min = f.vmin;
  if (given(cmd, "--theiler")) cfg.embedding.theiler = f.theiler;
  if (given(cmd, "--ws")) cfg.ws = f.ws;
  if (given(cmd, "--step")) cfg.step = f.step;
  if (given(cmd, "--lpr")) cfg.lpr = f.lpr;
  if (given(cmd, "--smooth")) cfg.segmentation.smooth_width = f.smooth;
  if (given(cmd, "--band-frac")) cfg.segmentation.band_fraction = f.band_frac;
  if (given(cmd, "--delta")) cfg.segmentation.instability_drop = f.delta;
  if (given(cmd, "--drop")) cfg.segmentation.crisis_drop = f.drop;
  if (given(cmd, "--outdir")) cfg.outdir = f.outdir;
  if (given(cmd, "--measures")) cfg.measures = f.measures;
  if (given(cmd, "--scope")) {
    const auto scope = rqa::parse_scope(f.scope);
    if (!scope) throw rqa::Error("unknown scope '" + f.scope + "'");
    cfg.scope = *scope;
  }

  cfg.embedding.check();
  return cfg;
}

std::string out_path(const rqa::RunConfig& cfg, const std::string& name) {
  if (cfg.outdir.empty() || cfg.outdir == ".") return name;
  return cfg.outdir + "/" + name;
}

rqa::RecurrencePlot plot_from_series(const rqa::TimeSeries& ts,
                                     const rqa::EmbeddingConfig& embedding) {
  const std::vector<double> norm = rqa::normalize(ts.values);
  const rqa::EmbeddedSeries emb =
      rqa::delay_embed(norm, embedding.m, embedding.tau);
  return rqa::build_rp(emb, embedding);
}

int run_embed(const CLI::App* cmd, const Flags& f) {
  const rqa::RunConfig cfg = resolve(cmd, f);
  const rqa::TimeSeries ts = rqa::load_csv(cfg.input, cfg.column);

  const std::vector<double> ami =
      rqa::average_mutual_information(ts.values, f.max_lag, f.bins);
  std::vector<std::pair<std::int64_t, double>> ami_pts;
  for (std::size_t lag = 0; lag < ami.size(); ++lag)
    ami_pts.emplace_back(static_cast<std::int64_t>(lag), ami[lag]);
  rqa::write_curve_csv(out_path(cfg, "ami.csv"), "lag", "ami", ami_pts);

  const std::optional<std::size_t> dip = rqa::ami_minimum_lag(ami);
  if (dip) std::printf("suggested tau: %zu\n", *dip);
  else std::printf("suggested tau: none\n");

  const int tau = f.fnn_tau ? *f.fnn_tau
                            : (dip ? static_cast<int>(*dip) : 1);
  rqa::log_info("FNN with tau = " + std::to_string(tau));
  const std::vector<double> fnn =
      rqa::false_nearest_neighbors(ts.values, tau, f.max_m, f.rtol, f.atol);
  std::vector<std::pair<std::int64_t, double>> fnn_pts;
  for (std::size_t i = 0; i < fnn.size(); ++i)
    fnn_pts.emplace_back(static_cast<std::int64_t>(i + 1), fnn[i]);
  rqa::write_curve_csv(out_path(cfg, "fnn.csv"), "m", "fnn", fnn_pts);

  std::optional<std::size_t> m_pick;
  for (std::size_t i = 0; i < fnn.size(); ++i)
    if (fnn[i] < f.fnn_drop) {
      m_pick = i + 1;
      break;
    }
  if (m_pick) std::printf("suggested m: %zu\n", *m_pick);
  else std::printf("suggested m: none\n");
  return 0;
}

int run_analyze(const CLI::App* cmd, const Flags& f) {
  const rqa::RunConfig cfg = resolve(cmd, f);
  const rqa::TimeSeries ts = rqa::load_csv(cfg.input, cfg.column);
  const rqa::RecurrencePlot rp = plot_from_series(ts, cfg.embedding);

  const rqa::MeasureSelection sel = cfg.selection({});  // default: all
  const rqa::WindowedMeasures wm =
      rqa::windowed_measures(rp, cfg.embedding, cfg.ws, cfg.step, sel);

  std::vector<rqa::MeasureSeries> series;
  for (rqa::Measure m : sel.ordered()) series.push_back(wm.series(m));
  rqa::write_measures_csv(out_path(cfg, "measures.csv"), ts.dates, series);
  rqa::log_info("analyze: " + std::to_string(wm.rows.size()) + " windows");
  return 0;
}

int run_monitor(const CLI::App* cmd, const Flags& f) {
  const rqa::RunConfig cfg = resolve(cmd, f);
  const rqa::TimeSeries ts = rqa::load_csv(cfg.input, cfg.column);

  rqa::MonitorConfig mc;
  mc.lpr = cfg.lpr;
  mc.ws = cfg.ws;
  mc.embedding = cfg.embedding;
  mc.measures = cfg.selection({rqa::Measure::Lam});
  mc.scope = cfg.scope;

  const rqa::MonitorResult result = rqa::monitor_series(ts, mc);
  std::vector<rqa::MeasureSeries> series;
  for (rqa::Measure m : mc.measures.ordered())
    series.push_back(result.series(m));
  rqa::write_measures_csv(out_path(cfg, "monitor.csv"), ts.dates, series);
  rqa::log_info("monitor: " + std::to_string(result.points.size()) +
                " points");
  return 0;
}

int run_segment(const CLI::App* cmd, const Flags& f) {
  const rqa::RunConfig cfg = resolve(cmd, f);
  const rqa::MeasuresCsv csv = rqa::read_measures_csv(cfg.input);
  const rqa::MeasureSeries lam = csv.series(f.measure);

  const rqa::SegmentReport report = rqa::segment_lam(
      lam, cfg.segmentation,
      [&](std::int64_t index) { return csv.date_of(index); });
  rqa::write_segment_report_json(report, out_path(cfg, "segments.json"));
  rqa::log_info("segment: " + std::to_string(report.periods.size()) +
                " periods" + (report.crisis_detected() ? "" : ", no crisis"));
  return 0;
}

int run_render(const CLI::App* cmd, const Flags& f) {
  const rqa::RunConfig cfg = resolve(cmd, f);
  if (f.rp_path.empty() && f.chart_path.empty()) {
    std::fprintf(stderr, "rqa: render needs --rp and/or --chart\n");
    return 1;
  }
  if (!f.chart_path.empty() && f.measures_csv.empty()) {
    std::fprintf(stderr, "rqa: --chart needs --measures-csv\n");
    return 1;
  }

  const rqa::TimeSeries ts = rqa::load_csv(cfg.input, cfg.column);

  if (!f.rp_path.empty()) {
    const rqa::RecurrencePlot rp = plot_from_series(ts, cfg.embedding);
    rqa::export_rp_raster(rp, f.rp_path);
    rqa::log_info("render: wrote " + f.rp_path);
  }

  if (!f.chart_path.empty()) {
    const rqa::MeasuresCsv csv = rqa::read_measures_csv(f.measures_csv);
    rqa::ChartSeries price;
    price.name = cfg.column;
    for (std::size_t i = 0; i < ts.size(); ++i)
      price.points.emplace_back(ts.dates[i], ts.values[i]);

    std::vector<std::string> names = f.measures.empty()
                                         ? std::vector<std::string>{f.measure}
                                         : f.measures;
    std::vector<rqa::ChartSeries> curves;
    for (const std::string& name : names) {
      const auto it = csv.columns.find(name);
      if (it == csv.columns.end()) throw rqa::MissingColumn(name);
      rqa::ChartSeries c;
      c.name = name;
      for (std::size_t i = 0; i < csv.dates.size(); ++i)
        c.points.emplace_back(csv.dates[i], it->second[i]);
      curves.push_back(std::move(c));
    }
    rqa::export_chart(price, curves, f.chart_path);
    rqa::log_info("render: wrote " + f.chart_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrence quantification analysis for daily market series"};
  app.require_subcommand(1);

  Flags embed_f, analyze_f, monitor_f, segment_f, render_f;

  CLI::App* embed = app.add_subcommand(
      "embed", "AMI and FNN curves with suggested tau and m");
  embed->add_option("input", embed_f.input, "input CSV")->required();
  add_config_flag(embed, embed_f);
  add_io_flags(embed, embed_f);
  embed->add_option("--max-lag", embed_f.max_lag, "largest AMI lag");
  embed->add_option("--bins", embed_f.bins, "AMI histogram bins per axis");
  embed->add_option("--max-m", embed_f.max_m, "largest FNN dimension");
  embed->add_option("--rtol", embed_f.rtol, "FNN distance-ratio threshold");
  embed->add_option("--atol", embed_f.atol, "FNN absolute-jump threshold (sd)");
  embed->add_option("--fnn-drop", embed_f.fnn_drop,
                    "FNN fraction counted as settled");
  embed->add_option("--tau", embed_f.fnn_tau,
                    "delay for FNN (default: AMI first minimum)");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "windowed measures over the whole series");
  analyze->add_option("input", analyze_f.input, "input CSV")->required();
  add_config_flag(analyze, analyze_f);
  add_io_flags(analyze, analyze_f);
  add_embedding_flags(analyze, analyze_f);
  analyze->add_option("--ws", analyze_f.ws, "window size");
  analyze->add_option("--step", analyze_f.step, "window step");
  analyze->add_option("--measures", analyze_f.measures, "measure subset")
      ->delimiter(',');

  CLI::App* monitor = app.add_subcommand(
      "monitor", "rolling real-time laminarity simulation");
  monitor->add_option("input", monitor_f.input, "input CSV")->required();
  add_config_flag(monitor, monitor_f);
  add_io_flags(monitor, monitor_f);
  add_embedding_flags(monitor, monitor_f);
  monitor->add_option("--ws", monitor_f.ws, "window size");
  monitor->add_option("--lpr", monitor_f.lpr, "trailing subseries length");
  monitor->add_option("--measures", monitor_f.measures,
                      "measure subset (default lam)")
      ->delimiter(',');
  monitor->add_option("--scope", monitor_f.scope,
                      "normalization scope: window|global|none");

  CLI::App* segment = app.add_subcommand(
      "segment", "dated regime periods from a measures CSV");
  segment->add_option("input", segment_f.input, "measures CSV")->required();
  add_config_flag(segment, segment_f);
  add_io_flags(segment, segment_f);
  add_segment_flags(segment, segment_f);
  segment->add_option("--measure", segment_f.measure,
                      "column to segment (default lam)");

  CLI::App* render = app.add_subcommand(
      "render", "recurrence plot raster and price/measure chart");
  render->add_option("input", render_f.input, "input CSV")->required();
  add_config_flag(render, render_f);
  add_io_flags(render, render_f);
  add_embedding_flags(render, render_f);
  render->add_option("--rp", render_f.rp_path, "write P5 raster here");
  render->add_option("--chart", render_f.chart_path, "write SVG chart here");
  render->add_option("--measures-csv", render_f.measures_csv,
                     "measures CSV for the chart panel");
  render->add_option("--measures", render_f.measures, "chart measure columns")
      ->delimiter(',');
  render->add_option("--measure", render_f.measure,
                     "single chart measure (default lam)");

  try {
    app.parse(argc, argv);
    if (embed->parsed()) return run_embed(embed, embed_f);
    if (analyze->parsed()) return run_analyze(analyze, analyze_f);
    if (monitor->parsed()) return run_monitor(monitor, monitor_f);
    if (segment->parsed()) return run_segment(segment, segment_f);
    if (render->parsed()) return run_render(render, render_f);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const rqa::Error& e) {
    std::fprintf(stderr, "rqa: error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rqa: unexpected error: %s\n", e.what());
    return 2;
  }
}
