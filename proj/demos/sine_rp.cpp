// Minimal walkthrough: build the recurrence plot of a sine wave, print the
// measure suite, and drop the raster next to the binary.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "rqa/rqa.hpp"

int main() {
  std::vector<double> signal(1000);
  for (int t = 1; t <= 1000; ++t)
    signal[static_cast<std::size_t>(t - 1)] =
        std::sin(2.0 * std::numbers::pi * t / 67.0);

  rqa::EmbeddingConfig cfg;  // m=1, tau=1, eps=0.1, maximum norm
  const rqa::EmbeddedSeries emb =
      rqa::delay_embed(rqa::normalize(signal), cfg.m, cfg.tau);
  const rqa::RecurrencePlot rp = rqa::build_rp(emb, cfg);
  const rqa::MeasureSet ms = rqa::compute_measures(rp, cfg);

  auto show = [](const char* name, const std::optional<double>& v) {
    if (v) std::printf("%-6s %.6f\n", name, *v);
    else std::printf("%-6s undefined\n", name);
  };
  std::printf("sine recurrence plot, n = %lld\n",
              static_cast<long long>(rp.n()));
  show("rr", ms.rr);
  show("det", ms.det);
  show("lam", ms.lam);
  show("tt", ms.tt);
  show("entr", ms.entr);

  rqa::export_rp_raster(rp, "sine_rp.pgm");
  std::printf("wrote sine_rp.pgm\n");
  return 0;
}
