#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rqa/embedding.hpp"
#include "rqa/measures.hpp"
#include "rqa/monitor.hpp"
#include "rqa/segmentation.hpp"

namespace rqa {

inline std::optional<NormalizationScope> parse_scope(const std::string& name) {
  if (name == "window") return NormalizationScope::PerWindow;
  if (name == "global") return NormalizationScope::Global;
  if (name == "none") return NormalizationScope::None;
  return {};
}

// Everything a pipeline run can be told. Precedence is built-in defaults,
// then a JSON config file, then explicit command-line flags; the two upper
// layers only touch the fields they mention.
struct RunConfig {
  std::string input;
  std::string column = "close";
  EmbeddingConfig embedding;
  int ws = 250;
  std::int64_t lpr = 1500;
  int step = 1;
  SegmentParams segmentation;
  std::string outdir = ".";
  std::vector<std::string> measures;  // empty = command default
  NormalizationScope scope = NormalizationScope::PerWindow;

  // The config-file layer. Unknown keys are an error so typos do not pass
  // silently.
  void apply_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "column") column = value.get<std::string>();
      else if (key == "m") embedding.m = value.get<int>();
      else if (key == "tau") embedding.tau = value.get<int>();
      else if (key == "eps") embedding.epsilon = value.get<double>();
      else if (key == "norm") {
        const auto norm = parse_norm(value.get<std::string>());
        if (!norm) throw Error("config: unknown norm '" +
                               value.get<std::string>() + "'");
        embedding.norm = *norm;
      } else if (key == "lmin") embedding.l_min = value.get<int>();
      else if (key == "vmin") embedding.v_min = value.get<int>();
      else if (key == "theiler") embedding.theiler = value.get<int>();
      else if (key == "ws") ws = value.get<int>();
      else if (key == "lpr") lpr = value.get<std::int64_t>();
      else if (key == "step") step = value.get<int>();
      else if (key == "smooth") segmentation.smooth_width = value.get<int>();
      else if (key == "band_frac")
        segmentation.band_fraction = value.get<double>();
      else if (key == "delta")
        segmentation.instability_drop = value.get<double>();
      else if (key == "drop") segmentation.crisis_drop = value.get<double>();
      else if (key == "outdir") outdir = value.get<std::string>();
      else if (key == "measures")
        measures = value.get<std::vector<std::string>>();
      else if (key == "scope") {
        const auto s = parse_scope(value.get<std::string>());
        if (!s) throw Error("config: unknown scope '" +
                            value.get<std::string>() + "'");
        scope = *s;
      } else throw Error("config: unknown key '" + key + "'");
    }
  }

  MeasureSelection selection(std::initializer_list<Measure> fallback) const {
    if (measures.empty()) {
      MeasureSelection s = MeasureSelection::none();
      bool any = false;
      for (Measure m : fallback) {
        s.add(m);
        any = true;
      }
      return any ? s : MeasureSelection::all();
    }
    MeasureSelection s = MeasureSelection::none();
    for (const std::string& name : measures) {
      const auto m = parse_measure(name);
      if (!m) throw Error("unknown measure '" + name + "'");
      s.add(*m);
    }
    return s;
  }
};

}  // namespace rqa
