#pragma once

// Pass pipelines and their plain-text config format.
//
//   # comment
//   lower_mcx auto_extend=true
//   cancel_adjacent window=0
//   lower_toffoli
//
// One stage per line, options as key=value tokens after the stage name.

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qshift/circuit.hpp"
#include "qshift/passes.hpp"

namespace qshift {

struct PipelineStage {
  std::string name;
  std::map<std::string, std::string> options;

  friend bool operator==(const PipelineStage&, const PipelineStage&) = default;
};

struct PassPipeline {
  std::vector<PipelineStage> stages;

  friend bool operator==(const PassPipeline&, const PassPipeline&) = default;
};

inline const std::vector<std::string>& known_stages() {
  static const std::vector<std::string> names{
      "lower_mcx", "cancel_adjacent", "lower_toffoli", "lower_negative_controls",
      "lower_cphase"};
  return names;
}

/// lower_mcx, cancel_adjacent, lower_toffoli, lower_negative_controls,
/// lower_cphase, cancel_adjacent. Ends in {CX, X, H, RZ, P} only.
inline PassPipeline reference_pipeline() {
  return PassPipeline{{{"lower_mcx", {}},
                       {"cancel_adjacent", {}},
                       {"lower_toffoli", {}},
                       {"lower_negative_controls", {}},
                       {"lower_cphase", {}},
                       {"cancel_adjacent", {}}}};
}

namespace detail {

inline bool parse_bool(const std::string& stage, const std::string& key,
                       const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw PassError(stage + ": option " + key + " expects true/false, got '" + value + "'");
}

inline std::size_t parse_size(const std::string& stage, const std::string& key,
                              const std::string& value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw PassError(stage + ": option " + key + " expects an integer, got '" + value + "'");
  return out;
}

inline void reject_unknown_options(const PipelineStage& stage,
                                   const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : stage.options) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == k;
    if (!ok) throw PassError(stage.name + ": unknown option '" + k + "'");
  }
}

}  // namespace detail

inline void validate(const PassPipeline& pipeline) {
  for (const auto& s : pipeline.stages) {
    bool known = false;
    for (const auto& n : known_stages()) known = known || n == s.name;
    if (!known) throw PassError("unknown pipeline stage '" + s.name + "'");
    if (s.name == "lower_mcx") {
      detail::reject_unknown_options(s, {"auto_extend"});
      if (auto it = s.options.find("auto_extend"); it != s.options.end())
        detail::parse_bool(s.name, it->first, it->second);
    } else if (s.name == "cancel_adjacent") {
      detail::reject_unknown_options(s, {"window"});
      if (auto it = s.options.find("window"); it != s.options.end())
        detail::parse_size(s.name, it->first, it->second);
    } else {
      detail::reject_unknown_options(s, {});
    }
  }
}

inline PassPipeline parse_pipeline(std::string_view text) {
  PassPipeline p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    if (!(words >> word)) continue;
    PipelineStage stage{word, {}};
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0)
        throw PassError("pipeline line " + std::to_string(lineno) +
                        ": expected key=value, got '" + word + "'");
      stage.options[word.substr(0, eq)] = word.substr(eq + 1);
    }
    p.stages.push_back(std::move(stage));
  }
  validate(p);
  return p;
}

inline PassPipeline load_pipeline(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PassError("cannot open pipeline config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pipeline(ss.str());
}

inline std::string format_pipeline(const PassPipeline& pipeline) {
  std::string out;
  for (const auto& s : pipeline.stages) {
    out += s.name;
    for (const auto& [k, v] : s.options) out += " " + k + "=" + v;
    out += "\n";
  }
  return out;
}

struct StageLog {
  std::string stage;
  GateCensus census;
};

struct PipelineResult {
  Circuit circuit;
  std::vector<StageLog> log;
};

inline Circuit run_stage(const Circuit& circuit, const PipelineStage& stage) {
  if (stage.name == "lower_mcx") {
    LowerMcxOptions o;
    if (auto it = stage.options.find("auto_extend"); it != stage.options.end())
      o.auto_extend = detail::parse_bool(stage.name, it->first, it->second);
    return lower_mcx(circuit, o);
  }
  if (stage.name == "cancel_adjacent") {
    CancelOptions o;
    if (auto it = stage.options.find("window"); it != stage.options.end())
      o.window = detail::parse_size(stage.name, it->first, it->second);
    return cancel_adjacent(circuit, o);
  }
  if (stage.name == "lower_toffoli") return lower_toffoli(circuit);
  if (stage.name == "lower_negative_controls") return lower_negative_controls(circuit);
  if (stage.name == "lower_cphase") return lower_cphase(circuit);
  throw PassError("unknown pipeline stage '" + stage.name + "'");
}

/// Applies the stages in order, logging the census after each.
inline PipelineResult run_pipeline(const Circuit& circuit, const PassPipeline& pipeline) {
  validate(pipeline);
  PipelineResult r{circuit, {}};
  for (const auto& s : pipeline.stages) {
    r.circuit = run_stage(r.circuit, s);
    r.log.push_back({s.name, census(r.circuit)});
  }
  return r;
}

}  // namespace qshift
