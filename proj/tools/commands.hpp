#pragma once

// Subcommand bodies for the qshift CLI. Each returns a process exit code and
// writes only to the streams it is given, so output is reproducible.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qshift/qshift.hpp"

namespace qshift::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kInputError = 3,
  kVerifyFailed = 4,
};

/// Where a command's circuit comes from: a file, or a builder.
struct CircuitSource {
  std::string in;
  std::string variant;
  std::optional<std::uint32_t> m;
};

struct Output {
  std::string path;  // empty: stdout
  std::string format = "text";
};

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& message) : std::invalid_argument(message) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw QasmError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_output(const Output& out, const std::string& text, std::ostream& stdout_) {
  if (out.path.empty()) {
    stdout_ << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw QasmError("cannot write '" + out.path + "'");
  f << text;
}

inline Circuit load_circuit(const CircuitSource& src) {
  const bool from_file = !src.in.empty();
  const bool from_builder = !src.variant.empty() || src.m.has_value();
  if (from_file == from_builder) throw UsageError("give either --in or --variant with --m");
  if (from_file) return import_text(read_file(src.in));
  if (src.variant.empty() || !src.m) throw UsageError("--variant and --m are both required");
  return build_shift(parse_variant(src.variant), *src.m);
}

inline QasmVersion parse_qasm_version(int v) {
  if (v == 2) return QasmVersion::v2;
  if (v == 3) return QasmVersion::v3;
  throw UsageError("--qasm-version must be 2 or 3");
}

inline TableFormat parse_format(const std::string& f) {
  if (f == "text") return TableFormat::text;
  if (f == "csv") return TableFormat::csv;
  throw UsageError("--format must be text or csv");
}

inline PassPipeline pipeline_or_reference(const std::string& path) {
  return path.empty() ? reference_pipeline() : load_pipeline(path);
}

inline std::string census_text(const GateCensus& c, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "gate,count\n";
    for (const auto& [k, v] : c.counts) out << census_name(k) << ',' << v << '\n';
    out << "cx_total," << c.cx_total() << "\ntwo_qubit_total," << c.two_qubit_total() << '\n';
    return out.str();
  }
  char buf[96];
  for (const auto& [k, v] : c.counts) {
    std::snprintf(buf, sizeof buf, "  %-16s %8zu\n", census_name(k).c_str(), v);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "  %-16s %8zu\n  %-16s %8zu\n", "cx_total", c.cx_total(),
                "two_qubit_total", c.two_qubit_total());
  out << buf;
  return out.str();
}

// --- subcommands -----------------------------------------------------------

struct BuildArgs {
  std::string variant;
  std::uint32_t m = 0;
  int qasm_version = 3;
  bool expand_negative_controls = false;
  Output out;
};

inline int cmd_build(const BuildArgs& a, std::ostream& out) {
  const Circuit c = build_shift(parse_variant(a.variant), a.m);
  write_output(a.out, export_text(c, {parse_qasm_version(a.qasm_version), a.expand_negative_controls}),
               out);
  return kOk;
}

struct LowerArgs {
  std::string in;
  std::string pipeline;
  int qasm_version = 3;
  Output out;
};

inline int cmd_lower(const LowerArgs& a, std::ostream& out) {
  const Circuit c = import_text(read_file(a.in));
  const auto r = run_pipeline(c, pipeline_or_reference(a.pipeline));
  write_output(a.out, export_text(r.circuit, {parse_qasm_version(a.qasm_version), false}), out);
  return kOk;
}

struct CountArgs {
  CircuitSource source;
  std::string pipeline;
  bool lower = false;
  Output out;
};

/// Census of the circuit; with --pipeline or --lower, also after each stage.
inline int cmd_count(const CountArgs& a, std::ostream& out) {
  const auto format = parse_format(a.out.format);
  const Circuit c = load_circuit(a.source);
  std::string text;
  if (a.pipeline.empty() && !a.lower) {
    text = census_text(census(c), format);
  } else {
    const auto r = run_pipeline(c, pipeline_or_reference(a.pipeline));
    if (format == TableFormat::csv) {
      text = "stage,gate,count\n";
      auto rows = [&](const std::string& stage, const GateCensus& g) {
        for (const auto& [k, v] : g.counts) text += stage + "," + census_name(k) + "," + std::to_string(v) + "\n";
        text += stage + ",cx_total," + std::to_string(g.cx_total()) + "\n";
      };
      rows("input", census(c));
      for (const auto& s : r.log) rows(s.stage, s.census);
    } else {
      text = "input\n" + census_text(census(c), format);
      for (const auto& s : r.log) text += s.stage + "\n" + census_text(s.census, format);
    }
  }
  write_output(a.out, text, out);
  return kOk;
}

struct VerifyArgs {
  CircuitSource source;
  double tol = 1e-10;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Circuit c = load_circuit(a.source);
  if (c.layout().position_count() == 0) throw UsageError("circuit has no position register");
  const auto report = check_shift(c, a.tol);
  char buf[160];
  std::snprintf(buf, sizeof buf, "checked %zu basis states, max deviation %.3g\n", report.checked,
                report.max_deviation);
  out << buf;
  constexpr std::size_t kShown = 16;
  for (std::size_t i = 0; i < report.failures.size() && i < kShown; ++i) {
    const auto& f = report.failures[i];
    out << "FAIL site " << f.site << " coin " << f.coin << ": " << f.detail << '\n';
  }
  if (report.failures.size() > kShown)
    out << "... " << report.failures.size() - kShown << " more failures\n";
  out << (report.passed ? "PASS\n" : "FAIL\n");
  return report.passed ? kOk : kVerifyFailed;
}

struct TableArgs {
  std::int64_t n_min = 5;
  std::int64_t n_max = 20;
  std::int64_t step = 1;
  std::vector<std::string> variants;
  std::string pipeline;
  Output out;
};

inline int cmd_table(const TableArgs& a, std::ostream& out) {
  std::vector<ShiftVariant> variants;
  for (const auto& v : a.variants) variants.push_back(parse_variant(v));
  if (variants.empty()) variants.assign(kAllVariants.begin(), kAllVariants.end());
  const auto rows =
      scaling_table(a.n_min, a.n_max, a.step, pipeline_or_reference(a.pipeline), variants);
  write_output(a.out, format_table(rows, parse_format(a.out.format)), out);
  return kOk;
}

struct WalkArgs {
  std::uint32_t m = 4;
  std::uint32_t steps = 0;
  std::string variant = "parallel";
  std::string coin = "hadamard";
  std::string coin_state = "zero";
  std::uint64_t site = 0;
  bool compare_oracle = false;
  Output out;
};

inline CoinState parse_coin_state(const std::string& s) {
  if (s == "zero") return coin_zero();
  if (s == "one") return coin_one();
  if (s == "symmetric") return coin_symmetric();
  throw UsageError("--coin-state must be zero, one or symmetric");
}

inline int cmd_walk(const WalkArgs& a, std::ostream& out) {
  WalkConfig cfg;
  cfg.m = a.m;
  cfg.steps = a.steps;
  cfg.coin = parse_coin(a.coin);
  cfg.initial_site = a.site;
  cfg.initial_coin = parse_coin_state(a.coin_state);
  cfg.variant = parse_variant(a.variant);
  const auto result = run_walk(cfg);
  const auto format = parse_format(a.out.format);
  std::string text;
  if (format == TableFormat::csv) {
    text = format_distribution(result.distribution);
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6s  %s\n", "site", "probability");
    text = buf;
    const auto& p = result.distribution.probabilities;
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%6zu  %.17g\n", k, p[k]);
      text += buf;
    }
  }
  write_output(a.out, text, out);
  if (a.compare_oracle) {
    const double d = max_abs_difference(result.distribution, classical_walk_oracle(cfg));
    char buf[64];
    std::snprintf(buf, sizeof buf, "oracle_deviation %.3e\n", d);
    out << buf;
  }
  return kOk;
}

inline int cmd_crossover(std::ostream& out) {
  const auto n = crossover_point();
  out << "crossover " << n << '\n';
  char buf[96];
  std::snprintf(buf, sizeof buf, "%4s %10s %10s\n", "n", "parallel", "qft");
  out << buf;
  for (std::int64_t k = n - 2; k <= n + 1; ++k) {
    std::snprintf(buf, sizeof buf, "%4lld %10lld %10lld\n", static_cast<long long>(k),
                  static_cast<long long>(predict_cx(ShiftVariant::parallel, k)),
                  static_cast<long long>(predict_cx(ShiftVariant::qft, k)));
    out << buf;
  }
  return kOk;
}

}  // namespace qshift::cli
