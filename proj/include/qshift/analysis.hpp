#pragma once

// Closed-form CX predictors for the three shifts and the scaling table that
// sets them against counts measured through a pass pipeline. `n` is always
// the working-register size (position qubits + coin), so a 2^m-site grid has
// n = m + 1.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qshift/builders.hpp"
#include "qshift/circuit.hpp"
#include "qshift/pipeline.hpp"

namespace qshift {

class AnalysisError : public std::invalid_argument {
 public:
  explicit AnalysisError(const std::string& message) : std::invalid_argument(message) {}
};

/// Smallest n each fitted formula is stated for.
inline std::int64_t min_predicted_n(ShiftVariant v) {
  return v == ShiftVariant::parallel ? 6 : 5;
}

/// canonical: 52n - 141; parallel: 15(n - 6) + 149; qft: 2n^2 - 4n + 2.
inline std::int64_t predict_cx(ShiftVariant variant, std::int64_t n) {
  if (n < min_predicted_n(variant))
    throw AnalysisError(std::string(to_string(variant)) + " CX formula needs n >= " +
                        std::to_string(min_predicted_n(variant)));
  switch (variant) {
    case ShiftVariant::canonical: return 52 * n - 141;
    case ShiftVariant::parallel: return 15 * (n - 6) + 149;
    case ShiftVariant::qft: return 2 * n * n - 4 * n + 2;
  }
  throw AnalysisError("unknown variant");
}

inline std::optional<std::int64_t> try_predict_cx(ShiftVariant variant, std::int64_t n) {
  if (n < min_predicted_n(variant)) return std::nullopt;
  return predict_cx(variant, n);
}

/// CX cost of one C^kX; indexed by k.
using ArityCost = std::function<std::int64_t(std::int64_t)>;

/// Parallel shift CX total for a per-arity cost d_k:
/// 1 + 2n + 4 d_2 + 3 d_3 + sum_{k=4}^{n-2} d_k. The 1 + 2n term is the five
/// constant-part CX plus the 2(n-2) CX of the variable part.
inline std::int64_t parallel_cx_general(std::int64_t n, const ArityCost& d) {
  if (n < 5) throw AnalysisError("parallel shift needs n >= 5");
  std::int64_t total = 1 + 2 * n + 4 * d(2) + 3 * d(3);
  for (std::int64_t k = 4; k <= n - 2; ++k) total += d(k);
  return total;
}

/// Lower bound without ancillas: d_k = 2(k + 1).
inline std::int64_t parallel_cx_lower_limit(std::int64_t n) {
  return parallel_cx_general(n, [](std::int64_t k) { return 2 * (k + 1); });
}

/// Ancilla ladder followed by 6-CX Toffolis: d_2 = 6, d_k = 12(k-1) + 1.
inline std::int64_t ancilla_ladder_cost(std::int64_t k) {
  return k == 2 ? 6 : 12 * (k - 1) + 1;
}

/// Lowered but uncancelled parallel count as published: 96 + 3n +
/// sum_{k=4}^{n-2} 12(k-1). Summing ancilla_ladder_cost through
/// parallel_cx_general gives one less (95 + 3n + ...); both are exposed.
inline std::int64_t predict_cx_presimplify(std::int64_t n) {
  if (n < 6) throw AnalysisError("presimplified parallel formula needs n >= 6");
  std::int64_t total = 96 + 3 * n;
  for (std::int64_t k = 4; k <= n - 2; ++k) total += 12 * (k - 1);
  return total;
}

/// Smallest n at which the parallel prediction drops below the QFT one.
inline std::int64_t crossover_point() {
  for (std::int64_t n = min_predicted_n(ShiftVariant::parallel);; ++n)
    if (predict_cx(ShiftVariant::parallel, n) < predict_cx(ShiftVariant::qft, n)) return n;
}

struct ScalingRow {
  std::int64_t n = 0;
  ShiftVariant variant = ShiftVariant::parallel;
  std::optional<std::int64_t> predicted_cx;
  std::optional<std::int64_t> measured_cx;

  std::optional<std::int64_t> delta() const {
    if (!predicted_cx || !measured_cx) return std::nullopt;
    return *measured_cx - *predicted_cx;
  }
};

/// CX count of the variant's circuit for working size n after `pipeline`.
/// nullopt when no circuit exists at that size.
inline std::optional<std::int64_t> measure_cx(ShiftVariant variant, std::int64_t n,
                                              const PassPipeline& pipeline) {
  if (n < 2) return std::nullopt;
  const auto m = static_cast<std::uint32_t>(n - 1);
  if (m < min_position_qubits(variant) || m > 31) return std::nullopt;
  const auto result = run_pipeline(build_shift(variant, m), pipeline);
  return static_cast<std::int64_t>(census(result.circuit).cx_total());
}

/// One row per (n, variant), n ascending, variants in kAllVariants order.
inline std::vector<ScalingRow> scaling_table(std::int64_t n_min, std::int64_t n_max,
                                             std::int64_t step, const PassPipeline& pipeline,
                                             const std::vector<ShiftVariant>& variants = {
                                                 kAllVariants.begin(), kAllVariants.end()}) {
  if (step <= 0) throw AnalysisError("step must be positive");
  if (n_min < 2 || n_max < n_min) throw AnalysisError("invalid n range");
  if (n_max > 32) throw AnalysisError("n above 32 is not buildable");
  std::vector<ScalingRow> rows;
  for (std::int64_t n = n_min; n <= n_max; n += step)
    for (auto v : variants)
      rows.push_back({n, v, try_predict_cx(v, n), measure_cx(v, n, pipeline)});
  return rows;
}

enum class TableFormat : std::uint8_t { text, csv };

/// Columns: n, variant, predicted_cx, measured_cx, delta. Missing values are
/// "n/a" in text and empty in CSV.
inline std::string format_table(const std::vector<ScalingRow>& rows, TableFormat format) {
  auto cell = [&](const std::optional<std::int64_t>& v) {
    if (v) return std::to_string(*v);
    return std::string(format == TableFormat::csv ? "" : "n/a");
  };
  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "n,variant,predicted_cx,measured_cx,delta\n";
    for (const auto& r : rows)
      out << r.n << ',' << to_string(r.variant) << ',' << cell(r.predicted_cx) << ','
          << cell(r.measured_cx) << ',' << cell(r.delta()) << '\n';
    return out.str();
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%4s  %-10s %12s %12s %7s\n", "n", "variant", "predicted_cx",
                "measured_cx", "delta");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%4lld  %-10s %12s %12s %7s\n",
                  static_cast<long long>(r.n), to_string(r.variant),
                  cell(r.predicted_cx).c_str(), cell(r.measured_cx).c_str(),
                  cell(r.delta()).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace qshift
