#pragma once

// Discrete-time quantum walk on a 2^m-site cycle: each step applies the
// coin to the coin qubit, then one shift circuit. The dense oracle applies
// the same step as an explicit (2N x 2N) matrix with no circuits involved.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qshift/builders.hpp"
#include "qshift/simulator.hpp"

namespace qshift {

class WalkError : public std::invalid_argument {
 public:
  explicit WalkError(const std::string& message) : std::invalid_argument(message) {}
};

enum class CoinKind : std::uint8_t { hadamard };

inline CoinKind parse_coin(std::string_view name) {
  if (name == "hadamard") return CoinKind::hadamard;
  throw WalkError("unknown coin '" + std::string(name) + "'");
}

using CoinState = std::array<Amplitude, 2>;

inline CoinState coin_zero() { return {1.0, 0.0}; }
inline CoinState coin_one() { return {0.0, 1.0}; }
/// (|0> + i|1>)/sqrt(2): gives a left-right symmetric Hadamard walk.
inline CoinState coin_symmetric() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {Amplitude(r, 0.0), Amplitude(0.0, r)};
}

struct WalkConfig {
  std::uint32_t m = 4;
  std::uint32_t steps = 0;
  CoinKind coin = CoinKind::hadamard;
  std::uint64_t initial_site = 0;
  CoinState initial_coin = coin_zero();
  ShiftVariant variant = ShiftVariant::parallel;
};

struct PositionDistribution {
  std::vector<double> probabilities;

  double total() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
  }
};

struct WalkResult {
  PositionDistribution distribution;
  StateVector state;
};

namespace detail {

inline void check_config(const WalkConfig& config) {
  if (config.m == 0) throw WalkError("walk needs m >= 1");
  if (config.m >= 63 || config.initial_site >= (std::uint64_t{1} << config.m))
    throw WalkError("initial site outside the 2^m-site cycle");
  const double n = std::norm(config.initial_coin[0]) + std::norm(config.initial_coin[1]);
  if (std::abs(n - 1.0) > 1e-10) throw WalkError("initial coin state is not normalized");
}

inline std::array<Amplitude, 4> coin_matrix(CoinKind kind) {
  switch (kind) {
    case CoinKind::hadamard: {
      const double r = 1.0 / std::numbers::sqrt2;
      return {r, r, r, -r};
    }
  }
  throw WalkError("unknown coin");
}

}  // namespace detail

/// Runs the walk with the configured shift circuit. Ancillas start in |0>
/// and the shift restores them, so the position marginal is read off the
/// ancilla-zero block.
inline WalkResult run_walk(const WalkConfig& config) {
  detail::check_config(config);
  const Circuit shift = build_shift(config.variant, config.m);
  const auto& layout = shift.layout();
  const std::uint32_t q = layout.total_qubits();
  const std::uint64_t coin_bit = std::uint64_t{1} << layout.coin().index;

  std::vector<Amplitude> amps(std::size_t{1} << q, 0.0);
  amps[config.initial_site] = config.initial_coin[0];
  amps[config.initial_site | coin_bit] = config.initial_coin[1];
  StateVector state = StateVector::from_amplitudes(std::move(amps));

  Gate coin_gate = Gate::h(layout.coin().index);
  for (std::uint32_t t = 0; t < config.steps; ++t) {
    apply_gate(state, coin_gate);
    state = run(shift, std::move(state));
  }

  const std::size_t sites = std::size_t{1} << config.m;
  PositionDistribution dist{std::vector<double>(sites, 0.0)};
  for (std::size_t coin = 0; coin < 2; ++coin)
    for (std::size_t k = 0; k < sites; ++k)
      dist.probabilities[k] += std::norm(state[k | (coin ? coin_bit : 0)]);
  return {std::move(dist), std::move(state)};
}

struct OracleOptions {
  /// Swap which coin value moves right. Only for canary tests: the result
  /// must then disagree with every circuit.
  bool inverted_convention = false;
};

inline constexpr std::uint32_t kMaxOracleM = 10;

/// Reference walk by dense linear algebra. Basis index is coin * N + k.
/// U = S (C x I) with S|0,k> = |0,k+1>, S|1,k> = |1,k-1> (mod N).
inline PositionDistribution classical_walk_oracle(const WalkConfig& config,
                                                  const OracleOptions& options = {}) {
  detail::check_config(config);
  if (config.m > kMaxOracleM)
    throw WalkError("oracle limited to m <= " + std::to_string(kMaxOracleM));
  const std::size_t n = std::size_t{1} << config.m;
  const std::size_t dim = 2 * n;

  const auto c = detail::coin_matrix(config.coin);
  std::vector<Amplitude> coin_op(dim * dim, 0.0);  // C x I
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < n; ++k) coin_op[(a * n + k) * dim + (b * n + k)] = c[a * 2 + b];

  std::vector<Amplitude> shift_op(dim * dim, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t up = (k + 1) % n;
    const std::size_t down = (k + n - 1) % n;
    const std::size_t coin0_to = options.inverted_convention ? down : up;
    const std::size_t coin1_to = options.inverted_convention ? up : down;
    shift_op[coin0_to * dim + k] = 1.0;
    shift_op[(n + coin1_to) * dim + (n + k)] = 1.0;
  }

  std::vector<Amplitude> step(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const Amplitude s = shift_op[i * dim + k];
      if (s == 0.0) continue;
      for (std::size_t j = 0; j < dim; ++j) step[i * dim + j] += s * coin_op[k * dim + j];
    }

  std::vector<Amplitude> psi(dim, 0.0);
  psi[config.initial_site] = config.initial_coin[0];
  psi[n + config.initial_site] = config.initial_coin[1];
  std::vector<Amplitude> next(dim);
  for (std::uint32_t t = 0; t < config.steps; ++t) {
    for (std::size_t i = 0; i < dim; ++i) {
      Amplitude acc = 0.0;
      for (std::size_t j = 0; j < dim; ++j) acc += step[i * dim + j] * psi[j];
      next[i] = acc;
    }
    psi.swap(next);
  }

  PositionDistribution dist{std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < n; ++k) dist.probabilities[k] = std::norm(psi[k]) + std::norm(psi[n + k]);
  return dist;
}

inline double max_abs_difference(const PositionDistribution& a, const PositionDistribution& b) {
  if (a.probabilities.size() != b.probabilities.size())
    throw WalkError("distributions have different sizes");
  double d = 0.0;
  for (std::size_t i = 0; i < a.probabilities.size(); ++i)
    d = std::max(d, std::abs(a.probabilities[i] - b.probabilities[i]));
  return d;
}

struct VariantComparison {
  /// Largest deviation from the oracle over all compared variants.
  double max_deviation = 0.0;
  std::map<ShiftVariant, double> per_variant;
};

/// Runs the walk with every variant buildable at config.m (the parallel one
/// needs m >= 4) and compares each against the oracle. config.variant is
/// ignored.
inline VariantComparison compare_variants(const WalkConfig& config) {
  const auto reference = classical_walk_oracle(config);
  VariantComparison out;
  for (auto v : kAllVariants) {
    if (config.m < min_position_qubits(v)) continue;
    WalkConfig c = config;
    c.variant = v;
    const double d = max_abs_difference(run_walk(c).distribution, reference);
    out.per_variant[v] = d;
    out.max_deviation = std::max(out.max_deviation, d);
  }
  return out;
}

/// "site,probability" lines, probabilities with 17 significant digits.
inline std::string format_distribution(const PositionDistribution& dist) {
  std::string out = "site,probability\n";
  char buf[64];
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, dist.probabilities[k]);
    out += buf;
  }
  return out;
}

}  // namespace qshift
