#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qshift/circuit.hpp"
#include "qshift/simulator.hpp"

namespace qshift {

struct ShiftFailure {
  std::uint64_t site;
  std::uint32_t coin;
  std::string detail;
};

struct ShiftReport {
  bool passed = false;
  std::size_t checked = 0;
  double max_deviation = 0.0;
  std::vector<ShiftFailure> failures;
};

/// Expected image of working basis index (k, coin): k + 1 on coin |0>,
/// k - 1 on coin |1>, modulo 2^m.
inline std::uint64_t expected_shift(std::uint64_t working_index, std::uint32_t m) {
  const std::uint64_t n = std::uint64_t{1} << m;
  const std::uint64_t k = working_index & (n - 1);
  const std::uint64_t coin = working_index >> m & 1;
  const std::uint64_t to = coin == 0 ? (k + 1) % n : (k + n - 1) % n;
  return to | (coin << m);
}

/// Exhaustive check that `circuit` shifts every working basis state with all
/// ancillas restored. X-family circuits are tabulated exactly; anything else
/// goes through the statevector with tolerance `tol` on amplitude magnitude.
inline ShiftReport check_shift(const Circuit& circuit, double tol = 1e-10) {
  const auto& layout = circuit.layout();
  const auto ancillas = layout.ancillas();
  bool x_family = true;
  for (const auto& g : circuit) x_family = x_family && g.is_x_family();
  const PermutationTable table =
      x_family ? extract_permutation(circuit, ancillas) : basis_action(circuit, ancillas, tol);

  const auto m = layout.position_count();
  ShiftReport report;
  report.max_deviation = table.max_deviation;
  report.checked = table.size();
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    const auto want = expected_shift(i, m);
    if (table.valid[i] && table.mapping[i] == want) continue;
    ShiftFailure f{i & ((std::uint64_t{1} << m) - 1), static_cast<std::uint32_t>(i >> m & 1), {}};
    if (!table.valid[i]) {
      f.detail = "output is not a basis state with ancillas restored";
    } else {
      const auto got = table.mapping[i];
      f.detail = "mapped to site " + std::to_string(got & ((std::uint64_t{1} << m) - 1)) +
                 " coin " + std::to_string(got >> m & 1) + ", expected site " +
                 std::to_string(want & ((std::uint64_t{1} << m) - 1));
    }
    report.failures.push_back(std::move(f));
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace qshift
