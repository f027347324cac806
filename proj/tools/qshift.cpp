#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace qshift;
using namespace qshift::cli;

namespace {

void add_source(CLI::App* cmd, CircuitSource& src) {
  cmd->add_option("--in", src.in, "circuit file (OpenQASM)");
  cmd->add_option("--variant", src.variant, "canonical | qft | parallel");
  cmd->add_option("--m", src.m, "position qubits (2^m sites)");
}

void add_output(CLI::App* cmd, Output& out, bool with_format = true) {
  cmd->add_option("--out,-o", out.path, "output file (default: stdout)");
  if (with_format)
    cmd->add_option("--format", out.format, "text | csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qshift: basis-state shift circuits, lowering passes and gate-count analysis"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "build a shift circuit and export it");
  c_build->add_option("--variant", build.variant, "canonical | qft | parallel")->required();
  c_build->add_option("--m", build.m, "position qubits (2^m sites)")->required();
  c_build->add_option("--qasm-version", build.qasm_version, "2 or 3")->capture_default_str();
  c_build->add_flag("--expand-negative-controls", build.expand_negative_controls,
                    "X-conjugate open controls");
  add_output(c_build, build.out, false);

  LowerArgs lower;
  auto* c_lower = app.add_subcommand("lower", "run a pass pipeline over a circuit file");
  c_lower->add_option("--in", lower.in, "circuit file")->required();
  c_lower->add_option("--pipeline", lower.pipeline, "pipeline config (default: reference)");
  c_lower->add_option("--qasm-version", lower.qasm_version, "2 or 3")->capture_default_str();
  add_output(c_lower, lower.out, false);

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "gate census, optionally per pipeline stage");
  add_source(c_count, count.source);
  c_count->add_option("--pipeline", count.pipeline, "pipeline config");
  c_count->add_flag("--lower", count.lower, "run the reference pipeline");
  add_output(c_count, count.out);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "exhaustively check the shift permutation");
  add_source(c_verify, verify.source);
  c_verify->add_option("--tol", verify.tol, "amplitude tolerance")->capture_default_str();

  TableArgs table;
  auto* c_table = app.add_subcommand("table", "predicted vs measured CX scaling table");
  c_table->add_option("--n-min", table.n_min, "smallest working-register size")->required();
  c_table->add_option("--n-max", table.n_max, "largest working-register size")->required();
  c_table->add_option("--step", table.step, "n increment")->capture_default_str();
  c_table->add_option("--variants", table.variants, "subset of canonical,qft,parallel")
      ->delimiter(',');
  c_table->add_option("--pipeline", table.pipeline, "pipeline config (default: reference)");
  add_output(c_table, table.out);

  WalkArgs walk;
  auto* c_walk = app.add_subcommand("walk", "discrete-time quantum walk on a cycle");
  c_walk->add_option("--m", walk.m, "position qubits")->required();
  c_walk->add_option("--steps", walk.steps, "number of steps")->required();
  c_walk->add_option("--variant", walk.variant, "shift variant")->capture_default_str();
  c_walk->add_option("--coin", walk.coin, "coin operator")
      ->check(CLI::IsMember({"hadamard"}))
      ->capture_default_str();
  c_walk->add_option("--coin-state", walk.coin_state, "zero | one | symmetric")
      ->capture_default_str();
  c_walk->add_option("--site", walk.site, "initial site")->capture_default_str();
  c_walk->add_flag("--compare-oracle", walk.compare_oracle,
                   "print the max deviation from the dense oracle");
  add_output(c_walk, walk.out);

  auto* c_cross = app.add_subcommand("crossover", "where the parallel CX count beats QFT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_build) return cmd_build(build, std::cout);
    if (*c_lower) return cmd_lower(lower, std::cout);
    if (*c_count) return cmd_count(count, std::cout);
    if (*c_verify) return cmd_verify(verify, std::cout);
    if (*c_table) return cmd_table(table, std::cout);
    if (*c_walk) return cmd_walk(walk, std::cout);
    if (*c_cross) return cmd_crossover(std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CircuitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const WalkError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const AnalysisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const QasmError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PassError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (...) {
    std::cerr << "internal error\n";
    return kInternal;
  }
  return kUsage;
}
