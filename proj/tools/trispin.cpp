// Command-line front end for the three-spin sequence library.

#include <iostream>

#include <CLI11.hpp>

#include "trispin/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace trispin::cli;

  CLI::App app{"Trilinear three-spin propagators: sequence tables, sweeps, verification and compilation"};
  app.require_subcommand(1);

  double table_j = 88.0;
  auto* table1 = app.add_subcommand("table1", "Durations, scaling factors and SWAP(1,3) durations at kappa = 1");
  table1->add_option("--J", table_j, "Coupling constant in Hz")->capture_default_str();

  std::string curve_range = "0:1:0.01";
  auto* curves = app.add_subcommand("curves", "CSV of tau(kappa), s(kappa) and s/s_B for all variants");
  curves->add_option("--kappa", curve_range, "Range a:b[:step]; kappa <= 0 is skipped")->capture_default_str();

  EtaSweepOptions sweep;
  auto* eta = app.add_subcommand("eta-sweep", "CSV of the SWAP(1,3) transfer efficiency against duration");
  eta->add_option("--variant", sweep.variant, "A, B, C or D")->capture_default_str();
  eta->add_option("--mode", sweep.mode, "ideal or realistic")->capture_default_str();
  eta->add_option("--kappa", sweep.kappa_range, "Range a:b[:step] within [0, 2]")->capture_default_str();
  eta->add_option("--config", sweep.config_path, "key=value scenario file");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an oracle suite: identities, swap, broadband, limits");
  verify->add_option("suite", suite, "Suite name")->required();

  CompileOptions compile;
  auto* comp = app.add_subcommand("compile", "Write a pulse program in the text format");
  comp->add_option("--variant", compile.variant, "A, B, C or D")->capture_default_str();
  comp->add_option("--kappa", compile.kappa, "Rotation parameter in [0, 2]")->capture_default_str();
  comp->add_option("--J", compile.j_hz, "Design coupling in Hz")->capture_default_str();
  comp->add_flag("--swap", compile.swap13, "Compile SWAP(1,3) instead of U_zzz");
  comp->add_flag("--broadband", compile.broadband, "Apply offset refocusing (and DANTE for D)");
  comp->add_flag("--balance-widths", compile.balance_widths,
                 "Place refocusing groups for the default finite pulse widths");
  comp->add_option("--n", compile.dante_n, "DANTE segment count, multiple of 4");
  comp->add_option("--out", compile.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*table1) return cmd_table1(table_j, std::cout, std::cerr);
    if (*curves) return cmd_curves(curve_range, std::cout, std::cerr);
    if (*eta) return cmd_eta_sweep(sweep, std::cout, std::cerr);
    if (*verify) return cmd_verify(suite, std::cout, std::cerr);
    if (*comp) return cmd_compile(compile, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
