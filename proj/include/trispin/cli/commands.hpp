#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace trispin::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// "a:b" or "a:b:step" (default step 0.05), inclusive of b within round-off. b < a yields an
/// empty grid. Throws std::invalid_argument when malformed or step <= 0.
std::vector<double> parse_kappa_range(std::string_view spec);

// Each command writes its result to `out`, diagnostics to `err`, and returns an ExitCode.

int cmd_table1(double j_hz, std::ostream& out, std::ostream& err);

int cmd_curves(std::string_view kappa_range, std::ostream& out, std::ostream& err);

struct EtaSweepOptions {
  std::string variant = "D";
  std::string mode = "ideal";  // ideal | realistic
  std::string kappa_range = "0:2:0.05";
  std::optional<std::string> config_path;
};

int cmd_eta_sweep(const EtaSweepOptions& options, std::ostream& out, std::ostream& err);

/// Suites: identities, swap, broadband, limits.
int cmd_verify(std::string_view suite, std::ostream& out, std::ostream& err);

struct CompileOptions {
  std::string variant = "D";
  double kappa = 1.0;
  double j_hz = 88.0;
  bool swap13 = false;     // compile SWAP(1,3) instead of U_zzz
  bool broadband = false;
  int dante_n = 0;         // 0: default
  bool balance_widths = false;  // shift refocusing groups for the default finite pulse widths
  std::optional<std::string> out_path;  // stdout when unset
};

int cmd_compile(const CompileOptions& options, std::ostream& out, std::ostream& err);

}  // namespace trispin::cli
