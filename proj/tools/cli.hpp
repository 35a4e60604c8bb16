#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncpath::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kConfigError = 2 };

struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;

  bool active() const { return count > 0; }
  double at(std::size_t i) const;
};

struct RunConfig {
  std::string command;
  double theta = 1.0;
  double mass = 1.0;
  double time = 1.0;
  double x0 = 0.0, y0 = 0.0, xf = 0.0, yf = 0.0;
  std::size_t slices = 8;
  std::size_t fock_dim = 32;
  double tol = 1e-8;
  double oracle_tol = 1e-4;
  std::string out;
  std::string format;  // empty: csv for kernel/sweep, text for verify
  bool compare = false;
  bool no_star = false;
  Range sweep_dx, sweep_time, sweep_theta;

  /// Throws ncpath::InvalidArgument on the first bad field.
  void validate() const;
};

/// "start,stop,count"; throws ncpath::InvalidArgument.
Range parse_range(const std::string& text);

int cmd_kernel(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, validates, dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncpath::cli
