#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "selfsim/rational.hpp"
#include "selfsim/similarity.hpp"

namespace selfsim::cli {

enum class Command { params, coeffs, eval, verify, independence, pfq };
enum class OutputFormat { json, csv };

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct Grid {
  Real x0{"0.5"}, x1{"2"};
  unsigned nx = 4;
  Real y0{"0.5"}, y1{"2"};
  unsigned ny = 4;
};

struct RunConfig {
  Command command = Command::params;
  EquationSpec spec;
  std::optional<unsigned> index;
  std::size_t order = 30;
  Real tol{"1e-12"};
  Grid grid;
  std::optional<OutputFormat> format;

  // verify
  bool numeric = false;
  bool inject_fault = false;
  std::optional<std::string> from_file;
  Real step{"1e-3"};

  // independence
  std::optional<Rational> b_override;

  // pfq
  std::optional<Real> z;
};

/// Parses argv (without the program name) and runs the selected command.
/// stdout receives the document, stderr diagnostics. Returns the exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int cmd_params(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_independence(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_pfq(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace selfsim::cli
