#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cli/angle.hpp"
#include "qwalk/core.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk::cli {

enum class ExitCode : int { ok = 0, bad_parameters = 2, io_error = 3, verification_failed = 4 };

enum class MethodChoice { oracle, closed, spectral, lambda, all };
enum class TransformSize { minimal, pow2 };
enum class OutputFormat { csv, json };

inline std::string_view to_string(MethodChoice m) {
  switch (m) {
    case MethodChoice::oracle: return "oracle";
    case MethodChoice::closed: return "closed";
    case MethodChoice::spectral: return "spectral";
    case MethodChoice::lambda: return "lambda";
    case MethodChoice::all: return "all";
  }
  return "oracle";
}

inline std::string_view to_string(TransformSize s) {
  return s == TransformSize::minimal ? "minimal" : "pow2";
}

inline std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

/// Everything a subcommand needs.  Angles stay as typed until validate().
struct RunConfig {
  std::string theta_text = "pi/6";
  std::string varphi_text = "0";
  std::string eta_text = "pi/6";
  double theta = pi / 6.0;
  double varphi = 0.0;
  double eta = pi / 6.0;
  long long steps = 30;
  MethodChoice method = MethodChoice::oracle;
  TransformSize transform_size = TransformSize::minimal;
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty: stdout
  std::optional<double> grid_guard;
  std::optional<std::uint64_t> seed;  // compare: draw random angles
  double inject_error = 0.0;          // compare: perturb the closed route (test aid)

  std::size_t transform_size_for(std::size_t t) const {
    return transform_size == TransformSize::minimal ? minimal_transform_size(t)
                                                    : pow2_transform_size(t);
  }

  /// Parses the angle texts and range-checks everything; throws std::invalid_argument.
  CoinParameters validate() {
    theta = snap_to_range(parse_angle(theta_text), 0.0, half_pi);
    varphi = snap_to_range(parse_angle(varphi_text), 0.0, pi);
    eta = snap_to_range(parse_angle(eta_text), 0.0, half_pi);
    if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
    if (grid_guard && !(*grid_guard >= 0.0 && *grid_guard < 0.5)) {
      throw std::invalid_argument("grid guard must lie in [0, 0.5)");
    }
    return CoinParameters(theta, varphi, eta);
  }
};

}  // namespace qwalk::cli
