#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace elnet {

using Index = Eigen::Index;
using VertexId = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Failure categories surfaced by the library. The CLI maps these onto
/// process exit codes, tests match on them directly.
enum class Errc {
  empty_boundary,
  disconnected,
  singular_system,
  non_positive_scale,
  invalid_unit,
  vertex_out_of_range,
  not_stochastic,
  asymmetric_edge,
  not_irreducible,
  not_markovian,
  parallel_units_present,
  sets_overlap,
  empty_set,
  source_in_target,
  same_vertex,
  mid_vertex_not_free,
  endpoint_mismatch,
  center_not_isolated,
  infeasible_delta,
  missing_terminal,
  truncation_exceeded,
  parse_error,
  internal_mismatch,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::empty_boundary: return "empty_boundary";
    case Errc::disconnected: return "disconnected";
    case Errc::singular_system: return "singular_system";
    case Errc::non_positive_scale: return "non_positive_scale";
    case Errc::invalid_unit: return "invalid_unit";
    case Errc::vertex_out_of_range: return "vertex_out_of_range";
    case Errc::not_stochastic: return "not_stochastic";
    case Errc::asymmetric_edge: return "asymmetric_edge";
    case Errc::not_irreducible: return "not_irreducible";
    case Errc::not_markovian: return "not_markovian";
    case Errc::parallel_units_present: return "parallel_units_present";
    case Errc::sets_overlap: return "sets_overlap";
    case Errc::empty_set: return "empty_set";
    case Errc::source_in_target: return "source_in_target";
    case Errc::same_vertex: return "same_vertex";
    case Errc::mid_vertex_not_free: return "mid_vertex_not_free";
    case Errc::endpoint_mismatch: return "endpoint_mismatch";
    case Errc::center_not_isolated: return "center_not_isolated";
    case Errc::infeasible_delta: return "infeasible_delta";
    case Errc::missing_terminal: return "missing_terminal";
    case Errc::truncation_exceeded: return "truncation_exceeded";
    case Errc::parse_error: return "parse_error";
    case Errc::internal_mismatch: return "internal_mismatch";
  }
  return "unknown";
}

/// Exception carrying an Errc plus an optional numeric detail
/// (e.g. the feasibility residual of a rejected delta configuration).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Error(Errc code, const std::string& what, double detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  /// Numeric payload attached to the failure; NaN when none applies.
  double detail() const noexcept { return detail_; }

 private:
  Errc code_;
  double detail_ = std::numeric_limits<double>::quiet_NaN();
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

[[noreturn]] inline void raise(Errc code, const std::string& what, double detail) {
  throw Error(code, what, detail);
}

}  // namespace elnet
