#pragma once
#include <stdexcept>
#include <string>

namespace cvp {

// Every failure mode of the library maps to one of these codes so that the
// CLI can translate them into stable exit codes.
enum class errc {
  degenerate_matrix,
  not_hyperbolic,
  not_collinear,
  coincident_points,
  point_outside_domain,
  zero_vector,
  region_not_contained,
  chart_mismatch,
  empty_word,
  unknown_generator,
  budget_exceeded,
  ping_pong_failed,
  no_splitting,
  no_separating_line,
  point_at_infinity,
  infeasible_m,
  not_converged,
  insufficient_data,
  parameter_range,
  config_error,
  io_failure,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::degenerate_matrix: return "DegenerateMatrix";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::not_collinear: return "NotCollinear";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::point_outside_domain: return "PointOutsideDomain";
    case errc::zero_vector: return "ZeroVector";
    case errc::region_not_contained: return "RegionNotContained";
    case errc::chart_mismatch: return "ChartMismatch";
    case errc::empty_word: return "EmptyWord";
    case errc::unknown_generator: return "UnknownGenerator";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::ping_pong_failed: return "PingPongFailed";
    case errc::no_splitting: return "NoSplitting";
    case errc::no_separating_line: return "NoSeparatingLine";
    case errc::point_at_infinity: return "PointAtInfinity";
    case errc::infeasible_m: return "InfeasibleM";
    case errc::not_converged: return "NotConverged";
    case errc::insufficient_data: return "InsufficientData";
    case errc::parameter_range: return "ParameterRange";
    case errc::config_error: return "ConfigError";
    case errc::io_failure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace cvp
