#include "braidforce/error.hpp"

namespace braidforce {

const char* errc_name(errc e) {
  switch (e) {
  case errc::parse_error: return "ParseError";
  case errc::closure_violation: return "ClosureViolation";
  case errc::singular_pair: return "SingularPair";
  case errc::odd_period: return "OddPeriod";
  case errc::non_generic_at_seam: return "NonGenericAtSeam";
  case errc::not_updown: return "NotUpDown";
  case errc::on_hyperplane: return "OnHyperplane";
  case errc::not_bounded: return "NotBounded";
  case errc::not_proper: return "NotProper";
  case errc::not_subcomplex: return "NotSubcomplex";
  case errc::mixed_topological_type: return "MixedTopologicalType";
  case errc::not_increasing: return "NotIncreasing";
  case errc::monotonicity_violation: return "MonotonicityViolation";
  case errc::blow_up: return "BlowUp";
  case errc::gap_collapse: return "GapCollapse";
  case errc::monotonicity_breach: return "MonotonicityBreach";
  case errc::budget_exhausted: return "BudgetExhausted";
  case errc::no_minimizer: return "NoMinimizer";
  case errc::outside_component: return "OutsideComponent";
  case errc::infeasible: return "Infeasible";
  case errc::none_found: return "NoneFound";
  case errc::window_too_small: return "WindowTooSmall";
  case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_numeric(errc e) {
  switch (e) {
  case errc::blow_up:
  case errc::gap_collapse:
  case errc::monotonicity_breach:
  case errc::budget_exhausted:
  case errc::no_minimizer:
  case errc::none_found:
    return true;
  default:
    return false;
  }
}

} // namespace braidforce
