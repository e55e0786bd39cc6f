#pragma once

#include <stdexcept>
#include <string>

namespace braidforce {

enum class errc {
  parse_error,
  closure_violation,
  singular_pair,
  odd_period,
  non_generic_at_seam,
  not_updown,
  on_hyperplane,
  not_bounded,
  not_proper,
  not_subcomplex,
  mixed_topological_type,
  not_increasing,
  monotonicity_violation,
  blow_up,
  gap_collapse,
  monotonicity_breach,
  budget_exhausted,
  no_minimizer,
  outside_component,
  infeasible,
  none_found,
  window_too_small,
  invalid_argument,
};

const char* errc_name(errc e);

// numeric failures map to exit code 3, everything else to 2
bool is_numeric(errc e);

class braid_error : public std::runtime_error {
public:
  braid_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

} // namespace braidforce
