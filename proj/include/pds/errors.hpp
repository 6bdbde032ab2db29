#pragma once

#include <stdexcept>
#include <string>

namespace pds {

enum class errc {
  unknown_point,
  duplicate_point,
  invalid_point,
  not_injective,
  not_invariant,
  not_topologically_free,
  has_periodic_points,
  too_large,
  invalid_rep,
  support_violation,
  zero_row,
  not_square,
  bad_entry,
  bad_input,
};

/// Library error with a machine-checkable code.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace pds
