#pragma once
#include <stdexcept>
#include <string>

namespace srh {

// Violated API precondition: wrong space tag, mismatched grids, argument out of range.
struct contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or invalid run configuration; message carries key and line context.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical invariant failed at run time (domain too small, monotonicity broken).
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The integrator left the admissible regime (NaN or blow-up guard tripped).
struct diverged_error : std::runtime_error {
  double t_fail;
  diverged_error(const std::string& what, double t)
      : std::runtime_error(what), t_fail(t) {}
};

}  // namespace srh
