#ifndef HOCOALG_ERRORS_HPP
#define HOCOALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hocoalg {

/// Malformed input: bad JSON, dangling ids, wrong shapes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hocoalg

#endif  // HOCOALG_ERRORS_HPP
