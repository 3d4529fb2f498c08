#pragma once

#include <stdexcept>
#include <string>

namespace qising {

/// An iterative scheme hit its resolution or size cap before reaching the
/// requested tolerance. Carries the last two iterates so callers can report
/// how far the run got.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}
  double previous_iterate() const { return previous_; }
  double last_iterate() const { return last_; }

 private:
  double previous_;
  double last_;
};

/// A computed quantity violated an exact structural property (e.g. the
/// determinant of an antisymmetric matrix came out negative).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qising
