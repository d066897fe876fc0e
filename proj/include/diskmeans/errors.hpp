#pragma once

#include <stdexcept>
#include <string>

namespace diskmeans {

// An adaptive evaluation exhausted its subdivision/iteration budget before
// reaching the requested accuracy. Carries the best estimate it reached and
// the error bound it achieved.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double estimate, double achieved)
      : std::runtime_error(what), estimate_(estimate), achieved_(achieved) {}

  double estimate() const noexcept { return estimate_; }
  double achieved() const noexcept { return achieved_; }

 private:
  double estimate_;
  double achieved_;
};

// Two independent evaluation paths for the same quantity disagreed beyond
// the allowed tolerance.
class consistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A root search was started on an interval whose endpoint values do not
// bracket a sign change.
class bracket_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A diagnostic quantity was requested outside the parameter regime where it
// is defined (wrong sign of a denominator, alpha outside the case split, ...).
class regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diskmeans
