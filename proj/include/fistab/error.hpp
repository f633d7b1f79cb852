#ifndef FISTAB_ERROR_HPP
#define FISTAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fistab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size limit was hit; the computation is not wrong, just too big.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " exceeds cap " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MathError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A search ran out of degrees or budget without reaching a verdict.
class Undecided : public Error {
 public:
  using Error::Error;
};

/// Resource limits for the enumerative algorithms. Every limit is echoed
/// into reports so certificates can be reproduced.
struct Limits {
  std::size_t group_order = 40320;
  std::size_t orbit_size = 1'000'000;
  std::size_t fiset_size = 100'000;
  std::size_t matrix_size = 3000;
  std::size_t oracle_size = 600;
  int class_degree = 20;
  std::size_t root_combinations = 100'000;

  friend bool operator==(const Limits&, const Limits&) = default;
};

}  // namespace fistab

#endif  // FISTAB_ERROR_HPP
