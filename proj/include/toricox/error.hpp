#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace toricox {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The input violates an operation's precondition (CLI exit code 2).
class InputRejected : public Error {
public:
  using Error::Error;
};

/// A polytope that was required to be bounded is not; carries a recession
/// direction as witness.
class Unbounded : public InputRejected {
public:
  Unbounded(const std::string& what, std::vector<long> witness)
      : InputRejected(what), witness_(std::move(witness)) {}
  const std::vector<long>& witness() const { return witness_; }

private:
  std::vector<long> witness_;
};

/// The class group has torsion; torsion orders are reported.
class TorsionClassGroup : public InputRejected {
public:
  TorsionClassGroup(const std::string& what, std::vector<long> orders)
      : InputRejected(what), orders_(std::move(orders)) {}
  const std::vector<long>& orders() const { return orders_; }

private:
  std::vector<long> orders_;
};

/// No admissible line bundle was found inside the search box.
class SearchExhausted : public InputRejected {
public:
  SearchExhausted(const std::string& what, long box)
      : InputRejected(what), box_(box) {}
  long box() const { return box_; }

private:
  long box_;
};

} // namespace toricox
