#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iterroot {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ContextMismatch : public Error {
  public:
    using Error::Error;
};

class OrderMismatch : public Error {
  public:
    using Error::Error;
};

class NotAUnit : public Error {
  public:
    using Error::Error;
};

class CompositionDomain : public Error {
  public:
    using Error::Error;
};

class NotInSubstitutionGroup : public Error {
  public:
    using Error::Error;
};

class NotRiordanPair : public Error {
  public:
    using Error::Error;
};

/// A lower-triangular matrix that is not the principal block of any Riordan
/// matrix. Carries the first entry (row-major) that the reconstruction misses.
class NotRiordan : public Error {
  public:
    NotRiordan(std::size_t row, std::size_t col, const std::string& what)
        : Error(what), row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

  private:
    std::size_t row_;
    std::size_t col_;
};

class BranchingUnsupported : public Error {
  public:
    using Error::Error;
};

class BoundExceeded : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

// Two independent computations of the same quantity disagreed.
class InternalInconsistency : public Error {
  public:
    using Error::Error;
};

} // namespace iterroot
