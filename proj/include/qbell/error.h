#pragma once

#include <stdexcept>
#include <string>

namespace qbell {

/// Base for every error raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (shape, normalization, range).
class ValidationError : public Error {
   public:
    using Error::Error;
};

/// A value fell outside the domain where a formula is defined.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A dense build would exceed the supported qubit count.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// Input matrix expected to be positive semidefinite had a clearly negative eigenvalue.
class NotPsdError : public Error {
   public:
    using Error::Error;
};

}  // namespace qbell
