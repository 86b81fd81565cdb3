#pragma once

#include <stdexcept>
#include <string>

namespace diagform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Raised when a FieldConfig violates its invariants or two scalars live in
/// incompatible towers.
class FieldError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    using Error::Error;
};

class NotHomogeneous : public Error {
public:
    using Error::Error;
};

class DegreeTooLow : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A claimed matrix algebra is not closed under multiplication.
class NotClosed : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotReal : public Error {
public:
    using Error::Error;
};

/// The operation requires a nondegenerate tensor (trivial radical).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

} // namespace diagform
