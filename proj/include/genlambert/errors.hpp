#pragma once

#include <stdexcept>
#include <string>

namespace genlambert {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the requested function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Upper and lower parameter lists share a value, or a parameter pair that
/// must differ (t = s, t1 = t2, r = -1) does not.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Series requested at or beyond its radius of convergence.
class ConvergenceDomain : public Error {
public:
    using Error::Error;
};

/// Series terms grew instead of decaying.
class Diverging : public Error {
public:
    using Error::Error;
};

class InvalidBranch : public Error {
public:
    using Error::Error;
};

/// Exact integer result does not fit the widest available integer type.
class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace genlambert
