#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

// Base class for every failure the library reports. The verification suite
// catches Error per check and records a failed record instead of aborting.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside its stated parameter domain (t outside [0,1], p < 1, ...).
class ParamError : public Error {
public:
    using Error::Error;
};

// Invalid grid, rule or suite configuration (empty grid, k = 0, r >= r_max).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Evaluation point outside the function's domain (|z| >= 1 on the disc).
class DomainError : public Error {
public:
    using Error::Error;
};

// Non-integrable kernel exponent (Re a <= -1, m <= Im lambda).
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Quadrature capacity exceeded; the result would alias.
class AliasingError : public Error {
public:
    using Error::Error;
};

// Resolvent parameter too close to an eigenvalue.
class SpectrumError : public Error {
public:
    using Error::Error;
};

// Evaluation at or near a pole.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Principal-branch cut crossed (or approached) by a non-integer power.
class BranchError : public Error {
public:
    using Error::Error;
};

// File output failed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace oplab
