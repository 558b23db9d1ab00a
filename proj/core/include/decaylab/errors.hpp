#pragma once

#include <stdexcept>
#include <string>

namespace decaylab {

// Base of every error thrown by the library. Callers that only care about
// "something in decaylab failed" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (|eps| >= 1 for the density of
// states, negative coupling, non-finite energies, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Parameters at which a closed form is singular (eps_d = -1 in Model I,
// eps_d = 0 in Model II).
class SingularParameter : public Error {
public:
    using Error::Error;
};

// The dispersion polynomial degenerates and has no discrete solution.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

// Root finding or sheet assignment failed.
class SolverError : public Error {
public:
    using Error::Error;
};

// Model I keeps a bound state at every finite eps_d; there is no absorption.
class NoAbsorption : public Error {
public:
    using Error::Error;
};

// The gap to the band edge is closed so the far-zone law does not exist.
class FarZoneAbsent : public Error {
public:
    using Error::Error;
};

// Quadrature did not settle under node doubling.
class QuadratureError : public Error {
public:
    using Error::Error;
};

// Requested time outside the method's validity range (decomposition below
// t_min, lattice beyond its echo horizon).
class TimeRangeError : public Error {
public:
    using Error::Error;
};

// Malformed or insufficient input series.
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace decaylab
