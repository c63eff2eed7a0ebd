#pragma once

#include <stdexcept>
#include <string>

namespace seqent {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotHermitian : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class InvalidDistribution : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class OptimizerFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require_same_dim(long a, long b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

}  // namespace detail

}  // namespace seqent
