#pragma once

#include <stdexcept>
#include <string>

namespace qmi {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid caller input: bad shapes, non-finite entries, length mismatches.
struct InputError : Error {
    using Error::Error;
};

/// A matrix that must be positive semidefinite has an eigenvalue below tolerance.
struct NotPositiveSemidefinite : Error {
    using Error::Error;
};

/// The partitioned matrix is not a member of the admissible class.
struct NotInClassError : Error {
    using Error::Error;
};

/// The operation needs a strictly negative definite lower-right block.
struct NotStrictError : Error {
    using Error::Error;
};

/// The supplied parameter matrix is not a contraction.
struct ContractionViolated : Error {
    using Error::Error;
};

/// The induced set is a single point; the requested direction does not exist.
struct ZeroSetError : Error {
    using Error::Error;
};

/// A noise description that does not define a bounded admissible set.
struct InvalidNoiseModel : Error {
    using Error::Error;
};

} // namespace qmi
