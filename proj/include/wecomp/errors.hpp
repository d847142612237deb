#pragma once

#include <stdexcept>
#include <string>

namespace wecomp {

/// Malformed input: bad file syntax, dimension mismatches, out-of-range
/// arguments. CLI exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds an enumeration or precision budget.
/// CLI exit code 3.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A recovery procedure could not certify its result, or two independent
/// pipelines disagree. CLI exit code 4.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An oracle was asked a query class it does not support.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Consistency check inside a pipeline failed; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace wecomp
