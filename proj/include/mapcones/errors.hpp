#pragma once

#include <stdexcept>
#include <string>

namespace mapcones {

// Malformed or schema-violating input document (CLI exit code 2).
struct schema_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input shape / size mismatch (CLI exit code 3).
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A construction the library deliberately does not support, e.g. an
// idempotent with no known constraint reduction (CLI exit code 4).
struct unsupported_construction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical preconditions violated: non-hermitian input where hermitian is
// required, Kraus form of a non-CP map, non-idempotent where an idempotent
// is required (CLI exit code 5).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mapcones
