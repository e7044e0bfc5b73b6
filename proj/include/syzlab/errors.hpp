#pragma once

#include <stdexcept>
#include <string>

namespace syzlab {

// Base class for everything thrown on purpose by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Shapes of two operands are incompatible (compose, merge, ...).
struct dimension_mismatch : error {
    using error::error;
};

// A row/column/basis index is outside the valid range.
struct index_error : error {
    using error::error;
};

// Malformed textual input: matrix dumps, cycle literals, algebra files.
struct parse_error : error {
    using error::error;
};

// A denominator reduced to zero modulo the chosen prime.  Callers that
// pinned the prime themselves must retry with a fresh one; the multi-prime
// driver handles this internally.
struct prime_clash : error {
    using error::error;
};

// An assembled matrix (or a requested space) exceeds the configured size
// budget.  Mapped to exit code 2 by the command line tool.
struct size_budget_exceeded : error {
    using error::error;
};

// rank(d_in) + rank(d_out) came out larger than the middle dimension of a
// complex slice.  That cannot happen for a true complex, so it signals an
// assembly bug and is never caught internally.
struct negative_dimension : error {
    using error::error;
};

// A jet was requested at a point the backend cannot expand around
// (off the curve, at an excluded chart point, unnamed file-backend point).
struct unsupported_point : error {
    using error::error;
};

// The requested operation needs backend capabilities that are absent
// (canonical twist on a non-curve, sampling on a file backend, ...).
struct unsupported_backend : error {
    using error::error;
};

// A computation whose meaning depends on a cohomological hypothesis was
// requested on a backend that does not assert the hypothesis.
struct hypothesis_not_asserted : error {
    using error::error;
};

// Internal consistency failure while reducing a product to the target basis.
struct reduction_failure : error {
    using error::error;
};

}  // namespace syzlab
