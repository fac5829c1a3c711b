#pragma once

#include <stdexcept>
#include <string>

namespace tqfold {

// Common base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inversion of a value with no inverse in the truncated series ring
// (zero constant coefficient, identically zero divisor, ...).
struct NotInvertible : Error {
    using Error::Error;
};

// Parameters (z, w, t) violate a genericity requirement, e.g. a shifted
// difference z_i t^d - z_j t^{-d} vanishes below the truncation order.
struct DegenerateParameters : Error {
    using Error::Error;
};

// A relation was requested for index data outside its domain
// (wrong parity of indices, index contained in the base set, ...).
struct WrongRelation : Error {
    using Error::Error;
};

// An index subset or tuple is malformed for the requested operation.
struct BadIndexSet : Error {
    using Error::Error;
};

// A structured determinant specification is inconsistent
// (row count != column count, overlapping blocks, ...).
struct BadSpec : Error {
    using Error::Error;
};

// An unknown check-variant identifier was requested.
struct WrongVariant : Error {
    using Error::Error;
};

// The order-by-order linear system of a reduced-family seeding is
// inconsistent: the overdetermined part contradicts itself.
struct ReductionInconsistent : Error {
    using Error::Error;
};

// External input (a serialized family or report file, a fraction
// string, ...) does not match the documented schema.
struct MalformedInput : Error {
    using Error::Error;
};

// The order-by-order linear system does not determine all unknowns at
// some order; carries the order and the number of free parameters.
struct UnderdeterminedOrder : Error {
    int at_order;
    int free_parameters;
    UnderdeterminedOrder(int order, int free, const std::string& what)
        : Error(what), at_order(order), free_parameters(free) {}
};

}  // namespace tqfold
