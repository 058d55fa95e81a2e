#pragma once

#include <stdexcept>
#include <string>

namespace csb {

// Malformed tables: out-of-range indices, missing or duplicate composition
// entries, size mismatches. Distinct from axiom violations, which are
// reported through ValidationReport.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON that does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A theorem hypothesis (embedding, validity) does not hold for the input.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called outside its precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The h construction hit an internal invariant failure.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A certificate witness failed to re-check.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two rules invert to the same value: the index map is not injective.
class AmbiguousPredecessor : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resource cap exceeded (e.g. group order above the isomorphism search cap).
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace csb
