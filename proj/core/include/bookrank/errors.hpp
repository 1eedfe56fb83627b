#pragma once

#include <stdexcept>
#include <string>

namespace bookrank {

/// Base class for every error this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad run/stage configuration (invalid ranges, unknown keys, missing meta).
class ConfigError : public Error {
    using Error::Error;
};

/// Malformed input file; message names the line and field where known.
class ParseError : public Error {
    using Error::Error;
};

/// Dangling reference or broken ledger invariant.
class IntegrityError : public Error {
    using Error::Error;
};

/// Precondition violated by otherwise well-formed data.
class ValidationError : public Error {
    using Error::Error;
};

/// Unknown account, product, rep or cycle.
class LookupError : public Error {
    using Error::Error;
};

/// Account has no renewal cycle starting at the requested date.
class NoCycleError : public Error {
    using Error::Error;
};

/// Model training could not proceed (too few rows, non-finite targets).
class TrainingError : public Error {
    using Error::Error;
};

/// Scoring-time mismatch between a model and the serving matrix.
class ServingError : public Error {
    using Error::Error;
};

/// Narrative template could not be filled; message names the slot.
class TemplateError : public Error {
    using Error::Error;
};

/// A metric is undefined on the given group (e.g. empty group RIG).
class MetricError : public Error {
    using Error::Error;
};

/// CEM matching retained zero strata.
class NoOverlapError : public Error {
    using Error::Error;
};

/// Brute-force Shapley oracle asked to enumerate too many features.
class OracleScopeError : public Error {
    using Error::Error;
};

/// Ensemble violates a structural requirement (e.g. zero cover).
class ModelIntegrityError : public Error {
    using Error::Error;
};

} // namespace bookrank
