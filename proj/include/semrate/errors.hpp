#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semrate {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AllZeroWeights : Error {
    AllZeroWeights() : Error("normalize: all weights are zero") {}
};

struct InvalidDistribution : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ZeroLogicalProbability : Error {
    ZeroLogicalProbability() : Error("logical probability T(theta) is zero") {}
    using Error::Error;
};

struct ZeroPrior : Error {
    explicit ZeroPrior(std::size_t i)
        : Error("prior is zero at index " + std::to_string(i) +
                " where the likelihood is positive"),
          index(i) {}
    std::size_t index;
};

struct ZeroMarginal : Error {
    using Error::Error;
};

struct AllZeroRow : Error {
    explicit AllZeroRow(std::size_t i)
        : Error("kernel row " + std::to_string(i) +
                " has no positive entry (instance excluded by every label)"),
          row(i) {}
    std::size_t row;
};

struct ZeroPartition : Error {
    explicit ZeroPartition(std::size_t i)
        : Error("partition sum Z_" + std::to_string(i) +
                " is zero (marginal support disjoint from row support)"),
          row(i) {}
    std::size_t row;
};

struct BadParams : Error {
    using Error::Error;
};

struct DegenerateSample : Error {
    DegenerateSample()
        : Error("sampling mass is concentrated where every candidate truth function vanishes") {}
};

struct TargetOutOfRange : Error {
    using Error::Error;
};

struct OverflowGuard : Error {
    using Error::Error;
};

// File ingestion errors.
struct ParseError : Error {
    using Error::Error;
};

struct BadMagic : ParseError {
    using ParseError::ParseError;
};

struct TruncatedFile : ParseError {
    using ParseError::ParseError;
};

struct UnsupportedMaxval : ParseError {
    using ParseError::ParseError;
};

// Configuration validation failures (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace semrate
