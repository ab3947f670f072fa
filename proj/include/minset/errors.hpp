#pragma once

#include <stdexcept>
#include <string>

namespace minset {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input files: bad jsonl/tsv/csv rows, missing fields, duplicates.
// Messages name the offending line and field where possible.
class ParseError : public Error {
public:
    using Error::Error;
};

// Invalid arguments or config values, and mismatched inputs between stages.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A constrained solve has no solution (e.g. every vertex of some cycle is
// excluded from consideration).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// The requested operation is not supported on this input (e.g. exhaustive
// enumeration on a strongly connected component above the exact threshold).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Too little data to compute the requested statistic.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace minset
