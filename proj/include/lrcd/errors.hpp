#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lrcd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape disagreement between inputs (label length vs node count, etc).
struct DimensionError : Error {
    using Error::Error;
};

// Invalid construction input: bad probabilities, self-loops, out-of-range labels.
struct ConfigError : Error {
    using Error::Error;
};

// Non-finite intermediate value where the computation cannot continue.
struct NumericalError : Error {
    using Error::Error;
};

// M-step found a community group with (numerically) zero posterior mass.
struct EmptyGroupError : Error {
    int group;  // 1-based
    EmptyGroupError(int group_, const std::string& msg) : Error(msg), group(group_) {}
};

// Multinomial M-step: a group's posterior mass sits entirely on degree-zero nodes.
struct DegenerateDegreeError : Error {
    int group;
    DegenerateDegreeError(int group_, const std::string& msg) : Error(msg), group(group_) {}
};

// Every restart of an EM fit failed.
struct FitError : Error {
    using Error::Error;
};

// Every K in a model-selection scan failed.
struct SelectError : Error {
    using Error::Error;
};

// File parse failure; carries the 1-based line number.
struct IngestError : Error {
    long line;
    IngestError(long line_, const std::string& msg) : Error(msg), line(line_) {}
};

// Node identifiers do not match between network and covariate/label files.
struct JoinError : Error {
    std::vector<std::string> identifiers;
    JoinError(std::vector<std::string> ids, const std::string& msg)
        : Error(msg), identifiers(std::move(ids)) {}
};

struct UnsupportedError : Error {
    using Error::Error;
};

}  // namespace lrcd
