#pragma once

#include <stdexcept>
#include <string>

namespace hotspot {

// Error hierarchy grouped by process exit code:
//   ConfigError -> 1, DataError -> 2, IoError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// An out-of-invariant parameter value; the message names the parameter.
class ParamError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A column required by the schema map is missing, or a requested feature
// is not part of the schema; the message names the column/feature.
class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class InputError : public IoError {
public:
    using IoError::IoError;
};

class EmptyInputError : public DataError {
public:
    using DataError::DataError;
};

// Silhouette is undefined for fewer than two clusters.
class UndefinedScoreError : public DataError {
public:
    using DataError::DataError;
};

// Weekday shares are undefined for an all-zero table.
class UndefinedShareError : public DataError {
public:
    using DataError::DataError;
};

class ProjectionDomainError : public DataError {
public:
    using DataError::DataError;
};

inline int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) return 1;
    if (dynamic_cast<const DataError*>(&e) != nullptr) return 2;
    if (dynamic_cast<const IoError*>(&e) != nullptr) return 3;
    return 2;
}

}  // namespace hotspot
