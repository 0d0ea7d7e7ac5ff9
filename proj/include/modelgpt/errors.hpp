#pragma once

#include <stdexcept>
#include <string>

namespace modelgpt {

// Error taxonomy shared by all modules. Each failure mode named in a module
// contract maps to one of these, so callers can catch by category.

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TrainingError : std::runtime_error {
    explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IngestionError : std::runtime_error {
    explicit IngestionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ClientError : std::runtime_error {
    explicit ClientError(const std::string& msg) : std::runtime_error(msg) {}
};

// Endpoint answered but the completion is unusable (e.g. empty content).
// Kept separate from ClientError so callers can fall back to the template path.
struct DegenerateResponseError : ClientError {
    explicit DegenerateResponseError(const std::string& msg) : ClientError(msg) {}
};

struct UnrecognizedRequirementError : InputError {
    explicit UnrecognizedRequirementError(const std::string& msg) : InputError(msg) {}
};

}  // namespace modelgpt
