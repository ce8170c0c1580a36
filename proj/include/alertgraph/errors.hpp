#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alertgraph {

/// Base of every error raised by the library. `code()` is the stable name
/// used in API error bodies.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Input could not be read as an alert file at all.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& message) : Error("FormatError", message) {}
};

/// A single record was rejected under the strict parse policy.
class RecordError : public Error {
public:
    RecordError(std::size_t line, const std::string& message)
        : Error("RecordError", "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message) : Error("ValidationError", message) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("ConfigError", message) {}
};

class EmptyNodeSetError : public Error {
public:
    EmptyNodeSetError() : Error("EmptyNodeSetError", "node set is empty") {}
};

class NotFound : public Error {
public:
    explicit NotFound(const std::string& message) : Error("NotFound", message) {}
};

class NotReady : public Error {
public:
    explicit NotReady(const std::string& message) : Error("NotReady", message) {}
};

class StorageError : public Error {
public:
    explicit StorageError(const std::string& message) : Error("StorageError", message) {}
};

}  // namespace alertgraph
