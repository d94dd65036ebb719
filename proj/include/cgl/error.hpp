#pragma once

#include <stdexcept>
#include <string>

namespace cgl {

// Exit-code category carried by every library error.
enum class ErrorKind { usage = 1, data = 2, numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& context, const std::string& detail)
        : std::runtime_error(context + ": " + detail), kind_(kind), context_(context), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& context() const noexcept { return context_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string context_;
    std::string detail_;
};

class DataError : public Error {
public:
    DataError(const std::string& context, const std::string& detail)
        : Error(ErrorKind::data, context, detail) {}
};

class NumericalError : public Error {
public:
    NumericalError(const std::string& context, const std::string& detail)
        : Error(ErrorKind::numerical, context, detail) {}
};

class UsageError : public Error {
public:
    UsageError(const std::string& context, const std::string& detail)
        : Error(ErrorKind::usage, context, detail) {}
};

}  // namespace cgl
