#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace difflarge {

// Base of all workbench errors. `code()` is the machine-readable tag the CLI
// puts into its "error" JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class OrderUndefined : public Error {
public:
    explicit OrderUndefined(const std::string& what) : Error("OrderUndefined", what) {}
};

class DerivativeCapExceeded : public Error {
public:
    explicit DerivativeCapExceeded(const std::string& what)
        : Error("DerivativeCapExceeded", what) {}
};

class BaseFieldMismatch : public Error {
public:
    explicit BaseFieldMismatch(const std::string& what) : Error("BaseFieldMismatch", what) {}
};

class JetTooShort : public Error {
public:
    explicit JetTooShort(const std::string& what) : Error("JetTooShort", what) {}
};

class RequiresIrreducible : public Error {
public:
    explicit RequiresIrreducible(const std::string& what) : Error("RequiresIrreducible", what) {}
};

class ReducibleDetected : public Error {
public:
    explicit ReducibleDetected(const std::string& what) : Error("ReducibleDetected", what) {}
};

class PreconditionFailed : public Error {
public:
    explicit PreconditionFailed(const std::string& what) : Error("PreconditionFailed", what) {}
};

class ZeroSeparant : public Error {
public:
    explicit ZeroSeparant(const std::string& what) : Error("ZeroSeparant", what) {}
};

class FactorizationInconclusive : public Error {
public:
    explicit FactorizationInconclusive(const std::string& what)
        : Error("FactorizationInconclusive", what) {}
};

class InconclusiveNonvanishing : public Error {
public:
    explicit InconclusiveNonvanishing(const std::string& what)
        : Error("InconclusiveNonvanishing", what) {}
};

class FewerFound : public Error {
public:
    explicit FewerFound(std::size_t found)
        : Error("FewerFound", "only " + std::to_string(found) + " solutions located"),
          found_(found) {}

    std::size_t found() const noexcept { return found_; }

private:
    std::size_t found_;
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("InternalError", what) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error("SyntaxError", what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public Error {
public:
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : Error("UnknownIdentifier",
                "unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace difflarge
