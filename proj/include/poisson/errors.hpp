#pragma once

#include <stdexcept>
#include <string>

namespace poisson {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSkew : public Error {
public:
    using Error::Error;
};

class NotTangent : public Error {
public:
    using Error::Error;
};

class NotUnit : public Error {
public:
    using Error::Error;
};

class Degenerate : public Error {
public:
    using Error::Error;
};

class ConstraintViolated : public Error {
public:
    using Error::Error;
};

class SingularMetric : public Error {
public:
    using Error::Error;
};

class TurningRegion : public Error {
public:
    using Error::Error;
};

class NotUnitSpeed : public Error {
public:
    using Error::Error;
};

class StepRejected : public Error {
public:
    using Error::Error;
};

class InvariantBlown : public Error {
public:
    using Error::Error;
};

class HookAbort : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace poisson
