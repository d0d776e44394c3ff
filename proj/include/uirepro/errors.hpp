#pragma once

#include <stdexcept>
#include <string>

namespace uirepro {

// Root of the project's error taxonomy. Every failure the engine can
// signal derives from this so callers can catch one type at the boundary.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- view-hierarchy / UI model ---------------------------------------------

class MalformedXmlError : public Error {
public:
    using Error::Error;
};

class EmptyDocumentError : public Error {
public:
    using Error::Error;
};

// --- device -----------------------------------------------------------------

class DeviceError : public Error {
public:
    using Error::Error;
};

// An action referenced a widget id that does not exist in the current state.
class UnresolvedTargetError : public DeviceError {
public:
    using DeviceError::DeviceError;
};

// The app under test has crashed; interaction is impossible until reset().
class SessionCrashedError : public DeviceError {
public:
    using DeviceError::DeviceError;
};

// A rollback token that does not belong to this device session.
class UnknownSnapshotError : public DeviceError {
public:
    using DeviceError::DeviceError;
};

// --- app model loading ------------------------------------------------------

class SchemaViolationError : public Error {
public:
    using Error::Error;
};

class DanglingStateKeyError : public SchemaViolationError {
public:
    using SchemaViolationError::SchemaViolationError;
};

class DuplicateStateKeyError : public SchemaViolationError {
public:
    using SchemaViolationError::SchemaViolationError;
};

// --- bug reports ------------------------------------------------------------

class UnreadableFileError : public Error {
public:
    using Error::Error;
};

class MissingTitleError : public Error {
public:
    using Error::Error;
};

// Report analysis kept producing output that fails envelope validation.
class UnparseableSpecificationError : public Error {
public:
    using Error::Error;
};

// --- LLM gateway ------------------------------------------------------------

class GatewayError : public Error {
public:
    using Error::Error;
};

class AuthError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// The configured token cap would be (or has been) exceeded.
class BudgetExceededError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

// A prompt template placeholder had no attribute supplied for it.
class MissingAttributeError : public Error {
public:
    using Error::Error;
};

// --- metrics ----------------------------------------------------------------

class EmptyInputError : public Error {
public:
    using Error::Error;
};

} // namespace uirepro
