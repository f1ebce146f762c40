#pragma once

#include <stdexcept>
#include <string>

namespace fatigue {

// Tangent operator of the damage model lost positive definiteness
// (denominator D(omega2) <= 0 or kappa <= 0). Callers treat this as
// material failure, not as a programming error.
class SingularTangent : public std::runtime_error {
public:
  explicit SingularTangent(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidScenario : public std::runtime_error {
public:
  explicit InvalidScenario(const std::string& what) : std::runtime_error(what) {}
};

class MissingSNEntry : public std::runtime_error {
public:
  explicit MissingSNEntry(const std::string& what) : std::runtime_error(what) {}
};

class MissingGridEntry : public std::runtime_error {
public:
  explicit MissingGridEntry(const std::string& what) : std::runtime_error(what) {}
};

class NonFiniteLoss : public std::runtime_error {
public:
  explicit NonFiniteLoss(const std::string& what) : std::runtime_error(what) {}
};

class ZeroVariance : public std::runtime_error {
public:
  explicit ZeroVariance(const std::string& what) : std::runtime_error(what) {}
};

class CorruptFile : public std::runtime_error {
public:
  explicit CorruptFile(const std::string& what) : std::runtime_error(what) {}
};

class VersionMismatch : public std::runtime_error {
public:
  explicit VersionMismatch(const std::string& what) : std::runtime_error(what) {}
};

class PredictorOutOfRange : public std::runtime_error {
public:
  explicit PredictorOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fatigue
