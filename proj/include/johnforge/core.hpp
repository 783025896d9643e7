#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace johnforge {

using Vec2 = std::complex<double>;

inline double dist(Vec2 a, Vec2 b) { return std::abs(a - b); }

// Error kinds mirror the failure modes of the pipeline stages.  The CLI
// maps any Error to exit code 1 with a structured JSON payload.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& m) : Error("parameter", m) {}
};
struct ConstructionError : Error {
  explicit ConstructionError(const std::string& m) : Error("construction", m) {}
};
struct ConnectivityError : Error {
  explicit ConnectivityError(const std::string& m) : Error("connectivity", m) {}
};
struct GeometryError : Error {
  explicit GeometryError(const std::string& m) : Error("geometry", m) {}
};

// Axis-aligned square window all computations live in.
struct Box {
  Vec2 center{0.0, 0.0};
  double half_side{2.5};

  double side() const { return 2.0 * half_side; }
  Vec2 lo() const { return center - Vec2(half_side, half_side); }
  Vec2 hi() const { return center + Vec2(half_side, half_side); }

  void validate() const {
    if (!(half_side > 0.0)) throw ParameterError("box half_side must be positive");
  }
};

}  // namespace johnforge
