#pragma once

#include <stdexcept>
#include <string>

namespace weakkam {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// spec.b is not identically zero where a reversible Hamiltonian is required
struct NotReversibleError : Error {
  using Error::Error;
};

// iteration hit its step cap without meeting the requested tolerance
struct NoConvergenceError : Error {
  using Error::Error;
};

// forward iteration grew past the blow-up bound
struct DivergenceError : Error {
  using Error::Error;
};

// phase-space trajectory left the admissible momentum window
struct BlowupError : Error {
  using Error::Error;
};

struct NotFixedPointError : Error {
  using Error::Error;
};

struct NotSaddleError : Error {
  using Error::Error;
};

// stable manifold could not be represented as a graph p = h(x)
struct GraphFailureError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace weakkam
