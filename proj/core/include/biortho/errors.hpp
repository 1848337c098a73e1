#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

// Bad arguments: shapes, ranges, mismatched layouts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Numerical guards. The CLI maps these to exit code 3.
class NumericalGuard : public Error {
 public:
  using Error::Error;
};

class SingularMode : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

class ZeroNorm : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

class BoundaryWrap : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

class PolarAxis : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

class ZeroVector : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

class QuadratureWindow : public NumericalGuard {
 public:
  using NumericalGuard::NumericalGuard;
};

}  // namespace biortho
