#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A coordinate, layout, or region does not fit inside its array.
class bounds_error : public error {
public:
  using error::error;
};

// Operands disagree in dimensions or plane.
class shape_error : public error {
public:
  using error::error;
};

// Invalid parameter or inconsistent configuration.
class config_error : public error {
public:
  using error::error;
};

// Input admits no meaningful result (e.g. constant field fed to the
// min/max scaler, zero field fed to the vector ditherer).
class degenerate_input_error : public error {
public:
  using error::error;
};

// A figure of merit is undefined for the given data (e.g. zero mean).
class metric_error : public error {
public:
  using error::error;
};

// Filesystem-level failure.
class io_error : public error {
public:
  using error::error;
};

} // namespace holo
