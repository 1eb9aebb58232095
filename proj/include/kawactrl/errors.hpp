#pragma once

#include <stdexcept>
#include <string>

namespace kawactrl {

enum class ErrorKind {
  invalid_input,
  undersampled,
  resolution,
  work_limit,
  constant_not_representable,
  search_cap,
  not_generator,
  no_convergence,
  depth_cap,
  window_collapse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

// Grid too coarse for a lossless synthesis/analysis round trip.
class UndersampledError : public Error {
 public:
  explicit UndersampledError(const std::string& what)
      : Error(ErrorKind::undersampled, what) {}
};

// Spectral content reached the top of the retained band, or the state blew up.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what)
      : Error(ErrorKind::resolution, what) {}
};

// A single segment would need more steps than SolverConfig::max_steps.
class WorkLimitError : public Error {
 public:
  explicit WorkLimitError(const std::string& what)
      : Error(ErrorKind::work_limit, what) {}
};

class ConstantNotRepresentable : public Error {
 public:
  explicit ConstantNotRepresentable(const std::string& what)
      : Error(ErrorKind::constant_not_representable, what) {}
};

class SearchCapExceeded : public Error {
 public:
  explicit SearchCapExceeded(const std::string& what)
      : Error(ErrorKind::search_cap, what) {}
};

class NotGenerator : public Error {
 public:
  explicit NotGenerator(const std::string& what)
      : Error(ErrorKind::not_generator, what) {}
};

class DepthCapExceeded : public Error {
 public:
  explicit DepthCapExceeded(const std::string& what)
      : Error(ErrorKind::depth_cap, what) {}
};

class WindowCollapse : public Error {
 public:
  explicit WindowCollapse(const std::string& what)
      : Error(ErrorKind::window_collapse, what) {}
};

}  // namespace kawactrl
