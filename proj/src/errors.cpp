#include "kawactrl/errors.hpp"

namespace kawactrl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::undersampled: return "undersampled";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::work_limit: return "work_limit";
    case ErrorKind::constant_not_representable: return "constant_not_representable";
    case ErrorKind::search_cap: return "search_cap";
    case ErrorKind::not_generator: return "not_generator";
    case ErrorKind::no_convergence: return "no_convergence";
    case ErrorKind::depth_cap: return "depth_cap";
    case ErrorKind::window_collapse: return "window_collapse";
  }
  return "unknown";
}

}  // namespace kawactrl
