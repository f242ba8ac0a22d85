#pragma once

#include <stdexcept>
#include <string>

namespace ymlab {

// All recoverable failures are thrown as Error with a stable machine-readable
// kind tag; the CLI maps kinds to exit codes and stage labels.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

inline Error unsupported_algebra(const std::string& m) { return Error("unsupported-algebra", m); }
inline Error degenerate_algebra(const std::string& m) { return Error("degenerate-algebra", m); }
inline Error inconsistent_structure(const std::string& m) { return Error("inconsistent-structure-constants", m); }
inline Error dimension_error(const std::string& m) { return Error("dimension", m); }
inline Error shape_error(const std::string& m) { return Error("shape", m); }
inline Error parameter_error(const std::string& m) { return Error("parameter", m); }
inline Error discretization_unsafe(const std::string& m) { return Error("discretization-unsafe", m); }
inline Error invalid_gauge(const std::string& m) { return Error("invalid-gauge", m); }
inline Error convergence_error(const std::string& m) { return Error("convergence", m); }
inline Error size_error(const std::string& m) { return Error("size", m); }
inline Error fit_degeneracy(const std::string& m) { return Error("fit-degeneracy", m); }
inline Error integration_error(const std::string& m) { return Error("integration", m); }
inline Error mismatch_error(const std::string& m) { return Error("mismatch", m); }
inline Error pole_error(const std::string& m) { return Error("landau-pole", m); }
inline Error invalid_graph(const std::string& m) { return Error("invalid-graph", m); }
inline Error io_error(const std::string& m) { return Error("io", m); }
inline Error config_error(const std::string& m) { return Error("config", m); }

}  // namespace ymlab
