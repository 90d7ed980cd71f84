#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace volcusum {

enum class ErrorKind {
  Parse,       // malformed or invalid input file
  Config,      // invalid parameters or panel dimensions
  Degenerate,  // flat day, zero covariance and similar numerical degeneracies
};

/// Exception carrying a machine-readable kind and, where known, the offending
/// input location (file line, or panel row/column, 0-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  std::optional<std::size_t> line;
  std::optional<std::size_t> row;
  std::optional<std::size_t> column;

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Config: return "config";
    case ErrorKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace volcusum
