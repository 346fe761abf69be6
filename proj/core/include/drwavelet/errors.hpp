#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace drw {

/// Invalid argument supplied to a public operation (out-of-range index,
/// malformed shape, invalid configuration).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An ensemble failed the σ-consistency relations beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A coefficient ensemble does not have the A_k = w_k (a_k, b_k^T) row structure.
class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& what, std::vector<int> index, double residual)
      : std::runtime_error(what), index_(std::move(index)), residual_(residual) {}

  const std::vector<int>& index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<int> index_;
  double residual_;
};

class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}

  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// File or schema problem; carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::string path)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace drw
