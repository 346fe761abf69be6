#include "drwavelet/grid.hpp"

#include <string>

#include "drwavelet/errors.hpp"

namespace drw {

std::strong_ordering operator<=>(const GridIndex& a, const GridIndex& b) {
  if (auto c = a.coords.size() <=> b.coords.size(); c != 0) return c;
  for (std::size_t i = a.coords.size(); i-- > 0;) {
    if (auto c = a.coords[i] <=> b.coords[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Grid::Grid(int dim, int extent) : dim_(dim), extent_(extent), size_(1) {
  if (dim < 1) throw ArgumentError("grid dimension must be >= 1");
  if (extent < 1) throw ArgumentError("grid extent must be >= 1");
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(extent);
}

std::size_t Grid::linear(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != dim_) throw ArgumentError("grid index has wrong dimension");
  std::size_t lin = 0;
  for (int i = dim_; i-- > 0;) {
    if (coords[i] < 0 || coords[i] >= extent_) {
      throw ArgumentError("grid coordinate " + std::to_string(coords[i]) + " outside [0, " +
                          std::to_string(extent_ - 1) + "]");
    }
    lin = lin * extent_ + coords[i];
  }
  return lin;
}

void Grid::coords(std::size_t linear, std::span<int> out) const {
  for (int i = 0; i < dim_; ++i) {
    out[i] = static_cast<int>(linear % extent_);
    linear /= extent_;
  }
}

GridIndex Grid::index(std::size_t linear) const {
  GridIndex g{std::vector<int>(dim_)};
  coords(linear, g.coords);
  return g;
}

Vertex vertex_of(int j, int n) {
  if (n < 1 || n > 16) throw ArgumentError("dimension out of range");
  if (j < 0 || j >= (1 << n)) {
    throw ArgumentError("vertex index " + std::to_string(j) + " outside [0, 2^n - 1]");
  }
  Vertex v{j, std::vector<int>(n)};
  for (int k = 0; k < n; ++k) v.bits[k] = (j >> k) & 1;
  return v;
}

int vertex_parity(std::span<const int> k, int ell) {
  int p = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if ((ell >> i) & 1) p += k[i];
  }
  return p & 1;
}

PermutationMatrix::PermutationMatrix(int j, int n) : j_(j), n_(n) {
  vertex_of(j, n);  // range check
  const int size = 1 << n;
  entries_ = Eigen::MatrixXi::Zero(size, size);
  for (int k = 0; k < size; ++k) entries_(k, j ^ k) = 1;
}

PermutationMatrix::PermutationMatrix(int j, int n, Eigen::MatrixXi entries)
    : j_(j), n_(n), entries_(std::move(entries)) {}

PermutationMatrix operator*(const PermutationMatrix& a, const PermutationMatrix& b) {
  if (a.n_ != b.n_) throw ArgumentError("permutation dimension mismatch");
  return PermutationMatrix(a.j_ ^ b.j_, a.n_, a.entries_ * b.entries_);
}

PermutationMatrix permutation_matrix(int j, int n) { return PermutationMatrix(j, n); }

}  // namespace drw
