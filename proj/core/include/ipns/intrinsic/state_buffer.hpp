#pragma once

#include <cstdint>
#include <vector>

#include "ipns/numerics/mlp.hpp"

namespace ipns::intrinsic {

/// Append-only store of (encoded) states, one per collected timestep.
class EncodedStateBuffer {
 public:
  /// `unit_box` requires every stored point to lie in (0,1)^dim, which holds
  /// for sigmoid codes; raw-state buffers switch it off.
  explicit EncodedStateBuffer(int dim, bool unit_box = true);

  /// Throws ShapeError on dimension mismatch and DomainError on non-finite
  /// or (with unit_box) out-of-range points.
  void push(const Vector& z);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int dim() const { return dim_; }
  Eigen::Map<const Vector> point(std::size_t i) const {
    return Eigen::Map<const Vector>(data_.data() + i * static_cast<std::size_t>(dim_), dim_);
  }
  const double* data() const { return data_.data(); }

  std::uint64_t checksum() const;

 private:
  int dim_;
  bool unit_box_;
  std::size_t size_ = 0;
  std::vector<double> data_;
};

}  // namespace ipns::intrinsic
