#include "ipns/intrinsic/state_buffer.hpp"

#include "ipns/numerics/errors.hpp"

namespace ipns::intrinsic {

EncodedStateBuffer::EncodedStateBuffer(int dim, bool unit_box) : dim_(dim), unit_box_(unit_box) {
  if (dim < 1) throw ShapeError("EncodedStateBuffer: dimension must be >= 1");
}

void EncodedStateBuffer::push(const Vector& z) {
  if (z.size() != dim_) throw ShapeError("EncodedStateBuffer: point dimension mismatch");
  if (!z.allFinite()) throw DomainError("EncodedStateBuffer: non-finite point");
  if (unit_box_ && ((z.array() <= 0.0).any() || (z.array() >= 1.0).any()))
    throw DomainError("EncodedStateBuffer: code outside (0,1)");
  data_.insert(data_.end(), z.data(), z.data() + dim_);
  ++size_;
}

std::uint64_t EncodedStateBuffer::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data_.data());
  for (std::size_t i = 0; i < data_.size() * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ipns::intrinsic
