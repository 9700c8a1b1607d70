#include "ipns/numerics/rng.hpp"

#include <sstream>

#include "ipns/numerics/errors.hpp"

namespace ipns {
namespace {

// FNV-1a, 64-bit.
std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::string id, std::uint64_t seed)
    : id_(std::move(id)), seed_(seed), engine_(mix(seed ^ mix(hash_name(id_)))) {}

double RngStream::uniform() {
  ++draws_;
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::uniform(double low, double high) {
  ++draws_;
  return std::uniform_real_distribution<double>(low, high)(engine_);
}

double RngStream::normal() {
  ++draws_;
  return normal_(engine_);
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw DomainError("RngStream::index: empty range");
  ++draws_;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::string RngStream::serialize() const {
  std::ostringstream os;
  os << id_ << ' ' << seed_ << ' ' << draws_ << ' ' << engine_ << ' ' << normal_;
  return os.str();
}

RngStream RngStream::deserialize(const std::string& text) {
  std::istringstream is(text);
  RngStream r;
  is >> r.id_ >> r.seed_ >> r.draws_ >> r.engine_ >> r.normal_;
  if (!is) throw FormatError("RngStream: malformed state '" + text.substr(0, 40) + "'");
  return r;
}

bool operator==(const RngStream& a, const RngStream& b) {
  return a.id_ == b.id_ && a.seed_ == b.seed_ && a.draws_ == b.draws_ && a.engine_ == b.engine_ &&
         a.normal_ == b.normal_;
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view consumer) {
  return mix(run_seed * 0x2545f4914f6cdd1dULL ^ hash_name(consumer));
}

}  // namespace ipns
