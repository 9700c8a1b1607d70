#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ipns/numerics/adam.hpp"
#include "ipns/numerics/mlp.hpp"
#include "ipns/numerics/rng.hpp"

namespace ipns::io {

// Whitespace-separated text records. Reals are written as hex floats so a
// write/read cycle reproduces every bit.

void write_real(std::ostream& os, double x);
double read_real(std::istream& is);

void write_vector(std::ostream& os, std::string_view tag, const Vector& v);
Vector read_vector(std::istream& is, std::string_view tag);

void write_mlp(std::ostream& os, std::string_view tag, const MlpParams& params);
MlpParams read_mlp(std::istream& is, std::string_view tag);

void write_adam(std::ostream& os, std::string_view tag, const AdamState& state);
AdamState read_adam(std::istream& is, std::string_view tag);

void write_rng(std::ostream& os, std::string_view tag, const RngStream& rng);
RngStream read_rng(std::istream& is, std::string_view tag);

/// Reads one token and throws FormatError unless it equals `expected`.
void expect_token(std::istream& is, std::string_view expected);
std::string read_token(std::istream& is);
long long read_int(std::istream& is);

}  // namespace ipns::io
