#include "ipns/numerics/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "ipns/numerics/errors.hpp"

namespace ipns::io {

void write_real(std::ostream& os, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  os << buf;
}

std::string read_token(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw FormatError("unexpected end of file");
  return tok;
}

double read_real(std::istream& is) {
  const std::string tok = read_token(is);
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) throw FormatError("bad real '" + tok + "'");
  return x;
}

long long read_int(std::istream& is) {
  const std::string tok = read_token(is);
  char* end = nullptr;
  const long long x = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size()) throw FormatError("bad integer '" + tok + "'");
  return x;
}

void expect_token(std::istream& is, std::string_view expected) {
  const std::string tok = read_token(is);
  if (tok != expected)
    throw FormatError("expected '" + std::string(expected) + "', found '" + tok + "'");
}

void write_vector(std::ostream& os, std::string_view tag, const Vector& v) {
  os << "vector " << tag << ' ' << v.size();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << ' ';
    write_real(os, v(i));
  }
  os << '\n';
}

Vector read_vector(std::istream& is, std::string_view tag) {
  expect_token(is, "vector");
  expect_token(is, tag);
  const long long n = read_int(is);
  if (n < 0) throw FormatError("negative vector length");
  Vector v(n);
  for (long long i = 0; i < n; ++i) v(i) = read_real(is);
  return v;
}

void write_mlp(std::ostream& os, std::string_view tag, const MlpParams& params) {
  os << "mlp " << tag << ' ' << params.layers.size() << '\n';
  for (const auto& l : params.layers) {
    os << "layer " << l.out_dim() << ' ' << l.in_dim() << ' ' << to_string(l.activation) << '\n';
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) {
      write_real(os, l.weight.data()[i]);
      os << ((i + 1) % 8 == 0 ? '\n' : ' ');
    }
    os << '\n';
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) {
      write_real(os, l.bias(i));
      os << ' ';
    }
    os << '\n';
  }
}

MlpParams read_mlp(std::istream& is, std::string_view tag) {
  expect_token(is, "mlp");
  expect_token(is, tag);
  const long long n = read_int(is);
  if (n < 0) throw FormatError("negative layer count");
  MlpParams p;
  for (long long k = 0; k < n; ++k) {
    expect_token(is, "layer");
    const long long out = read_int(is);
    const long long in = read_int(is);
    if (out < 1 || in < 1) throw FormatError("bad layer shape");
    Layer l;
    l.activation = activation_from_string(read_token(is));
    l.weight.resize(out, in);
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) l.weight.data()[i] = read_real(is);
    l.bias.resize(out);
    for (Eigen::Index i = 0; i < out; ++i) l.bias(i) = read_real(is);
    p.layers.push_back(std::move(l));
  }
  p.validate();
  return p;
}

void write_adam(std::ostream& os, std::string_view tag, const AdamState& s) {
  os << "adam " << tag << ' ' << s.step << ' ';
  write_real(os, s.learning_rate);
  os << ' ';
  write_real(os, s.beta1);
  os << ' ';
  write_real(os, s.beta2);
  os << ' ';
  write_real(os, s.epsilon);
  os << '\n';
  write_mlp(os, "m", s.first_moment);
  write_mlp(os, "v", s.second_moment);
}

AdamState read_adam(std::istream& is, std::string_view tag) {
  expect_token(is, "adam");
  expect_token(is, tag);
  AdamState s;
  s.step = read_int(is);
  s.learning_rate = read_real(is);
  s.beta1 = read_real(is);
  s.beta2 = read_real(is);
  s.epsilon = read_real(is);
  s.first_moment = read_mlp(is, "m");
  s.second_moment = read_mlp(is, "v");
  return s;
}

void write_rng(std::ostream& os, std::string_view tag, const RngStream& rng) {
  const std::string state = rng.serialize();
  // engine state is a long run of integers; store its token count up front
  std::size_t tokens = 0;
  bool in_tok = false;
  for (char c : state) {
    const bool space = c == ' ';
    if (!space && !in_tok) ++tokens;
    in_tok = !space;
  }
  os << "rng " << tag << ' ' << tokens << ' ' << state << '\n';
}

RngStream read_rng(std::istream& is, std::string_view tag) {
  expect_token(is, "rng");
  expect_token(is, tag);
  const long long n = read_int(is);
  if (n < 1) throw FormatError("bad rng token count");
  std::string state;
  for (long long i = 0; i < n; ++i) {
    if (i) state += ' ';
    state += read_token(is);
  }
  return RngStream::deserialize(state);
}

}  // namespace ipns::io
