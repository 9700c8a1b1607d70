#include "ipns/agents/checkpoint.hpp"

#include <fstream>

#include "ipns/numerics/errors.hpp"
#include "ipns/numerics/serialize.hpp"

namespace ipns::agents {

void save_checkpoint(std::ostream& os, Agent& agent, const std::vector<RngStream>& rngs) {
  os << "ipns-checkpoint " << kCheckpointVersion << '\n';
  os << "algorithm " << to_string(agent.algorithm()) << '\n';
  os << "updates " << agent.update_count() << '\n';
  const auto refs = agent.all_parameters();
  os << "networks " << refs.size() << '\n';
  for (const auto& r : refs) {
    io::write_mlp(os, r.name, *r.params);
    if (r.optimizer) io::write_adam(os, r.name, *r.optimizer);
  }
  os << "rngs " << rngs.size() << '\n';
  for (const auto& rng : rngs) io::write_rng(os, "stream", rng);
  os << "end\n";
}

void save_checkpoint(const std::filesystem::path& path, Agent& agent,
                     const std::vector<RngStream>& rngs) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
  save_checkpoint(os, agent, rngs);
}

std::vector<RngStream> load_checkpoint(std::istream& is, Agent& agent) {
  io::expect_token(is, "ipns-checkpoint");
  const long long version = io::read_int(is);
  if (version != kCheckpointVersion)
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  io::expect_token(is, "algorithm");
  if (algorithm_from_string(io::read_token(is)) != agent.algorithm())
    throw FormatError("checkpoint algorithm does not match agent");
  io::expect_token(is, "updates");
  const long long updates = io::read_int(is);

  auto refs = agent.all_parameters();
  io::expect_token(is, "networks");
  if (io::read_int(is) != static_cast<long long>(refs.size()))
    throw FormatError("checkpoint network count does not match agent");
  for (auto& r : refs) {
    MlpParams p = io::read_mlp(is, r.name);
    if (!p.same_shape(*r.params)) throw FormatError("checkpoint shape mismatch in " + r.name);
    *r.params = std::move(p);
    if (r.optimizer) {
      AdamState s = io::read_adam(is, r.name);
      if (!s.first_moment.same_shape(*r.params))
        throw FormatError("checkpoint optimizer shape mismatch in " + r.name);
      *r.optimizer = std::move(s);
    }
  }
  io::expect_token(is, "rngs");
  const long long n = io::read_int(is);
  std::vector<RngStream> rngs;
  for (long long i = 0; i < n; ++i) rngs.push_back(io::read_rng(is, "stream"));
  io::expect_token(is, "end");
  agent.set_update_count(updates);
  return rngs;
}

std::vector<RngStream> load_checkpoint(const std::filesystem::path& path, Agent& agent) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path.string() + "'");
  return load_checkpoint(is, agent);
}

}  // namespace ipns::agents
