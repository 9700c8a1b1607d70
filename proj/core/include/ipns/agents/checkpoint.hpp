#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ipns/agents/agent.hpp"

namespace ipns::agents {

inline constexpr int kCheckpointVersion = 1;

/// Writes every network, optimizer state and the given rng streams as
/// hex-float text. Reading it back reproduces all of them bit for bit.
void save_checkpoint(std::ostream& os, Agent& agent, const std::vector<RngStream>& rngs);
void save_checkpoint(const std::filesystem::path& path, Agent& agent,
                     const std::vector<RngStream>& rngs);

/// Loads into an agent built with the same algorithm and shapes. Throws
/// FormatError on version, algorithm or shape mismatch.
std::vector<RngStream> load_checkpoint(std::istream& is, Agent& agent);
std::vector<RngStream> load_checkpoint(const std::filesystem::path& path, Agent& agent);

}  // namespace ipns::agents
