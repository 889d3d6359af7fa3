#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gamefi/api/client.hpp"
#include "gamefi/genesis.hpp"
#include "gamefi/json_views.hpp"
#include "gamefi/sim/agents.hpp"
#include "gamefi/sim/metrics.hpp"
#include "gamefi/sim/scenario.hpp"

namespace gamefi::sim {

/// Agents (index order) followed by harness reporters, plus the genesis
/// that funds them.
struct Population {
    std::vector<AgentState> actors;
    std::size_t agent_count = 0;
    std::vector<FeedLink> feed_links;
    std::vector<std::uint64_t> pool_ids;
    GenesisConfig genesis;
};

/// Deterministic in the scenario (seed included). Throws ScenarioError or
/// GenesisError.
Population make_population(const Scenario& s);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<Mode> mode;
    /// Drive an already running gateway (started with manual block
    /// production and the genesis from `make_population`).
    std::optional<std::string> api_url;
    std::optional<std::filesystem::path> export_dir;
};

struct RunResult {
    GenesisConfig genesis;
    std::vector<Block> blocks;
    Hash32 final_root;
    MetricsCollector metrics;
    api::TransportStats transport;
    std::uint64_t submitted = 0;
    std::uint64_t submit_refused = 0;  // non-200 answers to POST /tx
    ojson metrics_json;
};

/// Runs the scenario and analyses the resulting chain by replay. Throws
/// IntegrityError if the recorded chain does not replay.
RunResult run_scenario(Scenario s, const RunOptions& options = {});

}  // namespace gamefi::sim
