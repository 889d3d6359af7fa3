#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gamefi::sim {

enum class Policy { Minter, RandomTrader, Arbitrageur, Staker };

std::string_view to_string(Policy p);

struct MinterParams {
    double mint_probability = 0.6;
    double transfer_probability = 0.5;  // when not minting
};

struct TraderParams {
    double trade_probability = 1.0;
    std::uint64_t max_trade_bps = 100;  // of the input reserve
    std::uint64_t slippage_tolerance_bps = 200;
};

struct ArbitrageParams {
    std::uint64_t threshold_bps = 100;
    std::uint64_t slippage_tolerance_bps = 50;
};

struct StakerParams {
    std::uint64_t stake_fraction_bps = 2'000;
    std::uint64_t hold_blocks = 10;
    std::uint64_t fee_reserve = 1'000'000;  // native kept back for gas
};

struct Funding {
    std::uint64_t native = 0;
    std::map<std::string, std::uint64_t> tokens;
};

struct AgentGroup {
    Policy policy = Policy::Minter;
    std::uint64_t count = 1;
    Funding funding;
    MinterParams minter;
    TraderParams trader;
    ArbitrageParams arbitrage;
    StakerParams staker;
};

struct PoolSpec {
    std::string token_a;
    std::string token_b;
    std::uint64_t fee_bps = 30;
    std::uint64_t reserve_a = 0;
    std::uint64_t reserve_b = 0;
};

/// Oracle feed quoting the price of a pool's token_a in token_b, scaled by
/// 1e6. Reporters are harness-owned keys that publish every `report_every`
/// rounds.
struct FeedSpec {
    std::string feed_id;
    std::uint64_t pool_id = 1;
    std::uint64_t reporters = 3;
    std::uint64_t quorum = 3;
    std::uint64_t price_ppm = 1'000'000;
    std::uint64_t report_every = 5;
    std::uint64_t jitter_ppm = 0;
    std::uint64_t reporter_funding = 100'000'000;
};

enum class Mode { InProcess, Api };

struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 0;
    Mode mode = Mode::InProcess;
    std::uint64_t duration_blocks = 0;
    std::uint64_t interval_min = 15;
    std::uint64_t interval_max = 45;
    std::vector<PoolSpec> pools;
    std::vector<FeedSpec> feeds;
    std::vector<AgentGroup> agents;
    /// Extra genesis content (accounts, tokens, feeds) merged under the
    /// harness-generated entries. Relative paths resolve against the scenario
    /// file.
    std::optional<std::filesystem::path> genesis;
};

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Throws ScenarioError: parse errors carry line and column, validation
/// errors name the offending field.
Scenario load_scenario(const std::filesystem::path& path);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario parse_scenario(const std::string& text);
nlohmann::ordered_json to_json(const Scenario& s);

std::uint64_t agent_count(const Scenario& s);

}  // namespace gamefi::sim
