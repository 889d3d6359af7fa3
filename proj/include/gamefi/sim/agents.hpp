#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamefi/crypto.hpp"
#include "gamefi/rng.hpp"
#include "gamefi/sim/scenario.hpp"
#include "gamefi/state.hpp"
#include "gamefi/transaction.hpp"

namespace gamefi::sim {

/// Links an oracle feed to the pool whose token_a/token_b price it quotes
/// (scaled by 1e6).
struct FeedLink {
    std::string feed_id;
    std::uint64_t pool_id = 0;
};

/// Public ledger views an agent acts on. Built from an engine snapshot or
/// from HTTP queries.
struct Observation {
    std::uint64_t height = 0;
    std::uint64_t round = 0;
    Account self;
    std::map<std::string, std::uint64_t> tokens;
    std::vector<std::uint64_t> owned_assets;
    std::optional<StakePosition> stake;
    std::vector<Pool> pools;  // lp balances not populated
    std::map<std::string, std::uint64_t> feed_values;  // published feeds only
    std::vector<FeedLink> feed_links;
    std::vector<Address> peers;
};

enum class Role { Minter, RandomTrader, Arbitrageur, Staker, Reporter };

struct ReporterParams {
    std::string feed_id;
    std::uint64_t price_ppm = 1'000'000;
    std::uint64_t report_every = 5;
    std::uint64_t jitter_ppm = 0;
};

struct AgentState {
    Keypair key;
    Role role = Role::Minter;
    SplitMix64 rng{0};
    MinterParams minter;
    TraderParams trader;
    ArbitrageParams arbitrage;
    StakerParams staker;
    ReporterParams reporter;
    /// Policy-local memory.
    std::uint64_t mint_counter = 0;
    std::optional<std::uint64_t> last_observed_ppm;
};

/// One observe-act step. All randomness comes from the agent's own stream.
std::optional<UnsignedTransaction> agent_step(AgentState& agent, const Observation& obs);

/// Price of token_a in token_b, scaled by 1e6 and floored.
std::uint64_t spot_ppm(const Pool& pool);

/// Input amount that moves the pool's spot price halfway to `target_ppm`,
/// ignoring fees. Returns the direction and raw input size (0 if none).
std::pair<Direction, std::uint64_t> half_gap_trade(const Pool& pool, std::uint64_t target_ppm);

}  // namespace gamefi::sim
