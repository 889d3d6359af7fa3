#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gamefi/bytes.hpp"
#include "gamefi/transaction.hpp"

namespace gamefi {

/// Gas units charged per payload kind. Fee = gas_used * gas_price, burned.
struct GasSchedule {
    std::uint64_t create_asset_base = 50'000;
    std::uint64_t create_asset_per_byte = 100;
    std::uint64_t transfer_asset_base = 42'000;
    std::uint64_t new_account_surcharge = 8'000;
    std::uint64_t native_transfer_base = 21'000;
    std::uint64_t token_op_base = 30'000;
    std::uint64_t pool_op_base = 60'000;
    std::uint64_t swap_base = 45'000;
    std::uint64_t stake_base = 35'000;
    std::uint64_t report_base = 25'000;
    std::uint64_t gas_price = 1;
};

struct StakingParams {
    std::uint64_t reward_num = 1;
    std::uint64_t reward_den = 100'000;
};

/// Chain configuration fixed at genesis. Not part of the state root.
struct ChainParams {
    GasSchedule gas;
    StakingParams staking;
};

struct Account {
    std::uint64_t balance = 0;
    std::uint64_t nonce = 0;
};

inline constexpr std::size_t kMaxAssetName = 100;
inline constexpr std::size_t kMaxAssetCategory = 50;
inline constexpr std::size_t kMaxTokenSymbol = 8;
inline constexpr std::size_t kMaxFeedId = 16;
inline constexpr std::uint64_t kMaxFeeBps = 1'000;
inline constexpr std::uint64_t kBpsDenominator = 10'000;

struct Asset {
    std::uint64_t id = 0;
    std::string name;
    std::string category;
    Rarity rarity = Rarity::Common;
    Address owner;
    std::uint64_t created_at_block = 0;

    bool operator==(const Asset&) const = default;
};

using OwnerIndex = std::map<Address, std::set<std::uint64_t>>;

struct Token {
    std::uint64_t total_supply = 0;
    std::map<Address, std::uint64_t> balances;  // zero balances are erased
};

struct Pool {
    std::uint64_t pool_id = 0;
    std::string token_a;  // token_a < token_b bytewise
    std::string token_b;
    std::uint64_t reserve_a = 0;
    std::uint64_t reserve_b = 0;
    std::uint64_t fee_bps = 30;
    std::uint64_t lp_supply = 0;
    std::map<Address, std::uint64_t> lp_balances;  // zero balances are erased
};

struct StakePosition {
    std::uint64_t amount = 0;
    std::uint64_t start_block = 0;
};

struct Feed {
    std::vector<Address> reporters;  // sorted, unique
    std::uint64_t quorum = 1;
    std::uint64_t round = 0;
    std::map<Address, std::uint64_t> pending;
    std::optional<std::uint64_t> last_value;
    std::uint64_t last_updated_block = 0;

    bool is_reporter(const Address& a) const;
};

/// Supply bookkeeping for the native conservation identity:
///   sum(balances) + gas_burned + stake_locked == genesis_supply + faucet_issued + reward_issued
struct Totals {
    std::uint64_t genesis_supply = 0;
    std::uint64_t faucet_issued = 0;
    std::uint64_t reward_issued = 0;
    std::uint64_t gas_burned = 0;
};

struct LedgerState {
    ChainParams params;

    std::map<Address, Account> accounts;
    std::map<std::uint64_t, Asset> assets;
    OwnerIndex owner_index;
    std::map<std::string, Token> tokens;
    std::map<std::uint64_t, Pool> pools;
    std::map<Address, StakePosition> stakes;
    std::map<std::string, Feed> feeds;

    Totals totals;
    std::uint64_t next_asset_id = 1;
    std::uint64_t next_pool_id = 1;
    std::uint64_t next_event_sequence = 0;

    const Account* account(const Address& a) const;
    Account& touch_account(const Address& a);
    bool has_account(const Address& a) const { return accounts.count(a) != 0; }

    std::uint64_t token_balance(const std::string& symbol, const Address& a) const;
    const Pool* pool(std::uint64_t id) const;
    const Pool* pool_for_pair(const std::string& x, const std::string& y) const;
};

/// SHA-256 over the canonical state encoding. Collections are written in the
/// order accounts, assets, tokens, token balances, pools, stakes, feeds,
/// followed by the supply totals and id counters.
Hash32 state_root(const LedgerState& state);
Bytes encode_state(const LedgerState& state);

struct ConservationReport {
    bool native_ok = true;
    std::vector<std::string> token_failures;  // symbols whose identity fails
    std::string detail;

    bool ok() const { return native_ok && token_failures.empty(); }
};

ConservationReport check_conservation(const LedgerState& state);

/// Rebuilds the owner index from the asset table.
OwnerIndex rebuild_owner_index(const std::map<std::uint64_t, Asset>& assets);

}  // namespace gamefi
