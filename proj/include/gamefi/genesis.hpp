#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gamefi/chain.hpp"
#include "gamefi/state.hpp"

namespace gamefi {

struct GenesisAccount {
    Address address;
    std::uint64_t balance = 0;
};

struct GenesisToken {
    std::string symbol;
    std::map<Address, std::uint64_t> balances;
};

struct GenesisPool {
    std::string token_a;
    std::string token_b;
    std::uint64_t fee_bps = 30;
    std::uint64_t reserve_a = 0;
    std::uint64_t reserve_b = 0;
    Address provider;  // receives the initial lp supply
};

struct GenesisFeed {
    std::string feed_id;
    std::vector<Address> reporters;
    std::uint64_t quorum = 1;
};

struct GenesisConfig {
    std::uint64_t timestamp = 0;
    std::vector<GenesisAccount> accounts;
    std::vector<GenesisToken> tokens;
    std::vector<GenesisPool> pools;  // pool ids assigned 1.. in listed order
    std::vector<GenesisFeed> feeds;
    ChainParams params;
};

class GenesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Throws GenesisError on invalid configuration.
LedgerState build_genesis_state(const GenesisConfig& config);
Block genesis_block(const GenesisConfig& config);

GenesisConfig genesis_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GenesisConfig& config);
GenesisConfig load_genesis(const std::filesystem::path& path);
void save_genesis(const GenesisConfig& config, const std::filesystem::path& path);

}  // namespace gamefi
