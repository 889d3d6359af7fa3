#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamefi/chain.hpp"
#include "gamefi/genesis.hpp"
#include "gamefi/state.hpp"

namespace gamefi {

/// Gas units for a payload against the current state. Deterministic and
/// independent of whether the payload will later be rejected.
std::uint64_t charge_gas(const GasSchedule& schedule, const Payload& payload, const LedgerState& state);

/// Applies one signature-verified transaction. Nonce or fee failures leave
/// the state untouched and cost nothing. Otherwise the fee is burned and the
/// nonce advances even if the executor rejects the payload.
Receipt apply_transaction(LedgerState& state, const SignedTransaction& tx, std::uint64_t height, std::uint64_t now,
                          std::uint64_t submitted_at);

/// Mints native units outside a transaction, tracked as faucet issuance.
/// Throws std::overflow_error if the credit would overflow.
void apply_credit(LedgerState& state, const Credit& credit);

/// Applies entries in order and returns their receipts.
std::vector<Receipt> execute_entries(LedgerState& state, const std::vector<BlockEntry>& entries, std::uint64_t height,
                                     std::uint64_t timestamp);

class IntegrityError : public std::runtime_error {
  public:
    IntegrityError(std::uint64_t height, const std::string& what)
        : std::runtime_error("integrity error at height " + std::to_string(height) + ": " + what), height_(height) {}
    std::uint64_t height() const { return height_; }

  private:
    std::uint64_t height_;
};

using BlockObserver = std::function<void(const Block&, const LedgerState&)>;

/// Re-executes a recorded chain from genesis and checks every block's
/// linkage, receipts and state root. Throws IntegrityError naming the first
/// divergent height. `blocks` must start with the genesis block.
LedgerState replay(const GenesisConfig& genesis, const std::vector<Block>& blocks,
                   const BlockObserver& observer = {});

}  // namespace gamefi
