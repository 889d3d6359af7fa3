#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gamefi/bytes.hpp"
#include "gamefi/encoding.hpp"
#include "gamefi/reject.hpp"
#include "gamefi/transaction.hpp"

namespace gamefi {

enum class EventKind : std::uint8_t {
    AssetCreated = 0,
    AssetTransferred = 1,
    PoolSwapped = 2,
    LiquidityChanged = 3,
    Staked = 4,
    Unstaked = 5,
    OraclePriceUpdated = 6,
    NativeTransferred = 7,
    TokenTransferred = 8,
};

std::string_view to_string(EventKind k);

using AttributeValue = std::variant<std::string, std::uint64_t>;
using Attributes = std::vector<std::pair<std::string, AttributeValue>>;

struct Event {
    EventKind kind = EventKind::AssetCreated;
    std::uint64_t sequence = 0;
    std::uint64_t block_height = 0;
    Attributes attributes;

    const AttributeValue* find(std::string_view key) const;
    std::uint64_t u64(std::string_view key) const;          // throws std::out_of_range
    const std::string& str(std::string_view key) const;     // throws std::out_of_range

    bool operator==(const Event&) const = default;
};

struct Receipt {
    Hash32 txid;
    std::optional<Reject> rejection;  // empty means Applied
    std::uint64_t gas_used = 0;
    std::vector<Event> events;
    std::uint64_t block_height = 0;
    std::uint64_t confirmation_seconds = 0;

    bool applied() const { return !rejection.has_value(); }
    bool operator==(const Receipt&) const = default;
};

/// Native units minted outside a transaction (dev faucet). Applied at the
/// start of the block that records them.
struct Credit {
    Address to;
    std::uint64_t amount = 0;
    bool operator==(const Credit&) const = default;
};

struct BlockEntry {
    SignedTransaction tx;
    std::uint64_t submitted_at = 0;
};

struct Block {
    std::uint64_t height = 0;
    std::uint64_t timestamp = 0;
    Hash32 parent_root;
    Hash32 state_root;
    std::vector<Credit> credits;
    std::vector<BlockEntry> entries;
    std::vector<Receipt> receipts;  // one per entry, same order
};

void encode(Writer& w, const Event& e);
Event decode_event(Reader& r);
void encode(Writer& w, const Receipt& rc);
Receipt decode_receipt(Reader& r);
Bytes encode(const Block& b);
Block decode_block(ByteView data);

}  // namespace gamefi
