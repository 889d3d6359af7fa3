#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gamefi/chain.hpp"
#include "gamefi/genesis.hpp"
#include "gamefi/ledger.hpp"
#include "gamefi/state.hpp"

namespace gamefi {

class SignatureInvalid : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One committed event plus the transaction that produced it.
struct EventFrame {
    Event event;
    Hash32 txid;
};

/// Append-only, gapless log of committed events. Readers hold a sequence
/// cursor; every reader sees the same frames in the same order.
class EventLog {
  public:
    explicit EventLog(std::uint64_t first_sequence = 0) : first_(first_sequence) {}

    void append(std::vector<EventFrame> frames);

    /// Sequence number the next committed event will carry.
    std::uint64_t next_sequence() const;

    /// Up to `max` frames starting at `from`.
    std::vector<EventFrame> read(std::uint64_t from, std::size_t max) const;

    /// Blocks until a frame at `from` exists, the log is closed, or the
    /// timeout elapses. Returns true if a frame is available.
    bool wait(std::uint64_t from, std::chrono::milliseconds timeout) const;

    void close();
    bool closed() const;

  private:
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::uint64_t first_;
    std::vector<EventFrame> frames_;
    bool closed_ = false;
};

struct SubmitResult {
    Hash32 txid;
    bool duplicate = false;
};

enum class TxStatus { Queued, Included };

struct TxLookup {
    TxStatus status = TxStatus::Queued;
    std::optional<Receipt> receipt;
    std::optional<Payload> payload;
};

/// Single-writer ledger with a FIFO pending pool. Submissions and reads are
/// thread-safe; block production serializes all state mutation.
class Engine {
  public:
    explicit Engine(GenesisConfig genesis);

    /// Verifies and queues a transaction stamped with the current logical
    /// time (the latest block timestamp). Resubmitting a known txid is a no-op.
    /// Throws SignatureInvalid.
    SubmitResult submit(const SignedTransaction& tx);
    SubmitResult submit(const SignedTransaction& tx, std::uint64_t submitted_at);

    /// Decodes then submits. Throws DecodeError or SignatureInvalid.
    SubmitResult submit_encoded(ByteView bytes);

    /// Dev faucet credit, visible immediately and recorded in the next block.
    /// Throws std::overflow_error.
    void credit(const Address& to, std::uint64_t amount);

    /// Drains the pending pool into a new block at logical time `now`.
    /// Throws std::invalid_argument unless `now` exceeds the previous block's
    /// timestamp.
    Block produce_block(std::uint64_t now);

    template <typename F>
    auto with_state(F&& f) const {
        std::shared_lock lock(state_mu_);
        return f(state_);
    }

    LedgerState snapshot() const;
    Hash32 state_root() const;
    std::uint64_t height() const;
    std::uint64_t last_timestamp() const;
    std::optional<Block> block(std::uint64_t height) const;
    std::vector<Block> blocks() const;
    std::optional<TxLookup> lookup(const Hash32& txid) const;
    std::size_t pending_count() const;

    const GenesisConfig& genesis() const { return genesis_; }
    EventLog& events() { return events_; }
    const EventLog& events() const { return events_; }

  private:
    struct Pending {
        SignedTransaction tx;
        std::uint64_t submitted_at;
    };
    struct Location {
        std::uint64_t height;
        std::size_t index;
    };

    GenesisConfig genesis_;

    mutable std::mutex pool_mu_;
    std::deque<Pending> pool_;
    std::unordered_set<Hash32, FixedBytesHash> known_;
    std::vector<Credit> pending_credits_;

    mutable std::shared_mutex state_mu_;
    LedgerState state_;
    std::vector<Block> blocks_;
    std::unordered_map<Hash32, Location, FixedBytesHash> included_;

    std::mutex produce_mu_;
    EventLog events_;
};

}  // namespace gamefi
