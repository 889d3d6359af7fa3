#include "gamefi/engine.hpp"

#include <algorithm>

namespace gamefi {

void EventLog::append(std::vector<EventFrame> frames) {
    if (frames.empty()) return;
    {
        std::lock_guard lock(mu_);
        for (auto& f : frames) frames_.push_back(std::move(f));
    }
    cv_.notify_all();
}

std::uint64_t EventLog::next_sequence() const {
    std::lock_guard lock(mu_);
    return first_ + frames_.size();
}

std::vector<EventFrame> EventLog::read(std::uint64_t from, std::size_t max) const {
    std::lock_guard lock(mu_);
    std::vector<EventFrame> out;
    if (from < first_) from = first_;
    const auto begin = from - first_;
    for (auto i = begin; i < frames_.size() && out.size() < max; ++i) out.push_back(frames_[i]);
    return out;
}

bool EventLog::wait(std::uint64_t from, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    auto ready = [&] { return closed_ || first_ + frames_.size() > from; };
    cv_.wait_for(lock, timeout, ready);
    return first_ + frames_.size() > from;
}

void EventLog::close() {
    {
        std::lock_guard lock(mu_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool EventLog::closed() const {
    std::lock_guard lock(mu_);
    return closed_;
}

Engine::Engine(GenesisConfig genesis)
    : genesis_(std::move(genesis)), state_(build_genesis_state(genesis_)), events_(state_.next_event_sequence) {
    Block g;
    g.height = 0;
    g.timestamp = genesis_.timestamp;
    g.state_root = gamefi::state_root(state_);
    blocks_.push_back(std::move(g));
}

SubmitResult Engine::submit(const SignedTransaction& tx) { return submit(tx, last_timestamp()); }

SubmitResult Engine::submit(const SignedTransaction& tx, std::uint64_t submitted_at) {
    if (!tx.verify()) throw SignatureInvalid("transaction signature does not verify");
    std::lock_guard lock(pool_mu_);
    if (!known_.insert(tx.txid).second) return {tx.txid, true};
    pool_.push_back({tx, submitted_at});
    return {tx.txid, false};
}

SubmitResult Engine::submit_encoded(ByteView bytes) { return submit(decode_signed_transaction(bytes)); }

void Engine::credit(const Address& to, std::uint64_t amount) {
    // Lock order: produce, pool, state.
    std::lock_guard produce(produce_mu_);
    std::lock_guard pool(pool_mu_);
    std::unique_lock lock(state_mu_);
    apply_credit(state_, {to, amount});
    pending_credits_.push_back({to, amount});
}

Block Engine::produce_block(std::uint64_t now) {
    std::lock_guard produce(produce_mu_);

    Block block;
    std::deque<Pending> drained;
    {
        std::lock_guard pool(pool_mu_);
        std::shared_lock read(state_mu_);
        const auto& prev = blocks_.back();
        if (now <= prev.timestamp)
            throw std::invalid_argument("block timestamp must exceed " + std::to_string(prev.timestamp));
        block.height = prev.height + 1;
        block.parent_root = prev.state_root;
        block.credits = std::move(pending_credits_);
        pending_credits_.clear();
        drained.swap(pool_);
    }
    block.timestamp = now;
    block.entries.reserve(drained.size());
    for (auto& p : drained) block.entries.push_back({std::move(p.tx), p.submitted_at});

    std::vector<EventFrame> frames;
    {
        std::unique_lock lock(state_mu_);
        block.receipts = execute_entries(state_, block.entries, block.height, block.timestamp);
        block.state_root = gamefi::state_root(state_);
        for (std::size_t i = 0; i < block.receipts.size(); ++i) {
            const auto& rc = block.receipts[i];
            included_[rc.txid] = {block.height, i};
            for (const auto& e : rc.events) frames.push_back({e, rc.txid});
        }
        blocks_.push_back(block);
    }
    events_.append(std::move(frames));
    return block;
}

LedgerState Engine::snapshot() const {
    std::shared_lock lock(state_mu_);
    return state_;
}

Hash32 Engine::state_root() const {
    std::shared_lock lock(state_mu_);
    return blocks_.back().state_root;
}

std::uint64_t Engine::height() const {
    std::shared_lock lock(state_mu_);
    return blocks_.back().height;
}

std::uint64_t Engine::last_timestamp() const {
    std::shared_lock lock(state_mu_);
    return blocks_.back().timestamp;
}

std::optional<Block> Engine::block(std::uint64_t height) const {
    std::shared_lock lock(state_mu_);
    if (height >= blocks_.size()) return std::nullopt;
    return blocks_[height];
}

std::vector<Block> Engine::blocks() const {
    std::shared_lock lock(state_mu_);
    return blocks_;
}

std::optional<TxLookup> Engine::lookup(const Hash32& txid) const {
    {
        std::shared_lock lock(state_mu_);
        auto it = included_.find(txid);
        if (it != included_.end()) {
            const auto& b = blocks_[it->second.height];
            return TxLookup{TxStatus::Included, b.receipts[it->second.index], b.entries[it->second.index].tx.body.payload};
        }
    }
    std::lock_guard lock(pool_mu_);
    for (const auto& p : pool_)
        if (p.tx.txid == txid) return TxLookup{TxStatus::Queued, std::nullopt, p.tx.body.payload};
    // A txid can sit between pool drain and receipt indexing while a block is
    // being produced; recheck the index.
    if (known_.count(txid)) {
        std::shared_lock lock2(state_mu_);
        auto it = included_.find(txid);
        if (it != included_.end()) {
            const auto& b = blocks_[it->second.height];
            return TxLookup{TxStatus::Included, b.receipts[it->second.index], b.entries[it->second.index].tx.body.payload};
        }
        return TxLookup{TxStatus::Queued, std::nullopt, std::nullopt};
    }
    return std::nullopt;
}

std::size_t Engine::pending_count() const {
    std::lock_guard lock(pool_mu_);
    return pool_.size();
}

}  // namespace gamefi
