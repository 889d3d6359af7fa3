#include "gamefi/chain.hpp"

#include <stdexcept>

namespace gamefi {

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::AssetCreated: return "AssetCreated";
        case EventKind::AssetTransferred: return "AssetTransferred";
        case EventKind::PoolSwapped: return "PoolSwapped";
        case EventKind::LiquidityChanged: return "LiquidityChanged";
        case EventKind::Staked: return "Staked";
        case EventKind::Unstaked: return "Unstaked";
        case EventKind::OraclePriceUpdated: return "OraclePriceUpdated";
        case EventKind::NativeTransferred: return "NativeTransferred";
        case EventKind::TokenTransferred: return "TokenTransferred";
    }
    return "Unknown";
}

const AttributeValue* Event::find(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (k == key) return &v;
    return nullptr;
}

std::uint64_t Event::u64(std::string_view key) const {
    auto* v = find(key);
    if (!v || !std::holds_alternative<std::uint64_t>(*v))
        throw std::out_of_range("event has no integer attribute " + std::string(key));
    return std::get<std::uint64_t>(*v);
}

const std::string& Event::str(std::string_view key) const {
    auto* v = find(key);
    if (!v || !std::holds_alternative<std::string>(*v))
        throw std::out_of_range("event has no string attribute " + std::string(key));
    return std::get<std::string>(*v);
}

void encode(Writer& w, const Event& e) {
    w.u8(static_cast<std::uint8_t>(e.kind));
    w.u64(e.sequence);
    w.u64(e.block_height);
    w.count(e.attributes.size());
    for (const auto& [key, value] : e.attributes) {
        w.str(key);
        w.u8(static_cast<std::uint8_t>(value.index()));
        if (auto* s = std::get_if<std::string>(&value))
            w.str(*s);
        else
            w.u64(std::get<std::uint64_t>(value));
    }
}

Event decode_event(Reader& r) {
    Event e;
    auto kind = r.u8();
    if (kind > static_cast<std::uint8_t>(EventKind::TokenTransferred)) throw DecodeError("unknown event kind");
    e.kind = static_cast<EventKind>(kind);
    e.sequence = r.u64();
    e.block_height = r.u64();
    auto n = r.count(6);
    e.attributes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto key = r.str();
        auto tag = r.u8();
        if (tag == 0)
            e.attributes.emplace_back(std::move(key), r.str());
        else if (tag == 1)
            e.attributes.emplace_back(std::move(key), r.u64());
        else
            throw DecodeError("unknown attribute tag");
    }
    return e;
}

void encode(Writer& w, const Receipt& rc) {
    w.fixed(rc.txid);
    if (rc.rejection) {
        w.u8(1);
        w.u8(static_cast<std::uint8_t>(*rc.rejection));
    } else {
        w.u8(0);
    }
    w.u64(rc.gas_used);
    w.count(rc.events.size());
    for (const auto& e : rc.events) encode(w, e);
    w.u64(rc.block_height);
    w.u64(rc.confirmation_seconds);
}

Receipt decode_receipt(Reader& r) {
    Receipt rc;
    rc.txid = r.fixed<Hash32>();
    auto status = r.u8();
    if (status == 1) {
        auto reason = r.u8();
        if (reason >= kRejectCount) throw DecodeError("unknown rejection reason");
        rc.rejection = static_cast<Reject>(reason);
    } else if (status != 0) {
        throw DecodeError("unknown receipt status");
    }
    rc.gas_used = r.u64();
    auto n = r.count(25);
    rc.events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rc.events.push_back(decode_event(r));
    rc.block_height = r.u64();
    rc.confirmation_seconds = r.u64();
    return rc;
}

Bytes encode(const Block& b) {
    Writer w;
    w.u64(b.height);
    w.u64(b.timestamp);
    w.fixed(b.parent_root);
    w.fixed(b.state_root);
    w.count(b.credits.size());
    for (const auto& c : b.credits) {
        w.fixed(c.to);
        w.u64(c.amount);
    }
    w.count(b.entries.size());
    for (const auto& e : b.entries) {
        encode(w, e.tx);
        w.u64(e.submitted_at);
    }
    w.count(b.receipts.size());
    for (const auto& rc : b.receipts) encode(w, rc);
    return std::move(w).take();
}

Block decode_block(ByteView data) {
    Reader r(data);
    Block b;
    b.height = r.u64();
    b.timestamp = r.u64();
    b.parent_root = r.fixed<Hash32>();
    b.state_root = r.fixed<Hash32>();
    auto credits = r.count(40);
    for (std::size_t i = 0; i < credits; ++i) {
        Credit c;
        c.to = r.fixed<Address>();
        c.amount = r.u64();
        b.credits.push_back(c);
    }
    auto entries = r.count(113);
    for (std::size_t i = 0; i < entries; ++i) {
        BlockEntry e;
        e.tx = decode_signed_transaction(r);
        e.submitted_at = r.u64();
        b.entries.push_back(std::move(e));
    }
    auto receipts = r.count(65);
    for (std::size_t i = 0; i < receipts; ++i) b.receipts.push_back(decode_receipt(r));
    r.expect_done();
    return b;
}

}  // namespace gamefi
