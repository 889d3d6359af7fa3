#include "gamefi/state.hpp"

#include <algorithm>

#include "gamefi/crypto.hpp"
#include "gamefi/encoding.hpp"

namespace gamefi {

bool Feed::is_reporter(const Address& a) const {
    return std::binary_search(reporters.begin(), reporters.end(), a);
}

const Account* LedgerState::account(const Address& a) const {
    auto it = accounts.find(a);
    return it == accounts.end() ? nullptr : &it->second;
}

Account& LedgerState::touch_account(const Address& a) { return accounts[a]; }

std::uint64_t LedgerState::token_balance(const std::string& symbol, const Address& a) const {
    auto t = tokens.find(symbol);
    if (t == tokens.end()) return 0;
    auto b = t->second.balances.find(a);
    return b == t->second.balances.end() ? 0 : b->second;
}

const Pool* LedgerState::pool(std::uint64_t id) const {
    auto it = pools.find(id);
    return it == pools.end() ? nullptr : &it->second;
}

const Pool* LedgerState::pool_for_pair(const std::string& x, const std::string& y) const {
    const auto& lo = std::min(x, y);
    const auto& hi = std::max(x, y);
    for (const auto& [id, p] : pools)
        if (p.token_a == lo && p.token_b == hi) return &p;
    return nullptr;
}

Bytes encode_state(const LedgerState& s) {
    Writer w;

    w.count(s.accounts.size());
    for (const auto& [addr, acct] : s.accounts) {
        w.fixed(addr);
        w.u64(acct.balance);
        w.u64(acct.nonce);
    }

    w.count(s.assets.size());
    for (const auto& [id, a] : s.assets) {
        w.u64(id);
        w.str(a.name);
        w.str(a.category);
        w.u8(static_cast<std::uint8_t>(a.rarity));
        w.fixed(a.owner);
        w.u64(a.created_at_block);
    }

    w.count(s.tokens.size());
    for (const auto& [symbol, t] : s.tokens) {
        w.str(symbol);
        w.u64(t.total_supply);
    }

    std::size_t balance_entries = 0;
    for (const auto& [symbol, t] : s.tokens) balance_entries += t.balances.size();
    w.count(balance_entries);
    for (const auto& [symbol, t] : s.tokens) {
        for (const auto& [addr, amount] : t.balances) {
            w.str(symbol);
            w.fixed(addr);
            w.u64(amount);
        }
    }

    w.count(s.pools.size());
    for (const auto& [id, p] : s.pools) {
        w.u64(id);
        w.str(p.token_a);
        w.str(p.token_b);
        w.u64(p.reserve_a);
        w.u64(p.reserve_b);
        w.u64(p.fee_bps);
        w.u64(p.lp_supply);
        w.count(p.lp_balances.size());
        for (const auto& [addr, lp] : p.lp_balances) {
            w.fixed(addr);
            w.u64(lp);
        }
    }

    w.count(s.stakes.size());
    for (const auto& [addr, pos] : s.stakes) {
        w.fixed(addr);
        w.u64(pos.amount);
        w.u64(pos.start_block);
    }

    w.count(s.feeds.size());
    for (const auto& [id, f] : s.feeds) {
        w.str(id);
        w.count(f.reporters.size());
        for (const auto& r : f.reporters) w.fixed(r);
        w.u64(f.quorum);
        w.u64(f.round);
        w.count(f.pending.size());
        for (const auto& [r, v] : f.pending) {
            w.fixed(r);
            w.u64(v);
        }
        if (f.last_value) {
            w.u8(1);
            w.u64(*f.last_value);
        } else {
            w.u8(0);
        }
        w.u64(f.last_updated_block);
    }

    w.u64(s.totals.genesis_supply);
    w.u64(s.totals.faucet_issued);
    w.u64(s.totals.reward_issued);
    w.u64(s.totals.gas_burned);
    w.u64(s.next_asset_id);
    w.u64(s.next_pool_id);
    w.u64(s.next_event_sequence);
    return std::move(w).take();
}

Hash32 state_root(const LedgerState& state) { return sha256(encode_state(state)); }

ConservationReport check_conservation(const LedgerState& s) {
    ConservationReport report;

    unsigned __int128 held = s.totals.gas_burned;
    for (const auto& [addr, acct] : s.accounts) held += acct.balance;
    for (const auto& [addr, pos] : s.stakes) held += pos.amount;
    unsigned __int128 issued = s.totals.genesis_supply;
    issued += s.totals.faucet_issued;
    issued += s.totals.reward_issued;
    if (held != issued) {
        report.native_ok = false;
        report.detail = "native supply identity violated";
    }

    for (const auto& [symbol, t] : s.tokens) {
        unsigned __int128 sum = 0;
        for (const auto& [addr, amount] : t.balances) sum += amount;
        for (const auto& [id, p] : s.pools) {
            if (p.token_a == symbol) sum += p.reserve_a;
            if (p.token_b == symbol) sum += p.reserve_b;
        }
        if (sum != t.total_supply) report.token_failures.push_back(symbol);
    }
    for (const auto& [id, p] : s.pools) {
        unsigned __int128 lp = 0;
        for (const auto& [addr, amount] : p.lp_balances) lp += amount;
        if (lp != p.lp_supply) {
            report.token_failures.push_back("lp:" + std::to_string(id));
        }
    }
    if (!report.token_failures.empty()) {
        if (!report.detail.empty()) report.detail += "; ";
        report.detail += "token identity violated for";
        for (const auto& f : report.token_failures) report.detail += " " + f;
    }
    return report;
}

OwnerIndex rebuild_owner_index(const std::map<std::uint64_t, Asset>& assets) {
    OwnerIndex index;
    for (const auto& [id, a] : assets) index[a.owner].insert(id);
    return index;
}

}  // namespace gamefi
