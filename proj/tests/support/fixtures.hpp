#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gamefi/crypto.hpp"
#include "gamefi/genesis.hpp"
#include "gamefi/ledger.hpp"
#include "gamefi/transaction.hpp"

namespace gamefi::testing {

inline Keypair key(std::uint64_t i) {
    Seed s;
    for (int b = 0; b < 8; ++b) s.bytes[31 - b] = static_cast<std::uint8_t>(i >> (8 * b));
    s.bytes[0] = 0x5a;
    return keygen(s);
}

inline Address addr(std::uint64_t i) { return key(i).public_key; }

/// Drives apply_transaction directly, tracking nonces per sender.
struct Ledger {
    LedgerState state;
    std::uint64_t height = 1;
    std::uint64_t now = 0;

    explicit Ledger(const GenesisConfig& g = {}) : state(build_genesis_state(g)) {}

    SignedTransaction sign(const Keypair& k, Payload p) {
        const auto* a = state.account(k.public_key);
        return sign_transaction({k.public_key, a ? a->nonce : 0, std::move(p)}, k.secret);
    }

    Receipt apply(const Keypair& k, Payload p) { return apply_transaction(state, sign(k, std::move(p)), height, now, now); }

    std::uint64_t balance(const Address& a) const {
        const auto* acct = state.account(a);
        return acct ? acct->balance : 0;
    }
    std::uint64_t nonce(const Address& a) const {
        const auto* acct = state.account(a);
        return acct ? acct->nonce : 0;
    }
};

inline GenesisConfig funded(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> accounts) {
    GenesisConfig g;
    for (auto [i, bal] : accounts) g.accounts.push_back({addr(i), bal});
    return g;
}

}  // namespace gamefi::testing
