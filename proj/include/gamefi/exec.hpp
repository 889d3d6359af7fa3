#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gamefi/chain.hpp"
#include "gamefi/state.hpp"

namespace gamefi {

/// An event produced by an executor before the ledger assigns it a sequence
/// number. Dropped if the transaction is rejected.
struct EmittedEvent {
    EventKind kind;
    Attributes attributes;
};

struct ExecContext {
    LedgerState& state;
    Address sender;
    std::uint64_t height = 0;
    std::vector<EmittedEvent> events;

    void emit(EventKind kind, Attributes attrs) { events.push_back({kind, std::move(attrs)}); }
};

/// Well-formed UTF-8 of 1..max_bytes bytes with no C0/C1 control characters.
bool is_valid_label(std::string_view s, std::size_t max_bytes);

/// Overflow-checked helpers; throw Rejection(Overflow).
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace gamefi
