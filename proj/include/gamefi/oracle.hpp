#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "gamefi/exec.hpp"

namespace gamefi {

/// Median of a non-empty set; the lower middle for even counts.
std::uint64_t lower_median(std::span<const std::uint64_t> values);

/// Records a reporter's value for the current round. Once the round holds
/// `quorum` reports the median is published and a new round begins.
void exec_submit_report(ExecContext& ctx, const SubmitReport& p);

struct FeedPrice {
    std::uint64_t value = 0;
    std::uint64_t round = 0;
    std::uint64_t last_updated_block = 0;
};

/// Absent until the first aggregation.
std::optional<FeedPrice> get_price(const LedgerState& state, const std::string& feed_id);

}  // namespace gamefi
