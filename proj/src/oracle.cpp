#include "gamefi/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gamefi {

std::uint64_t lower_median(std::span<const std::uint64_t> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::vector<std::uint64_t> sorted(values.begin(), values.end());
    auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    return *mid;
}

void exec_submit_report(ExecContext& ctx, const SubmitReport& p) {
    auto& s = ctx.state;
    auto it = s.feeds.find(p.feed_id);
    if (it == s.feeds.end()) throw Rejection(Reject::UnknownFeed, "unknown feed " + p.feed_id);
    auto& feed = it->second;
    if (!feed.is_reporter(ctx.sender)) throw Rejection(Reject::NotAuthorized, "sender is not a reporter for this feed");
    if (feed.pending.count(ctx.sender)) throw Rejection(Reject::DuplicateReport, "already reported this round");

    feed.pending[ctx.sender] = p.value;
    if (feed.pending.size() < feed.quorum) return;

    std::vector<std::uint64_t> values;
    values.reserve(feed.pending.size());
    for (const auto& [reporter, v] : feed.pending) values.push_back(v);
    const auto median = lower_median(values);
    feed.last_value = median;
    feed.round += 1;
    feed.last_updated_block = ctx.height;
    feed.pending.clear();
    ctx.emit(EventKind::OraclePriceUpdated, {{"feed_id", p.feed_id}, {"value", median}, {"round", feed.round}});
}

std::optional<FeedPrice> get_price(const LedgerState& state, const std::string& feed_id) {
    auto it = state.feeds.find(feed_id);
    if (it == state.feeds.end() || !it->second.last_value) return std::nullopt;
    return FeedPrice{*it->second.last_value, it->second.round, it->second.last_updated_block};
}

}  // namespace gamefi
