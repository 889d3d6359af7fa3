#include "gamefi/sim/metrics.hpp"

#include <algorithm>
#include <sstream>

namespace gamefi::sim {

void Stat::add(std::uint64_t v) {
    ++count;
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
}

double Stat::mean() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }

ojson Stat::to_json() const {
    if (count == 0) return {{"count", 0}, {"min", nullptr}, {"mean", nullptr}, {"max", nullptr}};
    return {{"count", count}, {"min", min}, {"mean", mean()}, {"max", max}};
}

void MetricsCollector::observe(const Block& block, const LedgerState& state) {
    ++blocks_;
    final_root_ = block.state_root;
    final_height_ = block.height;

    for (std::size_t i = 0; i < block.receipts.size(); ++i) {
        const auto& rc = block.receipts[i];
        const auto kind = std::string(payload_kind(block.entries[i].tx.body.payload));
        confirmation_.add(rc.confirmation_seconds);
        confirmation_samples_.push_back(rc.confirmation_seconds);
        if (rc.gas_used > 0) gas_[kind].add(rc.gas_used);
        if (rc.applied()) {
            ++applied_;
            ++status_by_kind_applied_[kind];
        } else {
            ++rejected_;
            ++rejected_by_reason_[std::string(to_string(*rc.rejection))];
        }
        for (const auto& e : rc.events) {
            if (e.sequence != next_sequence_) sequence_gapless_ = false;
            next_sequence_ = e.sequence + 1;
            switch (e.kind) {
                case EventKind::AssetCreated: folded_owners_[e.u64("id")] = e.str("owner"); break;
                case EventKind::AssetTransferred: {
                    auto it = folded_owners_.find(e.u64("id"));
                    if (it == folded_owners_.end() || it->second != e.str("from")) event_fold_ok_ = false;
                    folded_owners_[e.u64("id")] = e.str("to");
                    break;
                }
                case EventKind::PoolSwapped: {
                    auto s = e.u64("slippage_bps");
                    slippage_.add(s);
                    slippage_samples_.push_back(s);
                    break;
                }
                default: break;
            }
        }
    }

    ++conservation_checked_;
    if (!check_conservation(state).ok()) ++conservation_violations_;

    for (const auto& [id, p] : state.pools) prices_.push_back({block.height, id, p.reserve_b, p.reserve_a});
}

void MetricsCollector::finish(const LedgerState& final_state) {
    if (folded_owners_.size() != final_state.assets.size()) event_fold_ok_ = false;
    for (const auto& [id, asset] : final_state.assets) {
        auto it = folded_owners_.find(id);
        if (it == folded_owners_.end() || it->second != to_hex(asset.owner)) event_fold_ok_ = false;
    }
    owner_index_ok_ = rebuild_owner_index(final_state.assets) == final_state.owner_index;
}

ojson MetricsCollector::report() const {
    ojson j;
    j["blocks"] = blocks_;
    j["final_height"] = final_height_;
    j["final_state_root"] = to_hex(final_root_);
    j["tx_counts"] = {{"total", applied_ + rejected_}, {"applied", applied_}, {"rejected", rejected_}};
    j["applied_by_kind"] = status_by_kind_applied_;
    j["rejected_by_reason"] = rejected_by_reason_;
    ojson gas = ojson::object();
    for (const auto& [kind, stat] : gas_) gas[kind] = stat.to_json();
    j["gas"] = gas;
    j["confirmation_seconds"] = confirmation_.to_json();

    auto slip = slippage_.to_json();
    if (!slippage_samples_.empty()) {
        auto sorted = slippage_samples_;
        std::sort(sorted.begin(), sorted.end());
        slip["p50"] = sorted[(sorted.size() - 1) / 2];
        slip["p90"] = sorted[(sorted.size() - 1) * 9 / 10];
    }
    static constexpr std::uint64_t edges[] = {10, 50, 100, 500, 1'000};
    ojson hist = ojson::object();
    std::uint64_t lo = 0;
    for (auto hi : edges) {
        hist[std::to_string(lo) + "-" + std::to_string(hi)] =
            std::count_if(slippage_samples_.begin(), slippage_samples_.end(), [&](auto s) { return s >= lo && s < hi; });
        lo = hi;
    }
    hist[std::to_string(lo) + "+"] =
        std::count_if(slippage_samples_.begin(), slippage_samples_.end(), [&](auto s) { return s >= lo; });
    slip["histogram"] = hist;
    j["slippage_bps"] = slip;

    j["conservation"] = {{"blocks_checked", conservation_checked_}, {"violations", conservation_violations_}};
    j["event_log"] = {{"gapless", sequence_gapless_},
                      {"fold_matches_state", event_fold_ok_},
                      {"owner_index_consistent", owner_index_ok_},
                      {"events", next_sequence_}};
    return j;
}

std::string MetricsCollector::prices_csv() const {
    std::ostringstream out;
    out << "block_height,pool_id,spot_num,spot_den\n";
    for (const auto& p : prices_) out << p.block_height << ',' << p.pool_id << ',' << p.spot_num << ',' << p.spot_den << '\n';
    return out.str();
}

}  // namespace gamefi::sim
