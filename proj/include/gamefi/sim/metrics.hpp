#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gamefi/chain.hpp"
#include "gamefi/json_views.hpp"
#include "gamefi/state.hpp"

namespace gamefi::sim {

struct Stat {
    std::uint64_t count = 0;
    std::uint64_t min = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max = 0;
    unsigned __int128 sum = 0;

    void add(std::uint64_t v);
    double mean() const;
    ojson to_json() const;
};

struct PricePoint {
    std::uint64_t block_height;
    std::uint64_t pool_id;
    std::uint64_t spot_num;  // reserve_b
    std::uint64_t spot_den;  // reserve_a
};

/// Accumulates run statistics from replayed blocks.
class MetricsCollector {
  public:
    void observe(const Block& block, const LedgerState& state);
    /// Final cross-checks against the last state.
    void finish(const LedgerState& final_state);

    ojson report() const;

    const std::map<std::string, Stat>& gas_by_kind() const { return gas_; }
    const Stat& confirmation() const { return confirmation_; }
    const std::vector<std::uint64_t>& confirmation_samples() const { return confirmation_samples_; }
    const std::vector<PricePoint>& prices() const { return prices_; }
    std::uint64_t conservation_violations() const { return conservation_violations_; }
    bool event_fold_consistent() const { return event_fold_ok_; }
    std::uint64_t applied() const { return applied_; }
    std::uint64_t rejected() const { return rejected_; }
    const std::map<std::string, std::uint64_t>& rejected_by_reason() const { return rejected_by_reason_; }

    std::string prices_csv() const;

  private:
    std::map<std::string, Stat> gas_;
    Stat confirmation_;
    std::vector<std::uint64_t> confirmation_samples_;
    Stat slippage_;
    std::vector<std::uint64_t> slippage_samples_;
    std::map<std::string, std::uint64_t> status_by_kind_applied_;
    std::map<std::string, std::uint64_t> rejected_by_reason_;
    std::uint64_t applied_ = 0;
    std::uint64_t rejected_ = 0;
    std::uint64_t blocks_ = 0;
    std::uint64_t conservation_checked_ = 0;
    std::uint64_t conservation_violations_ = 0;
    std::map<std::uint64_t, std::string> folded_owners_;
    bool event_fold_ok_ = true;
    bool owner_index_ok_ = true;
    std::uint64_t next_sequence_ = 0;
    bool sequence_gapless_ = true;
    std::vector<PricePoint> prices_;
    Hash32 final_root_;
    std::uint64_t final_height_ = 0;
};

}  // namespace gamefi::sim
