#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gamefi/exec.hpp"

namespace gamefi {

/// Mints a new asset owned by the sender and emits AssetCreated.
std::uint64_t exec_create_asset(ExecContext& ctx, const CreateAsset& p);

/// Moves ownership of an asset the sender owns and emits AssetTransferred.
void exec_transfer_asset(ExecContext& ctx, const TransferAsset& p);

/// All assets owned by `owner` in ascending id order. Free view.
std::vector<Asset> get_assets_by_owner(const LedgerState& state, const Address& owner);

std::optional<Asset> get_asset(const LedgerState& state, std::uint64_t id);

}  // namespace gamefi
