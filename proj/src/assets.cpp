#include "gamefi/assets.hpp"

namespace gamefi {

std::uint64_t exec_create_asset(ExecContext& ctx, const CreateAsset& p) {
    auto& s = ctx.state;
    if (!is_valid_label(p.name, kMaxAssetName)) throw Rejection(Reject::InvalidInput, "asset name must be 1-100 bytes of printable UTF-8");
    if (!is_valid_label(p.category, kMaxAssetCategory))
        throw Rejection(Reject::InvalidInput, "asset category must be 1-50 bytes of printable UTF-8");
    if (!is_valid(p.rarity)) throw Rejection(Reject::InvalidInput, "unknown rarity");

    Asset asset;
    asset.id = s.next_asset_id;
    asset.name = p.name;
    asset.category = p.category;
    asset.rarity = p.rarity;
    asset.owner = ctx.sender;
    asset.created_at_block = ctx.height;

    s.next_asset_id = checked_add(s.next_asset_id, 1);
    s.owner_index[asset.owner].insert(asset.id);
    s.assets.emplace(asset.id, asset);

    ctx.emit(EventKind::AssetCreated, {{"id", asset.id},
                                       {"owner", to_hex(asset.owner)},
                                       {"name", asset.name},
                                       {"category", asset.category},
                                       {"rarity", std::string(to_string(asset.rarity))}});
    return asset.id;
}

void exec_transfer_asset(ExecContext& ctx, const TransferAsset& p) {
    auto& s = ctx.state;
    auto it = s.assets.find(p.asset_id);
    if (it == s.assets.end()) throw Rejection(Reject::NoSuchAsset, "no asset with id " + std::to_string(p.asset_id));
    auto& asset = it->second;
    if (asset.owner != ctx.sender) throw Rejection(Reject::NotOwner, "sender does not own asset");
    if (p.to == ctx.sender) throw Rejection(Reject::SelfTransfer, "asset cannot be transferred to its owner");

    auto from = asset.owner;
    auto& from_set = s.owner_index[from];
    from_set.erase(asset.id);
    if (from_set.empty()) s.owner_index.erase(from);
    s.owner_index[p.to].insert(asset.id);
    asset.owner = p.to;
    s.touch_account(p.to);

    ctx.emit(EventKind::AssetTransferred, {{"id", asset.id}, {"from", to_hex(from)}, {"to", to_hex(p.to)}});
}

std::vector<Asset> get_assets_by_owner(const LedgerState& state, const Address& owner) {
    std::vector<Asset> out;
    auto it = state.owner_index.find(owner);
    if (it == state.owner_index.end()) return out;
    out.reserve(it->second.size());
    for (auto id : it->second) out.push_back(state.assets.at(id));
    return out;
}

std::optional<Asset> get_asset(const LedgerState& state, std::uint64_t id) {
    auto it = state.assets.find(id);
    if (it == state.assets.end()) return std::nullopt;
    return it->second;
}

}  // namespace gamefi
