#pragma once

#include <json.hpp>

#include "gamefi/chain.hpp"
#include "gamefi/engine.hpp"
#include "gamefi/oracle.hpp"
#include "gamefi/state.hpp"

namespace gamefi {

using ojson = nlohmann::ordered_json;

ojson asset_json(const Asset& a);
ojson pool_json(const Pool& p);
ojson account_json(const LedgerState& s, const Address& addr);
ojson feed_json(const std::string& feed_id, const FeedPrice& price);
ojson event_json(const Event& e);
ojson frame_json(const EventFrame& f);
ojson receipt_json(const Receipt& r);
ojson payload_json(const Payload& p);
/// Inverse of payload_json. Rarity and direction may be given as the wire
/// integer or by name. Throws std::invalid_argument on a malformed object.
Payload payload_from_json(const nlohmann::json& j);
ojson transaction_json(const SignedTransaction& tx);
ojson block_json(const Block& b);

}  // namespace gamefi
