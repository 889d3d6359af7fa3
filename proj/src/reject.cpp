#include "gamefi/reject.hpp"

namespace gamefi {

std::string_view to_string(Reject r) {
    switch (r) {
        case Reject::Nonce: return "nonce";
        case Reject::Fee: return "fee";
        case Reject::InvalidInput: return "invalid_input";
        case Reject::NoSuchAsset: return "no_such_asset";
        case Reject::NotOwner: return "not_owner";
        case Reject::SelfTransfer: return "self_transfer";
        case Reject::InsufficientFunds: return "insufficient_funds";
        case Reject::UnknownToken: return "unknown_token";
        case Reject::DuplicateSymbol: return "duplicate_symbol";
        case Reject::UnknownPool: return "unknown_pool";
        case Reject::DuplicatePool: return "duplicate_pool";
        case Reject::Slippage: return "slippage";
        case Reject::ZeroOutput: return "zero_output";
        case Reject::DustLiquidity: return "dust_liquidity";
        case Reject::DoubleStake: return "double_stake";
        case Reject::NoStake: return "no_stake";
        case Reject::UnknownFeed: return "unknown_feed";
        case Reject::NotAuthorized: return "not_authorized";
        case Reject::DuplicateReport: return "duplicate_report";
        case Reject::Overflow: return "overflow";
    }
    return "unknown";
}

std::string_view api_code(Reject r) {
    switch (r) {
        case Reject::Nonce: return "nonce_mismatch";
        case Reject::Fee: return "insufficient_funds";
        case Reject::InsufficientFunds: return "insufficient_funds";
        case Reject::NoSuchAsset: return "no_such_asset";
        case Reject::NotOwner: return "not_owner";
        case Reject::Slippage: return "slippage";
        case Reject::ZeroOutput: return "slippage";
        case Reject::NotAuthorized: return "not_authorized";
        case Reject::UnknownToken:
        case Reject::UnknownPool:
        case Reject::UnknownFeed: return "not_found";
        case Reject::InvalidInput:
        case Reject::SelfTransfer:
        case Reject::DuplicateSymbol:
        case Reject::DuplicatePool:
        case Reject::DustLiquidity:
        case Reject::DoubleStake:
        case Reject::NoStake:
        case Reject::DuplicateReport:
        case Reject::Overflow: return "invalid_input";
    }
    return "invalid_input";
}

}  // namespace gamefi
