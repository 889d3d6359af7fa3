#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gamefi {

/// Why a transaction was rejected. `Nonce` and `Fee` are raised before
/// execution and cost nothing; the rest come from payload executors.
enum class Reject : std::uint8_t {
    Nonce = 0,
    Fee = 1,
    InvalidInput = 2,
    NoSuchAsset = 3,
    NotOwner = 4,
    SelfTransfer = 5,
    InsufficientFunds = 6,
    UnknownToken = 7,
    DuplicateSymbol = 8,
    UnknownPool = 9,
    DuplicatePool = 10,
    Slippage = 11,
    ZeroOutput = 12,
    DustLiquidity = 13,
    DoubleStake = 14,
    NoStake = 15,
    UnknownFeed = 16,
    NotAuthorized = 17,
    DuplicateReport = 18,
    Overflow = 19,
};

inline constexpr std::uint8_t kRejectCount = 20;

std::string_view to_string(Reject r);

/// Machine code surfaced through the HTTP API. Many reasons may share a code;
/// each reason maps to exactly one.
std::string_view api_code(Reject r);

/// Thrown by executors. Executors validate fully before mutating, so a thrown
/// Rejection leaves the state untouched.
class Rejection : public std::runtime_error {
  public:
    Rejection(Reject reason, const std::string& message) : std::runtime_error(message), reason_(reason) {}
    Reject reason() const { return reason_; }

  private:
    Reject reason_;
};

}  // namespace gamefi
