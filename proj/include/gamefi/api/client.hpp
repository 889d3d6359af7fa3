#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace httplib {
class Client;
}

namespace gamefi::api {

struct TransportStats {
    std::uint64_t requests = 0;
    std::uint64_t failures = 0;       // no response at all
    std::uint64_t server_errors = 0;  // 5xx
};

/// Minimal JSON-over-HTTP client for the gateway. Not thread-safe; use one
/// per thread.
class Client {
  public:
    struct Response {
        int status = 0;
        nlohmann::json body;
    };

    explicit Client(const std::string& base_url);
    ~Client();
    Client(Client&&) noexcept;
    Client& operator=(Client&&) noexcept;

    /// Empty on transport failure.
    std::optional<Response> get(const std::string& path);
    std::optional<Response> post(const std::string& path, const std::string& body,
                                 const std::string& content_type = "application/json");

    const TransportStats& stats() const { return stats_; }

  private:
    std::optional<Response> finish(bool ok, int status, const std::string& body);

    std::unique_ptr<httplib::Client> http_;
    TransportStats stats_;
};

}  // namespace gamefi::api
