#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "gamefi/engine.hpp"
#include "gamefi/rng.hpp"

namespace httplib {
class Server;
}

namespace gamefi::api {

struct ServerOptions {
    /// Faucet cap; the faucet is disabled when empty.
    std::optional<std::uint64_t> faucet_cap;
    /// Enables POST /blocks and disables the scheduler.
    bool manual_blocks = false;
    std::uint64_t interval_min = 15;
    std::uint64_t interval_max = 45;
    std::uint64_t seed = 0;
    /// Wall-clock pause between scheduled blocks. Only paces production; the
    /// logical timestamps come from the interval draw.
    std::uint64_t tick_ms = 1000;
    std::size_t threads = 64;
    /// A stream subscriber further than this many frames behind the head is
    /// told so and disconnected.
    std::uint64_t max_stream_lag = 1u << 20;
    /// Access-Control-Allow-Origin value for browser clients on another
    /// origin; cross-origin access is not advertised when empty.
    std::optional<std::string> cors_origin;
};

/// HTTP/JSON gateway over an Engine.
class Server {
  public:
    Server(Engine& engine, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and starts serving on a background thread. Port 0 picks a free
    /// port. Returns the bound port.
    int start(const std::string& host, int port);
    void stop();
    int port() const { return port_; }

    /// Produces the next block at last timestamp + a drawn interval.
    Block produce_next_block();

  private:
    void routes();
    void scheduler_loop();

    Engine& engine_;
    ServerOptions options_;
    std::unique_ptr<httplib::Server> http_;
    std::thread listener_;
    std::thread scheduler_;
    std::mutex sched_mu_;
    std::condition_variable sched_cv_;
    std::atomic<bool> running_{false};
    std::mutex interval_mu_;
    SplitMix64 interval_rng_;
    int port_ = 0;
};

}  // namespace gamefi::api
