#include "gamefi/api/server.hpp"

#include <httplib.h>

#include "gamefi/assets.hpp"
#include "gamefi/defi.hpp"
#include "gamefi/json_views.hpp"
#include "gamefi/oracle.hpp"

namespace gamefi::api {

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const ojson& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message,
                const std::optional<Hash32>& txid = std::nullopt) {
    ojson body = {{"code", std::string(code)}, {"message", message}};
    if (txid) body["txid"] = to_hex(*txid);
    send(res, status, body);
}

std::optional<Address> parse_address(const std::string& s) {
    try {
        return address_from_hex(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    if (s.empty() || s.size() > 20) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, static_cast<std::uint64_t>(c - '0'), &v))
            return std::nullopt;
    }
    return v;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Server::Server(Engine& engine, ServerOptions options)
    : engine_(engine), options_(options), http_(std::make_unique<httplib::Server>()),
      interval_rng_(substream(options.seed, 0x626c6f636bULL)) {
    auto threads = options_.threads;
    http_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    http_->set_keep_alive_max_count(1u << 20);
    http_->set_keep_alive_timeout(5);
    http_->set_tcp_nodelay(true);
    routes();
}

Server::~Server() { stop(); }

int Server::start(const std::string& host, int port) {
    if (port == 0)
        port_ = http_->bind_to_any_port(host);
    else
        port_ = http_->bind_to_port(host, port) ? port : -1;
    if (port_ <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    running_ = true;
    listener_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    if (!options_.manual_blocks) scheduler_ = std::thread([this] { scheduler_loop(); });
    return port_;
}

void Server::stop() {
    if (!running_.exchange(false)) return;
    sched_cv_.notify_all();
    if (scheduler_.joinable()) scheduler_.join();
    engine_.events().close();
    http_->stop();
    if (listener_.joinable()) listener_.join();
}

Block Server::produce_next_block() {
    std::lock_guard lock(interval_mu_);
    const auto dt = interval_rng_.uniform(options_.interval_min, options_.interval_max);
    return engine_.produce_block(engine_.last_timestamp() + std::max<std::uint64_t>(dt, 1));
}

void Server::scheduler_loop() {
    std::unique_lock lock(sched_mu_);
    while (running_) {
        sched_cv_.wait_for(lock, std::chrono::milliseconds(options_.tick_ms), [this] { return !running_; });
        if (!running_) break;
        produce_next_block();
    }
}

void Server::routes() {
    auto& svr = *http_;

    svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send_error(res, 500, "internal", what);
    });

    if (options_.cors_origin) {
        svr.set_post_routing_handler([origin = *options_.cors_origin](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Origin", origin);
        });
        svr.Options(".*", [](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.set_header("Access-Control-Max-Age", "600");
        });
    }

    svr.Post("/tx", [this](const httplib::Request& req, httplib::Response& res) {
        Bytes raw;
        try {
            raw = from_hex(trim(req.body));
        } catch (const std::exception& e) {
            return send_error(res, 400, "decode_error", e.what());
        }
        SignedTransaction tx;
        try {
            tx = decode_signed_transaction(raw);
        } catch (const DecodeError& e) {
            return send_error(res, 400, "decode_error", e.what());
        }
        try {
            auto r = engine_.submit(tx);
            send(res, 200, {{"txid", to_hex(r.txid)}, {"status", "queued"}});
        } catch (const SignatureInvalid& e) {
            send_error(res, 400, "signature_invalid", e.what(), tx.txid);
        }
    });

    svr.Get("/head", [this](const httplib::Request&, httplib::Response& res) {
        auto b = engine_.block(engine_.height());
        send(res, 200, {{"height", b->height},
                        {"timestamp", b->timestamp},
                        {"state_root", to_hex(b->state_root)},
                        {"next_sequence", engine_.events().next_sequence()},
                        {"pending", engine_.pending_count()}});
    });

    svr.Get("/assets", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("owner")) return send_error(res, 400, "invalid_input", "owner query parameter required");
        auto owner = parse_address(req.get_param_value("owner"));
        if (!owner) return send_error(res, 400, "invalid_input", "malformed owner address");
        auto body = engine_.with_state([&](const LedgerState& s) {
            ojson arr = ojson::array();
            for (const auto& a : get_assets_by_owner(s, *owner)) arr.push_back(asset_json(a));
            return arr;
        });
        send(res, 200, body);
    });

    svr.Get(R"(/assets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto id = parse_u64(req.matches[1]);
        if (!id) return send_error(res, 400, "invalid_input", "malformed asset id");
        auto asset = engine_.with_state([&](const LedgerState& s) { return get_asset(s, *id); });
        if (!asset) return send_error(res, 404, "not_found", "no asset with id " + std::to_string(*id));
        send(res, 200, asset_json(*asset));
    });

    svr.Get(R"(/accounts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto addr = parse_address(req.matches[1]);
        if (!addr) return send_error(res, 400, "invalid_input", "malformed address");
        auto body = engine_.with_state([&](const LedgerState& s) -> std::optional<ojson> {
            if (!s.has_account(*addr)) return std::nullopt;
            return account_json(s, *addr);
        });
        if (!body) return send_error(res, 404, "not_found", "unknown account");
        send(res, 200, *body);
    });

    svr.Get("/pools", [this](const httplib::Request&, httplib::Response& res) {
        auto body = engine_.with_state([&](const LedgerState& s) {
            ojson arr = ojson::array();
            for (const auto& [id, p] : s.pools) arr.push_back(pool_json(p));
            return arr;
        });
        send(res, 200, body);
    });

    svr.Get(R"(/pools/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto id = parse_u64(req.matches[1]);
        if (!id) return send_error(res, 400, "invalid_input", "malformed pool id");
        auto pool = engine_.with_state([&](const LedgerState& s) -> std::optional<Pool> {
            if (auto* p = s.pool(*id)) return *p;
            return std::nullopt;
        });
        if (!pool) return send_error(res, 404, "not_found", "no pool with id " + std::to_string(*id));
        send(res, 200, pool_json(*pool));
    });

    svr.Get(R"(/pools/([^/]+)/quote)", [this](const httplib::Request& req, httplib::Response& res) {
        auto id = parse_u64(req.matches[1]);
        auto amount = parse_u64(req.get_param_value("amount_in"));
        if (!id || !amount) return send_error(res, 400, "invalid_input", "pool id and amount_in required");
        Direction dir;
        try {
            dir = direction_from_string(req.has_param("direction") ? req.get_param_value("direction") : "a_to_b");
        } catch (const std::invalid_argument& e) {
            return send_error(res, 400, "invalid_input", e.what());
        }
        auto pool = engine_.with_state([&](const LedgerState& s) -> std::optional<Pool> {
            if (auto* p = s.pool(*id)) return *p;
            return std::nullopt;
        });
        if (!pool) return send_error(res, 404, "not_found", "no pool with id " + std::to_string(*id));
        try {
            auto q = quote_swap_exact_in(*pool, dir, *amount);
            send(res, 200, {{"pool_id", *id},
                            {"direction", std::string(to_string(dir))},
                            {"amount_in", q.amount_in},
                            {"amount_out", q.amount_out},
                            {"spot_price_num", q.spot_price_num},
                            {"spot_price_den", q.spot_price_den},
                            {"slippage_bps", q.slippage_bps}});
        } catch (const Rejection& r) {
            send_error(res, 400, api_code(r.reason()), r.what());
        }
    });

    svr.Get(R"(/feeds/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
        std::string feed_id = req.matches[1];
        auto price = engine_.with_state([&](const LedgerState& s) { return get_price(s, feed_id); });
        if (!price) return send_error(res, 404, "not_found", "no published price for feed " + feed_id);
        send(res, 200, feed_json(feed_id, *price));
    });

    svr.Get(R"(/blocks/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        auto h = parse_u64(req.matches[1]);
        if (!h) return send_error(res, 400, "invalid_input", "malformed height");
        auto b = engine_.block(*h);
        if (!b) return send_error(res, 404, "not_found", "no block at height " + std::to_string(*h));
        if (req.get_param_value("encoding") == "canonical")
            return send(res, 200, {{"height", b->height}, {"hex", to_hex(encode(*b))}});
        send(res, 200, block_json(*b));
    });

    svr.Get(R"(/receipts/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        Hash32 txid;
        try {
            txid = hash_from_hex(req.matches[1].str());
        } catch (const std::exception&) {
            return send_error(res, 400, "invalid_input", "malformed txid");
        }
        auto found = engine_.lookup(txid);
        if (!found) return send_error(res, 404, "not_found", "unknown transaction");
        if (found->status == TxStatus::Queued) return send(res, 200, {{"txid", to_hex(txid)}, {"status", "queued"}});
        auto body = receipt_json(*found->receipt);
        if (found->payload) body["kind"] = std::string(payload_kind(*found->payload));
        send(res, 200, body);
    });

    svr.Post("/faucet", [this](const httplib::Request& req, httplib::Response& res) {
        if (!options_.faucet_cap) return send_error(res, 403, "not_authorized", "faucet is disabled");
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const std::exception&) {
            return send_error(res, 400, "invalid_input", "body must be JSON");
        }
        if (!body.is_object() || !body.contains("address") || !body["address"].is_string() ||
            !body.contains("amount") || !body["amount"].is_number_unsigned())
            return send_error(res, 400, "invalid_input", "expected {address, amount}");
        auto addr = parse_address(body["address"].get<std::string>());
        if (!addr) return send_error(res, 400, "invalid_input", "malformed address");
        auto amount = body["amount"].get<std::uint64_t>();
        if (amount == 0 || amount > *options_.faucet_cap)
            return send_error(res, 400, "invalid_input", "amount must be within 1.." + std::to_string(*options_.faucet_cap));
        try {
            engine_.credit(*addr, amount);
        } catch (const std::overflow_error& e) {
            return send_error(res, 400, "invalid_input", e.what());
        }
        send(res, 200, {{"address", to_hex(*addr)}, {"credited", amount}});
    });

    svr.Post("/blocks", [this](const httplib::Request& req, httplib::Response& res) {
        if (!options_.manual_blocks) return send_error(res, 403, "not_authorized", "manual block production is disabled");
        std::optional<std::uint64_t> ts;
        if (!trim(req.body).empty()) {
            try {
                auto body = nlohmann::json::parse(req.body);
                if (body.contains("timestamp")) ts = body.at("timestamp").get<std::uint64_t>();
            } catch (const std::exception&) {
                return send_error(res, 400, "invalid_input", "expected {\"timestamp\": n}");
            }
        }
        try {
            auto b = ts ? engine_.produce_block(*ts) : produce_next_block();
            send(res, 200, {{"height", b.height},
                            {"timestamp", b.timestamp},
                            {"state_root", to_hex(b.state_root)},
                            {"transactions", b.entries.size()}});
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "invalid_input", e.what());
        }
    });

    svr.Get("/events", [this](const httplib::Request& req, httplib::Response& res) {
        std::uint64_t from = 0;
        if (req.has_param("from")) {
            auto v = parse_u64(req.get_param_value("from"));
            if (!v) return send_error(res, 400, "invalid_input", "malformed from cursor");
            from = *v;
        }
        std::optional<std::uint64_t> limit;
        if (req.has_param("limit")) {
            limit = parse_u64(req.get_param_value("limit"));
            if (!limit) return send_error(res, 400, "invalid_input", "malformed limit");
        }
        if (from > engine_.events().next_sequence())
            return send_error(res, 400, "invalid_input", "cursor is beyond the head of the event log");

        struct Cursor {
            std::uint64_t next;
            std::uint64_t sent = 0;
        };
        auto cursor = std::make_shared<Cursor>(Cursor{from});
        res.status = 200;
        res.set_chunked_content_provider(
            "application/x-ndjson", [this, cursor, limit](std::size_t, httplib::DataSink& sink) {
                auto& log = engine_.events();
                if (limit && cursor->sent >= *limit) {
                    sink.done();
                    return true;
                }
                if (!log.wait(cursor->next, std::chrono::milliseconds(250))) {
                    if (!running_ || log.closed()) {
                        sink.done();
                        return true;
                    }
                    return sink.is_writable();
                }
                if (log.next_sequence() - cursor->next > options_.max_stream_lag) {
                    ojson lag = {{"error", "lagged"}, {"resume_from", cursor->next}};
                    auto line = lag.dump() + "\n";
                    sink.write(line.data(), line.size());
                    sink.done();
                    return true;
                }
                std::size_t max = 256;
                if (limit) max = static_cast<std::size_t>(std::min<std::uint64_t>(max, *limit - cursor->sent));
                for (const auto& f : log.read(cursor->next, max)) {
                    auto line = frame_json(f).dump() + "\n";
                    if (!sink.write(line.data(), line.size())) return false;
                    cursor->next = f.event.sequence + 1;
                    cursor->sent += 1;
                }
                return true;
            });
    });
}

}  // namespace gamefi::api
