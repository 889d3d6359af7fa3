#include "gamefi/sim/runner.hpp"

#include <condition_variable>
#include <fstream>
#include <future>
#include <mutex>
#include <set>

#include "gamefi/api/server.hpp"
#include "gamefi/block_log.hpp"
#include "gamefi/crypto.hpp"
#include "gamefi/encoding.hpp"
#include "gamefi/engine.hpp"
#include "gamefi/ledger.hpp"
#include "gamefi/oracle.hpp"

namespace gamefi::sim {

namespace {

constexpr std::uint64_t kReporterStream = 0x7265706f72746572ULL;
constexpr std::uint64_t kIntervalStream = 0x696e74657276616cULL;

Seed derive_seed(std::string_view label, std::uint64_t seed, std::uint64_t index) {
    Writer w;
    w.str(label);
    w.u64(seed);
    w.u64(index);
    auto h = sha256(w.data());
    return Seed::from(h.view());
}

Role role_of(Policy p) {
    switch (p) {
        case Policy::Minter: return Role::Minter;
        case Policy::RandomTrader: return Role::RandomTrader;
        case Policy::Arbitrageur: return Role::Arbitrageur;
        case Policy::Staker: return Role::Staker;
    }
    return Role::Minter;
}

void merge_extra(GenesisConfig& g, const GenesisConfig& extra) {
    g.accounts.insert(g.accounts.end(), extra.accounts.begin(), extra.accounts.end());
    for (const auto& t : extra.tokens) {
        auto it = std::find_if(g.tokens.begin(), g.tokens.end(), [&](const auto& x) { return x.symbol == t.symbol; });
        if (it == g.tokens.end()) {
            g.tokens.push_back(t);
            continue;
        }
        for (const auto& [addr, amount] : t.balances) {
            if (it->balances.count(addr)) throw GenesisError("token " + t.symbol + ": duplicate balance for " + to_hex(addr));
            it->balances[addr] = amount;
        }
    }
    g.pools.insert(g.pools.end(), extra.pools.begin(), extra.pools.end());
    g.feeds.insert(g.feeds.end(), extra.feeds.begin(), extra.feeds.end());
    g.params = extra.params;
    g.timestamp = extra.timestamp;
}

class Turnstile {
  public:
    void wait(std::size_t turn) {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return turn_ == turn; });
    }
    void advance() {
        {
            std::lock_guard lock(mu_);
            ++turn_;
        }
        cv_.notify_all();
    }

  private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::size_t turn_ = 0;
};

Observation observe_local(const LedgerState& s, const Population& pop, const AgentState& a, std::uint64_t height,
                          std::uint64_t round, const std::vector<Address>& peers) {
    Observation o;
    o.height = height;
    o.round = round;
    const auto& addr = a.key.public_key;
    if (const auto* acct = s.account(addr)) o.self = *acct;
    for (const auto& [symbol, t] : s.tokens) {
        auto it = t.balances.find(addr);
        if (it != t.balances.end()) o.tokens[symbol] = it->second;
    }
    if (auto it = s.owner_index.find(addr); it != s.owner_index.end())
        o.owned_assets.assign(it->second.begin(), it->second.end());
    if (auto it = s.stakes.find(addr); it != s.stakes.end()) o.stake = it->second;
    for (auto id : pop.pool_ids) {
        if (const auto* p = s.pool(id)) {
            Pool copy = *p;
            copy.lp_balances.clear();
            o.pools.push_back(std::move(copy));
        }
    }
    for (const auto& link : pop.feed_links)
        if (auto price = get_price(s, link.feed_id)) o.feed_values[link.feed_id] = price->value;
    o.feed_links = pop.feed_links;
    o.peers = peers;
    return o;
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

/// Mirrors observe_local through the public HTTP views. Returns nullopt if a
/// request failed.
std::optional<Observation> observe_remote(api::Client& c, const Population& pop, const AgentState& a,
                                          std::uint64_t round, const std::vector<Address>& peers) {
    Observation o;
    o.round = round;
    const auto addr = to_hex(a.key.public_key);

    auto head = c.get("/head");
    if (!head || head->status != 200) return std::nullopt;
    o.height = head->body.at("height").get<std::uint64_t>();

    auto acct = c.get("/accounts/" + addr);
    if (!acct) return std::nullopt;
    if (acct->status == 200) {
        const auto& j = acct->body;
        o.self.balance = j.at("balance").get<std::uint64_t>();
        o.self.nonce = j.at("nonce").get<std::uint64_t>();
        for (const auto& [symbol, v] : j.at("tokens").items()) o.tokens[symbol] = v.get<std::uint64_t>();
        if (!j.at("stake").is_null())
            o.stake = StakePosition{j["stake"].at("amount").get<std::uint64_t>(),
                                    j["stake"].at("start_block").get<std::uint64_t>()};
    } else if (acct->status != 404) {
        return std::nullopt;
    }

    auto assets = c.get("/assets?owner=" + addr);
    if (!assets || assets->status != 200) return std::nullopt;
    for (const auto& x : assets->body) o.owned_assets.push_back(x.at("id").get<std::uint64_t>());

    for (auto id : pop.pool_ids) {
        auto r = c.get("/pools/" + std::to_string(id));
        if (!r) return std::nullopt;
        if (r->status != 200) continue;
        const auto& j = r->body;
        Pool p;
        p.pool_id = j.at("pool_id").get<std::uint64_t>();
        p.token_a = j.at("token_a").get<std::string>();
        p.token_b = j.at("token_b").get<std::string>();
        p.reserve_a = j.at("reserve_a").get<std::uint64_t>();
        p.reserve_b = j.at("reserve_b").get<std::uint64_t>();
        p.fee_bps = j.at("fee_bps").get<std::uint64_t>();
        p.lp_supply = j.at("lp_supply").get<std::uint64_t>();
        o.pools.push_back(std::move(p));
    }
    for (const auto& link : pop.feed_links) {
        auto r = c.get("/feeds/" + url_encode(link.feed_id));
        if (!r) return std::nullopt;
        if (r->status == 200) o.feed_values[link.feed_id] = r->body.at("value").get<std::uint64_t>();
    }
    o.feed_links = pop.feed_links;
    o.peers = peers;
    return o;
}

void add(api::TransportStats& into, const api::TransportStats& s) {
    into.requests += s.requests;
    into.failures += s.failures;
    into.server_errors += s.server_errors;
}

std::vector<Block> fetch_blocks(api::Client& c, std::uint64_t height) {
    std::vector<Block> out;
    for (std::uint64_t h = 0; h <= height; ++h) {
        auto r = c.get("/blocks/" + std::to_string(h) + "?encoding=canonical");
        if (!r || r->status != 200) throw IntegrityError(h, "block unavailable from gateway");
        auto bytes = from_hex(r->body.at("hex").get<std::string>());
        try {
            out.push_back(decode_block(bytes));
        } catch (const DecodeError& e) {
            throw IntegrityError(h, std::string("undecodable block: ") + e.what());
        }
    }
    return out;
}

}  // namespace

Population make_population(const Scenario& s) {
    Population pop;
    GenesisConfig& g = pop.genesis;
    std::map<std::string, GenesisToken> tokens;

    std::uint64_t index = 0;
    for (const auto& group : s.agents) {
        for (std::uint64_t k = 0; k < group.count; ++k, ++index) {
            AgentState a;
            a.key = keygen(derive_seed("gamefi-agent", s.seed, index));
            a.role = role_of(group.policy);
            a.rng = substream(s.seed, index);
            a.minter = group.minter;
            a.trader = group.trader;
            a.arbitrage = group.arbitrage;
            a.staker = group.staker;
            g.accounts.push_back({a.key.public_key, group.funding.native});
            for (const auto& [symbol, amount] : group.funding.tokens) {
                tokens[symbol].symbol = symbol;
                if (amount > 0) tokens[symbol].balances[a.key.public_key] = amount;
            }
            pop.actors.push_back(std::move(a));
        }
    }
    pop.agent_count = pop.actors.size();

    const auto provider = keygen(derive_seed("gamefi-provider", s.seed, 0)).public_key;
    for (const auto& p : s.pools) {
        tokens[p.token_a].symbol = p.token_a;
        tokens[p.token_b].symbol = p.token_b;
        g.pools.push_back({p.token_a, p.token_b, p.fee_bps, p.reserve_a, p.reserve_b, provider});
    }
    for (std::uint64_t i = 0; i < s.pools.size(); ++i) pop.pool_ids.push_back(i + 1);

    std::uint64_t reporter_index = 0;
    for (const auto& f : s.feeds) {
        GenesisFeed gf;
        gf.feed_id = f.feed_id;
        gf.quorum = f.quorum;
        for (std::uint64_t k = 0; k < f.reporters; ++k, ++reporter_index) {
            AgentState r;
            r.key = keygen(derive_seed("gamefi-reporter", s.seed, reporter_index));
            r.role = Role::Reporter;
            r.rng = substream(s.seed ^ kReporterStream, reporter_index);
            r.reporter = {f.feed_id, f.price_ppm, f.report_every, f.jitter_ppm};
            g.accounts.push_back({r.key.public_key, f.reporter_funding});
            gf.reporters.push_back(r.key.public_key);
            pop.actors.push_back(std::move(r));
        }
        g.feeds.push_back(std::move(gf));
        pop.feed_links.push_back({f.feed_id, f.pool_id});
    }
    for (auto& [_, t] : tokens) g.tokens.push_back(std::move(t));

    if (s.genesis) merge_extra(g, load_genesis(*s.genesis));
    build_genesis_state(g);  // validate early
    return pop;
}

RunResult run_scenario(Scenario s, const RunOptions& options) {
    if (options.seed) s.seed = *options.seed;
    if (options.mode) s.mode = *options.mode;
    if (options.api_url) s.mode = Mode::Api;

    Population pop = make_population(s);
    std::vector<Address> peers;
    for (std::size_t i = 0; i < pop.agent_count; ++i) peers.push_back(pop.actors[i].key.public_key);

    SplitMix64 interval_rng(substream(s.seed ^ kIntervalStream, 0));
    RunResult result;
    result.genesis = pop.genesis;

    const auto next_timestamp = [&](std::uint64_t last) {
        return last + interval_rng.uniform(s.interval_min, s.interval_max);
    };

    if (s.mode == Mode::InProcess) {
        Engine engine(pop.genesis);
        for (std::uint64_t round = 0; round < s.duration_blocks; ++round) {
            auto snapshot = engine.snapshot();
            const auto height = engine.height();
            for (auto& actor : pop.actors) {
                auto obs = observe_local(snapshot, pop, actor, height, round, peers);
                if (auto tx = agent_step(actor, obs)) {
                    engine.submit(sign_transaction(*tx, actor.key.secret));
                    ++result.submitted;
                }
            }
            engine.produce_block(next_timestamp(engine.last_timestamp()));
        }
        result.blocks = engine.blocks();
    } else {
        std::unique_ptr<Engine> engine;
        std::unique_ptr<api::Server> server;
        std::string url;
        if (options.api_url) {
            url = *options.api_url;
        } else {
            engine = std::make_unique<Engine>(pop.genesis);
            api::ServerOptions so;
            so.manual_blocks = true;
            so.seed = s.seed;
            so.interval_min = s.interval_min;
            so.interval_max = s.interval_max;
            server = std::make_unique<api::Server>(*engine, so);
            url = "http://127.0.0.1:" + std::to_string(server->start("127.0.0.1", 0));
        }

        std::vector<api::Client> clients;
        for (std::size_t i = 0; i < pop.actors.size(); ++i) clients.emplace_back(url);
        api::Client control(url);

        auto head = control.get("/head");
        if (!head || head->status != 200) throw std::runtime_error("gateway at " + url + " is not reachable");
        std::uint64_t last_ts = head->body.at("timestamp").get<std::uint64_t>();
        if (head->body.at("height").get<std::uint64_t>() != 0)
            throw std::runtime_error("gateway at " + url + " is not at genesis");

        std::mutex count_mu;
        for (std::uint64_t round = 0; round < s.duration_blocks; ++round) {
            Turnstile turnstile;
            std::vector<std::future<void>> work;
            for (std::size_t i = 0; i < pop.actors.size(); ++i) {
                work.push_back(std::async(std::launch::async, [&, i] {
                    auto& actor = pop.actors[i];
                    auto& client = clients[i];
                    std::optional<SignedTransaction> signed_tx;
                    if (auto obs = observe_remote(client, pop, actor, round, peers)) {
                        if (auto tx = agent_step(actor, *obs)) signed_tx = sign_transaction(*tx, actor.key.secret);
                    }
                    turnstile.wait(i);
                    if (signed_tx) {
                        auto r = client.post("/tx", to_hex(encode(*signed_tx)), "text/plain");
                        std::lock_guard lock(count_mu);
                        ++result.submitted;
                        if (!r || r->status != 200) ++result.submit_refused;
                    }
                    turnstile.advance();
                }));
            }
            for (auto& w : work) w.get();
            last_ts = next_timestamp(last_ts);
            auto r = control.post("/blocks", nlohmann::json{{"timestamp", last_ts}}.dump());
            if (!r || r->status != 200)
                throw std::runtime_error("block production failed at round " + std::to_string(round));
        }
        head = control.get("/head");
        if (!head || head->status != 200) throw std::runtime_error("gateway head unavailable");
        result.blocks = fetch_blocks(control, head->body.at("height").get<std::uint64_t>());
        for (const auto& c : clients) add(result.transport, c.stats());
        add(result.transport, control.stats());
        clients.clear();
        control = api::Client(url);
        if (server) server->stop();
    }

    auto final_state = replay(result.genesis, result.blocks,
                              [&](const Block& b, const LedgerState& st) { result.metrics.observe(b, st); });
    result.metrics.finish(final_state);
    result.final_root = state_root(final_state);

    auto m = result.metrics.report();
    m["scenario"] = s.name;
    m["seed"] = s.seed;
    m["mode"] = s.mode == Mode::Api ? "api" : "in-process";
    m["agents"] = pop.agent_count;
    m["reporters"] = pop.actors.size() - pop.agent_count;
    m["submitted"] = result.submitted;
    m["transport"] = {{"requests", result.transport.requests},
                      {"failures", result.transport.failures},
                      {"server_errors", result.transport.server_errors},
                      {"submit_refused", result.submit_refused}};
    result.metrics_json = m;

    if (options.export_dir) {
        const auto& dir = *options.export_dir;
        export_chain(dir, result.genesis, result.blocks);
        std::ofstream(dir / ExportPaths::metrics) << m.dump(2) << '\n';
        std::ofstream(dir / ExportPaths::prices) << result.metrics.prices_csv();
        std::ofstream(dir / "scenario.json") << to_json(s).dump(2) << '\n';
    }
    return result;
}

}  // namespace gamefi::sim
