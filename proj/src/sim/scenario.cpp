#include "gamefi/sim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gamefi::sim {

using nlohmann::json;

std::string_view to_string(Policy p) {
    switch (p) {
        case Policy::Minter: return "Minter";
        case Policy::RandomTrader: return "RandomTrader";
        case Policy::Arbitrageur: return "Arbitrageur";
        case Policy::Staker: return "Staker";
    }
    return "Unknown";
}

namespace {

Policy policy_from(const std::string& s, const std::string& field) {
    for (auto p : {Policy::Minter, Policy::RandomTrader, Policy::Arbitrageur, Policy::Staker})
        if (to_string(p) == s) return p;
    throw ScenarioError(field + ": unknown policy '" + s + "'");
}

template <typename T>
T field(const json& j, const std::string& key, const std::string& path, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(path + "." + key + ": wrong type");
    }
}

template <typename T>
T required(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ScenarioError(path + "." + key + ": missing");
    return field<T>(j, key, path, T{});
}

void check_probability(double p, const std::string& path) {
    if (!(p >= 0.0 && p <= 1.0)) throw ScenarioError(path + ": probability must be within [0, 1]");
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ScenarioError("scenario: expected a JSON object");
    Scenario s;
    s.name = field<std::string>(j, "name", "scenario", s.name);
    s.seed = field<std::uint64_t>(j, "seed", "scenario", 0);
    auto mode = field<std::string>(j, "mode", "scenario", "in-process");
    if (mode == "in-process")
        s.mode = Mode::InProcess;
    else if (mode == "api")
        s.mode = Mode::Api;
    else
        throw ScenarioError("mode: expected 'in-process' or 'api'");
    s.duration_blocks = field<std::uint64_t>(j, "duration_blocks", "scenario", 0);

    if (j.contains("block_interval")) {
        const auto& bi = j.at("block_interval");
        if (!bi.is_array() || bi.size() != 2 || !bi[0].is_number_unsigned() || !bi[1].is_number_unsigned())
            throw ScenarioError("block_interval: expected [min, max] seconds");
        s.interval_min = bi[0].get<std::uint64_t>();
        s.interval_max = bi[1].get<std::uint64_t>();
    }
    if (s.interval_min == 0) throw ScenarioError("block_interval: min must be positive");
    if (s.interval_min > s.interval_max) throw ScenarioError("block_interval: min exceeds max");

    if (j.contains("genesis")) s.genesis = field<std::string>(j, "genesis", "scenario", "");

    const auto pools = field<json>(j, "pools", "scenario", json::array());
    for (std::size_t i = 0; i < pools.size(); ++i) {
        const auto path = "pools[" + std::to_string(i) + "]";
        PoolSpec p;
        p.token_a = required<std::string>(pools[i], "token_a", path);
        p.token_b = required<std::string>(pools[i], "token_b", path);
        p.fee_bps = field<std::uint64_t>(pools[i], "fee_bps", path, 30);
        p.reserve_a = required<std::uint64_t>(pools[i], "reserve_a", path);
        p.reserve_b = required<std::uint64_t>(pools[i], "reserve_b", path);
        if (p.token_a == p.token_b) throw ScenarioError(path + ": tokens must differ");
        if (p.token_b < p.token_a) throw ScenarioError(path + ": token_a must sort before token_b");
        if (p.reserve_a == 0 || p.reserve_b == 0) throw ScenarioError(path + ": reserves must be positive");
        if (p.fee_bps > 1'000) throw ScenarioError(path + ".fee_bps: must be at most 1000");
        s.pools.push_back(std::move(p));
    }

    const auto feeds = field<json>(j, "feeds", "scenario", json::array());
    for (std::size_t i = 0; i < feeds.size(); ++i) {
        const auto path = "feeds[" + std::to_string(i) + "]";
        FeedSpec f;
        f.feed_id = required<std::string>(feeds[i], "feed_id", path);
        f.pool_id = field<std::uint64_t>(feeds[i], "pool_id", path, 1);
        f.reporters = field<std::uint64_t>(feeds[i], "reporters", path, 3);
        f.quorum = field<std::uint64_t>(feeds[i], "quorum", path, f.reporters);
        f.price_ppm = field<std::uint64_t>(feeds[i], "price_ppm", path, 1'000'000);
        f.report_every = field<std::uint64_t>(feeds[i], "report_every", path, 5);
        f.jitter_ppm = field<std::uint64_t>(feeds[i], "jitter_ppm", path, 0);
        f.reporter_funding = field<std::uint64_t>(feeds[i], "reporter_funding", path, f.reporter_funding);
        if (f.reporters == 0) throw ScenarioError(path + ".reporters: must be positive");
        if (f.quorum == 0 || f.quorum > f.reporters) throw ScenarioError(path + ".quorum: must be within 1..reporters");
        if (f.report_every == 0) throw ScenarioError(path + ".report_every: must be positive");
        if (f.price_ppm == 0) throw ScenarioError(path + ".price_ppm: must be positive");
        if (f.jitter_ppm >= f.price_ppm) throw ScenarioError(path + ".jitter_ppm: must be below price_ppm");
        if (f.pool_id == 0 || f.pool_id > s.pools.size()) throw ScenarioError(path + ".pool_id: no such pool");
        s.feeds.push_back(std::move(f));
    }

    const auto agents = field<json>(j, "agents", "scenario", json::array());
    if (!agents.is_array()) throw ScenarioError("agents: expected an array");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto path = "agents[" + std::to_string(i) + "]";
        const auto& a = agents[i];
        AgentGroup g;
        g.policy = policy_from(required<std::string>(a, "policy", path), path + ".policy");
        g.count = required<std::uint64_t>(a, "count", path);
        if (g.count == 0) throw ScenarioError(path + ".count: must be positive");
        const auto funding = field<json>(a, "funding", path, json::object());
        g.funding.native = field<std::uint64_t>(funding, "native", path + ".funding", 0);
        const auto tokens = field<json>(funding, "tokens", path + ".funding", json::object());
        for (const auto& [sym, amt] : tokens.items()) {
            if (!amt.is_number_unsigned()) throw ScenarioError(path + ".funding.tokens." + sym + ": wrong type");
            g.funding.tokens[sym] = amt.get<std::uint64_t>();
        }
        const auto params = field<json>(a, "params", path, json::object());
        const auto pp = path + ".params";
        g.minter.mint_probability = field<double>(params, "mint_probability", pp, g.minter.mint_probability);
        g.minter.transfer_probability = field<double>(params, "transfer_probability", pp, g.minter.transfer_probability);
        g.trader.trade_probability = field<double>(params, "trade_probability", pp, g.trader.trade_probability);
        g.trader.max_trade_bps = field<std::uint64_t>(params, "max_trade_bps", pp, g.trader.max_trade_bps);
        g.trader.slippage_tolerance_bps =
            field<std::uint64_t>(params, "slippage_tolerance_bps", pp, g.trader.slippage_tolerance_bps);
        g.arbitrage.threshold_bps = field<std::uint64_t>(params, "threshold_bps", pp, g.arbitrage.threshold_bps);
        g.arbitrage.slippage_tolerance_bps =
            field<std::uint64_t>(params, "slippage_tolerance_bps", pp, g.arbitrage.slippage_tolerance_bps);
        g.staker.stake_fraction_bps = field<std::uint64_t>(params, "stake_fraction_bps", pp, g.staker.stake_fraction_bps);
        g.staker.hold_blocks = field<std::uint64_t>(params, "hold_blocks", pp, g.staker.hold_blocks);
        g.staker.fee_reserve = field<std::uint64_t>(params, "fee_reserve", pp, g.staker.fee_reserve);
        check_probability(g.minter.mint_probability, pp + ".mint_probability");
        check_probability(g.minter.transfer_probability, pp + ".transfer_probability");
        check_probability(g.trader.trade_probability, pp + ".trade_probability");
        if (g.trader.max_trade_bps == 0 || g.trader.max_trade_bps > 10'000)
            throw ScenarioError(pp + ".max_trade_bps: must be within 1..10000");
        if (g.trader.slippage_tolerance_bps > 10'000 || g.arbitrage.slippage_tolerance_bps > 10'000)
            throw ScenarioError(pp + ".slippage_tolerance_bps: must be at most 10000");
        if (g.staker.stake_fraction_bps == 0 || g.staker.stake_fraction_bps > 10'000)
            throw ScenarioError(pp + ".stake_fraction_bps: must be within 1..10000");
        s.agents.push_back(std::move(g));
    }
    if (s.agents.empty()) throw ScenarioError("agents: at least one agent group required");
    return s;
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream msg;
        msg << "parse error at line " << line << ", column " << col << ": " << e.what();
        throw ScenarioError(msg.str());
    }
    return scenario_from_json(j);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto s = parse_scenario(buf.str());
    if (s.genesis && s.genesis->is_relative()) s.genesis = path.parent_path() / *s.genesis;
    return s;
}

nlohmann::ordered_json to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["seed"] = s.seed;
    j["mode"] = s.mode == Mode::Api ? "api" : "in-process";
    j["duration_blocks"] = s.duration_blocks;
    j["block_interval"] = {s.interval_min, s.interval_max};
    if (s.genesis) j["genesis"] = s.genesis->string();
    j["pools"] = nlohmann::ordered_json::array();
    for (const auto& p : s.pools)
        j["pools"].push_back({{"token_a", p.token_a},
                              {"token_b", p.token_b},
                              {"fee_bps", p.fee_bps},
                              {"reserve_a", p.reserve_a},
                              {"reserve_b", p.reserve_b}});
    j["feeds"] = nlohmann::ordered_json::array();
    for (const auto& f : s.feeds)
        j["feeds"].push_back({{"feed_id", f.feed_id},
                              {"pool_id", f.pool_id},
                              {"reporters", f.reporters},
                              {"quorum", f.quorum},
                              {"price_ppm", f.price_ppm},
                              {"report_every", f.report_every},
                              {"jitter_ppm", f.jitter_ppm},
                              {"reporter_funding", f.reporter_funding}});
    j["agents"] = nlohmann::ordered_json::array();
    for (const auto& g : s.agents) {
        nlohmann::ordered_json a;
        a["policy"] = std::string(to_string(g.policy));
        a["count"] = g.count;
        a["funding"] = {{"native", g.funding.native}, {"tokens", g.funding.tokens}};
        nlohmann::ordered_json params;
        switch (g.policy) {
            case Policy::Minter:
                params = {{"mint_probability", g.minter.mint_probability},
                          {"transfer_probability", g.minter.transfer_probability}};
                break;
            case Policy::RandomTrader:
                params = {{"trade_probability", g.trader.trade_probability},
                          {"max_trade_bps", g.trader.max_trade_bps},
                          {"slippage_tolerance_bps", g.trader.slippage_tolerance_bps}};
                break;
            case Policy::Arbitrageur:
                params = {{"threshold_bps", g.arbitrage.threshold_bps},
                          {"slippage_tolerance_bps", g.arbitrage.slippage_tolerance_bps}};
                break;
            case Policy::Staker:
                params = {{"stake_fraction_bps", g.staker.stake_fraction_bps},
                          {"hold_blocks", g.staker.hold_blocks},
                          {"fee_reserve", g.staker.fee_reserve}};
                break;
        }
        a["params"] = params;
        j["agents"].push_back(std::move(a));
    }
    return j;
}

std::uint64_t agent_count(const Scenario& s) {
    std::uint64_t n = 0;
    for (const auto& g : s.agents) n += g.count;
    return n;
}

}  // namespace gamefi::sim
