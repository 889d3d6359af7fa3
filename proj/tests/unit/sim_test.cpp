#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "gamefi/block_log.hpp"
#include "gamefi/defi.hpp"
#include "gamefi/oracle.hpp"
#include "gamefi/sim/runner.hpp"

using namespace gamefi;
using namespace gamefi::sim;
using gamefi::testing::key;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(GAMEFI_SOURCE_DIR) / "scenarios";

std::filesystem::path temp_dir(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("gamefi_sim_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

Scenario small(std::uint64_t blocks = 12) {
    return parse_scenario(R"({
      "seed": 7, "duration_blocks": )" + std::to_string(blocks) + R"(, "block_interval": [15, 45],
      "pools": [{"token_a": "GEM", "token_b": "GOLD", "reserve_a": 1000000, "reserve_b": 1200000}],
      "feeds": [{"feed_id": "GEM/GOLD", "pool_id": 1, "price_ppm": 1000000, "report_every": 3}],
      "agents": [
        {"policy": "Minter", "count": 2, "funding": {"native": 10000000}},
        {"policy": "RandomTrader", "count": 2, "funding": {"native": 10000000, "tokens": {"GEM": 100000, "GOLD": 100000}}},
        {"policy": "Arbitrageur", "count": 1, "funding": {"native": 10000000, "tokens": {"GEM": 100000, "GOLD": 100000}}},
        {"policy": "Staker", "count": 1, "funding": {"native": 10000000}, "params": {"hold_blocks": 3}}
      ]})");
}

Pool make_pool(std::uint64_t ra, std::uint64_t rb) {
    Pool p;
    p.pool_id = 1;
    p.token_a = "GEM";
    p.token_b = "GOLD";
    p.reserve_a = ra;
    p.reserve_b = rb;
    p.fee_bps = 30;
    p.lp_supply = isqrt(u128(ra) * rb);
    return p;
}

AgentState arbitrageur() {
    AgentState a;
    a.key = key(1);
    a.role = Role::Arbitrageur;
    a.rng = substream(1, 0);
    return a;
}

Observation observe_pool(const Pool& p, std::uint64_t feed) {
    Observation o;
    o.pools = {p};
    o.feed_links = {{"GEM/GOLD", 1}};
    o.feed_values["GEM/GOLD"] = feed;
    o.tokens = {{"GEM", UINT64_MAX / 4}, {"GOLD", UINT64_MAX / 4}};
    return o;
}

}  // namespace

TEST(Scenario, BundledLoadScenario) {
    auto s = load_scenario(kScenarios / "load20.json");
    EXPECT_EQ(agent_count(s), 20u);
    EXPECT_EQ(s.interval_min, 15u);
    EXPECT_EQ(s.interval_max, 45u);
    EXPECT_EQ(s.duration_blocks, 100u);
    EXPECT_EQ(s.mode, Mode::Api);
    std::map<Policy, std::uint64_t> mix;
    for (const auto& g : s.agents) mix[g.policy] += g.count;
    for (auto p : {Policy::Minter, Policy::RandomTrader, Policy::Arbitrageur, Policy::Staker}) EXPECT_EQ(mix[p], 5u);
}

TEST(Scenario, ValidationErrorsNameTheField) {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_scenario(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ScenarioError& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_error(R"({"block_interval": [45, 15], "agents": [{"policy": "Minter", "count": 1}]})", "block_interval");
    expect_error(R"({"agents": [{"policy": "Wizard", "count": 1}]})", "agents[0].policy");
    expect_error(R"({"agents": [{"policy": "Minter", "count": 0}]})", "agents[0].count");
    expect_error(R"({"agents": []})", "agents");
    expect_error("{\n  \"seed\": 1,\n  oops\n}", "line 3");
}

TEST(Scenario, JsonRoundTrip) {
    auto s = small();
    auto again = scenario_from_json(nlohmann::json::parse(to_json(s).dump()));
    EXPECT_EQ(to_json(again), to_json(s));
}

TEST(Rng, SubstreamsIndependentOfPopulationSize) {
    auto a = substream(42, 3);
    auto b = substream(42, 3);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
    EXPECT_NE(substream(42, 3).next(), substream(42, 4).next());
}

TEST(Rng, SplitMixReferenceOutput) {
    // Reference values of splitmix64 seeded with 0.
    SplitMix64 r(0);
    EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
}

TEST(Agents, ArbitrageurIdleWithoutEdge) {
    auto a = arbitrageur();
    EXPECT_FALSE(agent_step(a, observe_pool(make_pool(1'000, 1'000), 1'000'000)));
}

TEST(Agents, ArbitrageurSellsOverpricedSide) {
    auto a = arbitrageur();
    auto tx = agent_step(a, observe_pool(make_pool(1'100, 910), 1'000'000));
    ASSERT_TRUE(tx);
    auto swap = std::get<SwapExactIn>(tx->payload);
    // Spot 910/1100 < 1.00: token_b is overpriced in the pool, so sell it.
    EXPECT_EQ(swap.direction, Direction::BToA);
    EXPECT_GT(swap.amount_in, 0u);
}

TEST(Agents, MinterWithCertainProbabilityMintsEveryStep) {
    AgentState a;
    a.key = key(2);
    a.role = Role::Minter;
    a.rng = substream(9, 0);
    a.minter.mint_probability = 1.0;
    Observation o;
    for (int i = 0; i < 50; ++i) {
        auto tx = agent_step(a, o);
        ASSERT_TRUE(tx);
        EXPECT_TRUE(std::holds_alternative<CreateAsset>(tx->payload));
    }
}

TEST(Agents, ArbitrageConvergesMonotonically) {
    // One arbitrageur against a stationary feed: every applied swap shrinks
    // the gap, and it stops within threshold + fee.
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto ra = rng.uniform(10'000, 1'000'000'000);
        const auto ratio_ppm = rng.uniform(200'000, 5'000'000);
        const auto rb = static_cast<std::uint64_t>(u128(ra) * ratio_ppm / 1'000'000);
        const std::uint64_t feed = rng.uniform(500'000, 2'000'000);
        auto pool = make_pool(ra, rb);
        auto a = arbitrageur();
        auto gap_bps = [&] {
            auto s = spot_ppm(pool);
            auto g = s > feed ? s - feed : feed - s;
            return static_cast<double>(g) * 10'000.0 / static_cast<double>(feed);
        };
        double prev = gap_bps();
        for (int step = 0; step < 200; ++step) {
            auto tx = agent_step(a, observe_pool(pool, feed));
            if (!tx) break;
            auto swap = std::get<SwapExactIn>(tx->payload);
            auto q = quote_swap_exact_in(pool, swap.direction, swap.amount_in);
            if (swap.direction == Direction::AToB) {
                pool.reserve_a += q.amount_in;
                pool.reserve_b -= q.amount_out;
            } else {
                pool.reserve_b += q.amount_in;
                pool.reserve_a -= q.amount_out;
            }
            auto now = gap_bps();
            ASSERT_LE(now, prev) << "trial " << trial << " step " << step;
            prev = now;
        }
        EXPECT_LE(prev, 100.0 + 30.0 + 1.0) << "trial " << trial;
    }
}

TEST(Run, DeterministicInProcess) {
    auto a = run_scenario(small());
    auto b = run_scenario(small());
    EXPECT_EQ(a.final_root, b.final_root);
    EXPECT_EQ(a.metrics_json.dump(), b.metrics_json.dump());
    EXPECT_GT(a.metrics.applied(), 0u);
    EXPECT_EQ(a.metrics.conservation_violations(), 0u);
    EXPECT_TRUE(a.metrics.event_fold_consistent());
}

TEST(Run, SeedChangesOutcome) {
    RunOptions opts;
    opts.seed = 8;
    EXPECT_NE(run_scenario(small()).final_root, run_scenario(small(), opts).final_root);
}

TEST(Run, ApiModeMatchesInProcess) {
    auto s = small();
    auto local = run_scenario(s);
    RunOptions opts;
    opts.mode = Mode::Api;
    auto remote = run_scenario(s, opts);
    EXPECT_EQ(local.final_root, remote.final_root);
    EXPECT_EQ(remote.transport.failures, 0u);
    EXPECT_EQ(remote.transport.server_errors, 0u);
    EXPECT_GT(remote.transport.requests, 0u);
}

TEST(Run, ExportVerifiesAndDetectsCorruption) {
    auto dir = temp_dir("export");
    RunOptions opts;
    opts.export_dir = dir;
    run_scenario(small(6), opts);
    for (auto f : {"genesis.json", "blocks.bin", "blocks.json", "metrics.json", "prices.csv", "scenario.json"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    EXPECT_NO_THROW(verify_replay(dir));

    std::ifstream csv(dir / "prices.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "block_height,pool_id,spot_num,spot_den");

    const auto log = dir / "blocks.bin";
    const auto size = std::filesystem::file_size(log);
    std::fstream f(log, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(static_cast<std::streamoff>(size / 2));
    char c;
    f.seekg(static_cast<std::streamoff>(size / 2));
    f.get(c);
    f.seekp(static_cast<std::streamoff>(size / 2));
    f.put(static_cast<char>(c ^ 0x01));
    f.close();
    EXPECT_THROW(verify_replay(dir), IntegrityError);
    std::filesystem::remove_all(dir);
}

TEST(Run, EmptyRunReplays) {
    auto dir = temp_dir("empty");
    RunOptions opts;
    opts.export_dir = dir;
    auto r = run_scenario(small(0), opts);
    EXPECT_EQ(r.blocks.size(), 1u);
    EXPECT_NO_THROW(verify_replay(dir));
    std::filesystem::remove_all(dir);
}
