#include <doctest.h>

#include <rmarket/auction.hpp>
#include <rmarket/oracle.hpp>
#include <rmarket/trace.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

using namespace rmarket;

namespace {

std::uint64_t mix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

BuyerEndowment buyer(Rat money, int claim, int rights, std::vector<Rat> marginals) {
    BuyerEndowment b;
    b.money = std::move(money);
    b.claim = claim;
    b.rights = rights;
    b.money_utility.alpha = 1;
    b.good_utility.marginals = std::move(marginals);
    return b;
}

// One seller with two items, one eager buyer; prices climb until the second
// marginal (5) falls below the couple price.
MarketSpec lone_buyer_market() {
    MarketSpec spec;
    spec.sellers = {SellerEndowment{2}};
    spec.buyers = {buyer(Rat(24), 2, 2, {Rat(6), Rat(5)})};
    spec.epsilon = Rat(1, 10);
    spec.mode = Mode::restricted;
    return spec;
}

// Two buyers share three items; the second buyer's flat tail keeps it at one
// couple, so trading dies after a single price raise.
MarketSpec two_buyer_market() {
    MarketSpec spec;
    spec.sellers = {SellerEndowment{3}};
    spec.buyers = {buyer(Rat(20), 2, 2, {Rat(6), Rat(3)}),
                   buyer(Rat(20), 2, 1, {Rat(6), Rat(2)})};
    spec.epsilon = Rat(1, 2);
    spec.mode = Mode::restricted;
    return spec;
}

std::string trace_text(const std::vector<TraceEvent>& events) {
    std::ostringstream os;
    write_trace(os, events);
    return os.str();
}

}  // namespace

TEST_CASE("initialization grants surplus cash and leaves everything uncoupled") {
    MarketSpec spec;
    spec.sellers = {SellerEndowment{3}};
    spec.buyers = {buyer(Rat(32), 3, 2, {Rat(5), Rat(5), Rat(5)})};
    spec.epsilon = Rat(1, 10);
    auto st = initialize(spec);
    CHECK(st.price_good == 1);
    CHECK(st.price_right == 1);
    CHECK(st.price_couple == 2);
    CHECK(st.buyer_cash[0] == 34);  // money plus prepaid rights
    CHECK(st.seller_cash[0] == 0);
    CHECK(st.seller_uncoupled_good[0] == 3);
    CHECK(st.buyer_uncoupled_rights[0] == 2);
    CHECK(st.couples.empty());
}

TEST_CASE("initialization cash totals stay within twice the money supply") {
    MarketSpec spec;
    spec.sellers = {SellerEndowment{3}};
    spec.buyers = {buyer(Rat(22), 2, 1, {Rat(5), Rat(5)}),
                   buyer(Rat(30), 2, 2, {Rat(5), Rat(5)})};
    spec.epsilon = Rat(1, 10);
    auto st = initialize(spec);
    CHECK(st.buyer_cash[0] + st.buyer_cash[1] == 55);
    CHECK(st.total_buyer_cash == 55);
    CHECK(st.total_buyer_cash <= 2 * spec.total_money());
}

TEST_CASE("invalid endowments are rejected before any trading") {
    auto spec = lone_buyer_market();
    spec.buyers[0].good_utility.marginals = {Rat(1), Rat(1)};  // below 2*alpha
    CHECK_THROWS_AS(initialize(spec), std::invalid_argument);
    CHECK_THROWS_AS(solve(spec), std::invalid_argument);
}

TEST_CASE("demand at a couple price takes every marginal above it") {
    GoodUtility u;
    u.marginals = {Rat(6), Rat(4)};
    CHECK(demand_at_price(u, Rat(1), Rat(2), 2) == 2);
    CHECK(demand_at_price(u, Rat(1), Rat(5), 2) == 1);
    CHECK(demand_at_price(u, Rat(1), Rat(7), 2) == 0);
    // the comparison is strict: a marginal equal to alpha*c is not taken
    CHECK(demand_at_price(u, Rat(1), Rat(4), 2) == 1);
    CHECK(demand_at_price(u, Rat(2), Rat(2), 2) == 1);  // alpha scales the bar
    CHECK(demand_at_price(u, Rat(1), Rat(2), 1) == 1);  // cap binds
}

TEST_CASE("binary-search demand matches the linear scan on random inputs") {
    std::uint64_t s = 2026;
    for (int trial = 0; trial < 300; ++trial) {
        GoodUtility u;
        int n = 1 + (int)(mix(s) % 10);
        Rat level = Rat(1 + (long long)(mix(s) % 30), 1 + (long long)(mix(s) % 3));
        for (int i = 0; i < n; ++i) {
            u.marginals.push_back(level);
            if (mix(s) % 2) level = level * Rat(2 + (long long)(mix(s) % 3), 4);
            if (level <= 0) level = Rat(1, 7);
        }
        Rat alpha(1 + (long long)(mix(s) % 5), 1 + (long long)(mix(s) % 4));
        Rat price(1 + (long long)(mix(s) % 12), 1 + (long long)(mix(s) % 5));
        // the searcher's contract caps hi at the marginals length
        long long hi = (long long)(mix(s) % (std::uint64_t)(n + 1));

        long long expected = 0;
        while (expected < hi && u.marginals[(size_t)expected] > alpha * price)
            ++expected;
        CHECK(demand_at_price(u, alpha, price, hi) == expected);
    }
}

TEST_CASE("a lone eager buyer rides the price ladder until its tail marginal fails") {
    auto solution = solve(lone_buyer_market());

    Rat expected_price = 1;  // 10 completed iterations raise the price tenfold
    for (int i = 0; i < 10; ++i) expected_price *= Rat(11, 10);
    CHECK(solution.price_good == expected_price);
    CHECK(solution.price_right == expected_price);
    CHECK(solution.stats.iterations == 11);
    CHECK(solution.stats.steps == 32);

    REQUIRE(solution.buyer_baskets.size() == 1);
    const auto& basket = solution.buyer_baskets[0];
    CHECK(basket.good == 2);
    CHECK(basket.rights == 2);
    // terminal basket worth exactly the endowment at terminal prices
    CHECK(basket.money == Rat(24) - 2 * expected_price);
    CHECK(basket_price(basket, solution.price_good, solution.price_right) ==
          Rat(24) + 2 * expected_price);

    REQUIRE(solution.seller_baskets.size() == 1);
    CHECK(solution.seller_baskets[0].good == 0);
    // money conservation: every coin of the pool lands in a basket
    CHECK(solution.seller_baskets[0].money + basket.money == 24);
}

TEST_CASE("trade events carry the outbid price split") {
    SolverConfig config;
    config.log_demand_queries = true;
    auto st = initialize(lone_buyer_market(), config);
    auto solution = solve(st);
    (void)solution;

    // iteration 1: two couples composed at c=2, paying (1+eps)*c with the
    // seller credited the Good price and the buyer's own Right costing nothing
    int formed = 0;
    const EvPriceRaise* first_raise = nullptr;
    const EvCashTopup* first_topup = nullptr;
    const EvOutbidPurchase* first_rebuy = nullptr;
    for (const auto& ev : st.trace) {
        if (const auto* f = std::get_if<EvCoupleFormed>(&ev)) {
            CHECK(f->buyer == 0);
            CHECK(f->right_from == 0);
            CHECK(f->paid == Rat(11, 5));
            CHECK(f->seller_credit == 1);
            ++formed;
        } else if (const auto* r = std::get_if<EvPriceRaise>(&ev)) {
            if (!first_raise) first_raise = r;
        } else if (const auto* t = std::get_if<EvCashTopup>(&ev)) {
            if (!first_topup && t->reason == EvCashTopup::Reason::iteration_end &&
                t->trader.role == Role::buyer)
                first_topup = t;
        } else if (const auto* o = std::get_if<EvOutbidPurchase>(&ev)) {
            if (!first_rebuy) first_rebuy = o;
        }
    }
    CHECK(formed == 2);
    REQUIRE(first_raise != nullptr);
    CHECK(first_raise->price_good == Rat(11, 10));
    CHECK(first_raise->price_couple == Rat(11, 5));
    REQUIRE(first_topup != nullptr);
    CHECK(first_topup->amount == Rat(1, 5));  // eps * q per initial Right, 2 Rights
    // iteration 2 re-raises the buyer's own couples at c=11/5
    REQUIRE(first_rebuy != nullptr);
    CHECK(first_rebuy->buyer == 0);
    CHECK(first_rebuy->previous_owner == 0);
    CHECK(first_rebuy->paid == Rat(11, 5) * Rat(11, 10));
    CHECK(first_rebuy->credited == Rat(11, 5));
}

TEST_CASE("a flat-tailed rival keeps one couple and the market dies after one raise") {
    SolverConfig config;
    auto st = initialize(two_buyer_market(), config);
    auto solution = solve(st);

    CHECK(solution.price_good == Rat(3, 2));
    CHECK(solution.price_right == Rat(3, 2));
    CHECK(solution.stats.iterations == 2);

    REQUIRE(solution.buyer_baskets.size() == 2);
    CHECK(solution.buyer_baskets[0].good == 2);
    CHECK(solution.buyer_baskets[0].rights == 2);
    CHECK(solution.buyer_baskets[0].money == 17);
    CHECK(solution.buyer_baskets[1].good == 1);
    CHECK(solution.buyer_baskets[1].rights == 1);
    CHECK(solution.buyer_baskets[1].money == Rat(37, 2));
    CHECK(solution.seller_baskets[0].good == 0);
    CHECK(solution.seller_baskets[0].money == Rat(9, 2));

    // the pool was ample, so every buyer converted its full cash into Money
    for (const auto& ev : st.trace)
        if (const auto* f = std::get_if<EvFinalize>(&ev))
            if (f->trader.role == Role::buyer) CHECK(f->residual_cash == 0);

    // the terminal rebate leaves each basket worth exactly the endowment
    auto endow = [&](int b, int rights) {
        return two_buyer_market().buyers[b].money + solution.price_right * rights;
    };
    CHECK(basket_price(solution.buyer_baskets[0], solution.price_good,
                       solution.price_right) == endow(0, 2));
    CHECK(basket_price(solution.buyer_baskets[1], solution.price_good,
                       solution.price_right) == endow(1, 1));
}

TEST_CASE("deep bookkeeping checks stay silent on a full run") {
    SolverConfig config;
    config.deep_checks = true;
    CHECK_NOTHROW(solve(lone_buyer_market(), config));
    CHECK_NOTHROW(solve(two_buyer_market(), config));
}

TEST_CASE("solving is deterministic event for event") {
    SolverConfig config;
    auto st1 = initialize(two_buyer_market(), config);
    auto sol1 = solve(st1);
    auto st2 = initialize(two_buyer_market(), config);
    auto sol2 = solve(st2);

    CHECK(trace_text(st1.trace) == trace_text(st2.trace));
    CHECK(sol1.price_good == sol2.price_good);
    CHECK(sol1.buyer_baskets[0].money == sol2.buyer_baskets[0].money);
    CHECK(sol1.stats.steps == sol2.stats.steps);
}

TEST_CASE("a replayed trace reproduces the solution without re-deciding anything") {
    SolverConfig config;
    auto st = initialize(two_buyer_market(), config);
    auto solution = solve(st);

    // round-trip through the serialized form as the CLI would
    std::istringstream in(trace_text(st.trace));
    auto events = read_trace(in);
    auto replayed = replay_trace(events);

    CHECK(replayed.price_good == solution.price_good);
    CHECK(replayed.price_right == solution.price_right);
    REQUIRE(replayed.buyer_baskets.size() == solution.buyer_baskets.size());
    for (size_t b = 0; b < solution.buyer_baskets.size(); ++b) {
        CHECK(replayed.buyer_baskets[b].good == solution.buyer_baskets[b].good);
        CHECK(replayed.buyer_baskets[b].rights == solution.buyer_baskets[b].rights);
        CHECK(replayed.buyer_baskets[b].money == solution.buyer_baskets[b].money);
    }
    for (size_t s = 0; s < solution.seller_baskets.size(); ++s)
        CHECK(replayed.seller_baskets[s].money == solution.seller_baskets[s].money);
}

TEST_CASE("buyer processing order does not break the solution guarantees") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        SolverConfig config;
        config.shuffle_buyer_order = true;
        config.shuffle_seed = seed;
        auto spec = two_buyer_market();
        auto solution = solve(spec, config);
        auto report = verify_solution(spec, solution, &solution.stats);
        CHECK(report.ok());
    }
}

TEST_CASE("a willingness cap of zero keeps a buyer out of the market") {
    auto spec = two_buyer_market();
    SolverConfig config;
    config.willingness = {Rat(0), spec.buyers[1].money};
    auto solution = solve(spec, config);

    CHECK(solution.buyer_baskets[0].good == 0);
    CHECK(solution.buyer_baskets[0].rights == 0);
    // inflows only: the shut-out buyer ends at least as liquid as it started
    CHECK(solution.buyer_baskets[0].money >=
          spec.buyers[0].money + 2 * Rat(1));  // money + prepaid rights at q=1
    // the rival is unconstrained and still takes its demand
    CHECK(solution.buyer_baskets[1].good >= 1);
}

TEST_CASE("willingness caps must come one per buyer and nonnegative") {
    auto spec = two_buyer_market();
    SolverConfig config;
    config.willingness = {Rat(5)};
    CHECK_THROWS_AS(solve(spec, config), std::invalid_argument);
    config.willingness = {Rat(5), Rat(-1)};
    CHECK_THROWS_AS(solve(spec, config), std::invalid_argument);
}

TEST_CASE("capped buyers never exceed their net cash outflow budget") {
    // flat utilities, scarce supply: both buyers want everything and only the
    // caps decide; the capped buyer's final holdings must fit its budget
    MarketSpec spec;
    spec.sellers = {SellerEndowment{4}};
    spec.buyers = {buyer(Rat(5000), 4, 2, {Rat(500), Rat(500), Rat(500), Rat(500)}),
                   buyer(Rat(5000), 4, 2, {Rat(500), Rat(500), Rat(500), Rat(500)})};
    spec.epsilon = Rat(1, 10);
    spec.mode = Mode::restricted;

    SolverConfig config;
    config.willingness = {Rat(3), Rat(5000)};
    auto solution = solve(spec, config);

    // net outflow = endowment value at terminal prices minus final basket value
    for (size_t b = 0; b < spec.buyers.size(); ++b) {
        Rat endow = spec.buyers[b].money +
                    solution.price_right * spec.buyers[b].rights;
        Rat outflow = endow - basket_price(solution.buyer_baskets[b],
                                           solution.price_good, solution.price_right);
        CHECK(outflow <= config.willingness[b]);
    }
}
