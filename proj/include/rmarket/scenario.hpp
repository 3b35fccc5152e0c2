#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <rmarket/market.hpp>
#include <rmarket/rights.hpp>

namespace rmarket {

// A scenario file bundles everything one run needs: the population, the price
// step, the trading mode, and (for crises) the round count.  Rationals are
// written as "num/den" strings (bare integers allowed); Rights per buyer are
// optional on input — when absent they are assigned from the claims by the
// named mechanism — and always written back explicitly.
struct Scenario {
    std::string kind = "market";  // "market" or "crisis"
    MarketSpec spec;              // rights already filled in
    RightsMechanism mechanism = RightsMechanism::proportional;
    bool explicit_rights = false;  // input listed rights per buyer
    int rounds = 1;                // crisis length
    std::uint64_t seed = 0;        // generator seed, echoed back on output
    // Optional per-buyer willingness-to-spend caps ("willingness" on each
    // buyer, all or none).  Empty means uncapped for a plain market and
    // Money-sized for a crisis.
    std::vector<Rat> willingness;
};

Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);
void save_scenario(std::ostream& out, const Scenario& scenario);
void save_scenario_file(const std::string& path, const Scenario& scenario);

// Random instances that satisfy the endowment-validity clauses by
// construction: every issued Right is backed by a marginal strictly above
// twice the Money weight, Money strictly exceeds both four times the Rights
// and twice the full Good utility (so demand is finite), and claims cover the
// offered volume.  The budget-war variant models the crisis regime: flat
// marginals far above any reachable price (utility never stops a purchase),
// Money large enough to stay valid, and finite willingness caps splitting the
// population into rich and poor — willingness alone decides who wins couples,
// which is exactly the setting where the measurable-crisis guarantees apply.
struct GenConfig {
    std::string kind = "market";
    std::uint64_t seed = 0;
    int min_buyers = 2, max_buyers = 5;
    int min_sellers = 1, max_sellers = 3;
    int max_volume = 10;  // total Good drawn from [2, max_volume]
    int max_claim = 6;
    Rat epsilon = Rat(1, 10);
    Mode mode = Mode::restricted;
    RightsMechanism mechanism = RightsMechanism::proportional;
    int rounds = 5;           // crisis kind only
    bool budget_war = false;  // rich-vs-poor population, flat marginals
};

Scenario generate_scenario(const GenConfig& config);

}  // namespace rmarket
