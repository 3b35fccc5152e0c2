#pragma once

#include <rmarket/market.hpp>
#include <rmarket/trace.hpp>

#include <cstdint>
#include <vector>

namespace rmarket {

// Ascending-price auction that clears the Good/Right market approximately.
//
// Good and Right trade only as a bundle (a "couple": one unit of each), so a
// buyer's basket automatically carries one Right per Good.  Prices start at
// p = q = 1 and rise by the factor (1+eps) whenever every couple has been
// bought at the current level.  Within a price level ("iteration") buyers take
// turns ("rounds", fixed ascending order by default); each turn the buyer
// computes its ideal couple count at the current price and outbids: it re-buys
// its own base-tier couples first (protecting them at the raised tier), then
// acquires loose Good/Right pairs or other buyers' base-tier couples, paying
// (1+eps)*c per item while the displaced owner receives c.  The eps*c margins
// the system collects during an iteration fund the end-of-iteration cash
// top-ups (eps*p per initial Good item, eps*q per initial Right item).
//
// Trading ends after a full round with no purchase.  Margins collected during
// that final, never-completed iteration are returned to their payers: the
// system gives back what it earned, which keeps every terminal basket exactly
// as expensive as the trader's initial endowment.  Rights that never entered a
// couple are consumed by the system; their value was prepaid into the owner's
// starting cash (money + q per Right).

struct CoupleItem {
    int id = 0;
    int owner = 0;        // buyer index; sellers never hold couples
    bool raised = false;  // true once bought at the current price level
};

struct SolverConfig {
    bool log_demand_queries = true;
    // Deep state audit after every transition (tests); bounds are always
    // checked per transition, the full recount otherwise runs once per
    // iteration.
    bool deep_checks = false;
    // Fixed shuffled buyer order instead of ascending ids (experiments).
    bool shuffle_buyer_order = false;
    std::uint64_t shuffle_seed = 0;
    // Per-buyer cap on net cash outflow (willingness to spend).  Buyers with
    // effectively unlimited money still stop buying once their utility says
    // so; this cap is how that limit enters the auction, and it is what a
    // crisis tops up with rights proceeds between rounds.  Cash received
    // (couple sales, top-ups) restores headroom: the cap binds the net
    // position, so an outbid buyer can buy back.  Empty = no caps.
    std::vector<Rat> willingness;
};

struct AuctionState {
    MarketSpec spec;  // rights already distributed
    SolverConfig config;

    Rat price_good;    // p
    Rat price_right;   // q, equals p throughout
    Rat price_couple;  // c = p + q

    std::vector<Rat> seller_cash;
    std::vector<int> seller_uncoupled_good;
    std::vector<Rat> buyer_cash;
    std::vector<int> buyer_uncoupled_rights;
    std::vector<CoupleItem> couples;

    // caches, audited by the deep check
    std::vector<long long> owned;         // couples per buyer
    std::vector<long long> owned_raised;  // raised-tier couples per buyer
    int total_uncoupled_good = 0;
    int total_uncoupled_right = 0;
    int base_couples = 0;
    Rat total_buyer_cash;
    Rat total_all_cash;

    // eps*c margins paid by each buyer at the current price level; refunded
    // if trading ends before the level completes
    std::vector<Rat> margin_paid;

    long long iteration = 1;
    long long rounds_this_iteration = 0;
    bool first_iteration_done = false;
    bool trading_over = false;

    int volume = 0;        // total Good
    int rights_issued = 0; // total Right
    Rat money_pool;        // total Money, sold at the end

    SolveStats stats;
    std::vector<int> buyer_order;
    std::vector<TraceEvent> trace;

    // cash granted at initialization, the reference point for net outflow
    std::vector<Rat> initial_cash;

    // base-tier couples plus loose pairs that could still be formed at c
    long long available_at_base() const;
    Rat rights_reserve(int buyer) const;
    // headroom left under the willingness cap; unbounded when no cap is set
    // (clamped to a value no purchase can exceed)
    Rat willingness_left(int buyer) const;
    Rat spendable_cash(int buyer) const;
    // can the buyer pay `amount` while keeping `reserve` untouched and
    // staying inside its willingness cap?
    bool can_pay(int buyer, const Rat& amount, const Rat& reserve) const;

    void assert_bounds() const;  // cheap, every transition
    void assert_deep() const;    // full recount
};

struct RoundOutcome {
    long long purchases = 0;
    bool iteration_ended = false;
};

// Throws std::invalid_argument on a structurally broken spec.
AuctionState initialize(const MarketSpec& spec, const SolverConfig& config = {});

// The price side of the demand rule alone: the largest k in [0, hi] whose
// k-th marginal utility still strictly beats alpha*c.  Nonincreasing
// marginals make "item k beats money" a prefix property, so binary search is
// sound; hi must not exceed the marginals list.  Probes are added to *probes
// when given.  Split out so tests can cross-check it against enumeration.
long long demand_at_price(const GoodUtility& utility, const Rat& alpha,
                          const Rat& couple_price, long long hi,
                          long long* probes = nullptr);

// Ideal number of couples for the buyer at the current price: demand_at_price
// capped by claim, volume and budget (c per couple against c*owned plus
// spendable cash).  Probes are charged to the step counter.
long long ideal_demand(AuctionState& st, int buyer);

// Buys up to (want - raised_owned) items one at a time: own base couples
// first, then composed loose pairs (own Right first), then other buyers'
// base couples, lowest id first.  Stops when sources or spendable cash run
// out.  Returns the number of purchases.
long long outbid(AuctionState& st, int buyer, long long want);

// One pass over all buyers.  Ends the iteration (price raise, top-ups, tier
// reset) as soon as nothing is left at the base tier.
RoundOutcome run_round(AuctionState& st);

void end_iteration(AuctionState& st);

// Dead round detected: refund the current level's margins and sell the Money
// pool (buyers first, then sellers, ascending; each takes min(cash, rest)).
Solution finalize(AuctionState& st);

// Full run: rounds until a dead round, then finalize.  Throws
// std::runtime_error if the iteration guard (twice the price-level bound
// log_{1+eps} of total money) is exceeded — that would be a solver bug.
Solution solve(AuctionState& st);
Solution solve(const MarketSpec& spec, const SolverConfig& config = {});

// Rebuilds the terminal solution from a trace by pure bookkeeping.
// Throws std::runtime_error on an inconsistent trace.
Solution replay_trace(const std::vector<TraceEvent>& events);

}  // namespace rmarket
