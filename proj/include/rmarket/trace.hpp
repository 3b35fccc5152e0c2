#pragma once

#include <rmarket/market.hpp>

#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

namespace rmarket {

// Every state transition of the auction is logged as one event.  Events carry
// explicit exact amounts, so a trace can be replayed without re-deriving any
// decision: replay is bookkeeping only and reproduces the solution bit for bit.

struct EvInit {
    Rat price_good;   // 1 at the start
    Rat price_right;  // 1 at the start
    Rat epsilon;
    Mode mode = Mode::unrestricted;
    // index-aligned with the market's seller/buyer lists
    std::vector<int> seller_good;          // uncoupled Good per seller
    std::vector<Rat> buyer_cash;           // money + right value surplus
    std::vector<int> buyer_rights;         // uncoupled Right per buyer
    Rat money_pool;                        // total Money, sold off at the end
};

struct EvDemandQuery {
    int buyer = 0;
    long long owned = 0;
    long long ideal = 0;  // couples the buyer would ideally hold at price c
    int probes = 0;       // binary-search probes charged to the step counter
};

// Purchase of an existing base-tier couple (self-purchase when buyer owns it).
struct EvOutbidPurchase {
    int couple = 0;
    int buyer = 0;
    int previous_owner = 0;  // buyer index
    Rat paid;                // (1+eps)*c from the buyer
    Rat credited;            // c to the previous owner
};

// A loose Good and a loose Right paired into a fresh couple for the buyer.
struct EvCoupleFormed {
    int couple = 0;
    int buyer = 0;
    int good_from = 0;       // seller index, credited seller_credit
    int right_from = 0;      // buyer index, credited nothing (prepaid at init)
    Rat paid;                // (1+eps)*c from the buyer
    Rat seller_credit;       // current Good price
};

// New price level; every couple returns to the base tier.
struct EvPriceRaise {
    Rat price_good;
    Rat price_right;
    Rat price_couple;
};

struct EvCashTopup {
    enum class Reason : std::uint8_t { iteration_end, terminal_rebate };
    TraderId trader;
    Rat amount;
    Reason reason = Reason::iteration_end;
};

// Money sale at price 1, one event per trader in processing order.
struct EvFinalize {
    TraderId trader;
    Rat money;          // Money bought into the basket
    Rat residual_cash;  // cash left when the pool ran dry (normally 0)
};

using TraceEvent = std::variant<EvInit, EvDemandQuery, EvOutbidPurchase,
                                EvCoupleFormed, EvPriceRaise, EvCashTopup,
                                EvFinalize>;

// Line-delimited JSON, one event per line.
void write_trace(std::ostream& out, const std::vector<TraceEvent>& events);

// Throws std::runtime_error (with the line number) on malformed input.
std::vector<TraceEvent> read_trace(std::istream& in);

}  // namespace rmarket
