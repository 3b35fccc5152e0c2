#pragma once

#include <rmarket/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace rmarket {

// The market trades three commodities: indivisible Good offered by sellers,
// indivisible Right issued to buyers (one Right is consumed per unit of Good
// bought), and divisible Money whose price is fixed at 1.

enum class Role : std::uint8_t { seller, buyer };

struct TraderId {
    Role role = Role::buyer;
    int index = 0;

    auto operator<=>(const TraderId&) const = default;
    std::string str() const;  // "s3" / "b0"
};

// Concave utility for Good: positive, nonincreasing per-item marginals.  The
// sequence length equals the buyer's claim; utility saturates beyond it.
struct GoodUtility {
    std::vector<Rat> marginals;

    Rat eval(long long items) const;
    // True when marginals are nonempty, positive and nonincreasing.
    bool well_formed() const;
};

// Linear utility for Money.
struct MoneyUtility {
    Rat alpha = 1;

    Rat eval(const Rat& amount) const;
};

struct SellerEndowment {
    int good = 0;  // items offered, >= 1
};

struct BuyerEndowment {
    Rat money;                 // initial Money, >= 0
    int claim = 0;             // declared demand, >= 1
    int rights = 0;            // issued by the distribution stage
    MoneyUtility money_utility;
    GoodUtility good_utility;  // marginals.size() == claim
};

enum class Mode : std::uint8_t { unrestricted, restricted };

struct MarketSpec {
    std::vector<SellerEndowment> sellers;
    std::vector<BuyerEndowment> buyers;
    Rat epsilon;  // price step, 0 < epsilon < 1
    Mode mode = Mode::unrestricted;

    int offered_volume() const;   // total Good on offer
    Rat total_money() const;      // sum of buyer Money endowments
    int total_rights() const;
};

// One trader's final holdings.  Rights appear only inside Good/Right pairs,
// so rights >= good for buyers by construction.
struct Basket {
    long long good = 0;
    long long rights = 0;
    Rat money;
};

Rat basket_price(const Basket& b, const Rat& price_good, const Rat& price_right);

struct SolveStats {
    long long iterations = 0;
    long long rounds_total = 0;
    long long max_rounds_in_iteration = 0;
    long long steps = 0;  // outbid calls + demand binary-search probes
    int uncoupled_good_after_first_iteration = -1;
    int uncoupled_rights_after_first_iteration = -1;
};

struct Solution {
    Rat price_good;
    Rat price_right;
    std::vector<Basket> seller_baskets;
    std::vector<Basket> buyer_baskets;
    SolveStats stats;
};

// Endowment validity: the three conditions that make the auction well-behaved
// (ample money, Good valued above Money up to the issued rights, Money valued
// above Good at scale money/2).  x ranges over positive integers; x = 0 is
// excluded since both utilities vanish there.
struct EndowmentCheck {
    bool money_exceeds_rights_cost = false;  // money > 4 * rights
    bool good_covers_rights_range = false;   // u_G(x) >= 2*alpha*x for x <= rights
    bool money_dominates_at_scale = false;   // alpha*x > u_G(x) for x >= money/2

    bool ok() const {
        return money_exceeds_rights_cost && good_covers_rights_range &&
               money_dominates_at_scale;
    }
};

struct ValidityReport {
    std::vector<EndowmentCheck> per_buyer;
    bool ok() const;
    // "buyer 2: money_exceeds_rights_cost", one line per failed clause
    std::vector<std::string> failures() const;
};

ValidityReport check_valid_endowments(const MarketSpec& spec);

// Structural sanity of a spec (marginal shapes, positive volume, epsilon
// range).  Returns human-readable problems; empty == usable.
std::vector<std::string> spec_problems(const MarketSpec& spec);

}  // namespace rmarket
