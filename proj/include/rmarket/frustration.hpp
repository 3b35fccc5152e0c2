#pragma once

#include <vector>

#include <rmarket/market.hpp>
#include <rmarket/trace.hpp>

namespace rmarket {

// How far a buyer's final holdings fall short of the Rights it was assigned,
// as a fraction of the assignment.  A buyer with no Rights is never
// frustrated.
Rat frustration(long long rights_assigned, long long good_acquired);

// The forward-looking variant: instead of final holdings it counts the
// acquisitions the buyer's own Money could have financed, and splits the
// shortfall between the Good and Right price components.  With phi Rights
// assigned, g_affordable affordable acquisitions and component prices d
// (Good) and d_prime (Right):
//
//   max{0, (phi - g_affordable - (d_prime/(d+d_prime)) * |phi - g_affordable|) / phi}
//
// which collapses to (phi - g_affordable) / (2*phi) when the two price
// components agree, and never exceeds 1/2 in that case.
Rat potential_frustration(long long rights_assigned, long long affordable_acquisitions,
                          const Rat& price_good, const Rat& price_right);

struct BuyerFrustration {
    long long assigned = 0;      // Rights issued to the buyer
    long long acquired = 0;      // couples held at the end
    long long affordable = 0;    // acquisitions the buyer's Money covered
    Rat frustration;
    Rat potential_frustration;
};

struct FrustrationReport {
    std::vector<BuyerFrustration> per_buyer;
    Rat max_frustration;
    Rat max_potential_frustration;
};

// Counts, per buyer, the acquisition events in the trace (couples composed or
// bought from others; re-raising one's own couple is not an acquisition)
// whose cumulative Good-side payment of (1+eps) * price_good, at the price in
// force when the event happened, still fits in the buyer's Money endowment.
std::vector<long long> affordable_acquisitions(const MarketSpec& spec,
                                               const std::vector<TraceEvent>& events);

FrustrationReport frustration_report(const MarketSpec& spec, const Solution& solution,
                                     const std::vector<TraceEvent>& events);

}  // namespace rmarket
