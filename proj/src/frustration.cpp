#include <rmarket/frustration.hpp>

#include <stdexcept>

namespace rmarket {

Rat frustration(long long rights_assigned, long long good_acquired) {
    if (rights_assigned <= 0) return Rat(0);
    if (good_acquired >= rights_assigned) return Rat(0);
    return Rat(rights_assigned - good_acquired) / rights_assigned;
}

Rat potential_frustration(long long rights_assigned, long long affordable_acquisitions,
                          const Rat& price_good, const Rat& price_right) {
    if (rights_assigned <= 0) return Rat(0);
    if (price_good <= 0 || price_right <= 0)
        throw std::invalid_argument("potential frustration needs positive prices");
    Rat gap = Rat(rights_assigned - affordable_acquisitions);
    Rat split = price_right / (price_good + price_right);
    Rat value = (gap - split * abs(gap)) / rights_assigned;
    return value > 0 ? value : Rat(0);
}

std::vector<long long> affordable_acquisitions(const MarketSpec& spec,
                                               const std::vector<TraceEvent>& events) {
    std::vector<long long> counts(spec.buyers.size(), 0);
    std::vector<Rat> spent(spec.buyers.size(), Rat(0));
    Rat price_good = 1;
    const Rat step = 1 + spec.epsilon;

    auto account = [&](int buyer) {
        if (buyer < 0 || (size_t)buyer >= counts.size())
            throw std::invalid_argument("trace names a buyer outside the market");
        Rat good_payment = step * price_good;
        if (spent[(size_t)buyer] + good_payment <= spec.buyers[(size_t)buyer].money) {
            spent[(size_t)buyer] += good_payment;
            ++counts[(size_t)buyer];
        }
    };

    for (const auto& event : events) {
        if (const auto* init = std::get_if<EvInit>(&event)) {
            price_good = init->price_good;
        } else if (const auto* raise = std::get_if<EvPriceRaise>(&event)) {
            price_good = raise->price_good;
        } else if (const auto* buy = std::get_if<EvOutbidPurchase>(&event)) {
            if (buy->buyer != buy->previous_owner) account(buy->buyer);
        } else if (const auto* made = std::get_if<EvCoupleFormed>(&event)) {
            account(made->buyer);
        }
    }
    return counts;
}

FrustrationReport frustration_report(const MarketSpec& spec, const Solution& solution,
                                     const std::vector<TraceEvent>& events) {
    if (solution.buyer_baskets.size() != spec.buyers.size())
        throw std::invalid_argument("solution does not match the market");

    FrustrationReport report;
    report.per_buyer.resize(spec.buyers.size());
    report.max_frustration = 0;
    report.max_potential_frustration = 0;

    auto affordable = affordable_acquisitions(spec, events);
    for (size_t b = 0; b < spec.buyers.size(); ++b) {
        auto& row = report.per_buyer[b];
        row.assigned = spec.buyers[b].rights;
        row.acquired = solution.buyer_baskets[b].good;
        row.affordable = affordable[b];
        row.frustration = frustration(row.assigned, row.acquired);
        row.potential_frustration = potential_frustration(
            row.assigned, row.affordable, solution.price_good, solution.price_right);
        report.max_frustration = std::max(report.max_frustration, row.frustration);
        report.max_potential_frustration =
            std::max(report.max_potential_frustration, row.potential_frustration);
    }
    return report;
}

}  // namespace rmarket
