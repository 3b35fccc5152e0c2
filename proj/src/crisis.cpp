#include <rmarket/crisis.hpp>

#include <sstream>
#include <stdexcept>

namespace rmarket {

CrisisResult run_crisis(const MarketSpec& base, const CrisisConfig& config) {
    if (config.rounds < 1)
        throw std::invalid_argument("a crisis needs at least one round");
    auto validity = check_valid_endowments(base);
    if (!validity.ok())
        throw std::invalid_argument("crisis template fails endowment validity: " +
                                    validity.failures()[0]);

    std::vector<Rat> willingness = config.initial_willingness;
    if (willingness.empty())
        for (const auto& b : base.buyers) willingness.push_back(b.money);
    if (willingness.size() != base.buyers.size())
        throw std::invalid_argument("one initial willingness per buyer");

    CrisisResult result;
    for (int round = 1; round <= config.rounds; ++round) {
        CrisisRoundRecord record;
        record.round = round;
        record.willingness = willingness;

        SolverConfig solver = config.solver;
        solver.willingness = willingness;
        AuctionState st = initialize(base, solver);
        record.solution = solve(st);
        record.frustration = frustration_report(base, record.solution, st.trace);
        if (config.keep_traces) record.trace = std::move(st.trace);

        record.rights_sold.assign(base.buyers.size(), 0);
        record.rights_proceeds.assign(base.buyers.size(), Rat(0));
        for (size_t b = 0; b < base.buyers.size(); ++b) {
            long long unused =
                base.buyers[b].rights - record.solution.buyer_baskets[b].good;
            if (unused > 0) {
                record.rights_sold[b] = unused;
                record.rights_proceeds[b] = record.solution.price_right * unused;
            }
        }
        if (base.mode == Mode::restricted) {
            // measurability: proceeds raise next round's willingness; the
            // population itself does not change
            for (size_t b = 0; b < base.buyers.size(); ++b)
                willingness[b] += record.rights_proceeds[b];
        }
        result.rounds.push_back(std::move(record));
    }
    return result;
}

CrisisChecks check_crisis(const CrisisResult& result) {
    CrisisChecks checks;
    checks.frustration_bounded = true;
    checks.frustration_monotone = true;
    checks.price_growth_bounded = true;
    std::ostringstream detail;

    const Rat half(1, 2);
    for (size_t r = 1; r < result.rounds.size(); ++r) {
        const auto& record = result.rounds[r];
        const auto& prev = result.rounds[r - 1];
        for (size_t b = 0; b < record.frustration.per_buyer.size(); ++b) {
            const Rat& f = record.frustration.per_buyer[b].frustration;
            if (f > half) {
                checks.frustration_bounded = false;
                detail << " round " << record.round << " buyer " << b
                       << " frustration " << format_rational(f) << " > 1/2;";
            }
            const Rat& before = prev.frustration.per_buyer[b].frustration;
            if (f > before) {
                checks.frustration_monotone = false;
                detail << " round " << record.round << " buyer " << b
                       << " frustration rose " << format_rational(before)
                       << " -> " << format_rational(f) << ";";
            }
        }
        Rat price_now = record.solution.price_good + record.solution.price_right;
        Rat price_before = prev.solution.price_good + prev.solution.price_right;
        if (price_now > 2 * price_before) {
            checks.price_growth_bounded = false;
            detail << " round " << record.round << " couple price "
                   << format_rational(price_now) << " > 2x "
                   << format_rational(price_before) << ";";
        }
    }
    checks.detail = detail.str();
    return checks;
}

}  // namespace rmarket
