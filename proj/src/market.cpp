#include <rmarket/market.hpp>

#include <algorithm>
#include <stdexcept>

namespace rmarket {

std::string TraderId::str() const {
    return (role == Role::seller ? "s" : "b") + std::to_string(index);
}

Rat GoodUtility::eval(long long items) const {
    if (items < 0) throw std::invalid_argument("good utility: negative amount");
    Rat total = 0;
    long long n = std::min<long long>(items, (long long)marginals.size());
    for (long long i = 0; i < n; ++i) total += marginals[(size_t)i];
    return total;  // saturates at the claim
}

bool GoodUtility::well_formed() const {
    if (marginals.empty()) return false;
    for (size_t i = 0; i < marginals.size(); ++i) {
        if (marginals[i] <= 0) return false;
        if (i > 0 && marginals[i] > marginals[i - 1]) return false;
    }
    return true;
}

Rat MoneyUtility::eval(const Rat& amount) const {
    if (amount < 0) throw std::invalid_argument("money utility: negative amount");
    return alpha * amount;
}

int MarketSpec::offered_volume() const {
    int v = 0;
    for (const auto& s : sellers) v += s.good;
    if (v <= 0) throw std::invalid_argument("degenerate market: no Good on offer");
    return v;
}

Rat MarketSpec::total_money() const {
    Rat m = 0;
    for (const auto& b : buyers) m += b.money;
    return m;
}

int MarketSpec::total_rights() const {
    int r = 0;
    for (const auto& b : buyers) r += b.rights;
    return r;
}

Rat basket_price(const Basket& b, const Rat& price_good, const Rat& price_right) {
    return price_good * b.good + price_right * b.rights + b.money;
}

bool ValidityReport::ok() const {
    return std::all_of(per_buyer.begin(), per_buyer.end(),
                       [](const EndowmentCheck& c) { return c.ok(); });
}

std::vector<std::string> ValidityReport::failures() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < per_buyer.size(); ++i) {
        const auto& c = per_buyer[i];
        auto add = [&](const char* clause) {
            out.push_back("buyer " + std::to_string(i) + ": " + clause);
        };
        if (!c.money_exceeds_rights_cost) add("money_exceeds_rights_cost");
        if (!c.good_covers_rights_range) add("good_covers_rights_range");
        if (!c.money_dominates_at_scale) add("money_dominates_at_scale");
    }
    return out;
}

ValidityReport check_valid_endowments(const MarketSpec& spec) {
    ValidityReport report;
    report.per_buyer.reserve(spec.buyers.size());
    for (const auto& b : spec.buyers) {
        EndowmentCheck c;
        c.money_exceeds_rights_cost = b.money > Rat(4) * b.rights;

        c.good_covers_rights_range = true;
        for (int x = 1; x <= b.rights; ++x) {
            if (b.good_utility.eval(x) < Rat(2) * b.money_utility.eval(x)) {
                c.good_covers_rights_range = false;
                break;
            }
        }

        // Utility saturates at the claim, so once alpha*x > u_G(claim) holds at
        // the first checked point the inequality only improves with x.
        c.money_dominates_at_scale = true;
        Int lo_int = rat_ceil(b.money / 2);
        long long lo = std::max<long long>(1, lo_int.convert_to<long long>());
        long long hi = std::max<long long>(lo, b.claim);
        for (long long x = lo; x <= hi; ++x) {
            if (b.money_utility.eval(Rat(x)) <= b.good_utility.eval(x)) {
                c.money_dominates_at_scale = false;
                break;
            }
        }
        report.per_buyer.push_back(c);
    }
    return report;
}

std::vector<std::string> spec_problems(const MarketSpec& spec) {
    std::vector<std::string> out;
    if (spec.sellers.empty()) out.push_back("no sellers");
    if (spec.buyers.empty()) out.push_back("no buyers");
    if (spec.epsilon <= 0 || spec.epsilon >= 1) out.push_back("epsilon outside (0,1)");
    for (size_t i = 0; i < spec.sellers.size(); ++i)
        if (spec.sellers[i].good < 1)
            out.push_back("seller " + std::to_string(i) + ": no Good offered");
    for (size_t i = 0; i < spec.buyers.size(); ++i) {
        const auto& b = spec.buyers[i];
        std::string who = "buyer " + std::to_string(i);
        if (b.money < 0) out.push_back(who + ": negative money");
        if (b.claim < 1) out.push_back(who + ": claim must be positive");
        if (b.rights < 0) out.push_back(who + ": negative rights");
        if (b.rights > b.claim) out.push_back(who + ": rights exceed claim");
        if (b.money_utility.alpha <= 0) out.push_back(who + ": alpha must be positive");
        if ((long long)b.good_utility.marginals.size() != b.claim)
            out.push_back(who + ": marginal count must equal claim");
        else if (!b.good_utility.well_formed())
            out.push_back(who + ": marginals must be positive and nonincreasing");
    }
    return out;
}

}  // namespace rmarket
