#include <rmarket/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rmarket {

namespace {

std::string rat_str(const Rat& r) { return format_rational(r); }

}  // namespace

OptimalChoice optimal_basket(const MarketSpec& spec, int buyer,
                             const Rat& price_good, const Rat& price_right) {
    const auto& b = spec.buyers.at((size_t)buyer);
    const Rat couple_price = price_good + price_right;
    // endowment value at these prices: Money plus the issued Rights
    const Rat wealth = b.money + price_right * b.rights;

    OptimalChoice best;
    best.couples = 0;
    best.utility = b.money_utility.eval(wealth);
    for (long long k = 1; k <= b.claim; ++k) {
        Rat cost = couple_price * k;
        if (cost > wealth) break;
        if (spec.mode == Mode::restricted && price_good * k > b.money)
            break;  // Right proceeds may not pay for Good
        Rat utility = b.good_utility.eval(k) + b.money_utility.eval(wealth - cost);
        if (utility > best.utility) {  // ties keep the smaller basket
            best.couples = k;
            best.utility = utility;
        }
    }
    return best;
}

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify_solution(const MarketSpec& spec, const Solution& solution,
                                   const SolveStats* stats, bool willingness_capped) {
    VerificationReport report;
    auto add = [&](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    auto skipped = [&](std::string name) {
        add(std::move(name), true, "skipped: willingness caps void this guarantee");
    };

    const Rat p = solution.price_good, q = solution.price_right;
    add("prices_positive_equal", p > 0 && p == q,
        "price_good=" + rat_str(p) + " price_right=" + rat_str(q));

    bool shape = solution.seller_baskets.size() == spec.sellers.size() &&
                 solution.buyer_baskets.size() == spec.buyers.size();
    std::ostringstream shape_detail;
    if (!shape) shape_detail << "basket count does not match trader count";
    auto check_basket = [&](const Basket& basket, const std::string& who,
                            bool consumes) {
        if (basket.good < 0 || basket.rights < 0 || basket.money < 0) {
            shape = false;
            shape_detail << " " << who << " holds a negative amount;";
        }
        // consumption needs a Right per Good; a seller's unsold inventory does
        // not (whether it all sold is sellers_sold_out's question)
        if (consumes && basket.rights < basket.good) {
            shape = false;
            shape_detail << " " << who << " holds Good without a Right;";
        }
    };
    if (shape) {
        for (size_t s = 0; s < spec.sellers.size(); ++s)
            check_basket(solution.seller_baskets[s],
                         TraderId{Role::seller, (int)s}.str(), false);
        for (size_t b = 0; b < spec.buyers.size(); ++b)
            check_basket(solution.buyer_baskets[b],
                         TraderId{Role::buyer, (int)b}.str(), true);
    }
    add("baskets_shape", shape, shape_detail.str());
    if (!shape) return report;  // the remaining checks index into baskets

    const int volume = spec.offered_volume();
    const int issued = spec.total_rights();
    const Rat m = spec.total_money();
    const bool rights_cover_volume = issued == volume;

    long long good_total = 0, rights_total = 0;
    for (const auto& basket : solution.seller_baskets) good_total += basket.good;
    for (const auto& basket : solution.buyer_baskets) {
        good_total += basket.good;
        rights_total += basket.rights;
    }
    add("good_conserved", good_total == volume,
        "baskets hold " + std::to_string(good_total) + " of " + std::to_string(volume));
    add("rights_within_issue", rights_total <= issued,
        "baskets consume " + std::to_string(rights_total) + " of " + std::to_string(issued));

    Rat money_total = 0;
    for (const auto& basket : solution.seller_baskets) money_total += basket.money;
    for (const auto& basket : solution.buyer_baskets) money_total += basket.money;
    bool money_ok = money_total <= m && (!rights_cover_volume || money_total == m);
    add("money_conserved", money_ok,
        "baskets hold " + rat_str(money_total) + " of " + rat_str(m) +
            (rights_cover_volume ? " (exact match required)" : ""));

    // every trader's basket must cost within (endowment - 1, endowment].
    // Willingness caps void it: shut-out buyers leave rights value unspent in
    // the system, and their inflated cash claims can starve later traders of
    // the finite Money pool.
    if (willingness_capped) {
        skipped("budget_exact_window");
    } else {
        bool window_ok = true;
        std::ostringstream window_detail;
        auto check_window = [&](const Basket& basket, const Rat& endowment,
                                const std::string& who) {
            Rat cost = basket_price(basket, p, q);
            if (cost > endowment || cost <= endowment - 1) {
                window_ok = false;
                window_detail << " " << who << " basket=" << rat_str(cost)
                              << " endowment=" << rat_str(endowment) << ";";
            }
        };
        for (size_t s = 0; s < spec.sellers.size(); ++s)
            check_window(solution.seller_baskets[s], p * spec.sellers[s].good,
                         TraderId{Role::seller, (int)s}.str());
        for (size_t b = 0; b < spec.buyers.size(); ++b)
            check_window(solution.buyer_baskets[b],
                         spec.buyers[b].money + q * spec.buyers[b].rights,
                         TraderId{Role::buyer, (int)b}.str());
        add("budget_exact_window", window_ok, window_detail.str());
    }

    // achieved utility within (1 - eps) of the enumerated optimum
    if (willingness_capped) {
        skipped("buyers_near_optimal");
    } else {
        bool near_opt = true;
        std::ostringstream near_detail;
        for (size_t b = 0; b < spec.buyers.size(); ++b) {
            const auto& buyer = spec.buyers[b];
            const auto& basket = solution.buyer_baskets[b];
            Rat achieved = buyer.good_utility.eval(basket.good) +
                           buyer.money_utility.eval(basket.money);
            OptimalChoice opt = optimal_basket(spec, (int)b, p, q);
            if (achieved < (1 - spec.epsilon) * opt.utility) {
                near_opt = false;
                near_detail << " " << TraderId{Role::buyer, (int)b}.str()
                            << " achieved=" << rat_str(achieved)
                            << " optimal=" << rat_str(opt.utility)
                            << " (best k=" << opt.couples << ");";
            }
        }
        add("buyers_near_optimal", near_opt, near_detail.str());
    }

    if (rights_cover_volume) {
        if (willingness_capped) {
            skipped("sellers_sold_out");
        } else {
            bool sold_out = true;
            for (const auto& basket : solution.seller_baskets)
                if (basket.good != 0) sold_out = false;
            add("sellers_sold_out", sold_out,
                sold_out ? "" : "a seller still holds Good although Rights cover the volume");
        }
    }

    if (stats) {
        // price levels: (1+eps)^(iterations-1) <= m, compared exactly
        bool levels_ok = stats->iterations >= 1;
        if (levels_ok && stats->iterations > 1) {
            Rat step = 1 + spec.epsilon;
            auto k = (unsigned)(stats->iterations - 1);
            Int lhs = boost::multiprecision::pow(numerator(step), k) * denominator(m);
            Int rhs = boost::multiprecision::pow(denominator(step), k) * numerator(m);
            levels_ok = lhs <= rhs;
        }
        add("price_levels_within_bound", levels_ok,
            "iterations=" + std::to_string(stats->iterations) + " money=" + rat_str(m));

        if (willingness_capped) {
            skipped("steps_within_bound");
            skipped("rounds_per_iteration_bound");
        } else {
            double md = std::max(2.0, m.convert_to<double>());
            double eps = spec.epsilon.convert_to<double>();
            double buyers = (double)spec.buyers.size();
            double bound = buyers * buyers *
                           std::log2(std::max(2.0, (double)volume)) *
                           (1.0 + std::log(md) / std::log1p(eps));
            add("steps_within_bound", (double)stats->steps <= bound,
                "steps=" + std::to_string(stats->steps) +
                    " bound=" + std::to_string(bound));

            // within one price level every buyer settles after at most one
            // corrective pass, so rounds cannot exceed 2 + |B|
            int round_bound = 2 + (int)spec.buyers.size();
            add("rounds_per_iteration_bound",
                stats->max_rounds_in_iteration <= round_bound,
                "max_rounds=" + std::to_string(stats->max_rounds_in_iteration) +
                    " bound=" + std::to_string(round_bound));
        }

        if (rights_cover_volume) {
            if (willingness_capped) {
                skipped("first_iteration_clears");
            } else {
                bool clears = stats->uncoupled_good_after_first_iteration == 0 &&
                              stats->uncoupled_rights_after_first_iteration == 0;
                add("first_iteration_clears", clears,
                    "uncoupled good=" +
                        std::to_string(stats->uncoupled_good_after_first_iteration) +
                        " rights=" +
                        std::to_string(stats->uncoupled_rights_after_first_iteration) +
                        " after the first price level (-1: level never completed)");
            }
        }
    }

    return report;
}

}  // namespace rmarket
