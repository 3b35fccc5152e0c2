#include <rmarket/auction.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rmarket {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

[[noreturn]] void state_bug(const std::string& what) {
    throw std::logic_error("auction state invariant violated: " + what);
}

}  // namespace

long long AuctionState::available_at_base() const {
    return base_couples +
           std::min<long long>(total_uncoupled_good, total_uncoupled_right);
}

Rat AuctionState::rights_reserve(int buyer) const {
    if (spec.mode != Mode::restricted) return Rat(0);
    long long unsold = spec.buyers[(size_t)buyer].rights - owned[(size_t)buyer];
    if (unsold <= 0) return Rat(0);
    return price_right * unsold;
}

Rat AuctionState::willingness_left(int buyer) const {
    if (config.willingness.empty()) return total_all_cash + 1;  // never binds
    // net outflow so far is initial cash minus current cash (negative for a
    // net earner, which widens the headroom again)
    return config.willingness[(size_t)buyer] -
           (initial_cash[(size_t)buyer] - buyer_cash[(size_t)buyer]);
}

Rat AuctionState::spendable_cash(int buyer) const {
    Rat room = buyer_cash[(size_t)buyer] - rights_reserve(buyer);
    Rat will = willingness_left(buyer);
    if (will < room) room = will;
    return room > 0 ? room : Rat(0);
}

bool AuctionState::can_pay(int buyer, const Rat& amount, const Rat& reserve) const {
    if (buyer_cash[(size_t)buyer] - amount < reserve) return false;
    return amount <= willingness_left(buyer);
}

void AuctionState::assert_bounds() const {
    if (price_good != price_right) state_bug("Good and Right prices diverged");
    if (price_couple != price_good + price_right) state_bug("couple price mismatch");
    for (const auto& c : buyer_cash)
        if (c < 0) state_bug("negative buyer cash");
    for (const auto& c : seller_cash)
        if (c < 0) state_bug("negative seller cash");
    // surplus cash covers the initial Right value, so the ceiling is twice the
    // Money supply; once the first price level completes, all cash in the
    // economy fits inside the Money pool
    if (total_buyer_cash > 2 * money_pool) state_bug("buyer cash exceeds 2m");
    if (first_iteration_done && rights_issued == volume &&
        total_all_cash > money_pool)
        state_bug("total cash exceeds m after first iteration");
}

void AuctionState::assert_deep() const {
    assert_bounds();
    std::vector<long long> own(spec.buyers.size(), 0), raised(spec.buyers.size(), 0);
    int base = 0;
    for (const auto& c : couples) {
        if (c.owner < 0 || (size_t)c.owner >= spec.buyers.size())
            state_bug("couple owned by nonexistent buyer");
        ++own[(size_t)c.owner];
        if (c.raised) ++raised[(size_t)c.owner]; else ++base;
    }
    if (own != owned || raised != owned_raised) state_bug("ownership cache drift");
    if (base != base_couples) state_bug("base tier cache drift");

    int ug = 0, ur = 0;
    for (int g : seller_uncoupled_good) { if (g < 0) state_bug("negative loose Good"); ug += g; }
    for (int r : buyer_uncoupled_rights) { if (r < 0) state_bug("negative loose Right"); ur += r; }
    if (ug != total_uncoupled_good || ur != total_uncoupled_right)
        state_bug("loose item cache drift");
    if (ug + (int)couples.size() != volume) state_bug("Good not conserved");
    if (ur + (int)couples.size() != rights_issued) state_bug("Right not conserved");

    Rat bc = 0, ac = 0;
    for (const auto& c : buyer_cash) bc += c;
    for (const auto& c : seller_cash) ac += c;
    ac += bc;
    if (bc != total_buyer_cash || ac != total_all_cash) state_bug("cash total drift");

    for (size_t b = 0; b < spec.buyers.size(); ++b) {
        if (buyer_cash[b] < rights_reserve((int)b))
            state_bug("Right proceeds spent on Good");
        if (owned[b] > std::min<long long>(spec.buyers[b].claim, volume))
            state_bug("buyer holds more couples than claim or volume");
    }
}

AuctionState initialize(const MarketSpec& spec, const SolverConfig& config) {
    auto problems = spec_problems(spec);
    if (!problems.empty()) {
        std::ostringstream os;
        os << "market spec unusable:";
        for (const auto& p : problems) os << " [" << p << "]";
        throw std::invalid_argument(os.str());
    }
    // every solver guarantee leans on endowment validity, so refuse early
    auto validity = check_valid_endowments(spec);
    if (!validity.ok()) {
        std::ostringstream os;
        os << "invalid endowments:";
        for (const auto& f : validity.failures()) os << " [" << f << "]";
        throw std::invalid_argument(os.str());
    }

    AuctionState st;
    st.spec = spec;
    st.config = config;
    st.volume = spec.offered_volume();
    st.rights_issued = spec.total_rights();
    if (st.rights_issued > st.volume)
        throw std::invalid_argument("more Rights issued than Good offered");
    if (!config.willingness.empty()) {
        if (config.willingness.size() != spec.buyers.size())
            throw std::invalid_argument("one willingness cap per buyer, or none");
        for (const auto& w : config.willingness)
            if (w < 0) throw std::invalid_argument("negative willingness cap");
    }

    st.price_good = 1;
    st.price_right = 1;
    st.price_couple = 2;

    st.seller_cash.assign(spec.sellers.size(), Rat(0));
    st.seller_uncoupled_good.resize(spec.sellers.size());
    for (size_t s = 0; s < spec.sellers.size(); ++s)
        st.seller_uncoupled_good[s] = spec.sellers[s].good;
    st.total_uncoupled_good = st.volume;

    st.buyer_cash.resize(spec.buyers.size());
    st.buyer_uncoupled_rights.resize(spec.buyers.size());
    st.total_buyer_cash = 0;
    for (size_t b = 0; b < spec.buyers.size(); ++b) {
        // surplus cash: the system prepays the buyer's Rights at the opening
        // price, so taking them into couples later costs it nothing
        st.buyer_cash[b] = spec.buyers[b].money + st.price_right * spec.buyers[b].rights;
        st.buyer_uncoupled_rights[b] = spec.buyers[b].rights;
        st.total_buyer_cash += st.buyer_cash[b];
    }
    st.total_uncoupled_right = st.rights_issued;
    st.total_all_cash = st.total_buyer_cash;
    st.initial_cash = st.buyer_cash;

    st.owned.assign(spec.buyers.size(), 0);
    st.owned_raised.assign(spec.buyers.size(), 0);
    st.margin_paid.assign(spec.buyers.size(), Rat(0));
    st.money_pool = spec.total_money();

    st.buyer_order.resize(spec.buyers.size());
    for (size_t b = 0; b < spec.buyers.size(); ++b) st.buyer_order[b] = (int)b;
    if (config.shuffle_buyer_order) {
        std::uint64_t s = config.shuffle_seed;
        for (size_t i = st.buyer_order.size(); i > 1; --i)
            std::swap(st.buyer_order[i - 1],
                      st.buyer_order[splitmix64(s) % i]);
    }

    EvInit init;
    init.price_good = st.price_good;
    init.price_right = st.price_right;
    init.epsilon = spec.epsilon;
    init.mode = spec.mode;
    init.seller_good = st.seller_uncoupled_good;
    init.buyer_cash = st.buyer_cash;
    init.buyer_rights = st.buyer_uncoupled_rights;
    init.money_pool = st.money_pool;
    st.trace.push_back(init);

    st.assert_deep();
    return st;
}

long long demand_at_price(const GoodUtility& utility, const Rat& alpha,
                          const Rat& couple_price, long long hi,
                          long long* probes) {
    const Rat threshold = alpha * couple_price;
    long long lo = 0, n = 0;
    while (lo < hi) {
        long long mid = lo + (hi - lo + 1) / 2;
        ++n;
        if (utility.marginals[(size_t)(mid - 1)] > threshold) lo = mid;
        else hi = mid - 1;
    }
    if (probes) *probes += n;
    return lo;
}

long long ideal_demand(AuctionState& st, int buyer) {
    const auto& b = st.spec.buyers[(size_t)buyer];
    long long o = st.owned[(size_t)buyer];
    long long cap = std::min<long long>(b.claim, st.volume);
    // a bundle of k couples priced at c must fit in c*owned plus spendable
    // cash: couples already held finance themselves at the current price
    Int by_budget = o + rat_floor(st.spendable_cash(buyer) / st.price_couple);
    if (by_budget < cap) cap = by_budget.convert_to<long long>();

    long long probes = 0;
    long long ideal = demand_at_price(b.good_utility, b.money_utility.alpha,
                                      st.price_couple, cap, &probes);
    st.stats.steps += probes;

    if (st.config.log_demand_queries) {
        EvDemandQuery ev;
        ev.buyer = buyer;
        ev.owned = o;
        ev.ideal = ideal;
        ev.probes = (int)probes;
        st.trace.push_back(ev);
    }
    return ideal;
}

namespace {

// One purchase updates at most two cash balances; the touched buyer's reserve
// is re-checked here, everyone else's is unaffected until prices move (and
// the deep audit runs at every price move).
void check_after_purchase(AuctionState& st, int buyer) {
    if (st.buyer_cash[(size_t)buyer] < st.rights_reserve(buyer))
        throw std::logic_error("auction state invariant violated: reserve breached");
    st.assert_bounds();
    if (st.config.deep_checks) st.assert_deep();
}

}  // namespace

long long outbid(AuctionState& st, int buyer, long long want) {
    const Rat margin = st.spec.epsilon * st.price_couple;
    const Rat pay = st.price_couple + margin;  // (1+eps)*c
    long long target = want - st.owned_raised[(size_t)buyer];
    long long bought = 0;

    while (bought < target) {
        // source 1: the buyer's own base-tier couples
        int own_idx = -1, foreign_idx = -1;
        for (size_t i = 0; i < st.couples.size(); ++i) {
            if (st.couples[i].raised) continue;
            if (st.couples[i].owner == buyer) { own_idx = (int)i; break; }
            if (foreign_idx < 0) foreign_idx = (int)i;
        }

        if (own_idx >= 0) {
            // pays (1+eps)c and pockets c as its own seller: net eps*c
            if (!st.can_pay(buyer, margin, st.rights_reserve(buyer))) break;
            st.buyer_cash[(size_t)buyer] -= margin;
            st.total_buyer_cash -= margin;
            st.total_all_cash -= margin;
            st.margin_paid[(size_t)buyer] += margin;
            st.couples[(size_t)own_idx].raised = true;
            ++st.owned_raised[(size_t)buyer];
            --st.base_couples;

            EvOutbidPurchase ev;
            ev.couple = st.couples[(size_t)own_idx].id;
            ev.buyer = buyer;
            ev.previous_owner = buyer;
            ev.paid = pay;
            ev.credited = st.price_couple;
            st.trace.push_back(ev);
            ++bought;
            check_after_purchase(st, buyer);
            continue;
        }

        Rat reserve_after = Rat(0);
        if (st.spec.mode == Mode::restricted) {
            long long unsold = st.spec.buyers[(size_t)buyer].rights -
                               (st.owned[(size_t)buyer] + 1);
            if (unsold > 0) reserve_after = st.price_right * unsold;
        }

        // source 2: pair a loose Good with a loose Right (buyer's own first)
        if (st.total_uncoupled_good > 0 && st.total_uncoupled_right > 0) {
            if (!st.can_pay(buyer, pay, reserve_after)) break;
            int good_from = 0;
            while (st.seller_uncoupled_good[(size_t)good_from] == 0) ++good_from;
            int right_from = buyer;
            if (st.buyer_uncoupled_rights[(size_t)buyer] == 0) {
                right_from = 0;
                while (st.buyer_uncoupled_rights[(size_t)right_from] == 0) ++right_from;
            }
            st.buyer_cash[(size_t)buyer] -= pay;
            st.total_buyer_cash -= pay;
            // the Right owner gets nothing here: its value sits in the surplus
            // cash granted at initialization
            st.seller_cash[(size_t)good_from] += st.price_good;
            st.total_all_cash -= pay - st.price_good;
            st.margin_paid[(size_t)buyer] += margin;

            --st.seller_uncoupled_good[(size_t)good_from];
            --st.buyer_uncoupled_rights[(size_t)right_from];
            --st.total_uncoupled_good;
            --st.total_uncoupled_right;
            CoupleItem item;
            item.id = (int)st.couples.size();
            item.owner = buyer;
            item.raised = true;
            st.couples.push_back(item);
            ++st.owned[(size_t)buyer];
            ++st.owned_raised[(size_t)buyer];

            EvCoupleFormed ev;
            ev.couple = item.id;
            ev.buyer = buyer;
            ev.good_from = good_from;
            ev.right_from = right_from;
            ev.paid = pay;
            ev.seller_credit = st.price_good;
            st.trace.push_back(ev);
            ++bought;
            check_after_purchase(st, buyer);
            continue;
        }

        // source 3: another buyer's base-tier couple
        if (foreign_idx >= 0) {
            if (!st.can_pay(buyer, pay, reserve_after)) break;
            auto& item = st.couples[(size_t)foreign_idx];
            int prev = item.owner;
            st.buyer_cash[(size_t)buyer] -= pay;
            st.buyer_cash[(size_t)prev] += st.price_couple;
            st.total_buyer_cash -= margin;
            st.total_all_cash -= margin;
            st.margin_paid[(size_t)buyer] += margin;

            item.owner = buyer;
            item.raised = true;
            ++st.owned[(size_t)buyer];
            ++st.owned_raised[(size_t)buyer];
            --st.owned[(size_t)prev];
            --st.base_couples;

            EvOutbidPurchase ev;
            ev.couple = item.id;
            ev.buyer = buyer;
            ev.previous_owner = prev;
            ev.paid = pay;
            ev.credited = st.price_couple;
            st.trace.push_back(ev);
            ++bought;
            check_after_purchase(st, buyer);
            continue;
        }

        break;  // nothing left to buy at this level
    }
    return bought;
}

RoundOutcome run_round(AuctionState& st) {
    ++st.stats.rounds_total;
    ++st.rounds_this_iteration;
    st.stats.max_rounds_in_iteration =
        std::max(st.stats.max_rounds_in_iteration, st.rounds_this_iteration);

    RoundOutcome out;
    for (int b : st.buyer_order) {
        if (st.available_at_base() == 0) {
            end_iteration(st);
            out.iteration_ended = true;
            return out;
        }
        long long ideal = ideal_demand(st, b);
        if (ideal < st.owned[(size_t)b]) continue;  // holding beats demand
        if (ideal - st.owned_raised[(size_t)b] <= 0) continue;  // nothing to do
        ++st.stats.steps;  // one step per outbid run
        out.purchases += outbid(st, b, ideal);
        if (st.available_at_base() == 0) {
            end_iteration(st);
            out.iteration_ended = true;
            return out;
        }
    }
    return out;
}

void end_iteration(AuctionState& st) {
    // top-ups at the closing level's prices: the eps*c margins collected this
    // iteration flow back to whoever brought Good or Right into the market
    for (size_t s = 0; s < st.spec.sellers.size(); ++s) {
        Rat amount = st.spec.epsilon * st.price_good * st.spec.sellers[s].good;
        st.seller_cash[s] += amount;
        st.total_all_cash += amount;
        EvCashTopup ev;
        ev.trader = TraderId{Role::seller, (int)s};
        ev.amount = amount;
        st.trace.push_back(ev);
    }
    for (size_t b = 0; b < st.spec.buyers.size(); ++b) {
        if (st.spec.buyers[b].rights == 0) continue;
        Rat amount = st.spec.epsilon * st.price_right * st.spec.buyers[b].rights;
        st.buyer_cash[b] += amount;
        st.total_buyer_cash += amount;
        st.total_all_cash += amount;
        EvCashTopup ev;
        ev.trader = TraderId{Role::buyer, (int)b};
        ev.amount = amount;
        st.trace.push_back(ev);
    }
    // the collected margins are fully paid out; nothing left to rebate
    for (auto& m : st.margin_paid) m = 0;

    st.price_good *= 1 + st.spec.epsilon;
    st.price_right *= 1 + st.spec.epsilon;
    st.price_couple = st.price_good + st.price_right;
    EvPriceRaise raise;
    raise.price_good = st.price_good;
    raise.price_right = st.price_right;
    raise.price_couple = st.price_couple;
    st.trace.push_back(raise);

    for (auto& c : st.couples) c.raised = false;
    std::fill(st.owned_raised.begin(), st.owned_raised.end(), 0LL);
    st.base_couples = (int)st.couples.size();

    if (!st.first_iteration_done) {
        st.first_iteration_done = true;
        st.stats.uncoupled_good_after_first_iteration = st.total_uncoupled_good;
        st.stats.uncoupled_rights_after_first_iteration = st.total_uncoupled_right;
    }
    ++st.iteration;
    st.rounds_this_iteration = 0;
    st.assert_deep();
}

Solution finalize(AuctionState& st) {
    if (st.trading_over) throw std::logic_error("finalize called twice");
    st.trading_over = true;

    // the system earned these margins at a price level that never completed;
    // giving them back keeps each basket exactly as expensive as the
    // endowment it replaces
    for (size_t b = 0; b < st.spec.buyers.size(); ++b) {
        if (st.margin_paid[b] == 0) continue;
        st.buyer_cash[b] += st.margin_paid[b];
        st.total_buyer_cash += st.margin_paid[b];
        st.total_all_cash += st.margin_paid[b];
        EvCashTopup ev;
        ev.trader = TraderId{Role::buyer, (int)b};
        ev.amount = st.margin_paid[b];
        ev.reason = EvCashTopup::Reason::terminal_rebate;
        st.trace.push_back(ev);
        st.margin_paid[b] = 0;
    }
    st.assert_deep();

    Solution sol;
    sol.price_good = st.price_good;
    sol.price_right = st.price_right;
    sol.seller_baskets.resize(st.spec.sellers.size());
    sol.buyer_baskets.resize(st.spec.buyers.size());

    Rat pool = st.money_pool;
    auto sell_money = [&](TraderId who, Rat& cash, Basket& basket) {
        Rat take = cash <= pool ? cash : pool;
        pool -= take;
        basket.money = take;
        EvFinalize ev;
        ev.trader = who;
        ev.money = take;
        ev.residual_cash = cash - take;
        st.trace.push_back(ev);
        cash = ev.residual_cash;
    };
    for (size_t b = 0; b < st.spec.buyers.size(); ++b) {
        auto& basket = sol.buyer_baskets[b];
        basket.good = st.owned[b];
        basket.rights = st.owned[b];
        sell_money(TraderId{Role::buyer, (int)b}, st.buyer_cash[b], basket);
    }
    for (size_t s = 0; s < st.spec.sellers.size(); ++s) {
        auto& basket = sol.seller_baskets[s];
        basket.good = st.seller_uncoupled_good[s];  // unsold inventory
        basket.rights = 0;
        sell_money(TraderId{Role::seller, (int)s}, st.seller_cash[s], basket);
    }

    st.stats.iterations = st.iteration;
    sol.stats = st.stats;
    return sol;
}

Solution solve(AuctionState& st) {
    // twice the price-level bound; reaching this is a bug, not an input error
    double m = std::max(2.0, st.money_pool.convert_to<double>());
    double eps = st.spec.epsilon.convert_to<double>();
    long long guard =
        2 * (long long)std::ceil(1.0 + std::log(m) / std::log1p(eps)) + 4;

    while (true) {
        if (st.iteration > guard)
            throw std::runtime_error("auction failed to converge within the price-level bound");
        RoundOutcome out = run_round(st);
        if (!out.iteration_ended && out.purchases == 0) break;  // dead round
    }
    return finalize(st);
}

Solution solve(const MarketSpec& spec, const SolverConfig& config) {
    AuctionState st = initialize(spec, config);
    return solve(st);
}

namespace {

[[noreturn]] void corrupt(const std::string& what) {
    throw std::runtime_error("trace inconsistent: " + what);
}

}  // namespace

Solution replay_trace(const std::vector<TraceEvent>& events) {
    if (events.empty() || !std::holds_alternative<EvInit>(events[0]))
        corrupt("missing init event");
    const auto& init = std::get<EvInit>(events[0]);

    Rat p = init.price_good, q = init.price_right;
    std::vector<Rat> seller_cash(init.seller_good.size(), Rat(0));
    std::vector<int> seller_good = init.seller_good;
    std::vector<Rat> buyer_cash = init.buyer_cash;
    std::vector<int> buyer_rights = init.buyer_rights;
    std::vector<long long> owned(buyer_cash.size(), 0);
    long long couples_made = 0;
    Rat pool = init.money_pool;

    Solution sol;
    sol.seller_baskets.resize(seller_cash.size());
    sol.buyer_baskets.resize(buyer_cash.size());
    std::vector<bool> finalized_buyer(buyer_cash.size(), false);
    std::vector<bool> finalized_seller(seller_cash.size(), false);

    auto buyer_ok = [&](int b) { return b >= 0 && (size_t)b < buyer_cash.size(); };
    auto seller_ok = [&](int s) { return s >= 0 && (size_t)s < seller_cash.size(); };

    for (size_t i = 1; i < events.size(); ++i) {
        std::visit([&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, EvInit>) {
                corrupt("duplicate init event");
            } else if constexpr (std::is_same_v<T, EvDemandQuery>) {
                // decisions are not re-derived on replay
            } else if constexpr (std::is_same_v<T, EvOutbidPurchase>) {
                if (!buyer_ok(e.buyer) || !buyer_ok(e.previous_owner))
                    corrupt("purchase names unknown buyer");
                buyer_cash[(size_t)e.buyer] -= e.paid;
                buyer_cash[(size_t)e.previous_owner] += e.credited;
                if (buyer_cash[(size_t)e.buyer] < 0) corrupt("buyer cash went negative");
                if (e.buyer != e.previous_owner) {
                    if (owned[(size_t)e.previous_owner] <= 0)
                        corrupt("purchase from empty-handed owner");
                    --owned[(size_t)e.previous_owner];
                    ++owned[(size_t)e.buyer];
                }
            } else if constexpr (std::is_same_v<T, EvCoupleFormed>) {
                if (!buyer_ok(e.buyer) || !buyer_ok(e.right_from) || !seller_ok(e.good_from))
                    corrupt("composition names unknown trader");
                if (seller_good[(size_t)e.good_from] <= 0) corrupt("no loose Good at seller");
                if (buyer_rights[(size_t)e.right_from] <= 0) corrupt("no loose Right at buyer");
                if (e.couple != couples_made) corrupt("couple ids out of order");
                --seller_good[(size_t)e.good_from];
                --buyer_rights[(size_t)e.right_from];
                ++couples_made;
                buyer_cash[(size_t)e.buyer] -= e.paid;
                seller_cash[(size_t)e.good_from] += e.seller_credit;
                if (buyer_cash[(size_t)e.buyer] < 0) corrupt("buyer cash went negative");
                ++owned[(size_t)e.buyer];
            } else if constexpr (std::is_same_v<T, EvPriceRaise>) {
                if (e.price_good + e.price_right != e.price_couple)
                    corrupt("raised couple price is not p + q");
                p = e.price_good;
                q = e.price_right;
            } else if constexpr (std::is_same_v<T, EvCashTopup>) {
                if (e.trader.role == Role::buyer) {
                    if (!buyer_ok(e.trader.index)) corrupt("top-up names unknown buyer");
                    buyer_cash[(size_t)e.trader.index] += e.amount;
                } else {
                    if (!seller_ok(e.trader.index)) corrupt("top-up names unknown seller");
                    seller_cash[(size_t)e.trader.index] += e.amount;
                }
            } else if constexpr (std::is_same_v<T, EvFinalize>) {
                Rat& cash = e.trader.role == Role::buyer
                                ? buyer_cash.at((size_t)e.trader.index)
                                : seller_cash.at((size_t)e.trader.index);
                if (e.money + e.residual_cash != cash)
                    corrupt("finalize does not account for the trader's cash");
                if (e.money > pool) corrupt("finalize oversells the Money pool");
                pool -= e.money;
                cash = e.residual_cash;
                if (e.trader.role == Role::buyer) {
                    auto& basket = sol.buyer_baskets[(size_t)e.trader.index];
                    basket.good = owned[(size_t)e.trader.index];
                    basket.rights = owned[(size_t)e.trader.index];
                    basket.money = e.money;
                    finalized_buyer[(size_t)e.trader.index] = true;
                } else {
                    auto& basket = sol.seller_baskets[(size_t)e.trader.index];
                    basket.good = seller_good[(size_t)e.trader.index];
                    basket.rights = 0;
                    basket.money = e.money;
                    finalized_seller[(size_t)e.trader.index] = true;
                }
            }
        }, events[i]);
    }

    for (bool f : finalized_buyer) if (!f) corrupt("buyer never finalized");
    for (bool f : finalized_seller) if (!f) corrupt("seller never finalized");
    sol.price_good = p;
    sol.price_right = q;
    return sol;
}

}  // namespace rmarket
