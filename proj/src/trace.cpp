#include <rmarket/trace.hpp>

#include <json.hpp>

#include <ostream>
#include <istream>
#include <stdexcept>
#include <string>

namespace rmarket {

namespace {

using Json = nlohmann::ordered_json;

std::string rat(const Rat& x) { return format_rational(x); }

Rat need_rat(const Json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return Rat((long long)v);
    auto parsed = parse_rational(v.get<std::string>());
    if (!parsed) throw std::runtime_error(std::string("trace: bad rational in ") + key);
    return *parsed;
}

std::string trader_str(const TraderId& t) { return t.str(); }

TraderId parse_trader(const std::string& s) {
    if (s.size() < 2 || (s[0] != 's' && s[0] != 'b'))
        throw std::runtime_error("trace: bad trader id " + s);
    TraderId t;
    t.role = s[0] == 's' ? Role::seller : Role::buyer;
    t.index = std::stoi(s.substr(1));
    return t;
}

Json to_json(const TraceEvent& ev) {
    Json j;
    std::visit([&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, EvInit>) {
            j["ev"] = "init";
            j["price_good"] = rat(e.price_good);
            j["price_right"] = rat(e.price_right);
            j["epsilon"] = rat(e.epsilon);
            j["mode"] = e.mode == Mode::restricted ? "restricted" : "unrestricted";
            j["seller_good"] = e.seller_good;
            Json cash = Json::array();
            for (const auto& c : e.buyer_cash) cash.push_back(rat(c));
            j["buyer_cash"] = cash;
            j["buyer_rights"] = e.buyer_rights;
            j["money_pool"] = rat(e.money_pool);
        } else if constexpr (std::is_same_v<T, EvDemandQuery>) {
            j["ev"] = "demand_query";
            j["buyer"] = e.buyer;
            j["owned"] = e.owned;
            j["ideal"] = e.ideal;
            j["probes"] = e.probes;
        } else if constexpr (std::is_same_v<T, EvOutbidPurchase>) {
            j["ev"] = "outbid_purchase";
            j["couple"] = e.couple;
            j["buyer"] = e.buyer;
            j["previous_owner"] = e.previous_owner;
            j["paid"] = rat(e.paid);
            j["credited"] = rat(e.credited);
        } else if constexpr (std::is_same_v<T, EvCoupleFormed>) {
            j["ev"] = "couple_formed";
            j["couple"] = e.couple;
            j["buyer"] = e.buyer;
            j["good_from"] = e.good_from;
            j["right_from"] = e.right_from;
            j["paid"] = rat(e.paid);
            j["seller_credit"] = rat(e.seller_credit);
        } else if constexpr (std::is_same_v<T, EvPriceRaise>) {
            j["ev"] = "price_raise";
            j["price_good"] = rat(e.price_good);
            j["price_right"] = rat(e.price_right);
            j["price_couple"] = rat(e.price_couple);
        } else if constexpr (std::is_same_v<T, EvCashTopup>) {
            j["ev"] = "cash_topup";
            j["trader"] = trader_str(e.trader);
            j["amount"] = rat(e.amount);
            j["reason"] = e.reason == EvCashTopup::Reason::iteration_end
                              ? "iteration_end" : "terminal_rebate";
        } else if constexpr (std::is_same_v<T, EvFinalize>) {
            j["ev"] = "finalize";
            j["trader"] = trader_str(e.trader);
            j["money"] = rat(e.money);
            j["residual_cash"] = rat(e.residual_cash);
        }
    }, ev);
    return j;
}

TraceEvent from_json(const Json& j) {
    const std::string kind = j.at("ev");
    if (kind == "init") {
        EvInit e;
        e.price_good = need_rat(j, "price_good");
        e.price_right = need_rat(j, "price_right");
        e.epsilon = need_rat(j, "epsilon");
        e.mode = j.at("mode") == "restricted" ? Mode::restricted : Mode::unrestricted;
        e.seller_good = j.at("seller_good").get<std::vector<int>>();
        for (const auto& c : j.at("buyer_cash")) {
            auto parsed = parse_rational(c.get<std::string>());
            if (!parsed) throw std::runtime_error("trace: bad buyer cash");
            e.buyer_cash.push_back(*parsed);
        }
        e.buyer_rights = j.at("buyer_rights").get<std::vector<int>>();
        e.money_pool = need_rat(j, "money_pool");
        return e;
    }
    if (kind == "demand_query") {
        EvDemandQuery e;
        e.buyer = j.at("buyer");
        e.owned = j.at("owned");
        e.ideal = j.at("ideal");
        e.probes = j.at("probes");
        return e;
    }
    if (kind == "outbid_purchase") {
        EvOutbidPurchase e;
        e.couple = j.at("couple");
        e.buyer = j.at("buyer");
        e.previous_owner = j.at("previous_owner");
        e.paid = need_rat(j, "paid");
        e.credited = need_rat(j, "credited");
        return e;
    }
    if (kind == "couple_formed") {
        EvCoupleFormed e;
        e.couple = j.at("couple");
        e.buyer = j.at("buyer");
        e.good_from = j.at("good_from");
        e.right_from = j.at("right_from");
        e.paid = need_rat(j, "paid");
        e.seller_credit = need_rat(j, "seller_credit");
        return e;
    }
    if (kind == "price_raise") {
        EvPriceRaise e;
        e.price_good = need_rat(j, "price_good");
        e.price_right = need_rat(j, "price_right");
        e.price_couple = need_rat(j, "price_couple");
        return e;
    }
    if (kind == "cash_topup") {
        EvCashTopup e;
        e.trader = parse_trader(j.at("trader"));
        e.amount = need_rat(j, "amount");
        e.reason = j.at("reason") == "terminal_rebate"
                       ? EvCashTopup::Reason::terminal_rebate
                       : EvCashTopup::Reason::iteration_end;
        return e;
    }
    if (kind == "finalize") {
        EvFinalize e;
        e.trader = parse_trader(j.at("trader"));
        e.money = need_rat(j, "money");
        e.residual_cash = need_rat(j, "residual_cash");
        return e;
    }
    throw std::runtime_error("trace: unknown event kind " + kind);
}

}  // namespace

void write_trace(std::ostream& out, const std::vector<TraceEvent>& events) {
    for (const auto& ev : events) out << to_json(ev).dump() << '\n';
}

std::vector<TraceEvent> read_trace(std::istream& in) {
    std::vector<TraceEvent> events;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            events.push_back(from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("trace line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return events;
}

}  // namespace rmarket
