#include <rmarket/report.hpp>

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rmarket {

namespace {

using Json = nlohmann::ordered_json;

std::string rat(const Rat& x) { return format_rational(x); }

Rat parse_rat_field(const Json& j, const char* key) {
    auto parsed = parse_rational(j.at(key).get<std::string>());
    if (!parsed)
        throw std::runtime_error(std::string("solution: bad rational in ") + key);
    return *parsed;
}

Json basket_json(const Basket& b) {
    Json j;
    j["good"] = b.good;
    j["rights"] = b.rights;
    j["money"] = rat(b.money);
    return j;
}

Basket basket_from_json(const Json& j) {
    Basket b;
    b.good = j.at("good");
    b.rights = j.at("rights");
    b.money = parse_rat_field(j, "money");
    return b;
}

}  // namespace

void write_solution_json(std::ostream& out, const Solution& solution) {
    Json j;
    j["price_good"] = rat(solution.price_good);
    j["price_right"] = rat(solution.price_right);
    Json buyers = Json::array();
    for (const auto& b : solution.buyer_baskets) buyers.push_back(basket_json(b));
    j["buyers"] = buyers;
    Json sellers = Json::array();
    for (const auto& s : solution.seller_baskets) sellers.push_back(basket_json(s));
    j["sellers"] = sellers;
    out << j.dump(2) << '\n';
}

Solution read_solution_json(std::istream& in) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("solution: not valid JSON: ") + e.what());
    }
    Solution s;
    s.price_good = parse_rat_field(j, "price_good");
    s.price_right = parse_rat_field(j, "price_right");
    for (const auto& b : j.at("buyers")) s.buyer_baskets.push_back(basket_from_json(b));
    for (const auto& b : j.at("sellers")) s.seller_baskets.push_back(basket_from_json(b));
    return s;
}

void write_stats_json(std::ostream& out, const SolveStats& stats) {
    Json j;
    j["iterations"] = stats.iterations;
    j["rounds_total"] = stats.rounds_total;
    j["max_rounds_in_iteration"] = stats.max_rounds_in_iteration;
    j["steps"] = stats.steps;
    j["uncoupled_good_after_first_iteration"] = stats.uncoupled_good_after_first_iteration;
    j["uncoupled_rights_after_first_iteration"] = stats.uncoupled_rights_after_first_iteration;
    out << j.dump(2) << '\n';
}

void write_verification_json(std::ostream& out, const VerificationReport& report) {
    Json j;
    j["ok"] = report.ok();
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    out << j.dump(2) << '\n';
}

void write_frustration_json(std::ostream& out, const FrustrationReport& report) {
    Json j;
    j["max_frustration"] = rat(report.max_frustration);
    j["max_potential_frustration"] = rat(report.max_potential_frustration);
    Json buyers = Json::array();
    for (size_t b = 0; b < report.per_buyer.size(); ++b) {
        const auto& row = report.per_buyer[b];
        Json bj;
        bj["buyer"] = b;
        bj["assigned"] = row.assigned;
        bj["acquired"] = row.acquired;
        bj["affordable"] = row.affordable;
        bj["frustration"] = rat(row.frustration);
        bj["potential_frustration"] = rat(row.potential_frustration);
        buyers.push_back(bj);
    }
    j["buyers"] = buyers;
    out << j.dump(2) << '\n';
}

void write_frustration_csv(std::ostream& out, const FrustrationReport& report) {
    out << "buyer,assigned,acquired,f,pf\n";
    for (size_t b = 0; b < report.per_buyer.size(); ++b) {
        const auto& row = report.per_buyer[b];
        out << b << ',' << row.assigned << ',' << row.acquired << ','
            << rat(row.frustration) << ',' << rat(row.potential_frustration) << '\n';
    }
}

void write_crisis_rounds_jsonl(std::ostream& out, const CrisisResult& result) {
    for (const auto& record : result.rounds) {
        Json j;
        j["round"] = record.round;
        Json will = Json::array();
        for (const auto& w : record.willingness) will.push_back(rat(w));
        j["willingness"] = will;
        j["price_good"] = rat(record.solution.price_good);
        j["price_right"] = rat(record.solution.price_right);
        Json buyers = Json::array();
        for (const auto& b : record.solution.buyer_baskets)
            buyers.push_back(basket_json(b));
        j["buyers"] = buyers;
        Json fr = Json::array(), pf = Json::array();
        for (const auto& row : record.frustration.per_buyer) {
            fr.push_back(rat(row.frustration));
            pf.push_back(rat(row.potential_frustration));
        }
        j["frustration"] = fr;
        j["potential_frustration"] = pf;
        j["rights_sold"] = record.rights_sold;
        Json proceeds = Json::array();
        for (const auto& z : record.rights_proceeds) proceeds.push_back(rat(z));
        j["rights_proceeds"] = proceeds;
        out << j.dump() << '\n';
    }
}

void write_crisis_rounds_csv(std::ostream& out, const CrisisResult& result) {
    out << "round,buyer,willingness,assigned,acquired,f,pf,rights_sold,rights_proceeds\n";
    for (const auto& record : result.rounds) {
        for (size_t b = 0; b < record.frustration.per_buyer.size(); ++b) {
            const auto& row = record.frustration.per_buyer[b];
            out << record.round << ',' << b << ','
                << rat(record.willingness[b]) << ',' << row.assigned << ','
                << row.acquired << ',' << rat(row.frustration) << ','
                << rat(row.potential_frustration) << ','
                << record.rights_sold[b] << ','
                << rat(record.rights_proceeds[b]) << '\n';
        }
    }
}

void write_crisis_checks_json(std::ostream& out, const CrisisChecks& checks) {
    Json j;
    j["ok"] = checks.ok();
    j["frustration_bounded"] = checks.frustration_bounded;
    j["frustration_monotone"] = checks.frustration_monotone;
    j["price_growth_bounded"] = checks.price_growth_bounded;
    j["detail"] = checks.detail;
    out << j.dump(2) << '\n';
}

std::string solve_summary(const MarketSpec& spec, const Solution& solution,
                          const VerificationReport& verification,
                          const FrustrationReport& frustration) {
    std::ostringstream os;
    os << "market: " << spec.sellers.size() << " sellers, " << spec.buyers.size()
       << " buyers, volume " << spec.offered_volume() << ", rights "
       << spec.total_rights() << ", money " << rat(spec.total_money()) << '\n';
    os << "mode: " << (spec.mode == Mode::restricted ? "restricted" : "unrestricted")
       << ", epsilon " << rat(spec.epsilon) << '\n';
    os << "terminal prices: good " << rat(solution.price_good) << ", right "
       << rat(solution.price_right) << ", couple "
       << rat(solution.price_good + solution.price_right) << '\n';
    os << "effort: " << solution.stats.iterations << " price levels, "
       << solution.stats.rounds_total << " rounds, " << solution.stats.steps
       << " steps\n";
    int passed = 0;
    for (const auto& c : verification.checks) passed += c.pass ? 1 : 0;
    os << "verification: " << (verification.ok() ? "PASS" : "FAIL") << " ("
       << passed << "/" << verification.checks.size() << " checks)\n";
    if (!verification.ok())
        for (const auto& c : verification.checks)
            if (!c.pass) os << "  failed " << c.name << ":" << c.detail << '\n';
    os << "frustration: max " << rat(frustration.max_frustration)
       << ", max potential " << rat(frustration.max_potential_frustration) << '\n';
    return os.str();
}

std::string crisis_summary(const MarketSpec& spec, const CrisisResult& result,
                           const CrisisChecks& checks) {
    std::ostringstream os;
    os << "crisis: " << result.rounds.size() << " rounds over "
       << spec.buyers.size() << " buyers, volume " << spec.offered_volume()
       << ", mode "
       << (spec.mode == Mode::restricted ? "restricted (measurable)" : "unrestricted")
       << '\n';
    for (const auto& record : result.rounds) {
        Rat total_proceeds = 0;
        for (const auto& z : record.rights_proceeds) total_proceeds += z;
        os << "round " << record.round << ": couple price "
           << rat(record.solution.price_good + record.solution.price_right)
           << ", max frustration " << rat(record.frustration.max_frustration)
           << ", rights proceeds " << rat(total_proceeds) << '\n';
    }
    os << "guarantees: " << (checks.ok() ? "PASS" : "FAIL")
       << " (bounded " << (checks.frustration_bounded ? "yes" : "NO")
       << ", monotone " << (checks.frustration_monotone ? "yes" : "NO")
       << ", price growth " << (checks.price_growth_bounded ? "yes" : "NO") << ")\n";
    if (!checks.detail.empty()) os << "  " << checks.detail << '\n';
    return os.str();
}

}  // namespace rmarket
