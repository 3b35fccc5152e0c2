#include <rmarket/scenario.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rmarket {

namespace {

using Json = nlohmann::ordered_json;

Rat json_rat(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat((long long)j);
    if (j.is_string()) {
        auto parsed = parse_rational(j.get<std::string>());
        if (parsed) return *parsed;
    }
    throw std::runtime_error("scenario: " + where +
                             " must be an integer or a \"num/den\" string");
}

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Scenario load_scenario(std::istream& in) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("scenario: not valid JSON: ") + e.what());
    }

    Scenario sc;
    int with_rights = 0, with_willingness = 0;
    try {
        sc.kind = j.value("kind", "market");
        if (sc.kind != "market" && sc.kind != "crisis")
            throw std::runtime_error("scenario: kind must be \"market\" or \"crisis\"");
        sc.seed = j.value("seed", 0ULL);
        sc.rounds = j.value("rounds", 1);
        if (sc.rounds < 1) throw std::runtime_error("scenario: rounds must be >= 1");

        sc.spec.epsilon = json_rat(j.at("epsilon"), "epsilon");
        const std::string mode = j.value("mode", "restricted");
        if (mode == "restricted") sc.spec.mode = Mode::restricted;
        else if (mode == "unrestricted") sc.spec.mode = Mode::unrestricted;
        else throw std::runtime_error("scenario: unknown mode " + mode);

        const std::string mech = j.value("mechanism", "proportional");
        auto parsed_mech = rights_mechanism_from_name(mech);
        if (!parsed_mech)
            throw std::runtime_error("scenario: unknown mechanism " + mech);
        sc.mechanism = *parsed_mech;

        for (const auto& s : j.at("sellers")) {
            SellerEndowment seller;
            seller.good = s.at("good");
            sc.spec.sellers.push_back(seller);
        }

        for (const auto& b : j.at("buyers")) {
            BuyerEndowment buyer;
            buyer.money = json_rat(b.at("money"), "buyer money");
            buyer.claim = b.at("claim");
            buyer.money_utility.alpha = json_rat(b.at("alpha"), "buyer alpha");
            for (const auto& m : b.at("marginals"))
                buyer.good_utility.marginals.push_back(json_rat(m, "buyer marginal"));
            if (b.contains("rights")) {
                buyer.rights = b.at("rights");
                ++with_rights;
            }
            if (b.contains("willingness")) {
                sc.willingness.push_back(
                    json_rat(b.at("willingness"), "buyer willingness"));
                ++with_willingness;
            }
            sc.spec.buyers.push_back(std::move(buyer));
        }
    } catch (const Json::exception& e) {
        // missing keys and wrong types, reported with the offending field
        throw std::runtime_error(std::string("scenario: ") + e.what());
    }
    if (with_rights != 0 && with_rights != (int)sc.spec.buyers.size())
        throw std::runtime_error(
            "scenario: either every buyer lists rights or none does");
    if (with_willingness != 0 && with_willingness != (int)sc.spec.buyers.size())
        throw std::runtime_error(
            "scenario: either every buyer lists willingness or none does");
    sc.explicit_rights = with_rights != 0;

    if (!sc.explicit_rights) {
        ClaimsProblem problem;
        problem.volume = sc.spec.offered_volume();
        for (const auto& b : sc.spec.buyers) problem.claims.push_back(b.claim);
        auto allocation = distribute_rights(problem, sc.mechanism);
        for (size_t b = 0; b < sc.spec.buyers.size(); ++b)
            sc.spec.buyers[b].rights = allocation.per_buyer[b];
    }

    auto problems = spec_problems(sc.spec);
    if (!problems.empty()) {
        std::ostringstream os;
        os << "scenario: market is unusable:";
        for (const auto& p : problems) os << " [" << p << "]";
        throw std::runtime_error(os.str());
    }
    auto validity = check_valid_endowments(sc.spec);
    if (!validity.ok()) {
        std::ostringstream os;
        os << "scenario: invalid endowments:";
        for (const auto& f : validity.failures()) os << " [" << f << "]";
        throw std::runtime_error(os.str());
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot read " + path);
    return load_scenario(in);
}

void save_scenario(std::ostream& out, const Scenario& sc) {
    Json j;
    j["kind"] = sc.kind;
    j["seed"] = sc.seed;
    j["epsilon"] = format_rational(sc.spec.epsilon);
    j["mode"] = sc.spec.mode == Mode::restricted ? "restricted" : "unrestricted";
    j["mechanism"] = rights_mechanism_name(sc.mechanism);
    if (sc.kind == "crisis") j["rounds"] = sc.rounds;

    Json sellers = Json::array();
    for (const auto& s : sc.spec.sellers) sellers.push_back({{"good", s.good}});
    j["sellers"] = sellers;

    Json buyers = Json::array();
    for (size_t i = 0; i < sc.spec.buyers.size(); ++i) {
        const auto& b = sc.spec.buyers[i];
        Json buyer;
        buyer["money"] = format_rational(b.money);
        buyer["claim"] = b.claim;
        buyer["rights"] = b.rights;
        buyer["alpha"] = format_rational(b.money_utility.alpha);
        if (!sc.willingness.empty())
            buyer["willingness"] = format_rational(sc.willingness[i]);
        Json marginals = Json::array();
        for (const auto& m : b.good_utility.marginals)
            marginals.push_back(format_rational(m));
        buyer["marginals"] = marginals;
        buyers.push_back(buyer);
    }
    j["buyers"] = buyers;
    out << j.dump(2) << '\n';
}

void save_scenario_file(const std::string& path, const Scenario& sc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("scenario: cannot write " + path);
    save_scenario(out, sc);
}

Scenario generate_scenario(const GenConfig& config) {
    if (config.min_buyers < 2 || config.max_buyers < config.min_buyers ||
        config.min_sellers < 1 || config.max_sellers < config.min_sellers ||
        config.max_volume < 2 || config.max_claim < 1)
        throw std::invalid_argument("generator: inconsistent size limits");

    std::uint64_t state = config.seed ^ 0xA02B'DBF7'BB3C'0A7ULL;
    auto draw = [&](int lo, int hi) {  // uniform over [lo, hi]
        return lo + (int)(splitmix64(state) % (std::uint64_t)(hi - lo + 1));
    };

    Scenario sc;
    sc.kind = config.kind;
    sc.seed = config.seed;
    sc.rounds = config.kind == "crisis" ? config.rounds : 1;
    sc.mechanism = config.mechanism;
    sc.spec.epsilon = config.epsilon;
    sc.spec.mode = config.mode;

    int n_sellers = draw(config.min_sellers, config.max_sellers);
    int n_buyers = draw(config.min_buyers, config.max_buyers);

    std::vector<int> claims(n_buyers);
    int claim_total = 0;
    for (auto& c : claims) {
        // the budget-war recovery arithmetic below needs claims <= 9 when
        // epsilon <= 1/10 (odd claims round the half-recovery down otherwise)
        c = config.budget_war ? draw(2, std::min(config.max_claim, 9))
                              : draw(1, config.max_claim);
        claim_total += c;
    }

    int volume;
    if (config.budget_war) {
        // supply covers every claim, so every mechanism assigns rights equal
        // to claims and no buyer ever bids on another buyer's couples: prices
        // stay at the opening level and a compensated buyer's round-on-round
        // recovery is exact integer arithmetic
        volume = claim_total + draw(0, 3);
    } else {
        int volume_floor = std::max(2, n_sellers);  // every seller offers something
        volume = draw(volume_floor, std::max(config.max_volume, volume_floor));
        while (claim_total < volume) {  // claims must cover the offered volume
            ++claims[(size_t)draw(0, n_buyers - 1)];
            ++claim_total;
        }
    }

    std::vector<int> goods(n_sellers, 1);
    for (int extra = volume - n_sellers; extra > 0; --extra)
        ++goods[(size_t)draw(0, n_sellers - 1)];
    for (int g : goods) sc.spec.sellers.push_back(SellerEndowment{g});

    ClaimsProblem problem;
    problem.volume = volume;
    problem.claims = claims;
    auto rights = distribute_rights(problem, config.mechanism);

    std::vector<long long> caps;  // willingness, budget-war only
    long long cap_total = 0;
    if (config.budget_war) {
        // rich buyers afford their whole claim at the opening price with
        // margin to spare; poor ones cannot enter at all until the proceeds
        // of their unused rights arrive in the next round's willingness;
        // force a mixed population
        std::vector<bool> rich(n_buyers);
        for (int b = 0; b < n_buyers; ++b) rich[(size_t)b] = draw(0, 1) == 1;
        if (std::all_of(rich.begin(), rich.end(), [](bool r) { return r; }))
            rich[0] = false;
        if (std::none_of(rich.begin(), rich.end(), [](bool r) { return r; }))
            rich[0] = true;
        for (int b = 0; b < n_buyers; ++b) {
            caps.push_back(rich[(size_t)b]
                               ? 3 * (long long)claims[(size_t)b] + draw(2, 10)
                               : 2);
            cap_total += caps.back();
        }
    }

    for (int b = 0; b < n_buyers; ++b) {
        BuyerEndowment buyer;
        buyer.claim = claims[(size_t)b];
        buyer.rights = rights.per_buyer[(size_t)b];

        Rat alpha = 1;
        if (!config.budget_war) {
            int pick = draw(0, 2);
            alpha = pick == 0 ? Rat(1) : pick == 1 ? Rat(1, 2) : Rat(2);
        }
        buyer.money_utility.alpha = alpha;

        std::vector<int> units;  // marginals in units of alpha/2
        long long unit_total = 0;
        if (config.budget_war) {
            // flat marginals far above any price the willingness caps can
            // reach, so utility never stops a purchase and the caps alone
            // decide the auction
            long long flat = 2000 * (cap_total + 10);
            for (int i = 0; i < buyer.claim; ++i)
                buyer.good_utility.marginals.push_back(Rat(flat));
            unit_total = 2 * flat * buyer.claim;  // 2*u(claim)/alpha
        } else {
            // sorted nonincreasing; the first `rights` draws sit strictly
            // above 2*alpha (>= 7 units), the rest at or below 3*alpha, so
            // sorting keeps the high prefix in front
            for (int i = 0; i < buyer.rights; ++i) units.push_back(draw(7, 18));
            for (int i = buyer.rights; i < buyer.claim; ++i) units.push_back(draw(1, 6));
            std::sort(units.begin(), units.end(), std::greater<int>());
            for (int u : units) {
                unit_total += u;
                buyer.good_utility.marginals.push_back(alpha * u / 2);
            }
        }

        // 2*u(claim)/alpha is exactly the unit total, so this floor makes
        // Money dominate Good from money/2 onward with room to spare
        long long floor = std::max<long long>(4 * buyer.rights, unit_total);
        buyer.money = Rat(floor + draw(1, 10));
        sc.spec.buyers.push_back(std::move(buyer));
    }
    for (long long cap : caps) sc.willingness.push_back(Rat(cap));

    auto problems = spec_problems(sc.spec);
    if (!problems.empty())
        throw std::logic_error("generator produced an unusable market: " + problems[0]);
    auto validity = check_valid_endowments(sc.spec);
    if (!validity.ok())
        throw std::logic_error("generator produced an invalid endowment: " +
                               validity.failures()[0]);
    return sc;
}

}  // namespace rmarket
