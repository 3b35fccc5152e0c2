#include <rmarket/rights.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rmarket {

int RightsAllocation::total() const {
    return std::accumulate(per_buyer.begin(), per_buyer.end(), 0);
}

std::optional<RightsMechanism> rights_mechanism_from_name(const std::string& name) {
    if (name == "proportional") return RightsMechanism::proportional;
    if (name == "cea" || name == "constrained_equal_awards")
        return RightsMechanism::constrained_equal_awards;
    if (name == "cel" || name == "constrained_equal_losses")
        return RightsMechanism::constrained_equal_losses;
    if (name == "uniform") return RightsMechanism::uniform;
    return std::nullopt;
}

std::string rights_mechanism_name(RightsMechanism m) {
    switch (m) {
        case RightsMechanism::proportional: return "proportional";
        case RightsMechanism::constrained_equal_awards: return "constrained_equal_awards";
        case RightsMechanism::constrained_equal_losses: return "constrained_equal_losses";
        case RightsMechanism::uniform: return "uniform";
    }
    throw std::logic_error("unreachable");
}

namespace {

// Quotas volume*claim/total, floors first, then one extra unit per largest
// fractional remainder; ties go to the lowest index.
std::vector<int> proportional(int volume, const std::vector<int>& claims) {
    long long total_claims = std::accumulate(claims.begin(), claims.end(), 0LL);
    size_t n = claims.size();
    std::vector<int> out(n, 0);
    std::vector<Rat> remainder(n);
    long long assigned = 0;
    for (size_t i = 0; i < n; ++i) {
        Rat quota = Rat(volume) * claims[i] / Rat(total_claims);
        Int fl = rat_floor(quota);
        out[i] = fl.convert_to<int>();
        remainder[i] = quota - Rat(fl);
        assigned += out[i];
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return remainder[a] > remainder[b];  // stable: ties keep index order
    });
    for (size_t k = 0; k < n && assigned < volume; ++k, ++assigned) ++out[order[k]];
    return out;
}

// Awards min(claim, level) with the largest integer level that fits; the few
// leftover units go one each to buyers whose claim exceeds the level.
std::vector<int> constrained_equal_awards(int volume, const std::vector<int>& claims) {
    auto awarded_at = [&](long long level) {
        long long s = 0;
        for (int c : claims) s += std::min<long long>(c, level);
        return s;
    };
    long long lo = 0, hi = *std::max_element(claims.begin(), claims.end());
    while (lo < hi) {  // largest level with awarded_at(level) <= volume
        long long mid = (lo + hi + 1) / 2;
        if (awarded_at(mid) <= volume) lo = mid; else hi = mid - 1;
    }
    std::vector<int> out(claims.size());
    long long assigned = 0;
    for (size_t i = 0; i < claims.size(); ++i) {
        out[i] = (int)std::min<long long>(claims[i], lo);
        assigned += out[i];
    }
    // leftover units favour the largest still-unmet claims (order
    // preservation), ties by lowest index
    std::vector<size_t> order;
    for (size_t i = 0; i < claims.size(); ++i)
        if (claims[i] > lo) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return claims[a] > claims[b]; });
    for (size_t i = 0; i < order.size() && assigned < volume; ++i) {
        ++out[order[i]];
        ++assigned;
    }
    return out;
}

// Losses claim - award are equalized: award max(0, claim - level) with the
// smallest integer level that fits, leftovers one each by lowest index.
std::vector<int> constrained_equal_losses(int volume, const std::vector<int>& claims) {
    auto awarded_at = [&](long long level) {
        long long s = 0;
        for (int c : claims) s += std::max<long long>(0, c - level);
        return s;
    };
    long long lo = 0, hi = *std::max_element(claims.begin(), claims.end());
    while (lo < hi) {  // smallest level with awarded_at(level) <= volume
        long long mid = (lo + hi) / 2;
        if (awarded_at(mid) <= volume) hi = mid; else lo = mid + 1;
    }
    std::vector<int> out(claims.size());
    long long assigned = 0;
    for (size_t i = 0; i < claims.size(); ++i) {
        out[i] = (int)std::max<long long>(0, claims[i] - lo);
        assigned += out[i];
    }
    for (size_t i = 0; i < claims.size() && assigned < volume; ++i)
        if (out[i] < claims[i]) { ++out[i]; ++assigned; }
    return out;
}

// Single units round-robin, lowest index first, skipping exhausted claims.
std::vector<int> uniform(int volume, const std::vector<int>& claims) {
    std::vector<int> out(claims.size(), 0);
    long long assigned = 0;
    while (assigned < volume) {
        for (size_t i = 0; i < claims.size() && assigned < volume; ++i)
            if (out[i] < claims[i]) { ++out[i]; ++assigned; }
    }
    return out;
}

}  // namespace

RightsAllocation distribute_rights(const ClaimsProblem& problem, RightsMechanism mechanism) {
    if (problem.volume < 1)
        throw std::invalid_argument("rights: volume must be positive");
    if (problem.claims.empty())
        throw std::invalid_argument("rights: no claims");
    long long total_claims = 0;
    for (int c : problem.claims) {
        if (c < 0) throw std::invalid_argument("rights: negative claim");
        total_claims += c;
    }
    if (total_claims == 0)
        throw std::invalid_argument("rights: all claims are zero");

    RightsAllocation out;
    if (total_claims <= problem.volume) {
        // No scarcity: everyone gets exactly its claim, the rest is unissued.
        out.per_buyer.assign(problem.claims.begin(), problem.claims.end());
        return out;
    }
    switch (mechanism) {
        case RightsMechanism::proportional:
            out.per_buyer = proportional(problem.volume, problem.claims); break;
        case RightsMechanism::constrained_equal_awards:
            out.per_buyer = constrained_equal_awards(problem.volume, problem.claims); break;
        case RightsMechanism::constrained_equal_losses:
            out.per_buyer = constrained_equal_losses(problem.volume, problem.claims); break;
        case RightsMechanism::uniform:
            out.per_buyer = uniform(problem.volume, problem.claims); break;
    }
    return out;
}

}  // namespace rmarket
