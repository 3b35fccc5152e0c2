#include <doctest.h>

#include <rmarket/rights.hpp>

#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace rmarket;

namespace {

std::vector<int> run(int volume, std::vector<int> claims, RightsMechanism m) {
    return distribute_rights(ClaimsProblem{volume, std::move(claims)}, m).per_buyer;
}

const RightsMechanism kAll[] = {
    RightsMechanism::proportional, RightsMechanism::constrained_equal_awards,
    RightsMechanism::constrained_equal_losses, RightsMechanism::uniform};

// Every claim vector of the given length with entries in [0, max_claim],
// excluding the all-zero vector.
void for_each_claims(int length, int max_claim,
                     const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> claims(length, 0);
    while (true) {
        if (std::accumulate(claims.begin(), claims.end(), 0) > 0) fn(claims);
        int i = 0;
        while (i < length && claims[i] == max_claim) claims[i++] = 0;
        if (i == length) break;
        ++claims[i];
    }
}

}  // namespace

TEST_CASE("proportional allocation uses quotas with largest-remainder completion") {
    CHECK(run(10, {5, 3, 2}, RightsMechanism::proportional) == std::vector<int>{5, 3, 2});
    // quotas (3.5, 3.5, 3): one leftover seat goes to the lowest tied index
    CHECK(run(10, {7, 7, 6}, RightsMechanism::proportional) == std::vector<int>{4, 3, 3});
    CHECK(run(5, {10, 0}, RightsMechanism::proportional) == std::vector<int>{5, 0});
}

TEST_CASE("constrained equal awards fills a water level then spills by index") {
    // level 2 places (2,2,1) = 5, the leftover unit goes to buyer 0
    CHECK(run(6, {4, 3, 1}, RightsMechanism::constrained_equal_awards) ==
          std::vector<int>{3, 2, 1});
    CHECK(run(9, {3, 3, 3}, RightsMechanism::constrained_equal_awards) ==
          std::vector<int>{3, 3, 3});
    CHECK(run(2, {5, 5}, RightsMechanism::constrained_equal_awards) ==
          std::vector<int>{1, 1});
}

TEST_CASE("constrained equal losses shaves a loss level then refunds by index") {
    CHECK(run(9, {3, 3, 3}, RightsMechanism::constrained_equal_losses) ==
          std::vector<int>{3, 3, 3});
    CHECK(run(2, {5, 5}, RightsMechanism::constrained_equal_losses) ==
          std::vector<int>{1, 1});
    // loss level 2 leaves (3,1) = 4 exactly
    CHECK(run(4, {5, 3}, RightsMechanism::constrained_equal_losses) ==
          std::vector<int>{3, 1});
}

TEST_CASE("uniform allocation deals single units round-robin") {
    CHECK(run(4, {9, 9}, RightsMechanism::uniform) == std::vector<int>{2, 2});
    CHECK(run(3, {9, 9}, RightsMechanism::uniform) == std::vector<int>{2, 1});
    CHECK(run(5, {1, 9}, RightsMechanism::uniform) == std::vector<int>{1, 4});
}

TEST_CASE("claims below the offer are granted in full, remainder unissued") {
    for (auto m : kAll) {
        CAPTURE(rights_mechanism_name(m));
        CHECK(run(12, {5, 3, 2}, m) == std::vector<int>{5, 3, 2});
    }
}

TEST_CASE("malformed problems are rejected") {
    CHECK_THROWS_AS(run(0, {1, 2}, RightsMechanism::proportional), std::invalid_argument);
    CHECK_THROWS_AS(run(-3, {1}, RightsMechanism::uniform), std::invalid_argument);
    CHECK_THROWS_AS(run(4, {1, -2}, RightsMechanism::constrained_equal_awards),
                    std::invalid_argument);
    CHECK_THROWS_AS(run(4, {0, 0}, RightsMechanism::constrained_equal_losses),
                    std::invalid_argument);
}

TEST_CASE("mechanism names round-trip") {
    for (auto m : kAll) {
        auto parsed = rights_mechanism_from_name(rights_mechanism_name(m));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == m);
    }
    // short aliases accepted on input; the long form stays canonical on output
    CHECK(rights_mechanism_from_name("cea") ==
          RightsMechanism::constrained_equal_awards);
    CHECK(rights_mechanism_from_name("cel") ==
          RightsMechanism::constrained_equal_losses);
    CHECK_FALSE(rights_mechanism_from_name("lottery").has_value());
}

TEST_CASE("feasibility: over-claimed volume is fully issued within the claims") {
    for (int volume = 1; volume <= 8; ++volume) {
        for_each_claims(3, 4, [&](const std::vector<int>& claims) {
            int claim_total = std::accumulate(claims.begin(), claims.end(), 0);
            for (auto m : kAll) {
                auto rights = run(volume, claims, m);
                REQUIRE(rights.size() == claims.size());
                int total = 0;
                for (size_t b = 0; b < rights.size(); ++b) {
                    REQUIRE(rights[b] >= 0);
                    REQUIRE(rights[b] <= claims[b]);
                    total += rights[b];
                }
                REQUIRE(total == std::min(volume, claim_total));
            }
        });
    }
}

TEST_CASE("equal treatment of equals: equal claims differ by at most one unit") {
    for (int volume = 1; volume <= 8; ++volume) {
        for_each_claims(3, 4, [&](const std::vector<int>& claims) {
            for (auto m : kAll) {
                auto rights = run(volume, claims, m);
                for (size_t a = 0; a < claims.size(); ++a)
                    for (size_t c = a + 1; c < claims.size(); ++c)
                        if (claims[a] == claims[c]) {
                            int gap = rights[a] - rights[c];
                            REQUIRE(gap >= 0);  // earlier index never trails
                            REQUIRE(gap <= 1);
                        }
            }
        });
    }
}

TEST_CASE("order preservation holds for proportional and equal-awards") {
    // strictly larger claims never receive less; equal claims are governed by
    // equal treatment instead (a one-unit leftover must land somewhere)
    const RightsMechanism preserving[] = {RightsMechanism::proportional,
                                          RightsMechanism::constrained_equal_awards};
    for (int volume = 1; volume <= 8; ++volume) {
        for_each_claims(3, 4, [&](const std::vector<int>& claims) {
            for (auto m : preserving) {
                auto rights = run(volume, claims, m);
                for (size_t a = 0; a < claims.size(); ++a)
                    for (size_t c = 0; c < claims.size(); ++c)
                        if (claims[a] > claims[c]) REQUIRE(rights[a] >= rights[c]);
            }
        });
    }
    // equal-losses sacrifices order preservation: the whole loss falls on the
    // large claims, and the leftover refund favours low indices
    CHECK(run(1, {1, 2, 2}, RightsMechanism::constrained_equal_losses) ==
          std::vector<int>{1, 0, 0});
}

TEST_CASE("allocation is deterministic") {
    for (auto m : kAll) {
        auto first = run(7, {6, 4, 3, 1}, m);
        for (int i = 0; i < 3; ++i) CHECK(run(7, {6, 4, 3, 1}, m) == first);
    }
}
