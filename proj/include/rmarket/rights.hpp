#pragma once

#include <rmarket/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rmarket {

// Stage one of every market: an authority splits the offered volume into
// per-buyer Rights according to the declared claims.  Claims may exceed the
// offer (that is the interesting case); when total claims fall short, every
// buyer simply receives its claim and the remainder stays unissued.

struct ClaimsProblem {
    int volume = 0;               // units of Good on offer, >= 1
    std::vector<int> claims;      // nonnegative, at least one positive
};

struct RightsAllocation {
    std::vector<int> per_buyer;

    int total() const;
};

enum class RightsMechanism { proportional, constrained_equal_awards,
                             constrained_equal_losses, uniform };

std::optional<RightsMechanism> rights_mechanism_from_name(const std::string& name);
std::string rights_mechanism_name(RightsMechanism m);

// Throws std::invalid_argument on a malformed problem (nonpositive volume,
// negative claim, all claims zero).
RightsAllocation distribute_rights(const ClaimsProblem& problem, RightsMechanism mechanism);

}  // namespace rmarket
