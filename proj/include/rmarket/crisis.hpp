#pragma once

#include <string>
#include <vector>

#include <rmarket/auction.hpp>
#include <rmarket/frustration.hpp>
#include <rmarket/market.hpp>

namespace rmarket {

// A crisis is a sequence of Markets over a fixed population: supply, claims,
// Rights, utilities and Money stay constant, and each buyer carries a
// willingness to spend — the per-round cap on its net cash outflow inside the
// auction.  Under restricted trading the crisis is measurable: a buyer whose
// Rights went partly unused effectively sold them, earns their terminal value
// as proceeds, and is willing to spend that much more next round
// (m^{tau+1} = m^tau + z^tau).  Rights proceeds are spendable only from the
// following round — inside a round the unsold-Rights reserve already keeps
// them off the table.  Under unrestricted trading no proceeds carry over and
// the rounds are independent repeats.
struct CrisisConfig {
    int rounds = 1;
    SolverConfig solver;       // solver.willingness is ignored; see initial_willingness
    // Round-1 willingness per buyer; empty means every buyer is willing to
    // spend its entire Money endowment.
    std::vector<Rat> initial_willingness;
    bool keep_traces = false;  // traces are large; retain only when asked
};

struct CrisisRoundRecord {
    int round = 0;                      // 1-based
    std::vector<Rat> willingness;       // per-buyer cap entering the round
    Solution solution;
    FrustrationReport frustration;
    std::vector<long long> rights_sold;  // unused Rights, sold to the system
    std::vector<Rat> rights_proceeds;    // their value at the terminal price
    std::vector<TraceEvent> trace;       // empty unless keep_traces
};

struct CrisisResult {
    std::vector<CrisisRoundRecord> rounds;
};

// Runs config.rounds rounds of base.  The market's mode decides whether
// proceeds carry over (restricted) or not (unrestricted).  Throws
// std::invalid_argument if the endowments fail the validity conditions — the
// per-round guarantees are only meaningful for valid markets.
CrisisResult run_crisis(const MarketSpec& base, const CrisisConfig& config);

// The guarantees a measurable restricted crisis is expected to honour:
//   frustration_bounded    every buyer's frustration is at most 1/2 from the
//                           second round on
//   frustration_monotone   no buyer's frustration increases round-over-round
//   price_growth_bounded   the terminal couple price at most doubles per round
struct CrisisChecks {
    bool frustration_bounded = false;
    bool frustration_monotone = false;
    bool price_growth_bounded = false;
    std::string detail;

    bool ok() const {
        return frustration_bounded && frustration_monotone && price_growth_bounded;
    }
};

CrisisChecks check_crisis(const CrisisResult& result);

}  // namespace rmarket
