#pragma once

#include <iosfwd>
#include <string>

#include <rmarket/crisis.hpp>
#include <rmarket/frustration.hpp>
#include <rmarket/market.hpp>
#include <rmarket/oracle.hpp>

namespace rmarket {

// All writers emit deterministic bytes for a given input: keys in fixed
// order, rationals as "num/den" strings, no floats.

// Terminal prices and baskets only — running a recorded trace through the
// replayer reproduces this file byte for byte.  Solver statistics go to their
// own file.
void write_solution_json(std::ostream& out, const Solution& solution);
Solution read_solution_json(std::istream& in);

void write_stats_json(std::ostream& out, const SolveStats& stats);

void write_verification_json(std::ostream& out, const VerificationReport& report);

void write_frustration_json(std::ostream& out, const FrustrationReport& report);
// "buyer,assigned,acquired,f,pf" — one row per buyer
void write_frustration_csv(std::ostream& out, const FrustrationReport& report);

// One JSON object per line per round: entering willingness, terminal prices,
// baskets, frustration and the rights proceeds carried to the next round.
void write_crisis_rounds_jsonl(std::ostream& out, const CrisisResult& result);
// "round,buyer,willingness,assigned,acquired,f,pf,rights_sold,rights_proceeds"
void write_crisis_rounds_csv(std::ostream& out, const CrisisResult& result);
void write_crisis_checks_json(std::ostream& out, const CrisisChecks& checks);

std::string solve_summary(const MarketSpec& spec, const Solution& solution,
                          const VerificationReport& verification,
                          const FrustrationReport& frustration);
std::string crisis_summary(const MarketSpec& spec, const CrisisResult& result,
                           const CrisisChecks& checks);

}  // namespace rmarket
