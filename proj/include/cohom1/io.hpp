#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "cohom1/actions.hpp"
#include "cohom1/classify.hpp"
#include "cohom1/identities.hpp"
#include "cohom1/ode.hpp"
#include "cohom1/solver.hpp"

namespace cohom1 {

using Json = nlohmann::ordered_json;

Json to_json(const ActionDescriptor& action);
Json to_json(const BvpSpec& spec);
Json to_json(const HarmonicityVerdict& verdict);
Json to_json(const ShootingConfig& config, const BvpSpec& spec);
/// Solver metadata only; the samples go to CSV.
Json to_json(const SolutionProfile& profile);
Json to_json(const SweepPoint& point);
Json to_json(const IdentitySuiteReport& report);
Json to_json(const ResidualReport& report);

/// Finite values as numbers, non-finite ones as "inf", "-inf" or "nan".
Json number_or_string(double value);

/// Shortest decimal string that parses back to the same double.
std::string shortest_repr(double value);

/// CSV with header `t,r,rdot`, LF line endings, 17 significant digits.
void write_profile_csv(std::ostream& out, const std::vector<ProfileSample>& samples);
std::vector<ProfileSample> read_profile_csv(std::istream& in);

/// Column-aligned plain-text table of verdicts.
std::string format_verdicts_text(const std::vector<HarmonicityVerdict>& verdicts);

}  // namespace cohom1
