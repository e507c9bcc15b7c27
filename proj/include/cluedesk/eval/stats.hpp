#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cluedesk::eval {

double mean(std::span<const double> xs);
// Population standard deviation (divides by n).
double population_sd(std::span<const double> xs);

// Mean-centred, divided by the population SD. All zeros when the SD is 0.
// Throws ContractError on an empty input.
std::vector<double> zscore(std::span<const double> xs);

using Responses = std::map<std::string, std::vector<double>>;

// Per participant. Throws ContractError for a participant without responses
// or a value outside [1,5].
Responses zscore_normalize(const Responses& responses);

// CSV with a header row and columns participant,value (extra columns ignored).
Responses parse_likert_csv(std::string_view csv);

} // namespace cluedesk::eval
