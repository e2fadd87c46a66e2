#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gdrb/analysis.hpp"
#include "gdrb/experiment.hpp"
#include "gdrb/rbsim.hpp"
#include "gdrb/superop.hpp"

namespace gdrb::io {

/// {"dim": d, "mat": [[row-major reals]]}; doubles survive the round trip
/// bit-for-bit (17 significant digits).
nlohmann::ordered_json superop_to_json(const SuperOp& c);
SuperOp superop_from_json(const nlohmann::json& j);

/// Parse the flat run-config JSON. Unknown keys anywhere are rejected.
ExperimentSpec parse_config(const nlohmann::json& j);
ExperimentSpec load_config(const std::string& path);

/// `m,mean,variance,num_sequences` with floats at 17 significant digits.
std::string dataset_to_csv(const DecayDataset& ds);
DecayDataset dataset_from_csv(const std::string& text);

/// `m,exact_mean`.
std::string brute_force_to_csv(const std::vector<std::pair<int, double>>& rows);

/// `m,prediction,bound`.
std::string theory_to_csv(const TheoryCurve& curve);

nlohmann::ordered_json fit_to_json(const FitResult& fit);
FitResult fit_from_json(const nlohmann::json& j);

std::string format_double(double x); ///< shortest 17-significant-digit form

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

} // namespace gdrb::io
