/// @file report_json.hpp
/// @brief JSON and CSV serialisation of diagnostic reports.
#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ns2d/asymptotics.hpp"
#include "ns2d/biot_savart.hpp"
#include "ns2d/classify.hpp"
#include "ns2d/evolution.hpp"
#include "ns2d/spectral_operator.hpp"

namespace ns2d {

void to_json(nlohmann::json& j, const Grid& g);
void to_json(nlohmann::json& j, const SimConfig& c);
void to_json(nlohmann::json& j, const MomentSet& m);
void to_json(nlohmann::json& j, const DecayFit& f);
void to_json(nlohmann::json& j, const TrajectoryRecord& r);
/// Entries as {pair, ratio, tolerance_flag}; NaN ratios become null.
void to_json(nlohmann::json& j, const HlsReport& r);
/// Summary only ({fitted_rate, bound, pass, ...}); rows go to write_sgestim_csv.
void to_json(nlohmann::json& j, const SgestimResult& r);
void to_json(nlohmann::json& j, const ConservationReport& r);
void to_json(nlohmann::json& j, const EnergyReport& r);
void to_json(nlohmann::json& j, const SecularReport& r);
void to_json(nlohmann::json& j, const VelocityIntegrabilityReport& r);
void to_json(nlohmann::json& j, const OptimalDecayReport& r);

const char* to_string(Classification c);

/// Columns m, n, tau, norm, member.
void write_sgestim_csv(const std::filesystem::path& path, const SgestimResult& r);
/// Appends a row (observable, tau_lo, tau_hi, rate, residual) to a CSV ledger, writing the header
/// when the file is new.
void append_decay_fit_csv(const std::filesystem::path& path, const std::string& observable, const DecayFit& fit);
/// Pretty-printed with a trailing newline; throws IoError on failure.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace ns2d
