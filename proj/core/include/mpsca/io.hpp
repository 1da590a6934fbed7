#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mpsca/cases/energy.hpp"
#include "mpsca/cases/quantum.hpp"
#include "mpsca/sca.hpp"

namespace mpsca::io {

/// 17 significant digits, '.' separator regardless of locale
std::string format_real(double value);

/// "iter,objective,gap\n" then one LF-terminated row per iteration.
std::string trace_csv(const SCATrace& trace);
void write_text(const std::filesystem::path& path, const std::string& text);

/// FNV-1a 64 of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Optional keys: epsilon, max_iterations, subsolver_tolerance,
/// subsolver_max_iterations. Unknown keys are rejected.
SCAConfig sca_config_from_json(const nlohmann::json& j, SCAConfig defaults = {});

/// Keys: users, seed, path_loss_base ("log10" | "log2"), noise_psd, b_max,
/// p_max, and optionally data_bits, gains, distances_m. Missing per-user
/// arrays are drawn from the seed.
cases::EnergyConfig energy_config_from_json(const nlohmann::json& j);

/// Keys: nodes ([[x, y], ...]), alpha, eta, beta.
cases::QuantumConfig quantum_config_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace mpsca::io
