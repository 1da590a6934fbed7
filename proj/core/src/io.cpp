#include "mpsca/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace mpsca::io {
namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const char* what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw InvalidArgument(std::string(what) + ": unknown key '" + item.key() + "'");
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string s(buffer);
  // C locale aside, make sure the decimal separator is '.'
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

std::string trace_csv(const SCATrace& trace) {
  std::string out = "iter,objective,gap\n";
  for (const auto& it : trace.iterations)
    out += std::to_string(it.index) + ',' + format_real(it.objective) + ',' + format_real(it.gap) + '\n';
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw InvalidArgument("write failed for '" + path.string() + "'");
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

SCAConfig sca_config_from_json(const nlohmann::json& j, SCAConfig cfg) {
  reject_unknown(j, {"epsilon", "max_iterations", "subsolver_tolerance", "subsolver_max_iterations"},
                 "sca config");
  cfg.epsilon = get_or(j, "epsilon", cfg.epsilon);
  cfg.max_iterations = get_or(j, "max_iterations", cfg.max_iterations);
  cfg.subsolver_tolerance = get_or(j, "subsolver_tolerance", cfg.subsolver_tolerance);
  cfg.subsolver_max_iterations = get_or(j, "subsolver_max_iterations", cfg.subsolver_max_iterations);
  cfg.validate();
  return cfg;
}

cases::EnergyConfig energy_config_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"users", "seed", "path_loss_base", "noise_psd", "b_max", "p_max", "data_bits",
                     "gains", "distances_m"},
                 "energy config");
  const std::string base_name = get_or<std::string>(j, "path_loss_base", "log10");
  cases::PathLossBase base;
  if (base_name == "log10") {
    base = cases::PathLossBase::Log10;
  } else if (base_name == "log2") {
    base = cases::PathLossBase::Log2;
  } else {
    throw InvalidArgument("energy config: path_loss_base must be log10 or log2");
  }
  const int users = get_or(j, "users", 40);
  if (users < 1) throw InvalidArgument("energy config: users must be >= 1");
  cases::EnergyConfig cfg =
      cases::make_energy_config(users, get_or<std::uint64_t>(j, "seed", 1), base);
  cfg.noise_psd = get_or(j, "noise_psd", cfg.noise_psd);
  cfg.b_max = get_or(j, "b_max", cfg.b_max);
  cfg.p_max = get_or(j, "p_max", cfg.p_max);
  cfg.data_bits = get_or(j, "data_bits", cfg.data_bits);
  cfg.gains = get_or(j, "gains", cfg.gains);
  cfg.distances_m = get_or(j, "distances_m", cfg.distances_m);
  if (j.contains("gains") && !j.contains("distances_m")) cfg.distances_m.clear();
  cfg.validate();
  return cfg;
}

cases::QuantumConfig quantum_config_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"nodes", "alpha", "eta", "beta"}, "quantum config");
  cases::QuantumConfig cfg;
  for (const auto& p : get_or(j, "nodes", std::vector<std::vector<double>>{})) {
    if (p.size() != 2) throw InvalidArgument("quantum config: nodes must be [x, y] pairs");
    cfg.nodes.emplace_back(p[0], p[1]);
  }
  cfg.alpha = get_or(j, "alpha", cfg.alpha);
  cfg.eta = get_or(j, "eta", cfg.eta);
  cfg.beta = get_or(j, "beta", cfg.beta);
  cfg.validate();
  return cfg;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read config '" + path.string() + "'");
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("config '" + path.string() + "': " + e.what());
  }
}

}  // namespace mpsca::io
