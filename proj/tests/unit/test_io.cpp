#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "mpsca/cases/example1d.hpp"
#include "mpsca/io.hpp"

using namespace mpsca;

TEST_CASE("format_real round-trips") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(2.0) == "2");
  for (double v : {1.0 / 3.0, 21.744455137, 1e-300, -7.25e12}) CHECK(std::stod(io::format_real(v)) == v);
}

TEST_CASE("trace CSV layout") {
  const auto ex = cases::build_example1d();
  SCAConfig cfg;
  cfg.max_iterations = 2;
  cfg.epsilon = 1e-12;
  const auto trace = cases::run_example1d(ex, 5.5, cfg);
  const std::string csv = io::trace_csv(trace);
  CHECK(csv.rfind("iter,objective,gap\n1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("\n2,") != std::string::npos);
}

TEST_CASE("config hash is stable and key-order independent") {
  const auto a = nlohmann::json::parse(R"({"epsilon": 1e-4, "max_iterations": 10})");
  const auto b = nlohmann::json::parse(R"({"max_iterations": 10, "epsilon": 1e-4})");
  CHECK(io::config_hash(a) == io::config_hash(b));
  CHECK(io::config_hash(a).size() == 16);
  CHECK(io::config_hash(a) != io::config_hash(nlohmann::json::parse(R"({"epsilon": 1e-5})")));
}

TEST_CASE("loaders reject unknown keys and bad values") {
  CHECK_THROWS_AS(io::sca_config_from_json(nlohmann::json::parse(R"({"epsilom": 1})")), InvalidArgument);
  CHECK_THROWS_AS(io::sca_config_from_json(nlohmann::json::parse(R"({"epsilon": -1})")), InvalidArgument);
  CHECK_THROWS_AS(io::sca_config_from_json(nlohmann::json::parse(R"({"epsilon": "x"})")), InvalidArgument);
  CHECK(io::sca_config_from_json(nlohmann::json::parse(R"({"epsilon": 0.5})")).epsilon == 0.5);

  CHECK_THROWS_AS(io::energy_config_from_json(nlohmann::json::parse(R"({"user": 3})")), InvalidArgument);
  CHECK_THROWS_AS(io::energy_config_from_json(nlohmann::json::parse(R"({"path_loss_base": "ln"})")),
                  InvalidArgument);
  const auto e = io::energy_config_from_json(nlohmann::json::parse(R"({"users": 3, "seed": 9})"));
  CHECK(e.users == 3);
  CHECK(e.gains == cases::make_energy_config(3, 9).gains);

  CHECK_THROWS_AS(io::quantum_config_from_json(nlohmann::json::parse(R"({"nodes": [[0, 0, 1], [1, 0]]})")),
                  InvalidArgument);
  const auto q = io::quantum_config_from_json(nlohmann::json::parse(R"({"nodes": [[0, 0], [1, 0]], "eta": 0.3})"));
  CHECK(q.nodes.size() == 2);
  CHECK(q.eta == 0.3);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "mpsca_io_test";
  std::filesystem::create_directories(dir);
  io::write_text(dir / "a.json", "{\"epsilon\": 0.25}");
  CHECK(io::read_json_file(dir / "a.json")["epsilon"] == 0.25);
  io::write_text(dir / "b.json", "{not json");
  CHECK_THROWS_AS(io::read_json_file(dir / "b.json"), InvalidArgument);
  CHECK_THROWS_AS(io::read_json_file(dir / "missing.json"), InvalidArgument);
  CHECK_THROWS_AS(io::write_text(dir / "no" / "such" / "dir.txt", "x"), InvalidArgument);
  std::filesystem::remove_all(dir);
}
