// End-to-end checks of the carnot-cut binary: record schemas, numeric
// values, determinism, and exit codes.

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + std::string(CARNOT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

// Strip the timestamp field for determinism comparisons.
std::string without_timestamp(std::string text) {
  const auto pos = text.find("\"timestamp\"");
  if (pos == std::string::npos) return text;
  const auto end = text.find('\n', pos);
  text.erase(pos, end - pos);
  return text;
}

void check_all_numbers_finite(const nlohmann::json& j) {
  if (j.is_number_float()) {
    CHECK(std::isfinite(j.get<double>()));
  } else if (j.is_object() || j.is_array()) {
    for (const auto& item : j) check_all_numbers_finite(item);
  }
}

}  // namespace

TEST_CASE("dist: center point via the formula branch") {
  const auto r = run_cli("dist 0 0 0 0 0 0.0795774715459477");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.output);
  CHECK(j["schema_version"] == 1);
  CHECK(j["result"]["method_used"] == "formula");
  CHECK(std::abs(j["result"]["distance"].get<double>() - 1.0) <= 1e-9);
  CHECK(std::abs(j["result"]["theta"].get<double>() - kPi) <= 1e-9);
  check_all_numbers_finite(j);
}

TEST_CASE("dist: straight segment via shooting") {
  const auto r = run_cli("dist 1 0 0 0 0 0");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.output);
  CHECK(j["result"]["method_used"] == "shooting");
  CHECK(std::abs(j["result"]["distance"].get<double>() - 1.0) <= 1e-8);
}

TEST_CASE("dist: cut-locus point reports theta = P_inv(1)") {
  const auto r = run_cli("dist 0 0 1 1 0 0 --model wedge");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.output);
  CHECK(j["result"]["method_used"] == "formula");
  // Independent bisection on the direct formulas for P(theta) = 1.
  auto P = [](double t) {
    const double S = std::sin(t) / t;
    const double U = (t - std::sin(t) * std::cos(t)) / (4 * t * t);
    const double V = (std::sin(t) - t * std::cos(t)) / (2 * t * t);
    return -(S / V) * std::sqrt((U - S * V) / U);
  };
  double lo = kPi + 1e-9, hi = 4.493409457909064 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (P(mid) > 1.0 ? hi : lo) = mid;
  }
  CHECK(std::abs(j["result"]["theta"].get<double>() - 0.5 * (lo + hi)) <= 1e-9);
}

TEST_CASE("dist: cross model coordinates") {
  // Cross t = (0, 0, 1) corresponds to wedge e1^e2.
  const auto r = run_cli("dist 0 0 1 0 0 1 --model cross");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.output);
  CHECK(j["result"]["method_used"] == "formula");

  const auto rw = run_cli("dist 0 0 1 1 0 0 --model wedge");
  CHECK(parse(rw.output)["result"]["distance"] == j["result"]["distance"]);
}

TEST_CASE("cut-time: planar, generic, and infinite cases") {
  const auto planar = parse(run_cli("cut-time 1 0 0 0 1 0 0 0 0 2").output);
  CHECK(std::abs(planar["result"]["cut_time"].get<double>() - kPi / 2.0) <= 1e-12);

  const auto generic = parse(run_cli("cut-time 1 0 0 0 1 0 0 0 1 1").output);
  const double tc = generic["result"]["cut_time"].get<double>();
  CHECK(tc > kPi);
  CHECK(tc < 4.493409457909064);
  CHECK(std::abs(generic["result"]["theta"].get<double>() - tc) <= 1e-12);  // phi = 1

  const auto straight = parse(run_cli("cut-time 0 0 0 0 0 0 0 0 1 0").output);
  CHECK(straight["result"]["cut_time"] == "infinite");

  const auto bad = run_cli("cut-time 1 0 0 2 0 0 0 0 0 1");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("geodesic: row count, monotone s, Heisenberg loop returns") {
  const auto r = run_cli("geodesic 1 0 0 0 1 0 0 0 0 3.141592653589793 --s-max 1 -n 11 --format csv");
  CHECK(r.exit_code == 0);
  // Count data rows and the monotone s column.
  int rows = 0;
  double prev_s = -1.0, last_x_norm = 0.0;
  size_t pos = r.output.find('\n') + 1;
  while (pos < r.output.size()) {
    const size_t end = r.output.find('\n', pos);
    if (end == std::string::npos) break;
    const std::string line = r.output.substr(pos, end - pos);
    double s, x1, x2, x3;
    sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x1, &x2, &x3);
    CHECK(s > prev_s);
    prev_s = s;
    last_x_norm = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
    ++rows;
    pos = end + 1;
  }
  CHECK(rows == 11);
  CHECK(last_x_norm <= 1e-12);

  // Degenerate s_max = 0: constant rows.
  const auto r0 = run_cli("geodesic 1 0 0 0 1 0 0 0 0 1 --s-max 0 -n 3 --format json");
  const auto j0 = parse(r0.output);
  REQUIRE(j0["rows"].size() == 3);
  for (const auto& row : j0["rows"]) CHECK(row["s"] == 0.0);

  CHECK(run_cli("geodesic 1 0 0 0 1 0 0 0 0 1 -n 1").exit_code == 2);
}

TEST_CASE("sphere: caps present and delta_r scaling") {
  const auto j1 = parse(run_cli("sphere -r 1 --n-theta 3 --format json").output);
  bool found = false;
  for (const auto& row : j1["rows"]) {
    if (row["at_cut_cap"].get<bool>() && row["mu"].get<double>() == 0.0) {
      const double t12 = row["t"][0].get<double>();
      const double x_norm = std::abs(row["x"][0].get<double>()) +
                            std::abs(row["x"][1].get<double>()) +
                            std::abs(row["x"][2].get<double>());
      if (x_norm <= 1e-12 && std::abs(t12 - 1.0 / (4.0 * kPi)) <= 1e-12) found = true;
    }
  }
  CHECK(found);

  const auto j2 = parse(run_cli("sphere -r 2 --n-theta 3 --format json").output);
  REQUIRE(j1["rows"].size() == j2["rows"].size());
  for (size_t i = 0; i < j1["rows"].size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(j2["rows"][i]["x"][c].get<double>() -
                     2.0 * j1["rows"][i]["x"][c].get<double>()) <= 1e-12);
      CHECK(std::abs(j2["rows"][i]["t"][c].get<double>() -
                     4.0 * j1["rows"][i]["t"][c].get<double>()) <= 1e-12);
    }
  }
}

TEST_CASE("verify: suites pass, unknown suite rejected") {
  const auto scalars = run_cli("verify scalars");
  CHECK(scalars.exit_code == 0);
  const auto js = parse(scalars.output);
  CHECK(js["failed"] == 0);
  CHECK(js["passed"].get<int>() >= 5);

  const auto oracle = run_cli("verify oracle --seed 7");
  CHECK(oracle.exit_code == 0);
  CHECK(parse(oracle.output)["failed"] == 0);

  const auto corner = run_cli("verify corner");
  CHECK(corner.exit_code == 0);

  CHECK(run_cli("verify bogus").exit_code == 2);
}

TEST_CASE("records are deterministic for fixed inputs and seed") {
  const std::string cmd = "dist 0.3 -0.2 0.9 0.5 0.1 -0.3 --seed 77";
  const auto a = run_cli(cmd);
  const auto b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(without_timestamp(a.output) == without_timestamp(b.output));

  // The thread cap must not change the reported result.
  const auto capped = run_cli("dist 0.3 -0.2 0.9 0.5 0.1 -0.3 --seed 77",
                              "CARNOT_CUT_THREADS=1 ");
  CHECK(without_timestamp(capped.output) == without_timestamp(a.output));

  const auto v1 = run_cli("verify oracle --seed 9");
  const auto v2 = run_cli("verify oracle --seed 9");
  CHECK(without_timestamp(v1.output) == without_timestamp(v2.output));
}

TEST_CASE("geodesic marks rows past the cut time") {
  // Planar case: cut at s = pi/phi = 1; sample beyond it.
  const auto r = run_cli(
      "geodesic 1 0 0 0 1 0 0 0 0 3.141592653589793 --s-max 1.4 -n 8 --format json");
  CHECK(r.exit_code == 0);
  const auto j = parse(r.output);
  bool saw_past = false, saw_pre = false;
  for (const auto& row : j["rows"]) {
    const bool past = row["past_cut"].get<bool>();
    if (row["s"].get<double>() > 1.0 + 1e-12)
      CHECK(past);
    else
      CHECK_FALSE(past);
    saw_past = saw_past || past;
    saw_pre = saw_pre || !past;
  }
  CHECK(saw_past);
  CHECK(saw_pre);
}

TEST_CASE("invalid inputs exit with code 2") {
  CHECK(run_cli("dist 0 0 0 0 0 0").exit_code == 2);
  CHECK(run_cli("dist 1 0 0 0 0 0 --model torus").exit_code == 2);
  CHECK(run_cli("dist 1 0 0").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("dist 0 0 1 0.5 0 0 --method formula --tol 1e-12").exit_code == 0);
  // Off the cut locus, the formula branch refuses.
  CHECK(run_cli("dist 1 0 0 1 0 0 --method formula").exit_code == 2);
}

TEST_CASE("solver non-convergence exits with code 3") {
  // An unreachable residual requirement makes every restart fail; the record
  // still reports the best residual with converged = false.
  const auto r = run_cli("dist 0.4 -1.1 0.2 0.8 -0.3 0.5 --solver-tol 1e-30");
  CHECK(r.exit_code == 3);
  const auto j = parse(r.output);
  CHECK_FALSE(j["result"]["converged"].get<bool>());
  CHECK(j["result"]["residual"].get<double>() > 0.0);
}
