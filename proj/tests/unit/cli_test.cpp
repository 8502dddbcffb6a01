#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheeger/cli.hpp"
#include "cheeger/io.hpp"

using namespace cheeger;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cheeger");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "cheeger_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

// Tag balance and attribute quoting, enough to catch malformed output.
bool looks_well_formed(const std::string& svg) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while ((i = svg.find('<', i)) != std::string::npos) {
    const auto close = svg.find('>', i);
    if (close == std::string::npos) return false;
    const std::string tag = svg.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (count(tag, "\"") % 2 != 0) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    if (tag.back() == '/') continue;
    stack.push_back(tag.substr(0, tag.find_first_of(" \n\t")));
  }
  return stack.empty();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("angle expressions") {
    CHECK(cli::parse_angle("pi/2") == doctest::Approx(M_PI / 2));
    CHECK(cli::parse_angle("3*pi/4") == doctest::Approx(0.75 * M_PI));
    CHECK(cli::parse_angle("3pi/4") == doctest::Approx(0.75 * M_PI));
    CHECK(cli::parse_angle("0.656749*pi") == doctest::Approx(0.656749 * M_PI));
    CHECK(cli::parse_angle("2*pi") == doctest::Approx(2 * M_PI));
    CHECK(cli::parse_angle("1.25") == 1.25);
    CHECK(cli::parse_angle("3/4") == 0.75);
    CHECK_THROWS_AS(cli::parse_angle("bogus"), ValidationError);
    CHECK_THROWS_AS(cli::parse_angle("pi/0"), ValidationError);
    CHECK_THROWS_AS(cli::parse_angle(""), ValidationError);
  }

  TEST_CASE("rectangle with svg") {
    const fs::path svg = scratch() / "rect.svg";
    const auto r = invoke({"rect", "--a", "1", "--b", "3", "--svg", svg.string()});
    REQUIRE(r.code == cli::exit_ok);
    const json j = json::parse(r.out);
    CHECK(j["result"]["h"].get<double>() == doctest::Approx((4.0 + std::sqrt(4.0 + 3.0 * M_PI)) / 6.0).epsilon(1e-12));
    const std::string text = slurp(svg);
    CHECK(looks_well_formed(text));
    CHECK(count(text, "id=\"cheeger-set\"") == 1);
    CHECK(count(text, "fill=\"#d9d9d9\"") == 1);

    for (const char* solver : {"convex", "sweep"}) {
      const auto s = invoke({"rect", "--a", "1", "--b", "3", "--solver", solver});
      REQUIRE(s.code == cli::exit_ok);
      const json js = json::parse(s.out);
      CHECK(js["result"]["h"].get<double>() == doctest::Approx(j["result"]["h"].get<double>()).epsilon(1e-6));
      CHECK(js["result"]["k"].get<double>() == doctest::Approx(j["result"]["k"].get<double>()).epsilon(1e-5));
    }
  }

  TEST_CASE("sector table csv") {
    const fs::path csv = scratch() / "t1.csv";
    const auto r = invoke({"table1", "--csv", csv.string()});
    REQUIRE(r.code == cli::exit_ok);
    CHECK(json::parse(r.out)["all_within_tolerance"].get<bool>());
    std::istringstream lines(slurp(csv));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "alpha,label,h,k,reference_h,reference_k,within_tolerance");
    int rows = 0;
    while (std::getline(lines, line)) {
      ++rows;
      CHECK(line.substr(line.rfind(',') + 1) == "yes");
    }
    CHECK(rows == 7);
  }

  TEST_CASE("annulus strip from a curve file") {
    const fs::path curve = scratch() / "circle.json";
    std::ofstream(curve) << R"({"kind": "full-circle", "center": [0, 0], "radius": 2})";
    const fs::path svg = scratch() / "annulus.svg";
    const auto r = invoke({"strip", "--curve", curve.string(), "--halfwidth", "1", "--svg", svg.string()});
    REQUIRE(r.code == cli::exit_ok);
    const json j = json::parse(r.out);
    CHECK(j["result"]["h"].get<double>() == 1.0);
    const auto set = io::arc_polygon_from_json(j["result"]["cheeger_set"]);
    CHECK(set.holes().size() == 1);
    CHECK(set.area() == doctest::Approx(8.0 * M_PI).epsilon(1e-14));
    CHECK(looks_well_formed(slurp(svg)));
  }

  TEST_CASE("scans") {
    const auto rk = invoke({"scan", "--kind", "rect-k", "--grid", "100"});
    REQUIRE(rk.code == cli::exit_ok);
    const json rows = json::parse(rk.out)["rows"];
    REQUIRE(rows.size() == 100);
    CHECK(rows.back()["b"].get<double>() == doctest::Approx(1000.0));
    CHECK(std::abs(rows.back()["k"].get<double>() - M_PI / 2) < 2e-3);

    const auto hk = invoke({"scan", "--kind", "sector-hk", "--grid", "16", "--csv", "-"});
    REQUIRE(hk.code == cli::exit_ok);
    // alpha = 2 pi * 4 / 16 = pi/2 is the fourth row
    std::istringstream lines(hk.out);
    std::string line;
    for (int i = 0; i <= 4; ++i) std::getline(lines, line);
    double alpha = 0, h = 0, k = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &alpha, &h, &k) == 3);
    CHECK(alpha == doctest::Approx(M_PI / 2).epsilon(1e-5));
    CHECK(std::abs(h - 2.16358) < 5e-4);
    CHECK(std::abs(k - 1.82774) < 5e-4 * M_PI / 2);
  }

  TEST_CASE("bounds and certify") {
    const auto b = invoke({"bounds", "--h", "1", "--a", "1"});
    REQUIRE(b.code == cli::exit_ok);
    const json jb = json::parse(b.out);
    CHECK(jb["cheeger_bound"].get<double>() == doctest::Approx(0.25));
    CHECK(jb["stronger"] == "strip");

    const fs::path curve = scratch() / "circle2.json";
    std::ofstream(curve) << R"({"kind": "full-circle", "center": [0, 0], "radius": 2})";
    const auto c = invoke({"certify", "--curve", curve.string(), "--halfwidth", "1", "--grid", "64"});
    REQUIRE(c.code == cli::exit_ok);
    CHECK(json::parse(c.out)["report"]["passed"].get<bool>());
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"sector", "--alpha", "bogus"}).code == cli::exit_bad_input);
    CHECK(invoke({"sector", "--alpha", "7"}).code == cli::exit_bad_input);
    CHECK(invoke({"rect", "--a", "-1", "--b", "2"}).code == cli::exit_bad_input);
    CHECK(invoke({"rect", "--a", "1"}).code == cli::exit_bad_input);
    CHECK(invoke({"nonsense"}).code == cli::exit_bad_input);
    CHECK(invoke({"convex", "--polygon", (scratch() / "missing.json").string()}).code == cli::exit_bad_input);
    const fs::path garbage = scratch() / "garbage.json";
    std::ofstream(garbage) << "{ not json";
    CHECK(invoke({"convex", "--polygon", garbage.string()}).code == cli::exit_bad_input);

    // a sliver thinner than one pixel leaves an empty mask
    const fs::path sliver = scratch() / "sliver.json";
    std::ofstream(sliver) << "[[0, 0], [1, 0], [0.5, 0.0001]]";
    const auto fail = invoke({"sweep", "--polygon", sliver.string(), "--method", "grid", "--resolution", "8"});
    CHECK(fail.code == cli::exit_solver_failure);
    const json diag = json::parse(fail.out);
    CHECK(diag["status"] == "solver-failure");
    CHECK_FALSE(diag["error"].get<std::string>().empty());
  }

  TEST_CASE("outputs are deterministic") {
    const fs::path c1 = scratch() / "d1.csv";
    const fs::path c2 = scratch() / "d2.csv";
    const auto a = invoke({"sweep", "--alpha", "3*pi/2", "--n-coarse", "32", "--csv", c1.string()});
    const auto b = invoke({"sweep", "--alpha", "3*pi/2", "--n-coarse", "32", "--csv", c2.string()});
    REQUIRE(a.code == cli::exit_ok);
    CHECK(a.out == b.out);
    CHECK(slurp(c1) == slurp(c2));
  }

  TEST_CASE("json round trip") {
    const auto r = invoke({"sector", "--alpha", "3*pi/4"});
    REQUIRE(r.code == cli::exit_ok);
    const json j = json::parse(r.out);
    const auto back = io::cheeger_result_from_json(j["result"]);
    const json again = io::to_json(back);
    CHECK(again == j["result"]);
    CHECK(back.h == j["result"]["h"].get<double>());

    const auto sq = invoke({"rect", "--a", "1", "--b", "1", "--solver", "convex"});
    const json js = json::parse(sq.out)["result"];
    CHECK(io::to_json(io::cheeger_result_from_json(js)) == js);
  }

  TEST_CASE("svg without a cheeger set has no filled path") {
    std::ostringstream svg;
    io::write_svg(svg, io::arc_polygon_from_json(json::parse(invoke({"sweep", "--alpha", "pi"}).out)["domain"]), std::nullopt);
    CHECK(looks_well_formed(svg.str()));
    CHECK(count(svg.str(), "id=\"cheeger-set\"") == 0);
    CHECK(count(svg.str(), "fill=\"#d9d9d9\"") == 0);
  }
}
