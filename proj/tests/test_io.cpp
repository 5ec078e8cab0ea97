#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/errors.hpp"
#include "ising/graph.hpp"
#include "ising/io.hpp"
#include "ising/rng.hpp"
#include "ising/tree.hpp"

using namespace ising;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "ising_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("io-formats") {

TEST_CASE("degree laws round-trip through JSON") {
  const std::vector<DegreeLaw> laws = {
      DegreeLaw::regular(3),
      DegreeLaw::poisson(3.0),
      DegreeLaw::power_law(2.5, 1, 10000),
      DegreeLaw::from_pmf({0.1, 0.4, 0.3, 0.2}),
  };
  for (const DegreeLaw& law : laws) {
    const json j = degree_law_to_json(law);
    const DegreeLaw back = degree_law_from_json(j);
    CHECK(std::abs(back.mean() - law.mean()) <= 1e-12);
    for (std::uint64_t k = 0; k <= 20; ++k)
      CHECK(std::abs(back.prob(k) - law.prob(k)) <= 1e-12);
    // heavier tail spot checks for the power law
    CHECK(std::abs(back.prob(512) - law.prob(512)) <= 1e-15);
  }
  const json jr = degree_law_to_json(DegreeLaw::regular(3));
  CHECK(jr.at("family") == "regular");
  CHECK(jr.at("k") == 3);
  CHECK_THROWS_AS(degree_law_from_json(json{{"family", "zeta"}}), Error);
}

TEST_CASE("hashing is canonical and matches known vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");

  json a;
  a["beta"] = 0.8;
  a["law"] = {{"family", "regular"}, {"k", 3}};
  a["seed"] = 42;
  json b;
  b["seed"] = 42;
  b["law"] = {{"k", 3}, {"family", "regular"}};
  b["beta"] = 0.8;
  CHECK(config_hash(a) == config_hash(b));  // insertion order is irrelevant

  json c = a;
  c["seed"] = 43;
  CHECK(config_hash(c) != config_hash(a));  // any value change shows up

  // the hash is FNV-1a of the sorted-key serialization
  CHECK(config_hash(json{{"x", 1}}) == fnv1a_hex(json{{"x", 1}}.dump()));
}

TEST_CASE("doubles survive text form bit-for-bit") {
  const std::vector<double> xs = {0.0,
                                  1.0 / 3.0,
                                  -0.1234567890123456789,
                                  1e-300,
                                  6.02214076e23,
                                  std::nextafter(1.0, 2.0),
                                  1.406959290267446};
  for (double x : xs) {
    const double back = std::stod(format_double(x));
    CHECK(back == x);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("JSON files round-trip") {
  const fs::path p = scratch_dir() / "config.json";
  json j;
  j["grid"] = {0.2, 0.4, 0.6};
  j["law"] = degree_law_to_json(DegreeLaw::poisson(2.5));
  j["note"] = "round trip";
  json_to_file(p.string(), j);
  CHECK(json_from_file(p.string()) == j);
  CHECK_THROWS_AS(json_from_file((scratch_dir() / "absent.json").string()),
                  Error);
}

TEST_CASE("edge lists round-trip, loops included") {
  Rng rng(21);
  const MultiGraph g = configuration_model(DegreeLaw::poisson(3.0), 50, rng);
  const fs::path p = scratch_dir() / "graph.txt";
  write_edge_list(p.string(), g);

  const std::string text = slurp(p);
  const std::string first = text.substr(0, text.find('\n'));
  CHECK(first == std::to_string(g.n) + " " + std::to_string(g.num_edges()));

  const MultiGraph back = read_edge_list(p.string());
  CHECK(back.n == g.n);
  REQUIRE(back.num_edges() == g.num_edges());
  CHECK(back.loops == g.loops);
  auto se = g.edges, sb = back.edges;
  std::sort(se.begin(), se.end());
  std::sort(sb.begin(), sb.end());
  CHECK(se == sb);
  CHECK(back.degree == g.degree);
  CHECK_THROWS_AS(read_edge_list((scratch_dir() / "absent.txt").string()),
                  Error);
}

TEST_CASE("population checkpoints round-trip, sentinel included") {
  FieldPopulation pop = make_population(6, 0.7, 0.25, Boundary::free_bc);
  pop.iteration = 17;
  pop.samples = {0.25, -1.0 / 3.0, 1e-9,
                 std::numeric_limits<double>::infinity(), 2.5,
                 0.1234567890123456789};
  const fs::path p = scratch_dir() / "pool.txt";
  json extra;
  extra["seed"] = 42;
  extra["law"] = degree_law_to_json(DegreeLaw::regular(2));
  write_population(p.string(), pop, extra);

  const PopulationFile back = read_population(p.string());
  CHECK(back.population.beta == 0.7);
  CHECK(back.population.B == 0.25);
  CHECK(back.population.iteration == 17);
  REQUIRE(back.population.size() == pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i)
    CHECK(back.population.samples[i] == pop.samples[i]);
  CHECK(back.header.at("seed") == 42);
  CHECK(back.header.at("size") == 6);
  CHECK(back.header.at("law").at("family") == "regular");
}

TEST_CASE("corrupt checkpoints are rejected") {
  const fs::path short_file = scratch_dir() / "short.txt";
  {
    std::ofstream out(short_file);
    out << "# {\"B\":0.2,\"beta\":0.5,\"iteration\":3,\"size\":10}\n";
    out << "0.1\n0.2\n0.3\n";
  }
  CHECK_THROWS_AS(read_population(short_file.string()), SizeMismatchError);

  const fs::path headerless = scratch_dir() / "headerless.txt";
  {
    std::ofstream out(headerless);
    out << "0.1\n0.2\n";
  }
  CHECK_THROWS_AS(read_population(headerless.string()), Error);
  CHECK_THROWS_AS(read_population((scratch_dir() / "absent.txt").string()),
                  Error);
}

}  // TEST_SUITE
