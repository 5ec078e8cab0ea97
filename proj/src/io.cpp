#include "ising/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ising/errors.hpp"

namespace ising {

json degree_law_to_json(const DegreeLaw& law) {
  json j;
  j["family"] = family_name(law.family());
  switch (law.family()) {
    case DegreeFamily::regular:
      j["k"] = law.k_min();
      break;
    case DegreeFamily::poisson:
      j["lambda"] = law.lambda();
      j["k_max"] = law.k_max();
      break;
    case DegreeFamily::power_law:
      j["tau"] = law.tau();
      j["k_min"] = law.k_min();
      j["k_max"] = law.k_max();
      break;
    case DegreeFamily::empirical:
      j["pmf"] = law.pmf();
      break;
  }
  return j;
}

DegreeLaw degree_law_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "regular") return DegreeLaw::regular(j.at("k").get<std::uint32_t>());
  if (family == "poisson")
    return DegreeLaw::poisson(j.at("lambda").get<double>(),
                              j.value("k_max", std::uint32_t{0}));
  if (family == "power_law")
    return DegreeLaw::power_law(j.at("tau").get<double>(),
                                j.value("k_min", std::uint32_t{1}),
                                j.value("k_max", std::uint32_t{1000000}));
  if (family == "empirical")
    return DegreeLaw::from_pmf(j.at("pmf").get<std::vector<double>>());
  throw Error("degree_law_from_json: unknown family '" + family + "'");
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string config_hash(const json& config) { return fnv1a_hex(config.dump()); }

void json_to_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("write failed: " + path);
}

json json_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  json j;
  in >> j;
  return j;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_edge_list(const std::string& path, const MultiGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << g.n << " " << g.num_edges() << "\n";
  for (const auto& [u, v] : g.edges) out << u << " " << v << "\n";
  if (!out) throw Error("write failed: " + path);
}

MultiGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::uint32_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw Error("bad edge-list header in " + path);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::uint32_t u = 0, v = 0;
    if (!(in >> u >> v)) throw Error("truncated edge list in " + path);
    edges.emplace_back(u, v);
  }
  return MultiGraph::from_edges(n, std::move(edges));
}

void write_population(const std::string& path, const FieldPopulation& pop,
                      const json& header_extra) {
  json header = header_extra;
  header["beta"] = pop.beta;
  header["B"] = pop.B;
  header["iteration"] = pop.iteration;
  header["size"] = pop.size();
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# " << header.dump() << "\n";
  for (double h : pop.samples) out << format_double(h) << "\n";
  if (!out) throw Error("write failed: " + path);
}

PopulationFile read_population(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
    throw Error("missing checkpoint header in " + path);
  PopulationFile out;
  out.header = json::parse(line.substr(1));
  out.population.beta = out.header.at("beta").get<double>();
  out.population.B = out.header.at("B").get<double>();
  out.population.iteration = out.header.at("iteration").get<std::uint32_t>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "inf")
      out.population.samples.push_back(std::numeric_limits<double>::infinity());
    else
      out.population.samples.push_back(std::stod(line));
  }
  if (out.header.contains("size") &&
      out.header.at("size").get<std::size_t>() != out.population.size())
    throw SizeMismatchError("checkpoint sample count differs from its header");
  return out;
}

}  // namespace ising
