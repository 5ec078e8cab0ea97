#pragma once

#include <string>

#include <json.hpp>

#include "ising/cavity.hpp"
#include "ising/degree_law.hpp"
#include "ising/graph.hpp"

namespace ising {

using json = nlohmann::json;

// Degree laws as JSON, e.g. {"family":"regular","k":3} or
// {"family":"power_law","tau":2.5,"k_min":1,"k_max":10000}; an empirical
// law round-trips through its pmf.
json degree_law_to_json(const DegreeLaw& law);
DegreeLaw degree_law_from_json(const json& j);

// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);
// Hash of the canonical (sorted-key) serialization; stamped into every
// output file so results can be traced back to the exact configuration.
std::string config_hash(const json& config);

void json_to_file(const std::string& path, const json& j);
json json_from_file(const std::string& path);

// Shortest decimal that round-trips the double (%.17g trimmed by parse).
std::string format_double(double x);

// Plain-text edge list: first line "n m", then m lines "u v".
void write_edge_list(const std::string& path, const MultiGraph& g);
MultiGraph read_edge_list(const std::string& path);

// Field-pool checkpoint: first line "# <json header>" carrying beta, B,
// law, iteration count and seed, then one field value per line ("inf" for
// the clamped sentinel).
void write_population(const std::string& path, const FieldPopulation& pop,
                      const json& header_extra);
struct PopulationFile {
  FieldPopulation population;
  json header;
};
PopulationFile read_population(const std::string& path);

}  // namespace ising
