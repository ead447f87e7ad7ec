#include "vrm/harness/reference.hpp"

#include <yaml-cpp/yaml.h>

#include "vrm/error.hpp"

namespace vrm::harness {

namespace detail {
extern const std::string_view reference_yaml;
}

namespace {

std::vector<double> doubles(const YAML::Node& n) {
  return n ? n.as<std::vector<double>>() : std::vector<double>{};
}

Quoted quoted(const YAML::Node& n) {
  Quoted q;
  q.value = n["value"].as<double>();
  if (n["energy"]) q.energy = n["energy"].as<double>();
  q.source = n["source"].as<std::string>("");
  return q;
}

std::map<std::string, Quoted> quoted_map(const YAML::Node& n) {
  std::map<std::string, Quoted> out;
  for (const auto& kv : n) out.emplace(kv.first.as<std::string>(), quoted(kv.second));
  return out;
}

}  // namespace

const std::vector<double>& ReferenceTable::column(std::string_view name) const {
  const auto it = columns.find(std::string(name));
  if (it == columns.end()) throw Error(id + ": no column " + std::string(name));
  return it->second;
}

const ReferenceTable& ReferenceData::table(std::string_view id) const {
  const auto it = tables.find(std::string(id));
  if (it == tables.end()) throw Error("unknown reference table '" + std::string(id) + "'");
  return it->second;
}

ReferenceData parse_reference(std::string_view yaml) {
  ReferenceData out;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw Error(std::string("reference data: ") + e.what());
  }
  try {
    for (const auto& kv : root) {
      const auto id = kv.first.as<std::string>();
      if (id == "figures") continue;
      const YAML::Node t = kv.second;
      ReferenceTable table;
      table.id = id;
      table.title = t["title"].as<std::string>();
      table.profile = t["profile"].as<std::string>();
      table.key = t["key"].as<std::string>();
      table.rows = doubles(t["rows"]);
      table.energies = doubles(t["energies"]);
      for (const auto& col : t["columns"]) {
        auto values = col.second.as<std::vector<double>>();
        if (values.size() != table.rows.size())
          throw Error("reference data: " + id + "." + col.first.as<std::string>() +
                      " has the wrong number of rows");
        table.columns.emplace(col.first.as<std::string>(), std::move(values));
      }
      out.tables.emplace(id, std::move(table));
    }
    const YAML::Node f = root["figures"];
    out.figures.crossing = quoted_map(f["crossing"]);
    out.figures.over_barrier_T = quoted_map(f["over_barrier_T"]);
    out.figures.bell_T_at_2 = quoted(f["bell_T_at_2"]);
    out.figures.eckart_peak = quoted(f["eckart_peak"]);
    for (const auto& kv : f["e_av_percent"]) {
      out.figures.e_av_percent.emplace(
          kv.first.as<std::string>(),
          Band{kv.second["min"].as<double>(), kv.second["max"].as<double>(),
               kv.second["source"].as<std::string>("")});
    }
  } catch (const YAML::Exception& e) {
    throw Error(std::string("reference data: ") + e.what());
  }
  return out;
}

const ReferenceData& reference_data() {
  static const ReferenceData data = parse_reference(detail::reference_yaml);
  return data;
}

}  // namespace vrm::harness
