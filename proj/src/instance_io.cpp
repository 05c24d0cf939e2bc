// Copyright 2026 The ILDCC Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "ildcc/errors.hpp"
#include "ildcc/topology.hpp"
#include "json.hpp"

namespace ildcc {

namespace {

using nlohmann::json;

json coord_json(const GridSpec& spec, VertexId v) {
  const Coord c = spec.coord_of(v);
  return json::array({c.i, c.j, c.k});
}

VertexId coord_from_json(const GridSpec& spec, const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw IoError("vertex must be an [i, j, k] array");
  }
  return spec.id_of(Coord{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()});
}

}  // namespace

std::string instance_to_json(const GridInstance& inst) {
  json doc;
  doc["dims"] = inst.spec.dims;
  doc["cell_edge"] = inst.spec.cell_edge;
  doc["range_r"] = inst.range_r;
  json nodes = json::array();
  for (const Node& n : inst.nodes) {
    nodes.push_back({{"vertex", coord_json(inst.spec, n.vertex)},
                     {"role", std::string(to_string(n.role))}});
  }
  doc["nodes"] = std::move(nodes);
  json cands = json::array();
  for (VertexId c : inst.candidates) cands.push_back(coord_json(inst.spec, c));
  doc["candidates"] = std::move(cands);
  return doc.dump(2) + "\n";
}

GridInstance instance_from_json(std::string_view text) {
  GridInstance inst;
  try {
    const json doc = json::parse(text);
    inst.spec.dims = doc.at("dims").get<std::array<int, 3>>();
    inst.spec.cell_edge = doc.at("cell_edge").get<double>();
    inst.range_r = doc.at("range_r").get<double>();
    inst.spec.validate();
    for (const json& n : doc.at("nodes")) {
      inst.nodes.push_back(Node{coord_from_json(inst.spec, n.at("vertex")),
                                role_from_string(n.at("role").get<std::string>())});
    }
    if (doc.contains("candidates")) {
      for (const json& c : doc.at("candidates")) {
        inst.candidates.push_back(coord_from_json(inst.spec, c));
      }
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed instance document: ") + e.what());
  }
  inst.validate();
  return inst;
}

void save_instance(const GridInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << instance_to_json(inst);
  if (!out) throw IoError("write failed: " + path);
}

GridInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace ildcc
