#include "motifconv/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace motifconv {

using nlohmann::json;

namespace {

json graph_to_json_obj(const ArgGraph& g) {
  json nodes = json::array();
  for (int i = 0; i < g.node_count(); ++i)
    nodes.push_back({{"id", i}, {"attrs", g.node_attrs[i]}});
  json edges = json::array();
  for (const ArgEdge& e : g.edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"attrs", e.attrs}});
  json obj{{"nodes", nodes}, {"edges", edges}};
  if (g.center) obj["center"] = *g.center;
  if (g.label) obj["label"] = *g.label;
  return obj;
}

std::vector<double> parse_attrs(const json& rec, const std::string& where) {
  if (!rec.contains("attrs") || !rec["attrs"].is_array())
    throw std::runtime_error(where + ": missing or non-array 'attrs'");
  std::vector<double> attrs;
  attrs.reserve(rec["attrs"].size());
  for (const json& x : rec["attrs"]) {
    if (!x.is_number()) throw std::runtime_error(where + ": non-numeric attribute");
    attrs.push_back(x.get<double>());
  }
  return attrs;
}

int parse_int_field(const json& rec, const char* field, const std::string& where) {
  if (!rec.contains(field) || !rec[field].is_number_integer())
    throw std::runtime_error(where + ": missing or non-integer '" + field + "'");
  return rec[field].get<int>();
}

ArgGraph graph_from_json_obj(const json& obj) {
  if (!obj.is_object()) throw std::runtime_error("graph record is not a JSON object");
  if (!obj.contains("nodes") || !obj["nodes"].is_array())
    throw std::runtime_error("graph record: missing or non-array 'nodes'");
  if (!obj.contains("edges") || !obj["edges"].is_array())
    throw std::runtime_error("graph record: missing or non-array 'edges'");

  const std::size_t n = obj["nodes"].size();
  ArgGraph g;
  g.node_attrs.resize(n);
  std::vector<bool> filled(n, false);
  std::size_t idx = 0;
  for (const json& rec : obj["nodes"]) {
    const std::string where = "node record " + std::to_string(idx++);
    const int id = parse_int_field(rec, "id", where);
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw std::runtime_error(where + ": id " + std::to_string(id) + " not in [0," +
                               std::to_string(n) + ")");
    if (filled[id]) throw std::runtime_error(where + ": duplicate id " + std::to_string(id));
    filled[id] = true;
    g.node_attrs[id] = parse_attrs(rec, where);
  }

  idx = 0;
  for (const json& rec : obj["edges"]) {
    const std::string where = "edge record " + std::to_string(idx++);
    g.add_edge(parse_int_field(rec, "u", where), parse_int_field(rec, "v", where),
               parse_attrs(rec, where));
  }

  if (obj.contains("center")) g.center = obj["center"].get<int>();
  if (obj.contains("label")) g.label = obj["label"].get<int>();

  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid graph: ") + e.what());
  }
  return g;
}

}  // namespace

std::string graph_to_json(const ArgGraph& g) { return graph_to_json_obj(g).dump(); }

ArgGraph graph_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("JSON parse error: ") + e.what());
  }
  return graph_from_json_obj(obj);
}

void save_graph(const std::string& path, const ArgGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << graph_to_json(g) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

ArgGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return graph_from_json(buf.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_dataset(const std::string& path, const std::vector<ArgGraph>& graphs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const ArgGraph& g : graphs) out << graph_to_json(g) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ArgGraph> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ArgGraph> graphs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      graphs.push_back(graph_from_json(line));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return graphs;
}

}  // namespace motifconv
