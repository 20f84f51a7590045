#include "cuntzwalk/walk_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cuntz {

using nlohmann::json;

namespace {

std::string id_from_json(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError(std::string(what) + " ids must be strings or integers");
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<std::string> id_list(const json& doc, const char* key) {
  const json& arr = require(doc, key);
  if (!arr.is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(id_from_json(v, key));
  return out;
}

}  // namespace

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw InputError("complex value must be {\"re\", \"im\"} or a number");
  const json& re = require(j, "re");
  const json& im = require(j, "im");
  if (!re.is_number() || !im.is_number()) throw InputError("complex parts must be numbers");
  return {re.get<double>(), im.get<double>()};
}

LabeledWalk walk_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("walk document must be a JSON object");
  auto vertices = id_list(doc, "vertices");
  auto labels = id_list(doc, "labels");

  std::vector<EdgeSpec> edges;
  auto it = doc.find("edges");
  if (it != doc.end()) {
    if (!it->is_array()) throw InputError("\"edges\" must be an array");
    for (const auto& e : *it) {
      if (!e.is_object()) throw InputError("each edge must be an object");
      edges.push_back({id_from_json(require(e, "from"), "vertex"),
                       id_from_json(require(e, "label"), "label"),
                       id_from_json(require(e, "to"), "vertex"),
                       complex_from_json(require(e, "alpha"))});
    }
  }
  return LabeledWalk(std::move(vertices), std::move(labels), edges);
}

json walk_to_json(const LabeledWalk& walk) {
  json edges = json::array();
  for (const auto& e : walk.edges()) {
    edges.push_back({{"from", walk.vertex_id(e.from)},
                     {"label", walk.label_id(e.label)},
                     {"to", walk.vertex_id(e.to)},
                     {"alpha", complex_to_json(e.alpha)}});
  }
  return json{{"vertices", walk.vertex_ids()}, {"labels", walk.label_ids()}, {"edges", edges}};
}

LabeledWalk load_walk(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return walk_from_json(doc);
}

std::string save_walk(const LabeledWalk& walk) { return walk_to_json(walk).dump(2); }

LabeledWalk load_walk_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_walk(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_walk_file(const LabeledWalk& walk, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << save_walk(walk) << '\n';
}

}  // namespace cuntz
