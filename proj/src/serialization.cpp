#include "widthlab/serialization.hpp"

#include <fstream>

namespace widthlab {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() > 4)
    throw MalformedInput(path + ": expected an array of <= 4 floats");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw MalformedInput(path + "[" + std::to_string(i) + "]: expected a number");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

std::vector<Vec> vecs_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw MalformedInput(path + ": expected an array");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(vec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw MalformedInput(path + ": missing field \"" + key + "\"");
  return j[key];
}

}  // namespace

json complex_to_json(const SimplicialComplex& K) {
  json j;
  j["space"] = K.space.name();
  j["dim"] = K.dim;
  json verts = json::array();
  for (const Vec& v : K.vertices) verts.push_back(vec_to_json(v));
  j["vertices"] = std::move(verts);
  json simp = json::object();
  for (int k = 0; k <= K.dim; ++k) simp[std::to_string(k)] = K.simplices[k];
  j["simplices"] = std::move(simp);
  if (!K.marked_vertices.empty()) j["marked"] = K.marked_vertices;
  if (!K.top_lifts.empty()) {
    json lifts = json::array();
    for (const auto& lift : K.top_lifts) {
      json one = json::array();
      for (const Vec& v : lift) one.push_back(vec_to_json(v));
      lifts.push_back(std::move(one));
    }
    j["lifts"] = std::move(lifts);
  }
  return j;
}

ComplexPtr complex_from_json(const json& j) {
  const std::string root = "complex";
  ModelSpace space = ModelSpace::parse(
      need(j, "space", root).get<std::string>());
  int dim = need(j, "dim", root).get<int>();
  if (dim < 0 || dim > 3) throw MalformedInput(root + ".dim: out of range");
  std::vector<Vec> vertices = vecs_from_json(need(j, "vertices", root),
                                             root + ".vertices");
  const json& simp = need(j, "simplices", root);
  std::string topkey = std::to_string(dim);
  if (!simp.is_object() || !simp.contains(topkey))
    throw MalformedInput(root + ".simplices: missing top level \"" + topkey + "\"");
  std::vector<std::vector<int>> tops;
  try {
    tops = simp[topkey].get<std::vector<std::vector<int>>>();
  } catch (const json::exception&) {
    throw MalformedInput(root + ".simplices." + topkey + ": expected integer tuples");
  }
  for (size_t t = 0; t < tops.size(); ++t)
    for (int v : tops[t])
      if (v < 0 || static_cast<size_t>(v) >= vertices.size())
        throw MalformedInput(root + ".simplices." + topkey + "[" +
                             std::to_string(t) + "]: vertex index out of range");
  std::vector<std::vector<Vec>> lifts;
  if (j.contains("lifts")) {
    const json& jl = j["lifts"];
    if (!jl.is_array() || jl.size() != tops.size())
      throw MalformedInput(root + ".lifts: need one lift per top simplex");
    for (size_t t = 0; t < jl.size(); ++t)
      lifts.push_back(vecs_from_json(jl[t], root + ".lifts[" + std::to_string(t) + "]"));
  }
  std::vector<int> marked;
  if (j.contains("marked")) {
    try {
      marked = j["marked"].get<std::vector<int>>();
    } catch (const json::exception&) {
      throw MalformedInput(root + ".marked: expected integer indices");
    }
  }
  // make_complex regenerates the face closure and validate() re-checks every
  // structural invariant; lower-dimensional levels in the input are advisory.
  ComplexPtr K = make_complex(dim, space, std::move(vertices), std::move(tops),
                              std::move(lifts), std::move(marked));
  const json& lower = simp;
  for (int k = 0; k < dim; ++k) {
    std::string key = std::to_string(k);
    if (!lower.contains(key)) continue;
    auto given = lower[key].get<std::vector<std::vector<int>>>();
    if (given.size() != K->simplices[k].size())
      throw MalformedInput(root + ".simplices." + key +
                           ": inconsistent with the face closure");
  }
  return K;
}

json plmap_to_json(const PLMap& f) {
  json j;
  j["source"] = complex_to_json(*f.source);
  if (f.target_is_complex())
    j["target"] = complex_to_json(*f.target_complex);
  else
    j["target"] = "R^" + std::to_string(f.euclidean_target_dim);
  json im = json::array();
  for (const Vec& q : f.vertex_images) im.push_back(vec_to_json(q));
  j["images"] = std::move(im);
  j["id"] = f.id;
  return j;
}

PLMap plmap_from_json(const json& j) {
  const std::string root = "plmap";
  ComplexPtr source = complex_from_json(need(j, "source", root));
  std::vector<Vec> images = vecs_from_json(need(j, "images", root),
                                           root + ".images");
  const json& tgt = need(j, "target", root);
  PLMap f;
  if (tgt.is_string()) {
    std::string s = tgt.get<std::string>();
    if (s.rfind("R^", 0) != 0)
      throw MalformedInput(root + ".target: expected \"R^m\" or a complex");
    int m = 0;
    try {
      m = std::stoi(s.substr(2));
    } catch (const std::exception&) {
      throw MalformedInput(root + ".target: bad dimension in \"" + s + "\"");
    }
    f = make_pl_map(std::move(source), m, std::move(images));
  } else {
    f = make_pl_map(std::move(source), complex_from_json(tgt), std::move(images));
  }
  if (j.contains("id")) f.id = j["id"].get<std::string>();
  return f;
}

std::string event_log_lines(const std::vector<EventRecord>& events) {
  std::string out;
  for (const EventRecord& e : events) {
    json j;
    switch (e.kind) {
      case EventKind::PairCreated: j["kind"] = "pair-created"; break;
      case EventKind::PairAnnihilated: j["kind"] = "pair-annihilated"; break;
      case EventKind::VertexExchange: j["kind"] = "vertex-exchange"; break;
    }
    j["param"] = e.param;
    j["vertices"] = e.vertices;
    json par = json::object();
    for (const auto& [v, p] : e.parities) par[std::to_string(v)] = p;
    j["parities"] = std::move(par);
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
  return j;
}

}  // namespace

ComplexPtr complex_from_file(const std::string& path) {
  return complex_from_json(load_file(path));
}

PLMap plmap_from_file(const std::string& path) {
  return plmap_from_json(load_file(path));
}

}  // namespace widthlab
