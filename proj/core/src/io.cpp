// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace amal::io {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const ordered_json& field(const ordered_json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

GroupPtr parse_group(const ordered_json& j, const std::string& where, const Budgets& budgets) {
  if (!j.is_object()) fail(where, "group must be an object");
  const std::string kind = field(j, "kind", where).get<std::string>();
  GroupPtr G;
  if (kind == "permutation") {
    const auto degree = field(j, "degree", where).get<std::int64_t>();
    if (degree < 1) fail(where, "degree must be positive");
    std::vector<Perm> gens;
    for (const auto& g : field(j, "generators", where)) {
      Perm p;
      for (const auto& v : g) p.push_back(v.get<std::uint32_t>());
      if (p.size() != static_cast<std::size_t>(degree))
        fail(where, "generator length disagrees with degree");
      if (!is_permutation(p)) fail(where, "generator is not a permutation");
      gens.push_back(std::move(p));
    }
    G = std::make_shared<const FiniteGroup>(
        FiniteGroup::from_generators(static_cast<std::size_t>(degree), gens, budgets));
  } else if (kind == "table") {
    std::vector<std::vector<Elt>> table;
    for (const auto& row : field(j, "table", where)) {
      std::vector<Elt> r;
      for (const auto& v : row) r.push_back(v.get<Elt>());
      table.push_back(std::move(r));
    }
    try {
      G = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table)));
    } catch (const ValidationError& e) {
      fail(where, e.what());
    }
  } else {
    fail(where, "unknown group kind \"" + kind + "\"");
  }
  if (j.contains("labels")) {
    std::vector<std::string> labels;
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
    auto owned = std::make_shared<FiniteGroup>(*G);
    try {
      owned->set_labels(std::move(labels));
    } catch (const ValidationError& e) {
      fail(where + ".labels", e.what());
    }
    G = owned;
  }
  return G;
}

Simplex parse_simplex(const ordered_json& j, const std::string& where) {
  Simplex s;
  if (!j.is_array() || j.empty()) fail(where, "simplex must be a non-empty array of vertices");
  for (const auto& v : j) s.push_back(v.get<int>());
  std::sort(s.begin(), s.end());
  return s;
}

// Serialized permutation groups are rebuilt by the parser with
// `from_generators`, whose BFS fixes the element indexing. To keep the
// index-based cover maps valid across a round trip, groups are emitted in a
// canonical indexing: generators chosen lexicographically from the element
// set, elements renumbered by the same BFS the parser will run.
struct GroupEncoding {
  ordered_json json;
  std::vector<Elt> to_new;  // original index -> serialized index
};

GroupEncoding encode_group(const FiniteGroup& G) {
  GroupEncoding enc;
  enc.to_new.resize(G.order());
  if (!G.has_perms()) {
    // Table groups keep their indexing verbatim.
    for (Elt a = 0; a < G.order(); ++a) enc.to_new[a] = a;
    enc.json["kind"] = "table";
    ordered_json rows = ordered_json::array();
    for (Elt a = 0; a < G.order(); ++a) {
      ordered_json row = ordered_json::array();
      for (Elt b = 0; b < G.order(); ++b) row.push_back(G.mul(a, b));
      rows.push_back(std::move(row));
    }
    enc.json["table"] = std::move(rows);
    if (G.labels()) enc.json["labels"] = *G.labels();
    return enc;
  }

  std::vector<Perm> sorted = G.perms();
  std::sort(sorted.begin(), sorted.end());

  std::vector<Perm> gens;
  std::unordered_map<Perm, Elt, PermHash> closure;
  std::vector<Perm> bfs{identity_perm(G.degree())};
  closure.emplace(bfs[0], 0);
  while (closure.size() < G.order()) {
    for (const Perm& p : sorted)
      if (!closure.count(p)) {
        gens.push_back(p);
        break;
      }
    // Re-run the parser's BFS with the extended generator list.
    closure.clear();
    bfs = {identity_perm(G.degree())};
    closure.emplace(bfs[0], 0);
    for (std::size_t head = 0; head < bfs.size(); ++head)
      for (const Perm& g : gens) {
        Perm p = perm_then(bfs[head], g);
        if (closure.emplace(p, static_cast<Elt>(bfs.size())).second) bfs.push_back(std::move(p));
      }
  }
  for (Elt a = 0; a < G.order(); ++a) enc.to_new[a] = closure.at(G.perm_of(a));

  enc.json["kind"] = "permutation";
  enc.json["degree"] = G.degree();
  ordered_json jgens = ordered_json::array();
  for (const Perm& g : gens) jgens.push_back(g);
  if (jgens.empty()) jgens.push_back(identity_perm(G.degree()));  // trivial group
  enc.json["generators"] = std::move(jgens);
  if (G.labels()) {
    std::vector<std::string> relabeled(G.order());
    for (Elt a = 0; a < G.order(); ++a) relabeled[enc.to_new[a]] = (*G.labels())[a];
    enc.json["labels"] = relabeled;
  }
  return enc;
}

}  // namespace

AmalgamPtr parse_amalgam(const std::string& json_text, const Budgets& budgets) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("input is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("amalgam file: top level must be an object");

  const ordered_json& jc = field(j, "complex", "amalgam file");
  const int n = field(jc, "vertices", "complex").get<int>();
  std::vector<Simplex> declared;
  for (const auto& s : field(jc, "simplices", "complex"))
    declared.push_back(parse_simplex(s, "complex.simplices"));
  ComplexPtr cx;
  try {
    cx = std::make_shared<const SimplicialComplex>(SimplicialComplex::build(n, declared));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("complex: ") + e.what());
  }

  std::map<std::string, GroupPtr> named;
  if (j.contains("named_groups")) {
    for (const auto& [name, jg] : j.at("named_groups").items())
      named[name] = parse_group(jg, "named_groups." + name, budgets);
  }

  const ordered_json& jg = field(j, "groups", "amalgam file");
  std::vector<GroupPtr> groups(cx->size());
  for (std::size_t s = 0; s < cx->size(); ++s) {
    const std::string key = simplex_name(cx->simplex(static_cast<int>(s)));
    auto it = jg.find(key);
    if (it == jg.end()) fail("groups", "missing group for simplex \"" + key + "\"");
    if (it->is_string()) {
      auto found = named.find(it->get<std::string>());
      if (found == named.end())
        fail("groups." + key, "unknown group name \"" + it->get<std::string>() + "\"");
      groups[s] = found->second;
    } else {
      groups[s] = parse_group(*it, "groups." + key, budgets);
    }
  }

  std::map<std::pair<int, int>, GroupHom> covers;
  for (const auto& jm : field(j, "maps", "amalgam file")) {
    const Simplex from = parse_simplex(field(jm, "from", "maps[]"), "maps[].from");
    const Simplex to = parse_simplex(field(jm, "to", "maps[]"), "maps[].to");
    const std::string where = "maps[{" + simplex_name(to) + "} <= {" + simplex_name(from) + "}]";
    if (!cx->contains(from) || !cx->contains(to)) fail(where, "not simplices of the complex");
    const int tau = cx->id_of(from);
    const int sigma = cx->id_of(to);
    GroupHom h;
    h.dom = groups[tau];
    h.cod = groups[sigma];
    for (const auto& v : field(jm, "map", where)) h.map.push_back(v.get<Elt>());
    if (h.map.size() != h.dom->order()) fail(where, "map length disagrees with the group order");
    for (Elt v : h.map)
      if (v >= h.cod->order()) fail(where, "map value out of range");
    covers[{sigma, tau}] = std::move(h);
  }

  return build_amalgam(cx, std::move(groups), std::move(covers));
}

AmalgamPtr read_amalgam_file(const std::string& path, const Budgets& budgets) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_amalgam(buf.str(), budgets);
}

std::string amalgam_to_json(const Amalgam& G, int indent) {
  const SimplicialComplex& X = *G.complex();
  ordered_json j;
  j["complex"]["vertices"] = X.n_vertices();
  ordered_json simplices = ordered_json::array();
  for (const Simplex& s : X.simplices()) simplices.push_back(s);
  j["complex"]["simplices"] = std::move(simplices);

  // Identical group objects are emitted once and referenced by name; every
  // map is rewritten into the canonical indexing of its endpoints.
  std::map<const FiniteGroup*, std::pair<std::string, GroupEncoding>> encodings;
  ordered_json named = ordered_json::object();
  ordered_json groups = ordered_json::object();
  for (std::size_t s = 0; s < X.size(); ++s) {
    const FiniteGroup* g = G.group(static_cast<int>(s)).get();
    auto it = encodings.find(g);
    if (it == encodings.end()) {
      const std::string name = "G" + std::to_string(encodings.size());
      it = encodings.emplace(g, std::make_pair(name, encode_group(*g))).first;
      named[name] = it->second.second.json;
    }
    groups[simplex_name(X.simplex(static_cast<int>(s)))] = it->second.first;
  }
  j["named_groups"] = std::move(named);
  j["groups"] = std::move(groups);

  ordered_json maps = ordered_json::array();
  for (const auto& [pair, h] : G.covers()) {
    const auto& dom_new = encodings.at(h.dom.get()).second.to_new;
    const auto& cod_new = encodings.at(h.cod.get()).second.to_new;
    std::vector<Elt> remapped(h.map.size());
    for (Elt x = 0; x < h.map.size(); ++x) remapped[dom_new[x]] = cod_new[h.map[x]];
    ordered_json jm;
    jm["from"] = X.simplex(pair.second);
    jm["to"] = X.simplex(pair.first);
    jm["map"] = remapped;
    maps.push_back(std::move(jm));
  }
  j["maps"] = std::move(maps);
  return j.dump(indent) + "\n";
}

void write_amalgam_file(const Amalgam& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << amalgam_to_json(G);
}

}  // namespace amal::io
