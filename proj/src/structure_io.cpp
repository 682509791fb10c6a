#include "efeq/structure_io.hpp"

#include <fstream>

namespace efeq {

using nlohmann::json;

json structure_to_json(const FiniteStructure& s) {
  const Vocabulary& v = s.vocabulary();
  json vocab;
  vocab["predicates"] = json::array();
  for (const auto& p : v.predicates()) vocab["predicates"].push_back({{"name", p.name}, {"arity", p.arity}});
  vocab["functions"] = json::array();
  for (const auto& f : v.functions()) {
    json entry = {{"name", f.name}};
    if (f.domain) entry["domain"] = *f.domain;
    vocab["functions"].push_back(entry);
  }
  vocab["constants"] = v.constants();

  json relations = json::object();
  for (std::size_t p = 0; p < v.predicates().size(); ++p) {
    json tuples = json::array();
    for (const auto& t : s.relation(p)) tuples.push_back(t);
    relations[v.predicates()[p].name] = tuples;
  }
  json functions = json::object();
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    json graph = json::object();
    for (ElementId e = 0; e < s.size(); ++e) {
      if (auto value = s.apply(f, e)) graph[std::to_string(e)] = *value;
    }
    functions[v.functions()[f].name] = graph;
  }
  json constants = json::object();
  for (std::size_t c = 0; c < v.constants().size(); ++c) constants[v.constants()[c]] = s.constant(c);

  return {{"vocabulary", vocab},
          {"universe", s.size()},
          {"relations", relations},
          {"functions", functions},
          {"constants", constants}};
}

FiniteStructure structure_from_json(const json& j) {
  try {
    std::vector<PredicateSymbol> predicates;
    std::vector<FunctionSymbol> functions;
    std::vector<std::string> constants;
    const json& vocab = j.at("vocabulary");
    for (const auto& p : vocab.value("predicates", json::array())) {
      predicates.push_back({p.at("name").get<std::string>(), p.at("arity").get<int>()});
    }
    for (const auto& f : vocab.value("functions", json::array())) {
      FunctionSymbol sym{f.at("name").get<std::string>(), std::nullopt};
      if (f.contains("domain")) sym.domain = f.at("domain").get<std::string>();
      functions.push_back(std::move(sym));
    }
    for (const auto& c : vocab.value("constants", json::array())) constants.push_back(c.get<std::string>());

    StructureBuilder builder(Vocabulary(std::move(predicates), std::move(functions), std::move(constants)),
                             j.at("universe").get<int>());
    const json relations = j.value("relations", json::object());
    const json graphs = j.value("functions", json::object());
    const json consts = j.value("constants", json::object());
    for (const auto& [name, tuples] : relations.items()) {
      for (const auto& t : tuples) builder.add_tuple(name, t.get<std::vector<ElementId>>());
    }
    for (const auto& [name, graph] : graphs.items()) {
      for (const auto& [arg, value] : graph.items()) {
        builder.set_function(name, std::stoi(arg), value.get<ElementId>());
      }
    }
    for (const auto& [name, value] : consts.items()) {
      builder.set_constant(name, value.get<ElementId>());
    }
    return builder.build();
  } catch (const json::exception& e) {
    throw StructureError(std::string("malformed structure file: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw StructureError("malformed structure file: function argument is not an integer");
  }
}

FiniteStructure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw StructureError(path.string() + ": " + e.what());
  }
  return structure_from_json(j);
}

void save_structure(const FiniteStructure& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw StructureError("cannot write " + path.string());
  out << structure_to_json(s).dump(2) << '\n';
}

}  // namespace efeq
