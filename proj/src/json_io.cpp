#include "treeprop/json_io.hpp"

#include <fstream>
#include <map>
#include <set>

#include "treeprop/errors.hpp"

namespace treeprop {

namespace {

template <typename Err>
void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw Err(std::string(what) + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Err(std::string(what) + ": unknown key '" + k + "'");
  }
}

template <typename Err>
const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw Err(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

// Runs fn, turning nlohmann type errors into Err.
template <typename Err, typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Err(std::string(what) + ": " + e.what());
  }
}

Elem parse_id(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || v < 0) {
    throw MalformedStructure(std::string(what) + ": bad element id '" + s + "'");
  }
  return v;
}

TypeKind kind_from_string(const std::string& s) {
  if (s == "O") return TypeKind::obj();
  const Sort sort = sort_from_string(s);
  if (!sort.is_param()) throw MalformedStructure("instance: kind must be O or P<level>");
  return TypeKind::param(sort.level);
}

}  // namespace

json structure_to_json(const FinStructure& m) {
  json j;
  j["variant"] = to_string(m.signature().variant());
  j["levels"] = m.signature().levels();
  j["domain"] = m.domain();
  json sorts = json::object();
  for (const auto& [x, s] : m.sorts()) sorts[std::to_string(x)] = to_string(s);
  j["sort"] = sorts;
  json funs = json::object();
  for (const auto& [g, tab] : m.tables()) {
    json rows = json::array();
    for (const auto& [x, y] : tab) rows.push_back({x, y});
    funs[to_string(g)] = rows;
  }
  j["funs"] = funs;
  return j;
}

FinStructure structure_from_json(const json& j) {
  return guarded<MalformedStructure>("structure", [&] {
    only_keys<MalformedStructure>(j, {"variant", "levels", "domain", "sort", "funs"}, "structure");
    const Variant var = variant_from_string(need<MalformedStructure>(j, "variant", "structure").get<std::string>());
    auto levels = need<MalformedStructure>(j, "levels", "structure").get<std::vector<int>>();
    Signature sig;
    try {
      sig = Signature(var, levels);
    } catch (const PreconditionError& e) {
      throw MalformedStructure(std::string("structure: ") + e.what());
    }
    FinStructure m(sig);
    std::map<Elem, Sort> sorts;
    if (auto it = j.find("sort"); it != j.end()) {
      for (const auto& [k, v] : it->items()) sorts[parse_id(k, "structure")] = sort_from_string(v.get<std::string>());
    }
    std::set<Elem> dom;
    for (const auto& x : need<MalformedStructure>(j, "domain", "structure")) {
      const Elem e = x.get<Elem>();
      if (e < 0) throw MalformedStructure("structure: negative element id");
      if (!dom.insert(e).second) throw MalformedStructure("structure: duplicate element " + std::to_string(e));
      auto s = sorts.find(e);
      try {
        m.add(e, s == sorts.end() ? Sort::none() : s->second);
      } catch (const PreconditionError& err) {
        throw MalformedStructure(std::string("structure: ") + err.what());
      }
    }
    for (const auto& [x, s] : sorts) {
      if (!dom.count(x)) throw MalformedStructure("structure: sort given for " + std::to_string(x) + " outside the domain");
    }
    if (auto it = j.find("funs"); it != j.end()) {
      for (const auto& [name, rows] : it->items()) {
        const FunSym g = funsym_from_string(name);
        std::set<Elem> args;
        for (const auto& row : rows) {
          if (!row.is_array() || row.size() != 2) throw MalformedStructure("structure: table rows are [x, y] pairs");
          const Elem x = row[0].get<Elem>();
          if (!args.insert(x).second) {
            throw MalformedStructure("structure: " + name + " has two values at " + std::to_string(x));
          }
          m.set(g, x, row[1].get<Elem>());
        }
      }
    }
    return m;
  });
}

json coloring_to_json(const Coloring& c) {
  std::vector<std::size_t> count(static_cast<std::size_t>(c.theta()), 0);
  for (int v : c.raw()) ++count[static_cast<std::size_t>(v)];
  int def = 0;
  for (int v = 1; v < c.theta(); ++v) {
    if (count[static_cast<std::size_t>(v)] > count[static_cast<std::size_t>(def)]) def = v;
  }
  json pairs = json::array();
  for (int i = 0; i < c.n(); ++i) {
    for (int k = i + 1; k < c.n(); ++k) {
      if (c.at(i, k) != def) pairs.push_back({i, k, c.at(i, k)});
    }
  }
  return {{"n", c.n()}, {"theta", c.theta()}, {"default", def}, {"pairs", pairs}};
}

Coloring coloring_from_json(const json& j) {
  return guarded<MalformedStructure>("coloring", [&] {
    only_keys<MalformedStructure>(j, {"n", "theta", "default", "pairs"}, "coloring");
    const int n = need<MalformedStructure>(j, "n", "coloring").get<int>();
    const int theta = need<MalformedStructure>(j, "theta", "coloring").get<int>();
    const int def = j.value("default", 0);
    if (n < 0) throw MalformedStructure("coloring: negative n");
    Coloring c(n, theta, def);
    if (auto it = j.find("pairs"); it != j.end()) {
      for (const auto& row : *it) {
        if (!row.is_array() || row.size() != 3) throw MalformedStructure("coloring: pairs are [i, j, color]");
        const int a = row[0].get<int>();
        const int b = row[1].get<int>();
        if (a == b || a < 0 || b < 0 || a >= n || b >= n) {
          throw MalformedStructure("coloring: bad pair [" + std::to_string(a) + ", " + std::to_string(b) + "]");
        }
        c.set(a, b, row[2].get<int>());
      }
    }
    return c;
  });
}

json literal_to_json(const Literal& l) {
  return {{"shape", to_string(l.shape)}, {"indices", l.idx}, {"sign", l.positive ? "+" : "-"}};
}

Literal literal_from_json(const json& j) {
  return guarded<MalformedStructure>("literal", [&] {
    only_keys<MalformedStructure>(j, {"shape", "indices", "sign"}, "literal");
    Literal l;
    l.shape = lit_shape_from_string(need<MalformedStructure>(j, "shape", "literal").get<std::string>());
    l.idx = need<MalformedStructure>(j, "indices", "literal").get<std::vector<int>>();
    const std::string sign = j.value("sign", std::string("+"));
    if (sign != "+" && sign != "-") throw MalformedStructure("literal: sign must be + or -");
    l.positive = sign == "+";
    return l;
  });
}

json type_instance_to_json(const TypeInstance& t) {
  json lits = json::array();
  for (const auto& l : t.literals) lits.push_back(literal_to_json(l));
  return {{"kind", t.kind.object ? std::string("O") : to_string(Sort::param(t.kind.level))},
          {"level_set", t.levels},
          {"params", {{"structure", structure_to_json(t.ambient)}, {"tuple", t.params}}},
          {"literals", lits}};
}

TypeInstance type_instance_from_json(const json& j) {
  return guarded<MalformedStructure>("instance", [&] {
    only_keys<MalformedStructure>(j, {"kind", "level_set", "params", "literals"}, "instance");
    TypeInstance t;
    t.kind = kind_from_string(need<MalformedStructure>(j, "kind", "instance").get<std::string>());
    t.levels = need<MalformedStructure>(j, "level_set", "instance").get<std::vector<int>>();
    const json& params = need<MalformedStructure>(j, "params", "instance");
    only_keys<MalformedStructure>(params, {"structure", "tuple"}, "instance params");
    t.ambient = structure_from_json(need<MalformedStructure>(params, "structure", "instance params"));
    t.params = need<MalformedStructure>(params, "tuple", "instance params").get<std::vector<Elem>>();
    for (const auto& l : need<MalformedStructure>(j, "literals", "instance")) t.literals.push_back(literal_from_json(l));
    return t;
  });
}

json pattern_to_json(const Pattern& p, const json& structure_field) {
  json rows = json::array();
  for (const auto& r : p.rows) {
    json row = {{"shape", to_string(r.shape)}, {"levels", r.levels}, {"bound", r.bound}};
    if (r.shape != RowShape::General) row["level"] = r.level;
    if (r.shape == RowShape::FP) row["lo"] = r.lo;
    if (r.shape == RowShape::General) {
      row["kind"] = r.kind.object ? std::string("O") : to_string(Sort::param(r.kind.level));
      json lits = json::array();
      for (const auto& l : r.literals) lits.push_back(literal_to_json(l));
      row["literals"] = lits;
    }
    rows.push_back(row);
  }
  json params = json::object();
  for (const auto& [addr, tuple] : p.params) params[address_to_string(p, addr)] = tuple;
  return {{"kind", to_string(p.kind)}, {"height", p.height}, {"branching", p.branching},
          {"rows", rows},          {"params", params},      {"structure", structure_field}};
}

Pattern pattern_from_json(const json& j) {
  return guarded<MalformedPattern>("pattern", [&] {
    only_keys<MalformedPattern>(j, {"kind", "height", "branching", "rows", "params", "structure", "coloring"}, "pattern");
    Pattern p;
    p.kind = pattern_kind_from_string(need<MalformedPattern>(j, "kind", "pattern").get<std::string>());
    p.height = need<MalformedPattern>(j, "height", "pattern").get<int>();
    p.branching = need<MalformedPattern>(j, "branching", "pattern").get<int>();
    for (const auto& r : need<MalformedPattern>(j, "rows", "pattern")) {
      only_keys<MalformedPattern>(r, {"shape", "level", "lo", "levels", "bound", "kind", "literals"}, "pattern row");
      PatternRow row;
      row.shape = row_shape_from_string(need<MalformedPattern>(r, "shape", "pattern row").get<std::string>());
      row.levels = need<MalformedPattern>(r, "levels", "pattern row").get<std::vector<int>>();
      std::sort(row.levels.begin(), row.levels.end());
      row.bound = r.value("bound", 2);
      if (row.shape != RowShape::General) row.level = need<MalformedPattern>(r, "level", "pattern row").get<int>();
      if (row.shape == RowShape::FP) row.lo = need<MalformedPattern>(r, "lo", "pattern row").get<int>();
      if (row.shape == RowShape::General) {
        try {
          row.kind = kind_from_string(r.value("kind", std::string("O")));
          for (const auto& l : need<MalformedPattern>(r, "literals", "pattern row")) {
            row.literals.push_back(literal_from_json(l));
          }
        } catch (const MalformedStructure& e) {
          throw MalformedPattern(e.what());
        }
      }
      p.rows.push_back(std::move(row));
    }
    for (const auto& [k, v] : need<MalformedPattern>(j, "params", "pattern").items()) {
      p.params[address_from_string(p, k)] = v.get<std::vector<Elem>>();
    }
    return p;
  });
}

PatternFile load_pattern_file(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  const auto inline_or_file = [&](const json& v) {
    if (!v.is_string()) return v;
    auto ref = std::filesystem::path(v.get<std::string>());
    if (ref.is_relative()) ref = path.parent_path() / ref;
    return read_json_file(ref);
  };
  PatternFile out;
  out.pattern = pattern_from_json(j);
  out.m = structure_from_json(inline_or_file(need<MalformedPattern>(j, "structure", "pattern")));
  if (auto it = j.find("coloring"); it != j.end()) out.coloring = coloring_from_json(inline_or_file(*it));
  return out;
}

std::vector<std::vector<int>> sets_from_json(const json& j) {
  return guarded<PreconditionError>("sets", [&] {
    if (!j.is_array()) throw PreconditionError("sets: expected an array of arrays");
    return j.get<std::vector<std::vector<int>>>();
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace treeprop
