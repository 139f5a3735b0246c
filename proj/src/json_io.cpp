#include "genlimit/json_io.hpp"

#include <fstream>

#include "genlimit/error.hpp"

namespace genlimit {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::Schema, what); }

std::int64_t endpoint(const Json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kPosInf;
    if (s == "-inf") return kNegInf;
    schema("bad interval endpoint '" + s + "'");
  }
  if (!j.is_number_integer()) schema("interval endpoints must be integers or \"inf\"/\"-inf\"");
  auto v = j.get<std::int64_t>();
  if (v == kNegInf || v == kPosInf) schema("interval endpoint out of range");
  return v;
}

Json endpoint_json(std::int64_t v) {
  if (v == kPosInf) return "inf";
  if (v == kNegInf) return "-inf";
  return v;
}

AtomId atom_named(const AtomRegistry& registry, const std::string& name) {
  auto id = registry.find(name);
  if (!id) throw Error(ErrorCode::Registry, "unknown atom '" + name + "'");
  return *id;
}

std::set<std::uint64_t> index_set(const Json& j) {
  if (!j.is_array()) schema("atom index lists must be arrays");
  std::set<std::uint64_t> out;
  for (const auto& k : j) {
    if (!k.is_number_unsigned() && !(k.is_number_integer() && k.get<std::int64_t>() >= 0))
      schema("atom indices must be non-negative integers");
    out.insert(k.get<std::uint64_t>());
  }
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Schema, path.string() + ": " + e.what());
  }
}

SetExpr set_from_json(const Json& j, const RegistryPtr& registry) {
  if (!j.is_object()) schema("set body must be an object");
  std::vector<Interval> ivs;
  if (j.contains("intervals")) {
    if (!j["intervals"].is_array()) schema("'intervals' must be an array");
    for (const auto& iv : j["intervals"]) {
      if (!iv.is_array() || iv.size() != 2) schema("an interval is a two-element array");
      ivs.push_back({endpoint(iv[0]), endpoint(iv[1])});
      if (ivs.back().lo > ivs.back().hi) schema("interval with lo > hi");
    }
  }
  std::map<AtomId, AtomPart> atoms;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) schema("'atoms' must be an array");
    for (const auto& a : j["atoms"]) {
      if (a.is_string()) {
        atoms[atom_named(*registry, a.get<std::string>())] = AtomPart{};
      } else if (a.is_object() && a.contains("atom") && a["atom"].is_string()) {
        auto id = atom_named(*registry, a["atom"].get<std::string>());
        if (a.contains("indices"))
          atoms[id] = AtomPart{false, index_set(a["indices"])};
        else
          atoms[id] = AtomPart{true, a.contains("exclude") ? index_set(a["exclude"]) : std::set<std::uint64_t>{}};
      } else {
        schema("atom entries are names or {\"atom\":name,...} objects");
      }
    }
  }
  return SetExpr::from_parts(registry, std::move(ivs), std::move(atoms));
}

Json set_to_json(const SetExpr& s) {
  Json ivs = Json::array();
  for (const auto& iv : s.intervals()) ivs.push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
  Json atoms = Json::array();
  for (const auto& [id, part] : s.atom_parts()) {
    const auto& name = s.registry()->name(id);
    if (part.cofinite && part.indices.empty())
      atoms.push_back(name);
    else if (part.cofinite)
      atoms.push_back({{"atom", name}, {"exclude", part.indices}});
    else
      atoms.push_back({{"atom", name}, {"indices", part.indices}});
  }
  return {{"intervals", ivs}, {"atoms", atoms}};
}

Collection load_collection(const Json& doc) {
  if (!doc.is_object()) schema("collection document must be an object");
  std::vector<std::string> names;
  if (doc.contains("atoms")) {
    if (!doc["atoms"].is_array()) schema("'atoms' must be an array of names");
    for (const auto& a : doc["atoms"]) {
      if (!a.is_string()) schema("atom names must be strings");
      names.push_back(a.get<std::string>());
    }
  }
  auto registry = make_registry(std::move(names));

  LrtLimit limit;
  if (doc.contains("lrt_limit")) {
    const auto& l = doc["lrt_limit"];
    auto kind = l.value("kind", std::string{});
    if (kind == "finite") {
      if (!l.contains("c") || !l["c"].is_number_unsigned()) schema("finite lrt_limit needs non-negative 'c'");
      limit = {true, l["c"].get<std::uint64_t>()};
    } else if (kind != "divergent") {
      schema("lrt_limit kind must be 'finite' or 'divergent'");
    }
  }

  if (!doc.contains("languages") || !doc["languages"].is_array()) schema("missing 'languages' array");
  std::vector<Language> langs;
  for (const auto& l : doc["languages"]) {
    auto name = l.is_object() ? l.value("name", "L" + std::to_string(langs.size() + 1))
                              : std::string{};
    langs.push_back({name, set_from_json(l, registry)});
  }
  return Collection(registry, std::move(langs), limit);
}

Collection load_collection_file(const std::filesystem::path& path) {
  return load_collection(read_json_file(path));
}

Json collection_to_json(const Collection& c) {
  Json langs = Json::array();
  for (const auto& l : c.languages()) {
    auto j = set_to_json(l.set);
    j["name"] = l.name;
    langs.push_back(j);
  }
  Json limit = c.lrt_limit().finite ? Json{{"kind", "finite"}, {"c", c.lrt_limit().c}}
                                    : Json{{"kind", "divergent"}};
  return {{"atoms", c.registry()->names()}, {"lrt_limit", limit}, {"languages", langs}};
}

Token token_from_json(const Json& j, const AtomRegistry& registry) {
  if (j.is_number_integer()) return Token::integer(j.get<std::int64_t>());
  if (j.is_object() && j.contains("atom") && j["atom"].is_string() && j.contains("index") &&
      j["index"].is_number_unsigned())
    return Token::atom(atom_named(registry, j["atom"].get<std::string>()), j["index"].get<std::uint64_t>());
  schema("a token is an integer or {\"atom\":name,\"index\":k}");
}

Json token_to_json(const Token& t, const AtomRegistry& registry) {
  if (t.is_integer()) return t.value();
  return {{"atom", registry.name(t.atom_id())}, {"index", t.index()}};
}

}  // namespace genlimit
