#pragma once

// JSON documents: collections, group partitions, tokens and token lists.

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "genlimit/collection.hpp"
#include "genlimit/setalg.hpp"

namespace genlimit {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);

/// {"atoms":[...], "lrt_limit":{...}, "languages":[{"name","intervals","atoms"}]}
Collection load_collection(const Json& doc);
Collection load_collection_file(const std::filesystem::path& path);
Json collection_to_json(const Collection& c);

/// A set body: {"intervals":[[lo,hi],...], "atoms":["p1", {"atom":"p2","exclude":[0]}]}.
SetExpr set_from_json(const Json& j, const RegistryPtr& registry);
Json set_to_json(const SetExpr& s);

/// An integer, or {"atom": name, "index": k}.
Token token_from_json(const Json& j, const AtomRegistry& registry);
Json token_to_json(const Token& t, const AtomRegistry& registry);

}  // namespace genlimit
