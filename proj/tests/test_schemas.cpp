#include <catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace bsps;
using namespace bsps::testing;

namespace {

nlohmann::json schema(const std::string& name) { return nlohmann::json::parse(read_text_file(data_path("schemas/" + name))); }

template <class Doc>
void check_required(const nlohmann::json& s, const Doc& doc) {
  for (const auto& key : s["required"]) {
    INFO("key " << key);
    CHECK(doc.contains(key.template get<std::string>()));
  }
}

} // namespace

TEST_CASE("labeled CSV header matches the schema column order", "[schemas]") {
  const auto s = schema("labeled_csv.schema.json");
  std::string header;
  for (const auto& key : s["required"]) header += (header.empty() ? "" : ",") + key.get<std::string>();
  CHECK(header == kLabeledHeader);
  const auto categories = s["properties"]["category"]["enum"];
  CHECK(categories.get<std::vector<std::string>>() == category_labels());
}

TEST_CASE("eval report carries every required field", "[schemas]") {
  const auto s = schema("eval_report.schema.json");
  const auto doc = to_json(weighted_metrics(confusion({"a", "b"}, {"a", "b"}, {"a", "b"})));
  check_required(s, doc);
  check_required(s["properties"]["weighted"], doc["weighted"]);
  check_required(s["properties"]["per_class"]["additionalProperties"], doc["per_class"]["a"]);
}

TEST_CASE("manifest carries every required field", "[schemas]") {
  const auto s = schema("manifest.schema.json");
  const auto doc = to_json(RunManifest{});
  check_required(s, doc);
  for (const char* part : {"rules", "bins", "scale", "load_report"}) check_required(s["properties"][part], doc[part]);
}

TEST_CASE("lexicon schema lists exactly the accepted sections", "[schemas]") {
  const auto props = schema("lexicon.schema.json")["properties"];
  std::vector<std::string> keys;
  for (const auto& [k, v] : props.items()) keys.push_back(k);
  const auto doc = to_json(starter_lexicon().data());
  std::vector<std::string> emitted;
  for (const auto& [k, v] : doc.items()) emitted.push_back(k);
  std::sort(keys.begin(), keys.end());
  std::sort(emitted.begin(), emitted.end());
  CHECK(keys == emitted);
}
