#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wikisub/entity.hpp"
#include "wikisub/synthgen.hpp"

using namespace wikisub;

namespace {

EntityRecord as_record(const ParseOutcome& outcome) {
  REQUIRE(std::holds_alternative<EntityRecord>(outcome));
  return std::get<EntityRecord>(outcome);
}

SkipReason skip_reason(const ParseOutcome& outcome) {
  REQUIRE(std::holds_alternative<Skip>(outcome));
  return std::get<Skip>(outcome).reason;
}

}  // namespace

TEST_CASE("EntityId parsing and ordering") {
  CHECK(EntityId::parse("Q42")->num == 42);
  CHECK(EntityId{42}.str() == "Q42");
  CHECK_FALSE(EntityId::parse("Q042"));  // no leading zeros
  CHECK_FALSE(EntityId::parse("Q"));
  CHECK_FALSE(EntityId::parse("P42"));
  CHECK_FALSE(EntityId::parse("Q4x"));
  CHECK(EntityId{9} < EntityId{10});  // numeric, not lexicographic
  CHECK(PropertyId::parse("P279")->num == 279);
  CHECK_FALSE(PropertyId::parse("Q279"));
}

TEST_CASE("framing tokens") {
  CHECK(skip_reason(parse_entity_line("[")) == SkipReason::framing);
  CHECK(skip_reason(parse_entity_line("")) == SkipReason::framing);
  CHECK(std::holds_alternative<StreamEnd>(parse_entity_line("]")));
  CHECK(std::holds_alternative<StreamEnd>(parse_entity_line("]\n")));
}

TEST_CASE("minimal well-formed entity document") {
  const std::string line =
      R"({"type":"item","id":"Q42","labels":{"en":{"language":"en","value":"x"}},)"
      R"("claims":{"P31":[{"mainsnak":{"snaktype":"value","datavalue":)"
      R"({"type":"wikibase-entityid","value":{"entity-type":"item","numeric-id":5}}},)"
      R"("rank":"normal"}]}},)";
  const EntityRecord& rec = as_record(parse_entity_line(line));
  CHECK(rec.entity_id() == EntityId{42});
  CHECK_FALSE(rec.is_property);
  REQUIRE(rec.labels.size() == 1);
  CHECK(rec.labels.at("en") == "x");
  REQUIRE(rec.claims.size() == 1);
  CHECK(rec.claims[0] == Claim{PropertyId{31}, EntityId{5}, ClaimRank::normal});
}

TEST_CASE("non-entity datavalues are dropped") {
  const std::string line =
      R"({"type":"item","id":"Q1","claims":{"P569":[{"mainsnak":{"snaktype":"value",)"
      R"("datavalue":{"type":"time","value":{"time":"1952-03-11"}}},"rank":"normal"}]}})";
  CHECK(as_record(parse_entity_line(line)).claims.empty());
}

TEST_CASE("deprecated claims are retained but flagged") {
  const std::string line =
      R"({"type":"item","id":"Q1","claims":{"P31":[{"mainsnak":{"snaktype":"value",)"
      R"("datavalue":{"type":"wikibase-entityid","value":{"entity-type":"item",)"
      R"("numeric-id":5}}},"rank":"deprecated"}]}})";
  const EntityRecord& rec = as_record(parse_entity_line(line));
  REQUIRE(rec.claims.size() == 1);
  CHECK(rec.claims[0].rank == ClaimRank::deprecated);
}

TEST_CASE("skips with reason codes") {
  CHECK(skip_reason(parse_entity_line("not json at all")) == SkipReason::json_error);
  CHECK(skip_reason(parse_entity_line(R"({"type":"item","id":"Q1","redirect":{"to":"Q2"}})")) ==
        SkipReason::redirect);
  CHECK(skip_reason(parse_entity_line(R"({"type":"lexeme","id":"L1"})")) ==
        SkipReason::unsupported_type);
  CHECK(skip_reason(parse_entity_line(R"({"type":"item","id":"nope"})")) ==
        SkipReason::bad_id);
  CHECK(skip_reason(parse_entity_line(R"({"type":"item"})")) == SkipReason::bad_id);
  CHECK(skip_reason(parse_entity_line(R"([1,2,3])")) == SkipReason::json_error);
}

TEST_CASE("duplicate claims collapse") {
  const std::string snak =
      R"({"mainsnak":{"snaktype":"value","datavalue":{"type":"wikibase-entityid",)"
      R"("value":{"entity-type":"item","numeric-id":7}}},"rank":"normal"})";
  const std::string line =
      R"({"type":"item","id":"Q1","claims":{"P31":[)" + snak + "," + snak + "]}}";
  CHECK(as_record(parse_entity_line(line)).claims.size() == 1);
}

TEST_CASE("parsing is pure") {
  const std::string line = R"({"type":"item","id":"Q9","labels":{},"claims":{}},)";
  auto a = parse_entity_line(line);
  auto b = parse_entity_line(line);
  CHECK(as_record(a) == as_record(b));
}

TEST_CASE("generate-serialize-parse round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    EntityRecord rec;
    rec.is_property = rng() % 5 == 0;
    rec.id_num = 1 + rng() % 100000;
    if (rng() % 2) rec.labels.emplace("en", "label " + std::to_string(rng() % 50));
    if (rng() % 3 == 0) rec.labels.emplace("de", "etikett");
    std::size_t n_claims = rng() % 5;
    for (std::size_t i = 0; i < n_claims; ++i)
      rec.claims.push_back(Claim{PropertyId{1 + rng() % 40},
                                 EntityId{1 + rng() % 1000},
                                 static_cast<ClaimRank>(rng() % 3)});
    std::sort(rec.claims.begin(), rec.claims.end());
    rec.claims.erase(std::unique(rec.claims.begin(), rec.claims.end()),
                     rec.claims.end());

    auto outcome = parse_entity_line(serialize_record(rec) + ",");
    CHECK(as_record(outcome) == rec);
  }
}
