#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "test_util.hpp"
#include "wikisub/dataset.hpp"
#include "wikisub/dataset_io.hpp"

using namespace wikisub;

namespace {

LabelTable labels_for(std::initializer_list<std::pair<std::uint64_t, const char*>> entities,
                      std::initializer_list<std::pair<std::uint64_t, const char*>> relations) {
  LabelTable t;
  for (auto [id, label] : entities) t.entity_labels.emplace(EntityId{id}, label);
  for (auto [id, label] : relations) t.relation_labels.emplace(PropertyId{id}, label);
  return t;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("spouse fact between two nodes is an edge") {
  // George Washington and Martha Washington both selected, spouse links them.
  std::unordered_set<EntityId> nodes{EntityId{23}, EntityId{191789}};
  std::vector<Fact> facts{{EntityId{23}, PropertyId{26}, EntityId{191789}}};
  auto ds = build_dataset(EntityId{5}, nodes, facts,
                          labels_for({{23, "George Washington"},
                                      {191789, "Martha Washington"}},
                                     {{26, "spouse"}}));
  CHECK(ds.edges.size() == 1);
  CHECK(ds.attributes.empty());
}

TEST_CASE("fact to an unselected tail is an attribute") {
  std::unordered_set<EntityId> nodes{EntityId{142}};  // France
  std::vector<Fact> facts{{EntityId{142}, PropertyId{38}, EntityId{4916}}};  // currency euro
  auto ds = build_dataset(EntityId{6256}, nodes, facts,
                          labels_for({{142, "France"}, {4916, "euro"}},
                                     {{38, "currency"}}));
  CHECK(ds.edges.empty());
  CHECK(ds.attributes.size() == 1);
  CHECK(ds.node_count == 1);
  CHECK(ds.entities.size() == 2);  // France + euro as attribute-only entity
}

TEST_CASE("isolated nodes are preserved") {
  std::unordered_set<EntityId> nodes{EntityId{1}, EntityId{2}, EntityId{3}};
  auto ds = build_dataset(EntityId{9}, nodes, {}, labels_for({{1, "a"}, {2, "b"}, {3, "c"}}, {}));
  CHECK(ds.node_count == 3);
  CHECK(ds.edges.empty());
  CHECK(ds.attributes.empty());
  CHECK(compute_stats(ds).isolated_nodes == 3);
}

TEST_CASE("index assignment follows ascending numeric id per segment") {
  std::unordered_set<EntityId> nodes{EntityId{30}, EntityId{7}};
  std::vector<Fact> facts{{EntityId{7}, PropertyId{10}, EntityId{100}},
                          {EntityId{30}, PropertyId{9}, EntityId{50}}};
  auto ds = build_dataset(
      EntityId{1}, nodes, facts,
      labels_for({{7, "n7"}, {30, "n30"}, {50, "a50"}, {100, "a100"}},
                 {{9, "r9"}, {10, "r10"}}));
  CHECK(ds.entities == std::vector<EntityId>{EntityId{7}, EntityId{30},
                                             EntityId{50}, EntityId{100}});
  CHECK(ds.relations == std::vector<PropertyId>{PropertyId{9}, PropertyId{10}});
  // Referential integrity: edge tails below node_count, attribute tails above.
  for (const auto& a : ds.attributes) {
    CHECK(a.head < ds.node_count);
    CHECK(a.tail >= ds.node_count);
  }
}

TEST_CASE("missing label is a pipeline bug") {
  std::unordered_set<EntityId> nodes{EntityId{1}};
  std::vector<Fact> facts{{EntityId{1}, PropertyId{2}, EntityId{3}}};
  CHECK_THROWS_AS(
      build_dataset(EntityId{9}, nodes, facts, labels_for({{1, "a"}}, {{2, "r"}})),
      MissingLabelError);
}

TEST_CASE("compute_stats definitions") {
  SECTION("empty dataset") {
    IndexedDataset ds;
    CHECK(compute_stats(ds) == StatsReport{});
  }
  SECTION("one edge among three nodes leaves one isolated") {
    std::unordered_set<EntityId> nodes{EntityId{1}, EntityId{2}, EntityId{3}};
    std::vector<Fact> facts{{EntityId{1}, PropertyId{4}, EntityId{2}}};
    auto ds = build_dataset(EntityId{9}, nodes, facts,
                            labels_for({{1, "a"}, {2, "b"}, {3, "c"}}, {{4, "r"}}));
    auto s = compute_stats(ds);
    CHECK(s.nodes == 3);
    CHECK(s.edges == 1);
    CHECK(s.isolated_nodes == 1);
    CHECK(s.distinct_attributes == 0);
  }
}

TEST_CASE("edge_type_distribution ordering") {
  std::unordered_set<EntityId> nodes{EntityId{1}, EntityId{2}, EntityId{3}};
  std::vector<Fact> facts{
      {EntityId{1}, PropertyId{26}, EntityId{2}},
      {EntityId{2}, PropertyId{26}, EntityId{3}},
      {EntityId{1}, PropertyId{40}, EntityId{3}},
      {EntityId{3}, PropertyId{22}, EntityId{1}},
  };
  auto ds = build_dataset(EntityId{9}, nodes, facts,
                          labels_for({{1, "a"}, {2, "b"}, {3, "c"}},
                                     {{22, "father"}, {26, "spouse"}, {40, "child"}}));
  auto dist = edge_type_distribution(ds, 0);
  REQUIRE(dist.size() == 3);
  CHECK(dist[0] == std::pair<std::string, std::uint64_t>{"spouse", 2});
  // Equal counts break ties by ascending numeric property id.
  CHECK(dist[1].first == "father");
  CHECK(dist[2].first == "child");
  CHECK(edge_type_distribution(ds, 1).size() == 1);

  std::uint64_t total = 0;
  for (const auto& [label, n] : dist) total += n;
  CHECK(total == compute_stats(ds).edges);
}

TEST_CASE("write_dataset file contracts") {
  std::unordered_set<EntityId> nodes{EntityId{1}, EntityId{2}};
  std::vector<Fact> facts{{EntityId{1}, PropertyId{7}, EntityId{2}},
                          {EntityId{2}, PropertyId{7}, EntityId{30}}};
  auto ds = build_dataset(EntityId{9}, nodes, facts,
                          labels_for({{1, "one"}, {2, "two\twith\ttabs"}, {30, "attr"}},
                                     {{7, "rel"}}));
  auto dir = testutil::temp_path("ds_out");
  std::filesystem::remove_all(dir);
  write_dataset(ds, dir, "topic label");

  CHECK(slurp(dir / "edges.txt") == "headEntity\ttailEntity\trelation\n0\t1\t0\n");
  CHECK(slurp(dir / "attributes.txt") ==
        "headEntity\ttailEntity\trelation\n1\t2\t0\n");
  // Labels with tabs are flattened to spaces.
  CHECK(slurp(dir / "entities.txt") ==
        "entityID\twikidataID\tlabel\n0\tQ1\tone\n1\tQ2\ttwo with tabs\n2\tQ30\tattr\n");
  CHECK(slurp(dir / "relations.txt") == "relationID\twikidataID\tlabel\n0\tP7\trel\n");

  // nodes.txt is exactly the first node_count rows of entities.txt.
  std::string entities = slurp(dir / "entities.txt");
  std::string nodes_txt = slurp(dir / "nodes.txt");
  CHECK(entities.rfind(nodes_txt.substr(nodes_txt.find('\n') + 1)) !=
        std::string::npos);
  CHECK(nodes_txt ==
        "entityID\twikidataID\tlabel\n0\tQ1\tone\n1\tQ2\ttwo with tabs\n");

  std::string readme = slurp(dir / "readme.txt");
  CHECK(readme.find("topic: topic label\n") != std::string::npos);
  CHECK(readme.find("topic_qid: Q9\n") != std::string::npos);
  CHECK(readme.find("nodes: 2\n") != std::string::npos);

  SECTION("writing twice is byte-identical") {
    auto dir2 = testutil::temp_path("ds_out2");
    std::filesystem::remove_all(dir2);
    write_dataset(ds, dir2, "topic label");
    for (const char* name : {"edges.txt", "attributes.txt", "entities.txt",
                             "nodes.txt", "relations.txt", "readme.txt"})
      CHECK(slurp(dir / name) == slurp(dir2 / name));
  }

  SECTION("read_dataset round trip supports stats recomputation") {
    auto back = read_dataset(dir);
    CHECK(back.node_count == ds.node_count);
    CHECK(back.entities == ds.entities);
    CHECK(back.relations == ds.relations);
    CHECK(back.edges == ds.edges);
    CHECK(back.attributes == ds.attributes);
    CHECK(compute_stats(back) == compute_stats(ds));
  }
}

TEST_CASE("partition property on synthetic data") {
  SynthSpec spec;
  spec.seed = 17;
  spec.n_instances = 200;
  spec.n_offtopic = 60;
  auto dump = generate_dump(spec);
  const auto& gt = dump.truth;

  std::unordered_set<EntityId> nodes(gt.nodes.begin(), gt.nodes.end());
  std::vector<Fact> facts;
  facts.insert(facts.end(), gt.edges.begin(), gt.edges.end());
  facts.insert(facts.end(), gt.attributes.begin(), gt.attributes.end());
  std::sort(facts.begin(), facts.end());

  LabelTable labels;
  for (EntityId n : nodes) labels.entity_labels.emplace(n, n.str());
  for (const Fact& f : facts) {
    labels.entity_labels.emplace(f.head, f.head.str());
    labels.entity_labels.emplace(f.tail, f.tail.str());
    labels.relation_labels.emplace(f.relation, f.relation.str());
  }
  auto ds = build_dataset(gt.topic, nodes, facts, labels);
  CHECK(ds.edges.size() + ds.attributes.size() == facts.size());
  CHECK(ds.edges.size() == gt.edges.size());
  CHECK(ds.attributes.size() == gt.attributes.size());
}
