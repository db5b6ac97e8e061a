// wikisub: extract topic-specific knowledge subgraphs from Wikidata
// entity dumps.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <json.hpp>

#include "wikisub/dataset_io.hpp"
#include "wikisub/oracle.hpp"
#include "wikisub/pipeline.hpp"
#include "wikisub/postprocess.hpp"
#include "wikisub/synthgen.hpp"

namespace fs = std::filesystem;
using namespace wikisub;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

const std::map<std::string, std::string> kPresets = {
    {"animals", "Q16521"},    // taxon
    {"companies", "Q4830453"},  // business
    {"countries", "Q6256"},   // country
    {"films", "Q11424"},      // film
    {"humans", "Q5"},         // human
};

int cmd_extract(const std::string& dump_path, const std::string& codec,
                std::size_t read_window, const std::string& topic_str,
                const std::string& preset, const std::string& out_dir,
                const std::string& hierarchy_source,
                const std::string& hierarchy_cache, const std::string& labels,
                unsigned workers, bool force) {
  RunConfig config;
  config.dump.path = dump_path;
  config.dump.codec = parse_codec(codec);
  config.dump.read_window_bytes = read_window;

  std::string topic = topic_str;
  if (!preset.empty()) {
    auto it = kPresets.find(preset);
    if (it == kPresets.end()) {
      std::cerr << "error: unknown preset '" << preset << "'\n";
      return kExitConfig;
    }
    topic = it->second;
  }
  auto topic_id = EntityId::parse(topic);
  if (!topic_id) {
    std::cerr << "error: --topic must be a QID like Q5 (got '" << topic << "')\n";
    return kExitConfig;
  }
  config.topic = *topic_id;
  config.out_dir = out_dir;
  config.hierarchy_source =
      hierarchy_source == "file" ? HierarchySource::file : HierarchySource::dump;
  config.hierarchy_cache = hierarchy_cache;
  if (config.hierarchy_source == HierarchySource::file &&
      config.hierarchy_cache.empty()) {
    std::cerr << "error: --hierarchy-source file requires --hierarchy-cache\n";
    return kExitConfig;
  }
  config.labels =
      labels == "en-fallback-any" ? LabelsMode::en_fallback_any : LabelsMode::en_only;
  config.workers = workers == 0 ? 1 : workers;
  config.force = force;

  RunReport report = run_extract(config);
  report.print(std::cerr);
  return 0;
}

int cmd_stats(const std::string& dir, std::size_t top_k) {
  IndexedDataset ds = read_dataset(dir);
  StatsReport s = compute_stats(ds);

  std::cout << "nodes: " << s.nodes << "\n"
            << "edges: " << s.edges << "\n"
            << "isolated_nodes: " << s.isolated_nodes << "\n"
            << "distinct_attributes: " << s.distinct_attributes << "\n"
            << "attribute_facts: " << s.attribute_facts << "\n"
            << "distinct_relations: " << s.distinct_relations << "\n"
            << "distinct_attribute_relations: " << s.distinct_attribute_relations
            << "\n";

  std::cout << "\ntop " << top_k << " edge types:\n";
  for (const auto& [label, count] : edge_type_distribution(ds, top_k))
    std::cout << "  " << label << "\t" << count << "\n";

  auto readme = read_readme(fs::path(dir) / "readme.txt");
  auto check = [&](const std::string& key, std::uint64_t recomputed) {
    if (readme.entries.count(key) && readme.count(key) != recomputed)
      std::cerr << "warning: readme.txt says " << key << " = "
                << readme.count(key) << " but files give " << recomputed << "\n";
  };
  check("nodes", s.nodes);
  check("edges", s.edges);
  check("isolated_nodes", s.isolated_nodes);
  check("distinct_attributes", s.distinct_attributes);
  check("attribute_facts", s.attribute_facts);
  check("distinct_relations", s.distinct_relations);
  check("distinct_attribute_relations", s.distinct_attribute_relations);
  return 0;
}

int cmd_filter_split(const std::string& dir, const std::string& out_dir_arg,
                     std::uint64_t min_degree, const std::string& degree_mode,
                     double fraction, std::uint64_t seed) {
  fs::path in_dir(dir);
  fs::path out_dir = out_dir_arg.empty() ? in_dir : fs::path(out_dir_arg);
  fs::create_directories(out_dir);

  auto edges = detail::read_fact_file(in_dir / "edges.txt");
  auto mode = degree_mode == "distinct-neighbors" ? DegreeMode::distinct_neighbors
                                                  : DegreeMode::incidences;
  auto kept = filter_min_degree(edges, min_degree, mode);
  if (kept.empty()) {
    std::cerr << "error: no edges survive the degree filter\n";
    return kExitInput;
  }
  EdgeSplit split = split_edges(kept, SplitSpec{fraction, seed});

  detail::write_fact_file(out_dir / "train.txt", split.train);
  detail::write_fact_file(out_dir / "test.txt", split.test);

  std::ifstream edges_file(in_dir / "edges.txt", std::ios::binary);
  std::string edges_bytes((std::istreambuf_iterator<char>(edges_file)),
                          std::istreambuf_iterator<char>());
  nlohmann::json manifest = {
      {"algorithm", std::string(kSplitAlgorithmId)},
      {"seed", seed},
      {"train_fraction", fraction},
      {"min_degree", min_degree},
      {"degree_mode",
       mode == DegreeMode::incidences ? "incidences" : "distinct-neighbors"},
      {"input_digest_fnv1a64", fnv1a_hex(edges_bytes)},
      {"edges_in", edges.size()},
      {"edges_kept", kept.size()},
      {"train", split.train.size()},
      {"test", split.test.size()},
  };
  std::ofstream mf(out_dir / "split.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";

  std::cerr << "kept " << kept.size() << "/" << edges.size() << " edges; train "
            << split.train.size() << ", test " << split.test.size() << "\n";
  return 0;
}

int cmd_synth(std::uint64_t seed, std::uint32_t classes, const std::string& shape,
              std::uint32_t instances, std::uint32_t offtopic,
              std::uint32_t facts_min, std::uint32_t facts_max, double en_rate,
              const std::string& out_path, const std::string& truth_path,
              const std::string& codec) {
  SynthSpec spec;
  spec.seed = seed;
  spec.n_classes = classes;
  if (shape == "chain") spec.shape = HierarchyShape::chain;
  else if (shape == "cyclic") spec.shape = HierarchyShape::dag_with_cycles;
  else spec.shape = HierarchyShape::tree;
  spec.n_instances = instances;
  spec.n_offtopic = offtopic;
  spec.facts_min = facts_min;
  spec.facts_max = facts_max;
  spec.english_label_rate = en_rate;

  SynthDump dump = generate_dump(spec);

  namespace io = boost::iostreams;
  std::ofstream raw(out_path, std::ios::binary);
  if (!raw) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitInput;
  }
  io::filtering_ostream out;
  Codec c = parse_codec(codec);
  if (c == Codec::bzip2) out.push(io::bzip2_compressor());
  else if (c == Codec::gzip) out.push(io::gzip_compressor());
  out.push(raw);
  out.write(dump.bytes.data(), static_cast<std::streamsize>(dump.bytes.size()));
  out.reset();  // flush filters before the file closes

  if (!truth_path.empty()) {
    std::ofstream tf(truth_path, std::ios::binary);
    tf << ground_truth_json(dump.truth).dump(2) << "\n";
  }
  std::cerr << "wrote " << dump.truth.line_count << " lines, "
            << dump.truth.nodes.size() << " nodes, topic "
            << dump.truth.topic.str() << "\n";
  return 0;
}

int cmd_oracle(const std::string& dump_path, const std::string& topic_str,
               bool fallback_any) {
  auto topic = EntityId::parse(topic_str);
  if (!topic) {
    std::cerr << "error: --topic must be a QID like Q5\n";
    return kExitConfig;
  }
  std::ifstream in(dump_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << dump_path << "\n";
    return kExitInput;
  }
  OracleResult res = oracle_extract(in, *topic, fallback_any);

  nlohmann::json j;
  j["closure_size"] = res.closure.size();
  j["nodes"] = res.stats.nodes;
  j["edges"] = res.stats.edges;
  j["isolated_nodes"] = res.stats.isolated_nodes;
  j["distinct_attributes"] = res.stats.distinct_attributes;
  j["attribute_facts"] = res.stats.attribute_facts;
  j["distinct_relations"] = res.stats.distinct_relations;
  j["distinct_attribute_relations"] = res.stats.distinct_attribute_relations;
  j["skipped_lines"] = res.skipped_lines;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic-specific knowledge subgraph extraction from Wikidata dumps"};
  app.require_subcommand(1);

  // --- extract ---
  std::string dump_path, codec = "auto", topic, preset, out_dir;
  std::string hierarchy_source = "dump", hierarchy_cache, labels = "en";
  std::size_t read_window = 64ull << 20;
  unsigned workers = 1;
  bool force = false;

  auto* extract = app.add_subcommand("extract", "Run the full extraction pipeline");
  extract->add_option("--dump", dump_path, "Path to the entity dump")->required();
  extract->add_option("--codec", codec, "auto|none|bz2|gz")
      ->check(CLI::IsMember({"auto", "none", "bz2", "gz"}));
  extract->add_option("--read-window", read_window, "Reader queue budget, bytes")
      ->envname("WIKISUB_READ_WINDOW");
  extract->add_option("--topic", topic, "Topic class QID, e.g. Q5");
  extract->add_option("--preset", preset,
                      "animals|companies|countries|films|humans");
  extract->add_option("--out", out_dir, "Output dataset directory")->required();
  extract->add_option("--hierarchy-source", hierarchy_source, "dump|file")
      ->check(CLI::IsMember({"dump", "file"}));
  extract->add_option("--hierarchy-cache", hierarchy_cache,
                      "Closure cache TSV (read with source=file, written with source=dump)");
  extract->add_option("--labels", labels, "en|en-fallback-any")
      ->check(CLI::IsMember({"en", "en-fallback-any"}));
  extract->add_option("--workers", workers, "Parse worker count")
      ->envname("WIKISUB_WORKERS");
  extract->add_flag("--force", force, "Allow writing into a non-empty directory");

  // --- stats ---
  std::string stats_dir;
  std::size_t top_k = 20;
  auto* stats = app.add_subcommand("stats", "Recompute dataset statistics from files");
  stats->add_option("dir", stats_dir, "Dataset directory")->required();
  stats->add_option("--top-k", top_k, "Edge-type distribution length");

  // --- filter-split ---
  std::string fsplit_dir, fsplit_out, degree_mode = "incidences";
  std::uint64_t min_degree = 5, split_seed = 0;
  double fraction = 0.8;
  auto* fsplit = app.add_subcommand(
      "filter-split", "Degree-filter edges and write a train/test split");
  fsplit->add_option("dir", fsplit_dir, "Dataset directory")->required();
  fsplit->add_option("--out", fsplit_out, "Output directory (default: dataset dir)");
  fsplit->add_option("--min-degree", min_degree, "Drop nodes below this degree");
  fsplit->add_option("--degree-mode", degree_mode, "incidences|distinct-neighbors")
      ->check(CLI::IsMember({"incidences", "distinct-neighbors"}));
  fsplit->add_option("--fraction", fraction, "Train fraction");
  fsplit->add_option("--seed", split_seed, "Split seed");

  // --- synth ---
  std::uint64_t synth_seed = 0;
  std::uint32_t classes = 5, instances = 50, offtopic = 50, facts_min = 1,
                facts_max = 4;
  double en_rate = 1.0;
  std::string shape = "tree", synth_out, truth_out, synth_codec = "none";
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dump with ground truth");
  synth->add_option("--seed", synth_seed);
  synth->add_option("--classes", classes);
  synth->add_option("--shape", shape)->check(CLI::IsMember({"chain", "tree", "cyclic"}));
  synth->add_option("--instances", instances);
  synth->add_option("--offtopic", offtopic);
  synth->add_option("--facts-min", facts_min);
  synth->add_option("--facts-max", facts_max);
  synth->add_option("--en-rate", en_rate);
  synth->add_option("--out", synth_out, "Dump output path")->required();
  synth->add_option("--truth", truth_out, "Ground-truth JSON sidecar path");
  synth->add_option("--codec", synth_codec)->check(CLI::IsMember({"none", "bz2", "gz"}));

  // --- oracle ---
  std::string oracle_dump, oracle_topic;
  bool oracle_fallback = false;
  auto* oracle = app.add_subcommand(
      "oracle", "Brute-force reference extraction (small dumps only)");
  oracle->add_option("--dump", oracle_dump)->required();
  oracle->add_option("--topic", oracle_topic)->required();
  oracle->add_flag("--labels-fallback-any", oracle_fallback);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (extract->parsed()) {
      if (topic.empty() == preset.empty()) {
        std::cerr << "error: give exactly one of --topic or --preset\n";
        return kExitConfig;
      }
      return cmd_extract(dump_path, codec, read_window, topic, preset, out_dir,
                         hierarchy_source, hierarchy_cache, labels, workers, force);
    }
    if (stats->parsed()) return cmd_stats(stats_dir, top_k);
    if (fsplit->parsed())
      return cmd_filter_split(fsplit_dir, fsplit_out, min_degree, degree_mode,
                              fraction, split_seed);
    if (synth->parsed())
      return cmd_synth(synth_seed, classes, shape, instances, offtopic, facts_min,
                       facts_max, en_rate, synth_out, truth_out, synth_codec);
    if (oracle->parsed()) return cmd_oracle(oracle_dump, oracle_topic, oracle_fallback);
  } catch (const OutputDirNotEmpty& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TopicMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MissingLabelError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
