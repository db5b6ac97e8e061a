#pragma once
// End-to-end extraction run: hierarchy pass (or cache load), node/fact
// scan, label resolution, dataset build and write, run report.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "wikisub/dataset.hpp"
#include "wikisub/dump_stream.hpp"
#include "wikisub/extraction.hpp"
#include "wikisub/hierarchy.hpp"

namespace wikisub {

enum class HierarchySource : std::uint8_t { dump, file };

struct RunConfig {
  DumpSource dump;
  EntityId topic;
  std::filesystem::path out_dir;
  HierarchySource hierarchy_source = HierarchySource::dump;
  std::filesystem::path hierarchy_cache;  // load source (file) or save target (dump)
  LabelsMode labels = LabelsMode::en_only;
  unsigned workers = 1;
  bool force = false;
};

struct OutputDirNotEmpty : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunReport {
  std::uint64_t closure_size = 0;
  std::uint64_t lines_read = 0;
  std::uint64_t entities_parsed = 0;
  SkipCounters skips;
  std::uint64_t nodes = 0;
  std::uint64_t facts = 0;
  std::uint64_t label_fallbacks = 0;
  bool label_pass_run = false;
  StatsReport stats;

  void print(std::ostream& os) const {
    os << "closure classes:  " << closure_size << "\n";
    os << "lines read:       " << lines_read << "\n";
    os << "entities parsed:  " << entities_parsed << "\n";
    for (std::size_t i = 0; i < skips.by_reason.size(); ++i)
      if (skips.by_reason[i])
        os << "skipped (" << skip_reason_name(static_cast<SkipReason>(i))
           << "): " << skips.by_reason[i] << "\n";
    os << "nodes found:      " << nodes << "\n";
    os << "facts found:      " << facts << "\n";
    os << "label pass:       " << (label_pass_run ? "run" : "skipped") << "\n";
    os << "label fallbacks:  " << label_fallbacks << "\n";
    os << "edges:            " << stats.edges << "\n";
    os << "attribute facts:  " << stats.attribute_facts << "\n";
  }
};

inline RunReport run_extract(const RunConfig& config) {
  namespace fs = std::filesystem;
  if (!config.force && fs::exists(config.out_dir) &&
      !fs::is_empty(config.out_dir))
    throw OutputDirNotEmpty("output directory is not empty: " +
                            config.out_dir.string() + " (use --force)");

  ClassClosure closure =
      config.hierarchy_source == HierarchySource::file
          ? load_closure_file(config.hierarchy_cache, config.topic)
          : compute_closure(config.topic,
                            collect_subclass_edges(config.dump, config.workers));
  if (config.hierarchy_source == HierarchySource::dump &&
      !config.hierarchy_cache.empty())
    save_closure_file(closure, config.hierarchy_cache);

  ScanResult scan = scan_dump(config.dump, closure, config.workers, config.labels);

  std::unordered_set<EntityId> needed_entities(scan.nodes.begin(),
                                               scan.nodes.end());
  std::unordered_set<PropertyId> needed_relations;
  for (const Fact& f : scan.facts) {
    needed_entities.insert(f.head);
    needed_entities.insert(f.tail);
    needed_relations.insert(f.relation);
  }
  LabelResolution resolution =
      resolve_labels(config.dump, needed_entities, needed_relations,
                     scan.labels, config.workers, config.labels);

  IndexedDataset ds =
      build_dataset(config.topic, scan.nodes, scan.facts, scan.labels);
  std::string topic_label = config.topic.str();
  if (auto it = scan.labels.entity_labels.find(config.topic);
      it != scan.labels.entity_labels.end())
    topic_label = it->second;
  write_dataset(ds, config.out_dir, topic_label);

  RunReport report;
  report.closure_size = closure.members.size();
  report.lines_read = scan.lines_read;
  report.entities_parsed = scan.entities_parsed;
  report.skips = scan.skips;
  report.nodes = scan.nodes.size();
  report.facts = scan.facts.size();
  report.label_fallbacks = resolution.fallbacks;
  report.label_pass_run = resolution.second_pass_run;
  report.stats = compute_stats(ds);

  std::ofstream log(config.out_dir / "run.log", std::ios::binary);
  report.print(log);
  return report;
}

}  // namespace wikisub
