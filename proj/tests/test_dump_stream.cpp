#include <catch2/catch_amalgamated.hpp>

#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <filesystem>
#include <fstream>

#include "wikisub/dump_stream.hpp"
#include "wikisub/synthgen.hpp"

using namespace wikisub;
namespace fs = std::filesystem;
namespace io = boost::iostreams;

namespace {

fs::path temp_file(const std::string& name) {
  auto dir = fs::temp_directory_path() / "wikisub_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_bytes(const fs::path& path, const std::string& bytes, Codec codec) {
  std::ofstream raw(path, std::ios::binary);
  io::filtering_ostream out;
  if (codec == Codec::bzip2) out.push(io::bzip2_compressor());
  if (codec == Codec::gzip) out.push(io::gzip_compressor());
  out.push(raw);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> read_all(const DumpSource& src) {
  LineReader reader(src);
  std::vector<std::string> lines;
  std::string line;
  while (reader.next(line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("empty file yields nothing") {
  auto path = temp_file("empty.json");
  write_bytes(path, "", Codec::none);
  CHECK(read_all({path}).empty());
}

TEST_CASE("plain line splitting") {
  auto path = temp_file("three.json");
  write_bytes(path, "[\n{\"id\":\"Q1\"},\n]\n", Codec::none);
  auto lines = read_all({path});
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "[");
  CHECK(lines[1] == "{\"id\":\"Q1\"},");
  CHECK(lines[2] == "]");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(LineReader({fs::path("/no/such/file.json")}), NotFoundError);
}

TEST_CASE("codec invariance and auto-detection") {
  SynthSpec spec;
  spec.seed = 11;
  spec.n_instances = 40;
  spec.n_offtopic = 20;
  auto dump = generate_dump(spec);

  auto plain = temp_file("inv.json");
  auto bz2 = temp_file("inv.json.bz2");
  auto gz = temp_file("inv.json.gz");
  write_bytes(plain, dump.bytes, Codec::none);
  write_bytes(bz2, dump.bytes, Codec::bzip2);
  write_bytes(gz, dump.bytes, Codec::gzip);

  auto ref = read_all({plain});
  CHECK(read_all({bz2}) == ref);           // auto-detected from magic bytes
  CHECK(read_all({gz}) == ref);
  DumpSource forced{bz2};
  forced.codec = Codec::bzip2;
  CHECK(read_all(forced) == ref);          // manual override
}

TEST_CASE("synthetic bzip2 dump of 1000 entities yields framing plus entities") {
  SynthSpec spec;
  spec.seed = 3;
  spec.n_classes = 10;
  spec.n_instances = 600;
  spec.n_offtopic = 0;
  auto dump = generate_dump(spec);
  // line_count covers classes, off-topic classes, instances, property
  // docs and both framing lines; the generator reports it exactly.
  auto path = temp_file("thousand.json.bz2");
  write_bytes(path, dump.bytes, Codec::bzip2);
  CHECK(read_all({path}).size() == dump.truth.line_count);
}

TEST_CASE("corrupt bzip2 stream reports a codec error") {
  auto path = temp_file("corrupt.bz2");
  write_bytes(path, "BZh91AY&SYgarbage-not-a-real-stream", Codec::none);
  DumpSource src{path};
  LineReader reader(src);
  std::string line;
  CHECK_THROWS_AS([&] { while (reader.next(line)) {} }(), CodecError);
}

TEST_CASE("line length cap") {
  auto path = temp_file("long.json");
  write_bytes(path, std::string(4096, 'x') + "\n", Codec::none);
  DumpSource src{path};
  src.max_line_bytes = 1024;
  LineReader reader(src);
  std::string line;
  CHECK_THROWS_AS(reader.next(line), IoError);
}
