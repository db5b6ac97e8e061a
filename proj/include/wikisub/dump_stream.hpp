#pragma once
// Streams physical lines out of a plain, bzip2 or gzip dump file with
// bounded memory. Codec is auto-detected from magic bytes unless forced.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>

namespace wikisub {

enum class Codec : std::uint8_t { auto_detect, none, bzip2, gzip };

struct DumpSource {
  std::filesystem::path path;
  Codec codec = Codec::auto_detect;
  std::size_t read_window_bytes = 64ull << 20;   // queue budget, see pipeline
  std::size_t max_line_bytes = 256ull << 20;     // hard cap on one line
};

struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LineReader {
 public:
  explicit LineReader(const DumpSource& src) : src_(src) {
    if (!std::filesystem::exists(src.path))
      throw NotFoundError("dump file not found: " + src.path.string());
    file_.open(src.path, std::ios::binary);
    if (!file_) throw IoError("cannot open: " + src.path.string());

    Codec codec = src.codec == Codec::auto_detect ? sniff() : src.codec;
    if (codec == Codec::bzip2)
      stream_.push(boost::iostreams::bzip2_decompressor());
    else if (codec == Codec::gzip)
      stream_.push(boost::iostreams::gzip_decompressor());
    stream_.push(file_);
    // Filter errors must surface as the original bzip2/gzip exception,
    // not silently as badbit.
    stream_.exceptions(std::ios::badbit);
  }

  // Appends nothing on EOF and returns false. Throws CodecError on a
  // corrupt compressed stream, IoError above the line-length cap.
  bool next(std::string& line) {
    line.clear();
    try {
      int c;
      while ((c = stream_.get()) != EOF) {
        ++bytes_read_;
        if (c == '\n') return true;
        line.push_back(static_cast<char>(c));
        if (line.size() > src_.max_line_bytes)
          throw IoError("line exceeds " + std::to_string(src_.max_line_bytes) +
                        " bytes at byte offset " + std::to_string(bytes_read_));
      }
    } catch (const boost::iostreams::bzip2_error& e) {
      throw CodecError("bzip2 stream error near decompressed byte offset " +
                       std::to_string(bytes_read_) + ": " + e.what());
    } catch (const boost::iostreams::gzip_error& e) {
      throw CodecError("gzip stream error near decompressed byte offset " +
                       std::to_string(bytes_read_) + ": " + e.what());
    }
    return !line.empty();  // last line without trailing newline
  }

  std::uint64_t bytes_read() const { return bytes_read_; }

 private:
  Codec sniff() {
    char magic[3] = {0, 0, 0};
    file_.read(magic, 3);
    file_.clear();
    file_.seekg(0);
    if (magic[0] == 'B' && magic[1] == 'Z' && magic[2] == 'h') return Codec::bzip2;
    if (static_cast<unsigned char>(magic[0]) == 0x1f &&
        static_cast<unsigned char>(magic[1]) == 0x8b)
      return Codec::gzip;
    return Codec::none;
  }

  DumpSource src_;
  std::ifstream file_;
  boost::iostreams::filtering_istream stream_;
  std::uint64_t bytes_read_ = 0;
};

inline Codec parse_codec(std::string_view s) {
  if (s == "auto") return Codec::auto_detect;
  if (s == "none") return Codec::none;
  if (s == "bz2" || s == "bzip2") return Codec::bzip2;
  if (s == "gz" || s == "gzip") return Codec::gzip;
  throw std::invalid_argument("unknown codec: " + std::string(s));
}

}  // namespace wikisub
