#include "adastep/gzio.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>

#include "adastep/errors.hpp"

namespace adastep {
namespace {

bool has_gz_suffix(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  if (has_gz_suffix(path)) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw IoError("cannot open " + path);
    std::string content;
    char buffer[1 << 16];
    int n = 0;
    while ((n = gzread(file, buffer, sizeof(buffer))) > 0) {
      content.append(buffer, static_cast<std::size_t>(n));
    }
    const bool failed = n < 0;
    gzclose(file);
    if (failed) throw IoError("decompression failed for " + path);
    return content;
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  if (has_gz_suffix(path)) {
    gzFile file = gzopen(path.c_str(), "wb9");
    if (file == nullptr) throw IoError("cannot open " + path + " for writing");
    const auto written = gzwrite(file, content.data(),
                                 static_cast<unsigned>(content.size()));
    const bool failed =
        written != static_cast<int>(content.size()) && !content.empty();
    if (gzclose(file) != Z_OK || failed) {
      throw IoError("compression failed for " + path);
    }
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) throw IoError("write failed for " + path);
}

}  // namespace adastep
