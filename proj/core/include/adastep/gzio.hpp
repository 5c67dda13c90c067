#pragma once

#include <string>
#include <string_view>

namespace adastep {

// Whole-file text I/O; paths ending in ".gz" are compressed transparently.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace adastep
