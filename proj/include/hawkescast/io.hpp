#pragma once

#include <string>
#include <vector>

#include "hawkescast/types.hpp"

namespace hawkescast {

inline constexpr int kCascadeSchemaVersion = 1;

/// Newline-delimited UTF-8 records; first line is a schema header. Paths
/// ending in .gz are transparently gzip (de)compressed. Serialization is
/// canonical: save(load(f)) reproduces f byte for byte.
std::vector<Cascade> load_dataset(const std::string& path);
void save_dataset(const std::vector<Cascade>& dataset, const std::string& path);

std::string cascade_to_record(const Cascade& cascade);
Cascade cascade_from_record(const std::string& line, std::size_t line_number);

/// Parses duration literals: plain seconds, or `s`/`h`/`d` suffix, or "inf".
double parse_duration(const std::string& text);
std::string format_duration(double seconds);

}  // namespace hawkescast
