#include "hawkescast/io.hpp"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <zlib.h>

namespace hawkescast {

namespace {

bool has_gz_suffix(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

// Line source abstracting plain files and gzip streams; only one record is
// held in memory at a time.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : gz_(has_gz_suffix(path)) {
    if (gz_) {
      gzfile_ = gzopen(path.c_str(), "rb");
      if (!gzfile_) throw std::runtime_error("cannot open " + path);
    } else {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  ~LineReader() {
    if (gzfile_) gzclose(gzfile_);
  }
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  bool next(std::string& line) {
    if (!gz_) return static_cast<bool>(std::getline(file_, line));
    line.clear();
    char buf[4096];
    while (true) {
      if (gzgets(gzfile_, buf, sizeof(buf)) == nullptr) return !line.empty();
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        return true;
      }
    }
  }

 private:
  bool gz_;
  std::ifstream file_;
  gzFile gzfile_ = nullptr;
};

class LineWriter {
 public:
  explicit LineWriter(const std::string& path) : gz_(has_gz_suffix(path)) {
    if (gz_) {
      gzfile_ = gzopen(path.c_str(), "wb");
      if (!gzfile_) throw std::runtime_error("cannot open " + path + " for writing");
    } else {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  ~LineWriter() {
    if (gzfile_) gzclose(gzfile_);
  }
  LineWriter(const LineWriter&) = delete;
  LineWriter& operator=(const LineWriter&) = delete;

  void write(const std::string& line) {
    if (gz_) {
      if (gzwrite(gzfile_, line.data(), static_cast<unsigned>(line.size())) <= 0 ||
          gzwrite(gzfile_, "\n", 1) <= 0)
        throw std::runtime_error("gzip write failed");
    } else {
      file_ << line << '\n';
    }
  }

 private:
  bool gz_;
  std::ofstream file_;
  gzFile gzfile_ = nullptr;
};

}  // namespace

std::string cascade_to_record(const Cascade& cascade) {
  nlohmann::json j;
  j["item_id"] = cascade.item_id;
  j["created_at"] = cascade.created_at;
  j["static_attrs"] = cascade.static_attrs;
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : cascade.events) events.push_back({e.time, e.mark});
  j["events"] = std::move(events);
  j["truncated"] = cascade.truncated;
  return j.dump();
}

Cascade cascade_from_record(const std::string& line, std::size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed record at line " + std::to_string(line_number) + ": " +
                             e.what());
  }
  try {
    Cascade c;
    c.item_id = j.at("item_id").get<std::string>();
    c.created_at = j.at("created_at").get<double>();
    c.static_attrs = j.at("static_attrs").get<std::vector<double>>();
    for (const auto& e : j.at("events")) {
      c.events.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    }
    c.truncated = j.at("truncated").get<bool>();
    c.validate();
    return c;
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid record at line " + std::to_string(line_number) + ": " +
                             e.what());
  }
}

std::vector<Cascade> load_dataset(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) return {};  // empty file -> empty dataset
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("missing dataset header in " + path);
  }
  if (header.value("format", "") != "hawkescast.cascades")
    throw std::runtime_error("not a cascade dataset: " + path);
  const int version = header.value("schema_version", -1);
  if (version != kCascadeSchemaVersion)
    throw std::runtime_error("schema version mismatch in " + path + ": file has " +
                             std::to_string(version) + ", reader expects " +
                             std::to_string(kCascadeSchemaVersion));
  std::vector<Cascade> out;
  std::size_t line_number = 1;
  while (reader.next(line)) {
    ++line_number;
    if (line.empty()) continue;
    out.push_back(cascade_from_record(line, line_number));
  }
  return out;
}

void save_dataset(const std::vector<Cascade>& dataset, const std::string& path) {
  LineWriter writer(path);
  nlohmann::json header;
  header["format"] = "hawkescast.cascades";
  header["schema_version"] = kCascadeSchemaVersion;
  writer.write(header.dump());
  for (const auto& c : dataset) writer.write(cascade_to_record(c));
}

double parse_duration(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  if (text == "inf" || text == "infinity") return kInfiniteHorizon;
  double scale = 1.0;
  std::string number = text;
  switch (text.back()) {
    case 's':
      number.pop_back();
      break;
    case 'h':
      scale = 3600.0;
      number.pop_back();
      break;
    case 'd':
      scale = 86400.0;
      number.pop_back();
      break;
    default:
      break;
  }
  std::size_t consumed = 0;
  double value;
  try {
    value = std::stod(number, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad duration literal: " + text);
  }
  if (consumed != number.size()) throw std::invalid_argument("bad duration literal: " + text);
  return value * scale;
}

std::string format_duration(double seconds) {
  if (is_infinite_horizon(seconds)) return "inf";
  auto fmt = [](double v, char suffix) {
    std::ostringstream os;
    os << v << suffix;
    return os.str();
  };
  if (seconds >= 86400.0 && std::fmod(seconds, 86400.0) == 0.0) return fmt(seconds / 86400.0, 'd');
  if (seconds >= 3600.0 && std::fmod(seconds, 3600.0) == 0.0) return fmt(seconds / 3600.0, 'h');
  return fmt(seconds, 's');
}

}  // namespace hawkescast
