#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hawkescast/io.hpp"
#include "hawkescast/sim.hpp"

using namespace hawkescast;

namespace {

std::vector<Cascade> sample_dataset() {
  HeterogeneityConfig het;
  het.max_events = 5000;
  auto data = simulate_batch(13, 12, het);
  data[0].truncated = true;
  data[1].created_at = 1.7e9;
  return data;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("round trip preserves every field") {
  const auto data = sample_dataset();
  TempFile f("io_roundtrip.cascades");
  save_dataset(data, f.path);
  const auto loaded = load_dataset(f.path);
  REQUIRE(loaded.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(loaded[i].item_id == data[i].item_id);
    CHECK(loaded[i].created_at == data[i].created_at);
    CHECK(loaded[i].truncated == data[i].truncated);
    REQUIRE(loaded[i].events.size() == data[i].events.size());
    for (std::size_t k = 0; k < data[i].events.size(); ++k) {
      CHECK(loaded[i].events[k].time == data[i].events[k].time);
      CHECK(loaded[i].events[k].mark == data[i].events[k].mark);
    }
    CHECK(loaded[i].static_attrs == data[i].static_attrs);
  }
}

TEST_CASE("save(load(f)) is byte identical") {
  const auto data = sample_dataset();
  TempFile a("io_bytes_a.cascades"), b("io_bytes_b.cascades");
  save_dataset(data, a.path);
  save_dataset(load_dataset(a.path), b.path);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("gzip round trip") {
  const auto data = sample_dataset();
  TempFile plain("io_gz_plain.cascades"), gz("io_gz.cascades.gz");
  save_dataset(data, plain.path);
  save_dataset(data, gz.path);
  // The .gz file really is compressed (magic bytes) and loads identically.
  const std::string raw = slurp(gz.path);
  REQUIRE(raw.size() > 2);
  CHECK(static_cast<unsigned char>(raw[0]) == 0x1f);
  CHECK(static_cast<unsigned char>(raw[1]) == 0x8b);
  const auto loaded = load_dataset(gz.path);
  REQUIRE(loaded.size() == data.size());
  TempFile again("io_gz_again.cascades");
  save_dataset(loaded, again.path);
  CHECK(slurp(again.path) == slurp(plain.path));
}

TEST_CASE("header and schema validation") {
  TempFile f("io_bad_header.cascades");
  {
    std::ofstream out(f.path);
    out << "{\"format\":\"something.else\",\"schema_version\":1}\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(f.path), doctest::Contains("not a cascade dataset"),
                       std::runtime_error);
  {
    std::ofstream out(f.path);
    out << "{\"format\":\"hawkescast.cascades\",\"schema_version\":7}\n";
  }
  // The error names both the file version and the expected one.
  CHECK_THROWS_WITH_AS(load_dataset(f.path), doctest::Contains("file has 7"), std::runtime_error);
  {
    std::ofstream out(f.path);
    out << "plainly not json\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(f.path), doctest::Contains("missing dataset header"),
                       std::runtime_error);
  CHECK_THROWS_AS(load_dataset("no_such_file.cascades"), std::runtime_error);
}

TEST_CASE("malformed records name the line") {
  TempFile f("io_bad_record.cascades");
  {
    std::ofstream out(f.path);
    out << "{\"format\":\"hawkescast.cascades\",\"schema_version\":1}\n";
    out << cascade_to_record(Cascade{}) << "\n";
    out << "{broken\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(f.path), doctest::Contains("line 3"), std::runtime_error);
  {
    std::ofstream out(f.path);
    out << "{\"format\":\"hawkescast.cascades\",\"schema_version\":1}\n";
    out << "{\"item_id\":\"x\",\"created_at\":0,\"static_attrs\":[],"
           "\"events\":[[5.0,1.0],[2.0,1.0]],\"truncated\":false}\n";
  }
  // Decreasing event times fail validation with the line number.
  CHECK_THROWS_WITH_AS(load_dataset(f.path), doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("duration literals") {
  CHECK(parse_duration("90") == 90.0);
  CHECK(parse_duration("90s") == 90.0);
  CHECK(parse_duration("1h") == 3600.0);
  CHECK(parse_duration("1.5h") == 5400.0);
  CHECK(parse_duration("2d") == 2 * 86400.0);
  CHECK(is_infinite_horizon(parse_duration("inf")));
  CHECK_THROWS_AS(parse_duration(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_duration("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_duration("1x2d"), std::invalid_argument);

  CHECK(format_duration(3600.0) == "1h");
  CHECK(format_duration(86400.0) == "1d");
  CHECK(format_duration(4 * 86400.0) == "4d");
  CHECK(format_duration(90.0) == "90s");
  CHECK(format_duration(kInfiniteHorizon) == "inf");
  // Round trip through the formatter.
  for (double v : {1.0, 3600.0, 5400.0, 86400.0, 7 * 86400.0}) {
    CHECK(parse_duration(format_duration(v)) == v);
  }
}
