#pragma once

#include <filesystem>
#include <string>

#include "dlrdb/engine.hpp"

namespace dlrdb::test {

inline std::filesystem::path fixtures() { return DLRDB_FIXTURE_DIR; }
inline std::filesystem::path university() { return fixtures() / "university"; }

/// The university system, unnormalized.
inline System university_system(const std::string& kb_file = "kb.dlr") {
  auto dir = university();
  return load_system(dir / kb_file, dir / "schema.rel", dir / "map.dlr");
}

inline DatabaseInstance university_data(const System& system, const std::string& data = "data") {
  return load_csv(university() / data, system.schema).database;
}

inline Tuple row(std::initializer_list<Value> values) { return Tuple(values); }

inline Value s(const char* text) { return std::string(text); }

}  // namespace dlrdb::test
