#include "dlrdb/system.hpp"

#include "dlrdb/error.hpp"

namespace dlrdb {

const RelationSchema& System::relation_of(std::string_view name) const {
  auto target = mapping.target(name);
  if (!target) {
    throw ValidationError("'" + std::string(name) + "' is not mapped");
  }
  return schema.at(*target);
}

}  // namespace dlrdb
