#include "dlrdb/engine.hpp"

#include <fstream>
#include <sstream>

#include "dlrdb/translator.hpp"

namespace dlrdb {

namespace fs = std::filesystem;

namespace {

std::string join_messages(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += (out.empty() ? "" : "\n") + l;
  }
  return out;
}

std::vector<std::string> mapping_messages(const std::vector<MappingViolation>& violations) {
  std::vector<std::string> out{"mapping is inconsistent with the knowledge base:"};
  for (const auto& v : violations) {
    out.push_back("  " + v.message());
  }
  return out;
}

std::vector<std::string> query_messages(const std::vector<QueryViolation>& violations) {
  std::vector<std::string> out{"invalid query:"};
  for (const auto& v : violations) {
    out.push_back("  line " + std::to_string(v.location.line) + ", column " +
                  std::to_string(v.location.column) + ": " + std::string(to_string(v.kind)) +
                  ": " + v.message);
  }
  return out;
}

template <class Parse>
auto parse_file(const fs::path& file, Parse parse) {
  std::string text = read_file(file);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.detail(), e.line(), e.column());
  }
}

}  // namespace

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error("cannot read '" + file.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

System load_system(const fs::path& kb_file, const fs::path& schema_file,
                   const fs::path& mapping_file) {
  System system;
  system.kb = parse_file(kb_file, [](std::string_view t) { return parse_kb(t); });
  system.schema = parse_file(schema_file, [](std::string_view t) { return parse_schema(t); });
  system.mapping = parse_file(mapping_file, [&](std::string_view t) {
    return parse_mapping(t, system.kb, system.schema);
  });
  return system;
}

MappingInconsistent::MappingInconsistent(std::vector<MappingViolation> violations)
    : ValidationError(join_messages(mapping_messages(violations))),
      violations_(std::move(violations)) {}

InvalidQuery::InvalidQuery(std::vector<QueryViolation> violations)
    : Error(join_messages(query_messages(violations))), violations_(std::move(violations)) {}

InconsistentDatabase::InconsistentDatabase(ConsistencyReport report)
    : Error("database is not df-consistent with the system:\n" + render_text(report)),
      report_(std::move(report)) {}

System prepare(const System& system) {
  auto violations = check_mapping_consistency(system.kb, system.schema, system.mapping);
  if (!violations.empty()) {
    throw MappingInconsistent(std::move(violations));
  }
  System out = system;
  if (!out.kb.normalized()) {
    out.kb = normalize(out.kb);
  }
  return out;
}

std::vector<std::string> empty_concept_warnings(const KnowledgeBase& normalized_kb) {
  std::vector<std::string> out;
  for (const auto& b : empty_concepts(normalized_kb)) {
    out.push_back(to_string(b) + " is empty in every model of the knowledge base");
  }
  return out;
}

ConjunctiveQuery conceptual_to_cq(std::string_view query_text, const System& system) {
  ConceptualQuery q = parse_query(query_text);
  auto violations = validate_query(q, system);
  if (!violations.empty()) {
    throw InvalidQuery(std::move(violations));
  }
  return to_cq(to_relational(q, system), system.schema);
}

AnswerResult answer(std::string_view query_text, const System& system, const DatabaseInstance& d,
                    const AnswerOptions& options) {
  AnswerResult result;
  System prepared = prepare(system);
  result.warnings = empty_concept_warnings(prepared.kb);

  ConsistencyReport report = df_consistent(prepared, d);
  if (!report.consistent()) {
    if (!options.force) {
      throw InconsistentDatabase(std::move(report));
    }
    result.certain = false;
    result.warnings.push_back(
        "database is not df-consistent; answers are not guaranteed to be certain");
  }

  ConjunctiveQuery q;
  try {
    q = conceptual_to_cq(query_text, prepared);
  } catch (const UnsatisfiableQuery& e) {
    result.warnings.push_back(std::string("query has no answers: ") + e.what());
    return result;
  }
  RewriteResult rewritten = rewrite(q, prepared, options.rewrite);
  result.tuples = eval_ucq(rewritten.ucq, d);
  result.rewriting = rewritten.ucq.members();
  return result;
}

}  // namespace dlrdb
