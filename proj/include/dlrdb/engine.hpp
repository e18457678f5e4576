#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dlrdb/consistency.hpp"
#include "dlrdb/cq.hpp"
#include "dlrdb/error.hpp"
#include "dlrdb/query.hpp"
#include "dlrdb/rewriter.hpp"
#include "dlrdb/storage.hpp"
#include "dlrdb/system.hpp"

namespace dlrdb {

/// Parses the three system files. The mapping is checked structurally but
/// not for signature consistency. ParseError messages name the file.
System load_system(const std::filesystem::path& kb_file, const std::filesystem::path& schema_file,
                   const std::filesystem::path& mapping_file);

std::string read_file(const std::filesystem::path& file);

class MappingInconsistent : public ValidationError {
 public:
  explicit MappingInconsistent(std::vector<MappingViolation> violations);
  const std::vector<MappingViolation>& violations() const { return violations_; }

 private:
  std::vector<MappingViolation> violations_;
};

class InvalidQuery : public Error {
 public:
  explicit InvalidQuery(std::vector<QueryViolation> violations);
  const std::vector<QueryViolation>& violations() const { return violations_; }

 private:
  std::vector<QueryViolation> violations_;
};

class InconsistentDatabase : public Error {
 public:
  explicit InconsistentDatabase(ConsistencyReport report);
  const ConsistencyReport& report() const { return report_; }

 private:
  ConsistencyReport report_;
};

/// Normalizes the KB and throws MappingInconsistent if some inclusion
/// relates components of different signatures.
System prepare(const System& system);

/// One warning per basic concept that is empty in every model.
std::vector<std::string> empty_concept_warnings(const KnowledgeBase& normalized_kb);

/// Parses, validates and translates a conceptual query into its
/// conjunctive query. Throws ParseError, InvalidQuery or UnsatisfiableQuery.
ConjunctiveQuery conceptual_to_cq(std::string_view query_text, const System& system);

struct AnswerOptions {
  /// Evaluate even when the database is not df-consistent.
  bool force = false;
  RewriteOptions rewrite;
};

struct AnswerResult {
  AnswerSet tuples;
  /// Empty when the query is unsatisfiable.
  std::vector<ConjunctiveQuery> rewriting;
  std::vector<std::string> warnings;
  /// False when evaluation was forced over a df-inconsistent database.
  bool certain = true;
};

/// Normalizes the system, checks df-consistency (throwing
/// InconsistentDatabase unless forced), translates and rewrites the query,
/// and evaluates the rewriting over `d`.
AnswerResult answer(std::string_view query_text, const System& system, const DatabaseInstance& d,
                    const AnswerOptions& options = {});

/// Command-line entry point: `check | normalize | rewrite | answer`.
/// `args` excludes the program name.
/// Returns 0 on success, 1 on violations or inconsistency, 2 on usage or
/// parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlrdb
