#include <algorithm>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dlrdb/engine.hpp"
#include "dlrdb/translator.hpp"

namespace dlrdb {

namespace {

struct Options {
  std::string kb;
  std::string schema;
  std::string map;
  std::string data;
  std::string query;
  std::string format = "csv";
  bool sql = false;
  bool full = false;
  bool force = false;
};

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    err << "warning: " << w << '\n';
  }
}

int run_normalize(const Options& o, std::ostream& out) {
  KnowledgeBase kb = parse_kb(read_file(o.kb));
  out << print_kb(normalize(kb));
  return 0;
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  System system = load_system(o.kb, o.schema, o.map);
  system.kb = normalize(system.kb);
  auto mapping = check_mapping_consistency(system.kb, system.schema, system.mapping);
  LoadResult loaded = load_csv(o.data, system.schema);
  warn(err, loaded.warnings);
  ConsistencyReport report = o.full ? full_consistency(system, loaded.database)
                                    : df_consistent(system, loaded.database);
  const bool ok = mapping.empty() && report.consistent();

  if (o.format == "json") {
    nlohmann::json j = to_json(report);
    nlohmann::json mapping_json = nlohmann::json::array();
    for (const auto& v : mapping) {
      mapping_json.push_back(v.message());
    }
    j["consistent"] = ok;
    j["mapping_violations"] = std::move(mapping_json);
    out << j.dump(2) << '\n';
  } else {
    for (const auto& v : mapping) {
      out << "mapping violation: " << v.message() << "\n\n";
    }
    if (mapping.empty() || !report.consistent()) {
      out << render_text(report);
    }
  }
  return ok ? 0 : 1;
}

int run_rewrite(const Options& o, std::ostream& out, std::ostream& err) {
  System system = prepare(load_system(o.kb, o.schema, o.map));
  warn(err, empty_concept_warnings(system.kb));
  ConjunctiveQuery q;
  try {
    q = conceptual_to_cq(read_file(o.query), system);
  } catch (const UnsatisfiableQuery& e) {
    warn(err, {std::string("query has no answers: ") + e.what()});
    return 0;
  }
  RewriteResult result = rewrite(q, system);
  if (o.sql) {
    out << ucq_to_sql(result.ucq, system.schema) << '\n';
  } else {
    for (const auto& member : result.ucq.members()) {
      out << to_string(member) << '\n';
    }
  }
  return 0;
}

int run_answer(const Options& o, std::ostream& out, std::ostream& err) {
  System system = load_system(o.kb, o.schema, o.map);
  LoadResult loaded = load_csv(o.data, system.schema);
  warn(err, loaded.warnings);
  AnswerOptions options;
  options.force = o.force;
  AnswerResult result = answer(read_file(o.query), system, loaded.database, options);
  warn(err, result.warnings);

  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : result.tuples) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& v : t) {
        row.push_back(to_json(v));
      }
      rows.push_back(std::move(row));
    }
    out << rows.dump() << '\n';
  } else {
    for (const auto& t : result.tuples) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        out << (i ? "," : "") << csv_escape(to_text(t[i]));
      }
      out << '\n';
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Query answering over relational data through a DLR-Lite knowledge base", "dlrdb"};
  app.require_subcommand(1);
  Options o;

  CLI::App* check = app.add_subcommand("check", "check mapping and database consistency");
  CLI::App* norm = app.add_subcommand("normalize", "print the normalized knowledge base");
  CLI::App* rw = app.add_subcommand("rewrite", "print the rewriting of a conceptual query");
  CLI::App* ans = app.add_subcommand("answer", "compute the certain answers of a query");
  for (CLI::App* sub : {check, norm, rw, ans}) {
    sub->add_option("--kb", o.kb, "knowledge base file");
    sub->add_option("--schema", o.schema, "relational schema file");
    sub->add_option("--map", o.map, "mapping file");
    sub->add_option("--data", o.data, "directory of CSV files");
    sub->add_option("--query", o.query, "conceptual query file");
    sub->add_option("--format", o.format, "output format for check and answer")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--sql", o.sql, "rewrite: print SQL instead of conjunctive queries");
    sub->add_flag("--full", o.full, "check: also check inclusion assertions");
    sub->add_flag("--force", o.force, "answer: evaluate even over a df-inconsistent database");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto require = [&](std::initializer_list<std::pair<const char*, const std::string*>> flags) {
    std::string missing;
    for (const auto& [name, value] : flags) {
      if (value->empty()) {
        missing += std::string(missing.empty() ? "" : ", ") + name;
      }
    }
    return missing;
  };
  std::string missing;
  if (norm->parsed()) {
    missing = require({{"--kb", &o.kb}});
  } else if (rw->parsed()) {
    missing = require(
        {{"--kb", &o.kb}, {"--schema", &o.schema}, {"--map", &o.map}, {"--query", &o.query}});
  } else if (check->parsed()) {
    missing = require(
        {{"--kb", &o.kb}, {"--schema", &o.schema}, {"--map", &o.map}, {"--data", &o.data}});
  } else {
    missing = require({{"--kb", &o.kb}, {"--schema", &o.schema}, {"--map", &o.map},
                       {"--data", &o.data}, {"--query", &o.query}});
  }
  if (!missing.empty()) {
    err << "error: missing required option(s): " << missing << '\n';
    return 2;
  }

  try {
    if (check->parsed()) {
      return run_check(o, out, err);
    }
    if (norm->parsed()) {
      return run_normalize(o, out);
    }
    if (rw->parsed()) {
      return run_rewrite(o, out, err);
    }
    return run_answer(o, out, err);
  } catch (const MappingInconsistent& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InconsistentDatabase& e) {
    err << "error: " << e.what();
    return 1;
  } catch (const RewriteLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace dlrdb
