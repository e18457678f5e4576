#include "dlrdb/storage.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dlrdb/error.hpp"

namespace dlrdb {

namespace fs = std::filesystem;

DatabaseInstance::DatabaseInstance(const Schema& schema) {
  for (const auto& r : schema.relations()) {
    relations_[r.name];
  }
}

bool DatabaseInstance::insert(std::string_view relation, Tuple tuple) {
  auto it = relations_.find(relation);
  if (it == relations_.end()) {
    it = relations_.emplace(std::string(relation), Relation{}).first;
  }
  return it->second.insert(std::move(tuple)).second;
}

const Relation& DatabaseInstance::relation(std::string_view name) const {
  static const Relation kEmpty;
  auto it = relations_.find(name);
  return it == relations_.end() ? kEmpty : it->second;
}

std::size_t DatabaseInstance::fact_count() const {
  std::size_t n = 0;
  for (const auto& [name, tuples] : relations_) {
    n += tuples.size();
  }
  return n;
}

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    CsvRecord record;
    record.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      if (i < text.size() && text[i] == '"') {
        ++i;
        while (true) {
          if (i >= text.size()) {
            throw ParseError("unterminated quoted field", record.line);
          }
          char c = text[i++];
          if (c == '"') {
            if (i < text.size() && text[i] == '"') {
              field += '"';
              ++i;
              continue;
            }
            break;
          }
          if (c == '\n') {
            ++line;
          }
          field += c;
        }
      }
      while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        if (text[i] == '"') {
          throw ParseError("unexpected quote inside unquoted field", line);
        }
        field += text[i++];
      }
      record.fields.push_back(std::move(field));
      field.clear();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '\r') {
        ++i;
      }
      if (i < text.size() && text[i] == '\n') {
        ++i;
        ++line;
      }
      end_of_record = true;
    }
    bool blank = record.fields.size() == 1 && record.fields[0].empty();
    if (!blank) {
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

namespace {

Value parse_cell(const std::string& cell, AttributeType type, const std::string& where,
                 std::size_t line) {
  if (type == AttributeType::kString) {
    return cell;
  }
  std::size_t begin = cell.find_first_not_of(" \t");
  std::size_t end = cell.find_last_not_of(" \t");
  if (begin == std::string::npos) {
    throw ParseError(where + ": empty value for an integer attribute", line);
  }
  std::int64_t value = 0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + end + 1;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(where + ": '" + cell + "' is not an integer", line);
  }
  return value;
}

}  // namespace

LoadResult load_csv(const fs::path& directory, const Schema& schema) {
  if (!fs::is_directory(directory)) {
    throw Error("data directory '" + directory.string() + "' does not exist");
  }
  LoadResult result{DatabaseInstance(schema), {}};
  for (const auto& rel : schema.relations()) {
    fs::path file = directory / (rel.name + ".csv");
    if (!fs::exists(file)) {
      result.warnings.push_back("no data file " + file.string() + "; relation " + rel.name +
                                " is empty");
      continue;
    }
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string where = file.filename().string();
    std::vector<CsvRecord> records;
    try {
      records = parse_csv(buffer.str());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.detail(), e.line());
    }
    if (records.empty()) {
      throw ParseError(where + ": missing header row", 1);
    }
    const auto& header = records.front();
    bool header_ok = header.fields.size() == rel.arity();
    for (std::size_t i = 0; header_ok && i < rel.arity(); ++i) {
      header_ok = header.fields[i] == rel.attributes[i].name;
    }
    if (!header_ok) {
      std::string expected;
      for (std::size_t i = 0; i < rel.arity(); ++i) {
        expected += (i ? "," : "") + rel.attributes[i].name;
      }
      throw ParseError(where + ": header does not match relation " + rel.name + ", expected '" +
                           expected + "'",
                       header.line);
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& record = records[r];
      if (record.fields.size() != rel.arity()) {
        throw ParseError(where + ": expected " + std::to_string(rel.arity()) + " fields, found " +
                             std::to_string(record.fields.size()),
                         record.line);
      }
      Tuple tuple;
      tuple.reserve(rel.arity());
      for (std::size_t i = 0; i < rel.arity(); ++i) {
        tuple.push_back(parse_cell(record.fields[i], rel.attributes[i].type, where, record.line));
      }
      result.database.insert(rel.name, std::move(tuple));
    }
  }
  return result;
}

std::set<Tuple> project_component(const DatabaseInstance& d, std::string_view relation,
                                  const std::vector<std::size_t>& positions) {
  std::set<Tuple> out;
  for (const auto& t : d.relation(relation)) {
    Tuple sub;
    sub.reserve(positions.size());
    for (std::size_t p : positions) {
      sub.push_back(t.at(p));
    }
    out.insert(std::move(sub));
  }
  return out;
}

namespace {

// Backtracking join. Atoms are matched most-constrained first.
class Matcher {
 public:
  Matcher(const ConjunctiveQuery& q, const DatabaseInstance& d, AnswerSet& out)
      : q_(q), d_(d), out_(out), used_(q.body.size(), false) {}

  void run() { search(0); }

 private:
  std::size_t pick() const {
    std::size_t best = q_.body.size();
    std::size_t best_bound = 0;
    for (std::size_t i = 0; i < q_.body.size(); ++i) {
      if (used_[i]) {
        continue;
      }
      std::size_t bound = 0;
      for (const auto& t : q_.body[i].args) {
        const auto* v = as_variable(t);
        if (!v || binding_.count(v->name)) {
          ++bound;
        }
      }
      if (best == q_.body.size() || bound > best_bound) {
        best = i;
        best_bound = bound;
      }
    }
    return best;
  }

  void emit() {
    Tuple row;
    row.reserve(q_.head.size());
    for (const auto& t : q_.head) {
      if (const auto* v = as_variable(t)) {
        row.push_back(binding_.at(v->name));
      } else {
        row.push_back(std::get<Value>(t));
      }
    }
    out_.insert(std::move(row));
  }

  void search(std::size_t depth) {
    if (depth == q_.body.size()) {
      emit();
      return;
    }
    const std::size_t index = pick();
    const Atom& atom = q_.body[index];
    used_[index] = true;
    std::vector<const std::string*> bound_here;
    for (const auto& tuple : d_.relation(atom.relation)) {
      if (tuple.size() != atom.args.size()) {
        continue;
      }
      bool ok = true;
      for (std::size_t i = 0; ok && i < tuple.size(); ++i) {
        if (const auto* v = as_variable(atom.args[i])) {
          auto it = binding_.find(v->name);
          if (it == binding_.end()) {
            binding_.emplace(v->name, tuple[i]);
            bound_here.push_back(&v->name);
          } else {
            ok = it->second == tuple[i];
          }
        } else {
          ok = std::get<Value>(atom.args[i]) == tuple[i];
        }
      }
      if (ok) {
        search(depth + 1);
      }
      for (const auto* name : bound_here) {
        binding_.erase(*name);
      }
      bound_here.clear();
    }
    used_[index] = false;
  }

  const ConjunctiveQuery& q_;
  const DatabaseInstance& d_;
  AnswerSet& out_;
  std::vector<bool> used_;
  std::unordered_map<std::string, Value> binding_;
};

}  // namespace

AnswerSet eval_cq(const ConjunctiveQuery& q, const DatabaseInstance& d) {
  AnswerSet out;
  Matcher(q, d, out).run();
  return out;
}

AnswerSet eval_ucq(const UnionCQ& u, const DatabaseInstance& d) {
  AnswerSet out;
  for (const auto& q : u.members()) {
    out.merge(eval_cq(q, d));
  }
  return out;
}

}  // namespace dlrdb
