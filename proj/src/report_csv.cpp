#include "probeable/report_csv.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace probeable {

std::string_view matrix_cell(const OmissionVerdict& v) {
  if (v.class_result == Verdict::Pass) return "class_pass";
  if (v.simple == Verdict::Error || v.class_result == Verdict::Error) return "error";
  if (v.simple == Verdict::Pass) return "simple_only";
  return "fail";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> matrix_columns(const Bank& bank) {
  std::vector<std::string> cols = {"team", "problem", "attempt", "base"};
  for (const auto& p : bank.problems) {
    for (const auto& o : p.omissions) cols.push_back(p.qualified_id(o));
  }
  cols.push_back("catch_all");
  return cols;
}

namespace {

std::string join_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

std::size_t problem_rank(const Bank& bank, const std::string& id) {
  for (std::size_t i = 0; i < bank.problems.size(); ++i) {
    if (bank.problems[i].id == id) return i;
  }
  return bank.problems.size();
}

std::string format_fraction(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string matrix_csv(const Bank& bank, const std::vector<EvalReport>& reports) {
  const auto cols = matrix_columns(bank);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;

  std::vector<const EvalReport*> sorted;
  for (const auto& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [&](const EvalReport* a, const EvalReport* b) {
    if (a->team != b->team) return a->team < b->team;
    const auto ra = problem_rank(bank, a->problem);
    const auto rb = problem_rank(bank, b->problem);
    if (ra != rb) return ra < rb;
    return a->attempt < b->attempt;
  });

  std::string out = join_row(cols);
  for (const EvalReport* r : sorted) {
    std::vector<std::string> row(cols.size());
    row[0] = r->team;
    row[1] = r->problem;
    row[2] = std::to_string(r->attempt);
    row[3] = std::string(verdict_name(r->base.verdict));
    for (const auto& v : r->omissions) {
      auto it = index.find(r->problem + "." + v.omission_id);
      if (it != index.end()) row[it->second] = std::string(matrix_cell(v));
    }
    row.back() = std::string(verdict_name(r->catch_all.verdict));
    out += join_row(row);
  }
  return out;
}

std::string heatmap_csv(const std::vector<HeatmapCell>& cells) {
  std::string out = "problem,category,fraction\n";
  for (const auto& c : cells) {
    out += csv_field(c.problem) + "," + std::string(category_code(c.category)) + "," + format_fraction(c.fraction) + "\n";
  }
  return out;
}

}  // namespace probeable
