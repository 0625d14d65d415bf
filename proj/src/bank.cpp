#include "probeable/bank.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "probeable/digest.hpp"
#include "probeable/generators.hpp"
#include "probeable/literal.hpp"
#include "probeable/solutions.hpp"

namespace probeable {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw BankError(where.empty() ? what : where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string text_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) fail(where, std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<std::string> string_list(const json& obj, const char* key, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& v : array_field(obj, key, where)) {
    if (!v.is_string()) fail(where, std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Args input(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "an input must be an array of literal strings");
  std::vector<std::string> texts;
  for (const auto& t : v) {
    if (!t.is_string()) fail(where, "an input must be an array of literal strings");
    texts.push_back(t.get<std::string>());
  }
  std::size_t index = 0;
  try {
    return parse_arguments(texts, &index);
  } catch (const ParseError& e) {
    fail(where, "argument " + std::to_string(index + 1) + ": parse error at " + std::to_string(e.position()) + ": " +
                    e.message());
  }
}

std::vector<Args> inputs(const json& obj, const char* key, const std::string& where) {
  std::vector<Args> out;
  const json& arr = array_field(obj, key, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(input(arr[i], where + "." + key + "[" + std::to_string(i) + "]"));
  return out;
}

ClassSpec class_spec(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  ClassSpec spec;
  spec.generator = text_field(v, "generator_name", where + "." + key);
  if (v.contains("parameters")) spec.parameters = v.at("parameters");
  if (!spec.parameters.is_object()) fail(where + "." + key, "parameters must be an object");
  return spec;
}

ProblemDef parse_problem(const json& pj, std::size_t index) {
  std::string where = "problems[" + std::to_string(index) + "]";
  ProblemDef p;
  p.id = text_field(pj, "id", where);
  where = "problem " + p.id;
  p.title = text_field(pj, "title", where);
  p.function_name = text_field(pj, "function_name", where);
  p.public_spec = text_field(pj, "public_spec", where);
  p.hidden_spec = text_field(pj, "hidden_spec", where);
  for (const auto& hd : array_field(pj, "hidden_details", where)) {
    HiddenDetail d;
    d.text = text_field(hd, "text", where + ".hidden_details");
    const json& r = field(hd, "reconstructed", where + ".hidden_details");
    if (!r.is_boolean()) fail(where, "hidden_details.reconstructed must be true or false");
    d.reconstructed = r.get<bool>();
    p.hidden_details.push_back(std::move(d));
  }
  for (const auto& name : string_list(pj, "domain", where)) {
    auto d = parse_arg_domain(name);
    if (!d) fail(where, "unknown argument domain '" + name + "'");
    p.domain.push_back(*d);
  }
  p.seed_input = input(field(pj, "seed_input", where), where + ".seed_input");
  p.reference = text_field(pj, "reference", where);
  p.foils = string_list(pj, "foils", where);
  p.coercions = string_list(pj, "coercions", where);
  p.base_class = class_spec(pj, "base_class", where);
  p.catch_all_class = class_spec(pj, "catch_all_class", where);
  p.verifier_suite = inputs(pj, "verifier_suite", where);
  const json& oms = array_field(pj, "omissions", where);
  for (std::size_t i = 0; i < oms.size(); ++i) {
    const json& oj = oms[i];
    const std::string ow = where + ".omissions[" + std::to_string(i) + "]";
    Omission o;
    o.id = text_field(oj, "id", ow);
    const std::string code = text_field(oj, "category", ow);
    auto cat = parse_category(code);
    if (!cat) fail(ow, "category must be one of D, B, R, T (got '" + code + "')");
    o.category = *cat;
    o.description = text_field(oj, "description", ow);
    o.simple_cases = inputs(oj, "simple_cases", ow);
    o.class_spec = class_spec(oj, "class_spec", ow);
    const std::string cmp = oj.contains("comparison") ? text_field(oj, "comparison", ow) : "lenient";
    auto mode = parse_comparison(cmp);
    if (!mode) fail(ow, "unknown comparison '" + cmp + "'");
    o.comparison = *mode;
    o.foil = oj.contains("foil") ? text_field(oj, "foil", ow) : "";
    p.omissions.push_back(std::move(o));
  }
  return p;
}

void check_solution(const ProblemDef& p, const std::string& name, const std::string& where) {
  const Solution* s = find_solution(name);
  if (s == nullptr) fail(where, "unknown solution '" + name + "'");
  if (s->problem != p.id) fail(where, "solution '" + name + "' belongs to problem " + s->problem);
}

std::unique_ptr<InputClass> check_class(const ProblemDef& p, const ClassSpec& spec, const std::string& where) {
  std::unique_ptr<InputClass> cls;
  try {
    cls = make_input_class(spec);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  for (const auto& b : cls->boundary()) {
    if (auto err = check_domain(p, b)) fail(where, "boundary input " + render_call(b) + " is out of domain: " + err->message);
  }
  return cls;
}

bool same_input(const Args& a, const Args& b) { return grading_equals(a, b); }

}  // namespace

const ProblemDef* Bank::find(std::string_view id) const {
  for (const auto& p : problems) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::size_t Bank::total_omissions() const {
  std::size_t n = 0;
  for (const auto& p : problems) n += p.omissions.size();
  return n;
}

void validate_problems(const std::vector<ProblemDef>& problems) {
  if (problems.empty()) fail("", "bank has no problems");
  std::set<std::string> ids;
  for (const auto& p : problems) {
    const std::string where = "problem " + p.id;
    if (p.id.empty()) fail("", "problem id must be non-empty");
    if (!ids.insert(p.id).second) fail(where, "duplicate problem id");
    if (p.function_name.empty()) fail(where, "function_name must be non-empty");
    if (p.domain.empty()) fail(where, "domain must list at least one argument");
    if (auto err = check_domain(p, p.seed_input)) fail(where, "seed_input is out of domain: " + err->message);
    check_solution(p, p.reference, where + ".reference");
    for (const auto& f : p.foils) check_solution(p, f, where + ".foils");
    for (const auto& c : p.coercions) {
      if (c != "integer_text_as_int" && c != "list_as_tuple") fail(where, "unknown coercion '" + c + "'");
    }
    for (const auto& d : p.hidden_details) {
      if (d.text.empty()) fail(where, "hidden detail text must be non-empty");
      if (p.public_spec.find(d.text) != std::string::npos) fail(where, "public_spec contains a hidden detail");
    }
    check_class(p, p.base_class, where + ".base_class");
    check_class(p, p.catch_all_class, where + ".catch_all_class");
    for (std::size_t i = 0; i < p.verifier_suite.size(); ++i) {
      const auto& in = p.verifier_suite[i];
      if (auto err = check_domain(p, in)) {
        fail(where, "verifier_suite[" + std::to_string(i) + "] is out of domain: " + err->message);
      }
      if (same_input(in, p.seed_input)) fail(where, "verifier_suite contains the seed input");
    }

    std::set<std::string> omission_ids;
    for (const auto& o : p.omissions) {
      const std::string ow = where + " omission " + o.id;
      if (!omission_ids.insert(o.id).second) fail(where, "duplicate omission id '" + o.id + "'");
      const std::string prefix = std::string(category_code(o.category)) + ".";
      if (o.id.rfind(prefix, 0) != 0) fail(ow, "id must start with its category code '" + prefix + "'");
      if (o.simple_cases.empty()) fail(ow, "at least one simple case is required");
      if (!o.foil.empty()) check_solution(p, o.foil, ow + ".foil");
      auto cls = check_class(p, o.class_spec, ow + ".class_spec");
      for (const auto& sc : o.simple_cases) {
        if (auto err = check_domain(p, sc)) fail(ow, "simple case " + render_call(sc) + " is out of domain: " + err->message);
        if (same_input(sc, p.seed_input)) fail(ow, "simple case equals the seed input");
        if (!cls->contains(sc)) fail(ow, "simple case " + render_call(sc) + " lies outside the omission class");
      }
    }
  }
}

Bank load_bank_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw BankError(std::string("bank is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "bank document must be an object");
  const json& schema = field(doc, "schema", "bank");
  if (!schema.is_number_integer() || schema.get<int>() != 1) fail("bank", "unsupported schema version");
  Bank bank;
  bank.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
  bank.digest = sha256_hex(text);
  const json& problems = array_field(doc, "problems", "bank");
  for (std::size_t i = 0; i < problems.size(); ++i) bank.problems.push_back(parse_problem(problems[i], i));
  validate_problems(bank.problems);
  return bank;
}

Bank load_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BankError("cannot read bank file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_bank_text(ss.str());
}

}  // namespace probeable
