#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "otnplan/milp.h"

namespace otnplan::milp {

namespace {

constexpr const char* kConstName = "const_one";
constexpr const char* kDummyName = "x_dummy";
constexpr int kTermsPerLine = 8;

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_expression(std::ostringstream& out, const std::vector<std::pair<std::string, double>>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& [name, coef] : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    if (first) {
      if (coef < 0) out << "- ";
      first = false;
    } else {
      out << (coef < 0 ? " - " : " + ");
    }
    const double mag = std::fabs(coef);
    if (mag != 1.0) out << number(mag) << ' ';
    out << name;
    ++on_line;
  }
}

}  // namespace

std::string emit_lp(const Model& model, const std::string& problem_name) {
  std::ostringstream out;
  out << "\\ Problem name: " << (problem_name.empty() ? "model" : problem_name) << "\n";
  out << "Minimize\n obj: ";
  std::vector<std::pair<std::string, double>> obj;
  for (const Variable& v : model.variables()) {
    if (v.objective != 0.0) obj.emplace_back(v.name, v.objective);
  }
  const bool has_offset = model.objective_offset() != 0.0;
  if (has_offset) obj.emplace_back(kConstName, model.objective_offset());
  if (obj.empty()) {
    out << "0 " << kDummyName;
  } else {
    write_expression(out, obj);
  }
  out << "\nSubject To\n";
  int unnamed = 0;
  for (const Constraint& c : model.constraints()) {
    std::string name = c.name.empty() ? "c" + std::to_string(unnamed++) : c.name;
    out << ' ' << name << ": ";
    std::vector<std::pair<std::string, double>> terms;
    for (const Term& t : c.terms) terms.emplace_back(model.variables()[t.var].name, t.coef);
    if (terms.empty()) {
      out << "0 " << kDummyName;
    } else {
      write_expression(out, terms);
    }
    out << (c.relation == Relation::kLessEqual ? " <= "
            : c.relation == Relation::kGreaterEqual ? " >= " : " = ")
        << number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) {
      if (v.lower == v.upper) out << ' ' << v.name << " = " << number(v.lower) << "\n";
      else if (v.lower != 0.0 || v.upper != 1.0)
        out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << "\n";
      continue;
    }
    const bool lo_inf = !std::isfinite(v.lower);
    const bool up_inf = !std::isfinite(v.upper);
    if (lo_inf && up_inf) {
      out << ' ' << v.name << " free\n";
    } else if (v.lower == v.upper) {
      out << ' ' << v.name << " = " << number(v.lower) << "\n";
    } else if (lo_inf) {
      out << " -inf <= " << v.name << " <= " << number(v.upper) << "\n";
    } else if (up_inf) {
      if (v.lower != 0.0) out << ' ' << v.name << " >= " << number(v.lower) << "\n";
    } else {
      out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << "\n";
    }
  }
  if (has_offset) out << ' ' << kConstName << " = 1\n";
  std::vector<std::string> binaries;
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) binaries.push_back(v.name);
  }
  if (!binaries.empty()) {
    out << "Binary\n";
    for (size_t k = 0; k < binaries.size(); ++k) {
      out << (k % 8 == 0 ? " " : " ") << binaries[k];
      if (k % 8 == 7 || k + 1 == binaries.size()) out << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary, kGeneral, kEnd };

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_number_token(const std::string& tok) {
  if (tok.empty()) return false;
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

std::optional<Section> section_keyword(const std::string& line) {
  const std::string l = lower_copy(line);
  if (l == "minimize" || l == "minimise" || l == "min") return Section::kObjective;
  if (l == "maximize" || l == "maximise" || l == "max") {
    throw ModelError("LP parser supports minimization only");
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t.") return Section::kConstraints;
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "binary" || l == "binaries" || l == "bin") return Section::kBinary;
  if (l == "general" || l == "generals" || l == "gen") return Section::kGeneral;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

// Splits "3 x + 2y<=4" style text into tokens: names, numbers, signs,
// relations and ':'.
std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '+' || c == '-' || c == ':') { toks.emplace_back(1, c); ++i; continue; }
    if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      ++i;
      if (i < text.size() && (text[i] == '=' || text[i] == '<' || text[i] == '>')) op += text[i++];
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      if (op == "==") op = "=";
      toks.push_back(op);
      continue;
    }
    size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
                                 text[j] == 'e' || text[j] == 'E' ||
                                 ((text[j] == '+' || text[j] == '-') && j > i &&
                                  (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
        ++j;
      }
    } else {
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '+' && text[j] != '-' && text[j] != ':' && text[j] != '<' &&
             text[j] != '>' && text[j] != '=') {
        ++j;
      }
    }
    toks.push_back(text.substr(i, j - i));
    i = j;
  }
  return toks;
}

struct ParsedTerm {
  std::string name;
  double coef;
};

// Parses a linear expression from toks[pos] up to a relation token or end.
std::vector<ParsedTerm> parse_expression(const std::vector<std::string>& toks, size_t& pos,
                                         double& constant) {
  std::vector<ParsedTerm> terms;
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  while (pos < toks.size()) {
    const std::string& t = toks[pos];
    if (t == "<=" || t == ">=" || t == "=") break;
    ++pos;
    if (t == "+") continue;
    if (t == "-") { sign = -sign; continue; }
    if (is_number_token(t)) {
      coef *= std::strtod(t.c_str(), nullptr);
      have_coef = true;
      continue;
    }
    terms.push_back({t, sign * coef});
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  if (have_coef) constant += sign * coef;
  return terms;
}

}  // namespace

Model parse_lp(const std::string& text) {
  Model model;
  std::map<std::string, std::string> sections_text;
  Section section = Section::kNone;
  std::string objective_text, constraints_text;
  std::vector<std::string> bound_lines, binary_names;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const auto bs = raw.find('\\');
    if (bs != std::string::npos) raw = raw.substr(0, bs);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(first, last - first + 1);
    if (auto kw = section_keyword(line)) {
      section = *kw;
      if (section == Section::kEnd) break;
      continue;
    }
    switch (section) {
      case Section::kObjective: objective_text += line + "\n"; break;
      case Section::kConstraints: constraints_text += line + "\n"; break;
      case Section::kBounds: bound_lines.push_back(line); break;
      case Section::kBinary: {
        std::istringstream names(line);
        std::string name;
        while (names >> name) binary_names.push_back(name);
        break;
      }
      case Section::kGeneral: throw ModelError("General integer variables are not supported");
      default: throw ModelError("LP text outside any section: " + line);
    }
  }

  auto var_id = [&](const std::string& name) -> int {
    if (auto id = model.find_variable(name)) return *id;
    return model.add_continuous(name, 0.0, kInfinity);
  };

  // Objective.
  {
    auto toks = tokenize(objective_text);
    size_t pos = 0;
    if (toks.size() >= 2 && toks[1] == ":") pos = 2;
    double constant = 0.0;
    auto terms = parse_expression(toks, pos, constant);
    double offset = constant;
    for (const auto& t : terms) {
      if (t.name == kDummyName) continue;
      if (t.name == kConstName) { offset += t.coef; continue; }
      auto& v = model.mutable_variables()[var_id(t.name)];
      v.objective += t.coef;
    }
    model.set_objective_offset(offset);
  }

  // Constraints.
  {
    auto toks = tokenize(constraints_text);
    size_t pos = 0;
    int unnamed = 0;
    while (pos < toks.size()) {
      std::string name;
      if (pos + 1 < toks.size() && toks[pos + 1] == ":") {
        name = toks[pos];
        pos += 2;
      } else {
        name = "c" + std::to_string(unnamed++);
      }
      double constant = 0.0;
      auto terms = parse_expression(toks, pos, constant);
      if (pos >= toks.size()) throw ModelError("constraint " + name + " lacks a relation");
      const std::string rel = toks[pos++];
      if (pos >= toks.size()) throw ModelError("constraint " + name + " lacks a right-hand side");
      double rhs_sign = 1.0;
      while (toks[pos] == "-" || toks[pos] == "+") {
        if (toks[pos] == "-") rhs_sign = -rhs_sign;
        ++pos;
      }
      if (!is_number_token(toks[pos])) throw ModelError("constraint " + name + " has a bad rhs");
      const double rhs = rhs_sign * std::strtod(toks[pos++].c_str(), nullptr) - constant;
      std::vector<Term> model_terms;
      for (const auto& t : terms) {
        if (t.name == kDummyName) continue;
        model_terms.push_back({var_id(t.name), t.coef});
      }
      const auto sep = name.find("__");
      std::string family = sep == std::string::npos ? "" : name.substr(0, sep);
      const Relation r = rel == "<=" ? Relation::kLessEqual
                         : rel == ">=" ? Relation::kGreaterEqual : Relation::kEqual;
      model.add_constraint(name, family, std::move(model_terms), r, rhs);
    }
  }

  // Binaries before bounds so explicit bounds can narrow them.
  for (const auto& name : binary_names) {
    auto& v = model.mutable_variables()[var_id(name)];
    v.kind = VarKind::kBinary;
    v.lower = 0.0;
    v.upper = 1.0;
  }

  for (const auto& line : bound_lines) {
    auto toks = tokenize(line);
    auto value_at = [&](size_t& p) {
      double s = 1.0;
      while (p < toks.size() && (toks[p] == "-" || toks[p] == "+")) {
        if (toks[p] == "-") s = -s;
        ++p;
      }
      if (p >= toks.size()) throw ModelError("bad bound line: " + line);
      const std::string t = lower_copy(toks[p++]);
      if (t == "inf" || t == "infinity") return s * kInfinity;
      if (!is_number_token(t)) throw ModelError("bad bound line: " + line);
      return s * std::strtod(t.c_str(), nullptr);
    };
    if (toks.size() == 2 && lower_copy(toks[1]) == "free") {
      if (toks[0] == kConstName) continue;
      auto& v = model.mutable_variables()[var_id(toks[0])];
      v.lower = -kInfinity;
      v.upper = kInfinity;
      continue;
    }
    size_t p = 0;
    const bool leading_value = is_number_token(toks[0]) || toks[0] == "-" || toks[0] == "+";
    if (leading_value) {
      // l <= x [<= u]
      const double lo = value_at(p);
      if (p >= toks.size() || toks[p] != "<=") throw ModelError("bad bound line: " + line);
      ++p;
      const std::string name = toks.at(p++);
      if (name == kConstName) continue;
      auto& v = model.mutable_variables()[var_id(name)];
      v.lower = lo;
      if (p < toks.size()) {
        if (toks[p] != "<=") throw ModelError("bad bound line: " + line);
        ++p;
        v.upper = value_at(p);
      }
      continue;
    }
    const std::string name = toks[0];
    p = 1;
    if (p >= toks.size()) throw ModelError("bad bound line: " + line);
    const std::string rel = toks[p++];
    const double val = value_at(p);
    if (name == kConstName) continue;
    auto& v = model.mutable_variables()[var_id(name)];
    if (rel == "<=") v.upper = val;
    else if (rel == ">=") v.lower = val;
    else { v.lower = val; v.upper = val; }
  }
  model.validate();
  return model;
}

}  // namespace otnplan::milp
