#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"

namespace maxvol {

/// 3-CNF formula. Literals are DIMACS-style: +v / -v for variable v in
/// [1, num_vars].
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  static std::size_t var_of(int lit) { return static_cast<std::size_t>(std::abs(lit)); }
};

/// Parses DIMACS CNF restricted to clauses of exactly three distinct
/// variables. Comment lines ('c') are skipped; a '%' line ends the input.
inline CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    std::size_t p = 0;
    std::string_view tok;
    if (!detail::next_token(line, p, tok)) continue;
    if (tok.front() == 'c') continue;
    if (tok == "%") break;
    const std::string where = "DIMACS line " + std::to_string(line_no) + ": ";
    if (tok == "p") {
      if (have_header) throw ParseError(where + "duplicate problem line");
      std::string_view fmt, nv, nc, extra;
      if (!detail::next_token(line, p, fmt) || fmt != "cnf" || !detail::next_token(line, p, nv) ||
          !detail::next_token(line, p, nc) || detail::next_token(line, p, extra))
        throw ParseError(where + "malformed header, expected 'p cnf <vars> <clauses>'");
      f.num_vars = detail::parse_number<std::size_t>(nv, "variable count");
      declared_clauses = detail::parse_number<std::size_t>(nc, "clause count");
      if (f.num_vars == 0) throw ParseError(where + "variable count must be positive");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(where + "clause before 'p cnf' header");
    do {
      const int lit = detail::parse_number<int>(tok, "literal");
      if (lit == 0) {
        if (current.size() != 3)
          throw ParseError(where + "clause " + std::to_string(f.clauses.size() + 1) + " has " +
                           std::to_string(current.size()) + " literals, expected 3");
        const auto a = CnfFormula::var_of(current[0]), b = CnfFormula::var_of(current[1]),
                   c = CnfFormula::var_of(current[2]);
        if (a == b || a == c || b == c)
          throw ParseError(where + "clause " + std::to_string(f.clauses.size() + 1) +
                           " repeats a variable");
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      if (CnfFormula::var_of(lit) > f.num_vars)
        throw ParseError(where + "literal " + std::to_string(lit) + " exceeds variable count " +
                         std::to_string(f.num_vars));
      current.push_back(lit);
      if (current.size() > 3)
        throw ParseError(where + "clause " + std::to_string(f.clauses.size() + 1) +
                         " has more than 3 literals");
    } while (detail::next_token(line, p, tok));
  }
  if (!have_header) throw ParseError("DIMACS: missing 'p cnf' header");
  if (!current.empty()) throw ParseError("DIMACS: last clause is not terminated by 0");
  if (f.clauses.size() != declared_clauses)
    throw ParseError("DIMACS: header declares " + std::to_string(declared_clauses) +
                     " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return os.str();
}

/// Violations of the Max-3SAT(5) shape; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks: three distinct in-range variables per clause, every variable in
/// exactly five clauses, and 5n/3 clauses for n variables.
inline ValidationReport validate_3sat5(const CnfFormula& f) {
  ValidationReport rep;
  if (f.num_vars == 0) rep.violations.push_back("formula has no variables");
  if (f.clauses.empty()) rep.violations.push_back("formula has no clauses");
  if (f.num_vars % 3 != 0 || f.clauses.size() != 5 * f.num_vars / 3)
    rep.violations.push_back("clause count " + std::to_string(f.clauses.size()) +
                             " != 5n/3 for n = " + std::to_string(f.num_vars) + " variables");
  std::vector<std::size_t> occ(f.num_vars + 1, 0);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    const auto& c = f.clauses[i];
    bool in_range = true;
    for (int lit : c) {
      const auto v = CnfFormula::var_of(lit);
      if (lit == 0 || v > f.num_vars) {
        rep.violations.push_back("clause " + std::to_string(i + 1) + " has out-of-range literal " +
                                 std::to_string(lit));
        in_range = false;
      } else {
        ++occ[v];
      }
    }
    if (in_range && (CnfFormula::var_of(c[0]) == CnfFormula::var_of(c[1]) ||
                     CnfFormula::var_of(c[0]) == CnfFormula::var_of(c[2]) ||
                     CnfFormula::var_of(c[1]) == CnfFormula::var_of(c[2])))
      rep.violations.push_back("clause " + std::to_string(i + 1) + " repeats a variable");
  }
  for (std::size_t v = 1; v <= f.num_vars; ++v)
    if (occ[v] != 5)
      rep.violations.push_back("variable " + std::to_string(v) + " occurs in " +
                               std::to_string(occ[v]) + " clauses, expected 5");
  return rep;
}

/// Truth value of a literal under `assignment` (indexed by variable - 1).
inline bool literal_value(int lit, const std::vector<bool>& assignment) {
  const bool x = assignment[CnfFormula::var_of(lit) - 1];
  return lit > 0 ? x : !x;
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& c : f.clauses)
    if (!literal_value(c[0], assignment) && !literal_value(c[1], assignment) &&
        !literal_value(c[2], assignment))
      return false;
  return true;
}

}  // namespace maxvol
