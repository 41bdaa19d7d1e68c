#pragma once

#include <gmpxx.h>

#include <istream>
#include <string>
#include <vector>

#include "hzeta/errors.hpp"

namespace hzeta {

// "p/q" or an integer, optional sign, no spaces inside.
inline mpq_class parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\r') t += ch;
  if (t.empty()) throw DomainError("empty rational");
  const auto slash = t.find('/');
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  const std::string num = t.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational '" + text + "'");
  mpz_class p(strip_plus(num)), q(den);
  if (q == 0) throw DomainError("zero denominator in '" + text + "'");
  mpq_class r(p, q);
  r.canonicalize();
  return r;
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

// One rational per line; blank lines and lines starting with '#' are skipped.
// The first field of a comma-separated line is used.
inline std::vector<mpq_class> read_rational_lines(std::istream& in) {
  std::vector<mpq_class> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string field = line.substr(first, line.find(',', first) - first);
    try {
      out.push_back(parse_rational(field));
    } catch (const DomainError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

}  // namespace hzeta
