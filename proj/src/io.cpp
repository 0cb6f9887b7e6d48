#include "detloci/io.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace detloci {

ParseError::ParseError(const std::string& text, std::size_t position, const std::string& message)
    : InputError("parse error at position " + std::to_string(position) + " in '" + text + "': " + message),
      position_(position) {}

std::int64_t root_order_in(const std::string& text) {
  static const std::regex literal(R"(e\s*\(\s*[-+]?\d+\s*(?:/\s*(\d+)\s*)?\))");
  std::int64_t order = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), literal); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[1].matched) {
      const std::int64_t den = std::stoll(m[1].str());
      if (den > 0) order = lcm64(order, den);
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Polynomial grammar

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const Ring& ring) : s_(text), ring_(ring) {}

  LaurentPoly parse() {
    skip();
    if (at_end()) fail("empty polynomial");
    LaurentPoly result(ring_);
    bool first = true;
    while (true) {
      skip();
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      LaurentPoly term = parse_term();
      result = negative ? result - term : result + term;
      first = false;
      skip();
      if (at_end()) break;
    }
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(s_, pos_, msg); }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Integer parse_unsigned() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(s_.substr(start, pos_ - start));
  }

  std::int64_t parse_signed_small() {
    skip();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    Integer v = parse_unsigned();
    if (!v.fits_slong_p() || v > 1000000000) {
      pos_ = start;
      fail("integer out of range");
    }
    return negative ? -v.get_si() : v.get_si();
  }

  LaurentPoly parse_term() {
    CycloElem coeff(ring_.field, Rational(1));
    Exponent exp(static_cast<std::size_t>(ring_.nvars), 0);
    parse_factor(coeff, exp);
    while (true) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      parse_factor(coeff, exp);
    }
    return LaurentPoly::monomial(ring_, exp, coeff);
  }

  void parse_factor(CycloElem& coeff, Exponent& exp) {
    skip();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = parse_unsigned();
      Integer den = 1;
      skip();
      if (peek() == '/') {
        ++pos_;
        const std::size_t at = pos_;
        den = parse_unsigned();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      coeff *= CycloElem(ring_.field, Rational(num, den));
      return;
    }
    if (c == 'e') {
      const std::size_t start = pos_;
      ++pos_;
      skip();
      if (peek() != '(') fail("expected '(' after e");
      ++pos_;
      const std::int64_t a = parse_signed_small();
      std::int64_t b = 1;
      skip();
      if (peek() == '/') {
        ++pos_;
        b = parse_signed_small();
        if (b <= 0) fail("root-of-unity denominator must be positive");
      }
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      const TorsionAngle xi(a, b);
      if (ring_.order() % xi.den() != 0) {
        pos_ = start;
        fail("e(" + xi.to_string() + ") needs a cyclotomic order divisible by " + std::to_string(xi.den()) +
             " (current order " + std::to_string(ring_.order()) + ")");
      }
      coeff *= CycloElem::root(ring_.field, xi);
      return;
    }
    if (c == 's' || c == 't') {
      if (c != ring_.symbol) fail(std::string("variable '") + c + "' is not allowed here");
      ++pos_;
      int index = 0;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::size_t at = pos_;
        Integer v = parse_unsigned();
        if (v < 1 || v > ring_.nvars) {
          pos_ = at;
          fail("variable index out of range 1.." + std::to_string(ring_.nvars));
        }
        index = static_cast<int>(v.get_si()) - 1;
      } else if (ring_.nvars != 1) {
        fail("variable needs an index");
      }
      int power = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        const std::size_t at = pos_;
        power = static_cast<int>(parse_signed_small());
        if (power < 0 && !ring_.laurent) {
          pos_ = at;
          fail("negative exponent in a polynomial (non-Laurent) ring");
        }
      }
      exp[static_cast<std::size_t>(index)] += power;
      return;
    }
    if (c == '(') fail("parenthesized subexpressions are not supported; write an expanded sum");
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(const std::string& text, const Ring& ring) { return PolyParser(text, ring).parse(); }

AffineHyperplane parse_hyperplane(const std::string& text, std::size_t r) {
  if (r == 0) throw InputError("locus dimension must be positive");
  const Ring ring = Ring::make(static_cast<int>(r), false, 1, 's');
  const LaurentPoly p = parse_poly(text, ring);
  IntVec c(r, 0);
  std::int64_t c0 = 0;
  for (const auto& t : p.terms()) {
    const Rational q = t.coeff.coeffs()[0];
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
      throw ParseError(text, 0, "hyperplane coefficients must be integers");
    const std::int64_t v = q.get_num().get_si();
    int degree = 0, var = -1;
    for (std::size_t i = 0; i < r; ++i)
      if (t.exp[i] != 0) {
        degree += t.exp[i];
        var = static_cast<int>(i);
      }
    if (degree == 0) {
      c0 = v;
    } else if (degree == 1 && t.exp[static_cast<std::size_t>(var)] == 1) {
      c[static_cast<std::size_t>(var)] = v;
    } else {
      throw ParseError(text, 0, "hyperplanes must be affine linear");
    }
  }
  try {
    return AffineHyperplane(c, c0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(text, 0, e.what());
  }
}

IntVec parse_int_list(const std::string& text) {
  IntVec out;
  std::stringstream ss(text);
  std::string item;
  std::size_t offset = 0;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::logic_error&) {
      throw ParseError(text, offset, "expected an integer");
    }
    for (std::size_t i = used; i < item.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(item[i]))) throw ParseError(text, offset + i, "expected ','");
    offset += item.size() + 1;
  }
  if (out.empty()) throw ParseError(text, 0, "empty integer list");
  return out;
}

PrimeTorusDivisor parse_divisor(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(text, 0, "divisor must look like 'u1,u2:a/b'");
  try {
    return PrimeTorusDivisor(parse_int_list(text.substr(0, colon)), TorsionAngle::parse(text.substr(colon + 1)));
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(text, colon + 1, e.what());
  }
}

// ---------------------------------------------------------------------------
// JSON files

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    throw InputError("parse error at position " + std::to_string(at) + ": " + what);
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

void collect_strings(const Json& j, std::int64_t& order) {
  if (j.is_string()) {
    order = lcm64(order, root_order_in(j.get<std::string>()));
  } else if (j.is_array() || j.is_object()) {
    for (const auto& x : j) collect_strings(x, order);
  }
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string entry_text(const Json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<std::int64_t>());
  throw InputError("matrix entries must be strings or integers");
}

PolyMatrix read_rows(const Json& rows, const Ring& ring, std::size_t default_cols) {
  if (!rows.is_array()) throw InputError("matrix must be an array of rows");
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? default_cols : rows.at(0).size();
  PolyMatrix m = zero_matrix(ring, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols) throw InputError("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = parse_poly(entry_text(rows[i][j]), ring);
  }
  return m;
}

int int_key(const std::string& key) {
  try {
    std::size_t used = 0;
    int v = std::stoi(key, &used);
    if (used == key.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw InputError("degree key '" + key + "' is not an integer");
}

}  // namespace

std::int64_t resolve_order(const Json& doc, std::optional<std::int64_t> override_order) {
  std::int64_t needed = 1;
  collect_strings(doc, needed);
  if (override_order) {
    if (*override_order < 1) throw InputError("cyclotomic order must be positive");
    if (*override_order % needed != 0)
      throw InputError("cyclotomic order " + std::to_string(*override_order) +
                       " does not contain every root of unity in the input (need a multiple of " +
                       std::to_string(needed) + ")");
    return *override_order;
  }
  std::int64_t requested = 1;
  if (doc.contains("ring") && doc["ring"].contains("cyclotomic_order"))
    requested = doc["ring"]["cyclotomic_order"].get<std::int64_t>();
  if (requested < 1) throw InputError("cyclotomic order must be positive");
  return lcm64(requested, needed);
}

FreeComplex read_complex(const Json& doc, std::optional<std::int64_t> override_order) {
  const Json& ring_doc = field(doc, "ring");
  const int nvars = field(ring_doc, "nvars").get<int>();
  const bool laurent = ring_doc.value("laurent", true);
  const Ring ring = Ring::make(nvars, laurent, resolve_order(doc, override_order), 't');
  const Json& degrees = field(doc, "degrees");
  if (!degrees.is_array() || degrees.size() != 2) throw InputError("'degrees' must be [imin, imax]");
  const int imin = degrees[0].get<int>(), imax = degrees[1].get<int>();
  std::map<int, int> ranks;
  for (const auto& [key, value] : field(doc, "ranks").items()) ranks[int_key(key)] = value.get<int>();
  auto rank = [&](int i) {
    auto it = ranks.find(i);
    return it == ranks.end() ? 0 : it->second;
  };
  std::map<int, PolyMatrix> d;
  if (doc.contains("differentials"))
    for (const auto& [key, value] : doc["differentials"].items()) {
      const int i = int_key(key);
      d.emplace(i, read_rows(value, ring, static_cast<std::size_t>(rank(i))));
    }
  try {
    return FreeComplex(ring, imin, imax, std::move(ranks), std::move(d));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

MatrixInput read_matrix(const Json& doc, std::optional<std::int64_t> override_order) {
  int nvars = 1;
  bool laurent = false;
  if (doc.contains("ring")) {
    nvars = doc["ring"].value("nvars", 1);
    laurent = doc["ring"].value("laurent", false);
  }
  const Ring ring = Ring::make(nvars, laurent, resolve_order(doc, override_order), 't');
  return {ring, read_rows(field(doc, "rows"), ring, 0)};
}

namespace {

std::pair<AffineHyperplane, std::int64_t> read_hyperplane(const Json& h, std::size_t r) {
  if (h.is_string()) return {parse_hyperplane(h.get<std::string>(), r), 1};
  if (!h.is_object()) throw InputError("hyperplane must be a string or an object");
  const std::int64_t mult = h.value("mult", std::int64_t{1});
  if (h.contains("text")) return {parse_hyperplane(h["text"].get<std::string>(), r), mult};
  IntVec c = field(h, "c").get<IntVec>();
  if (c.size() != r) throw InputError("hyperplane normal has length " + std::to_string(c.size()) + ", expected " +
                                      std::to_string(r));
  try {
    return {AffineHyperplane(std::move(c), field(h, "c0").get<std::int64_t>()), mult};
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

HyperplaneLocus read_locus(const Json& doc) {
  const std::size_t r = field(doc, "r").get<std::size_t>();
  if (r == 0) throw InputError("locus dimension must be positive");
  HyperplaneLocus locus(r);
  try {
    if (doc.contains("hyperplanes"))
      for (const auto& h : doc["hyperplanes"]) {
        auto [plane, mult] = read_hyperplane(h, r);
        locus.add(plane, mult);
      }
    if (doc.contains("pieces"))
      for (const auto& p : doc["pieces"]) {
        const Json& list = p.is_array() ? p : field(p, "hyperplanes");
        std::vector<AffineHyperplane> eqs;
        for (const auto& h : list) eqs.push_back(read_hyperplane(h, r).first);
        locus.add_piece(LinearPiece(std::move(eqs)));
      }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return locus;
}

// ---------------------------------------------------------------------------
// Encoders

Json to_json(const LaurentPoly& p) { return p.to_string(); }

Json to_json(const IdealGens& ideal) {
  return Json{{"generators", ideal.to_strings()}, {"is_zero", ideal.is_zero()}, {"is_unit", ideal.is_unit()}};
}

Json to_json(const PrimeTorusDivisor& c, std::int64_t mult) {
  return Json{{"u", c.u}, {"xi", c.xi.to_string()}, {"mult", mult}};
}

Json to_json(const TorusDivisor& d) {
  Json out = Json::array();
  for (const auto& [c, m] : d.terms()) out.push_back(to_json(c, m));
  return out;
}

Json to_json(const AffineHyperplane& h, std::int64_t mult) {
  return Json{{"c", h.c}, {"c0", h.c0}, {"mult", mult}, {"text", h.to_string()}};
}

Json to_json(const HyperplaneLocus& l) {
  Json hs = Json::array();
  for (const auto& e : l.hyperplanes()) hs.push_back(to_json(e.h, e.mult));
  Json ps = Json::array();
  for (const auto& p : l.pieces()) {
    Json eqs = Json::array();
    for (const auto& h : p.equations) eqs.push_back(to_json(h));
    ps.push_back(Json{{"hyperplanes", eqs}});
  }
  return Json{{"r", l.dim()}, {"hyperplanes", hs}, {"pieces", ps}};
}

Json to_json(const Rational& q) { return q.get_str(); }

Json to_json(const UPoly& p) { return p.to_string(); }

Json to_json(const SupportReport& report) {
  Json cands = Json::array();
  for (const auto& c : report.candidates) cands.push_back(to_json(c));
  Json degrees = Json::array();
  for (const auto& d : report.degrees)
    degrees.push_back(Json{{"degree", d.degree},
                           {"delta0", to_json(d.delta0)},
                           {"delta1", to_json(d.delta1)},
                           {"minimal", to_json(d.minimal)},
                           {"effective", d.effective}});
  return Json{{"candidates", cands}, {"degrees", degrees}};
}

}  // namespace detloci
