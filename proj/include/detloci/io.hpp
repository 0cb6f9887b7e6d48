#pragma once
// Text and JSON input/output: the polynomial grammar, complex, matrix and
// locus files, and JSON encodings of results.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "detloci/bsloci.hpp"
#include "detloci/complexes.hpp"
#include "detloci/smith.hpp"
#include "detloci/support.hpp"

namespace detloci {

using Json = nlohmann::json;

/// Malformed or inconsistent user input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar violation at a character offset (0-based) of the parsed text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& text, std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// lcm of the denominators b of every e(a/b) literal in the text (1 if none).
std::int64_t root_order_in(const std::string& text);

/// Parses an expanded sum such as "t1*t2-e(1/3)" or "3*s1+3*s2+4".  The
/// variable letter must match ring.symbol; a bare letter is accepted when the
/// ring has one variable.  Negative exponents require a Laurent ring.
LaurentPoly parse_poly(const std::string& text, const Ring& ring);

/// Parses "3*s1+3*s2+4" as the hyperplane {3 s1 + 3 s2 + 4 = 0} in dimension r.
AffineHyperplane parse_hyperplane(const std::string& text, std::size_t r);

IntVec parse_int_list(const std::string& text);
PrimeTorusDivisor parse_divisor(const std::string& text);  // "u1,u2:a/b"

Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

/// Cyclotomic order for a file: the requested order, raised to the lcm of
/// every e(a/b) literal found; an explicit override must contain them all.
std::int64_t resolve_order(const Json& doc, std::optional<std::int64_t> override_order);

FreeComplex read_complex(const Json& doc, std::optional<std::int64_t> override_order = std::nullopt);

struct MatrixInput {
  Ring ring;
  PolyMatrix matrix;
};
MatrixInput read_matrix(const Json& doc, std::optional<std::int64_t> override_order = std::nullopt);

HyperplaneLocus read_locus(const Json& doc);

Json to_json(const LaurentPoly& p);
Json to_json(const IdealGens& ideal);
Json to_json(const PrimeTorusDivisor& c, std::int64_t mult = 1);
Json to_json(const TorusDivisor& d);
Json to_json(const AffineHyperplane& h, std::int64_t mult = 1);
Json to_json(const HyperplaneLocus& l);
Json to_json(const Rational& q);
Json to_json(const UPoly& p);
Json to_json(const SupportReport& report);

}  // namespace detloci
