#pragma once

// JSON encodings and the --alpha grammar.

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

#include "h4/expansion.hpp"
#include "h4/group.hpp"
#include "h4/surd.hpp"

namespace h4 {

using json = nlohmann::ordered_json;

// Integers go out as JSON numbers when they fit in 64 bits and as decimal
// strings otherwise; both forms are accepted on input.
inline json to_json(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0)
      throw Error(ErrorKind::ParseError, "not an integer: " + j.dump());
    return x;
  }
  throw Error(ErrorKind::ParseError, "expected an integer, got " + j.dump());
}

inline json to_json(const ZRt2& x) { return json::array({to_json(x.a()), to_json(x.b())}); }

inline ZRt2 zrt2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "expected [a, b], got " + j.dump());
  return ZRt2(int_from_json(j[0]), int_from_json(j[1]));
}

/// {"P":[a,b],"Q":[a,b],"D":[a,b],"S":[a,b]} for (P + Q√D)/S.
inline json to_json(const Surd& x) {
  const auto p = x.parts();
  return {{"P", to_json(p.P)}, {"Q", to_json(p.Q)}, {"D", to_json(p.D)}, {"S", to_json(p.S)}};
}

inline Surd surd_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "surd must be an object");
  for (const char* k : {"P", "Q", "D", "S"})
    if (!j.contains(k)) throw Error(ErrorKind::ParseError, std::string("surd is missing \"") + k + "\"");
  return Surd::make(zrt2_from_json(j["P"]), zrt2_from_json(j["Q"]), zrt2_from_json(j["D"]),
                    zrt2_from_json(j["S"]));
}

inline json to_json(const H4Fraction& f) {
  return {{"p", to_json(f.p)}, {"q", to_json(f.q)}, {"family", to_string(f.family)}};
}

/// Accepts only canonical forms.
inline H4Fraction fraction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q"))
    throw Error(ErrorKind::ParseError, "fraction must be {\"p\":…, \"q\":…}");
  const ZRt2 p = zrt2_from_json(j["p"]);
  const ZRt2 q = zrt2_from_json(j["q"]);
  const auto f = H4Fraction::from_pair(p, q);
  if (!f) throw Error(ErrorKind::ValidationError, "denominator is zero");
  if (f->p != p || f->q != q)
    throw Error(ErrorKind::ValidationError, "not in canonical form, expected " + f->str());
  if (j.contains("family") && j["family"] != to_string(f->family))
    throw Error(ErrorKind::ValidationError, "family does not match the fraction");
  return *f;
}

/// Exact value and a decimal rendering side by side.
inline json value_json(const Surd& x, int digits = 30) {
  return {{"exact", to_json(x)}, {"decimal", to_decimal(x, digits)}};
}

// ---------------------------------------------------------------------------

/// (3+√17)/(2√2).
inline Surd paper_example() { return Surd::make(ZRt2(3), ZRt2(1), ZRt2(17), ZRt2(0, 2)); }

using Alpha = std::variant<Surd, DigitStream>;

namespace detail {

inline std::vector<int> parse_digits(std::string_view s, std::size_t offset) {
  std::vector<int> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c < '1' || c > '3')
      throw Error(ErrorKind::ParseError,
                  "digit expected at position " + std::to_string(offset + i) + ", got '" + c + "'");
    out.push_back(c - '0');
  }
  return out;
}

}  // namespace detail

/// Surd JSON, a preset (`one`, `paper-example`), or `stream:<rule>` where the
/// rule is `four-blocks`, `three-powers`, a finite word `2121`, or an
/// eventually periodic word `21(2333)`.
inline Alpha parse_alpha(std::string_view spec) {
  if (spec == "one") return Surd(1);
  if (spec == "paper-example") return paper_example();
  constexpr std::string_view kStream = "stream:";
  if (spec.substr(0, kStream.size()) == kStream) {
    const std::string_view rule = spec.substr(kStream.size());
    if (rule == "four-blocks") return DigitStream::generated(DigitStream::Rule::FourBlocks);
    if (rule == "three-powers") return DigitStream::generated(DigitStream::Rule::ThreePowers);
    const auto open = rule.find('(');
    if (open == std::string_view::npos) {
      if (rule.empty()) throw Error(ErrorKind::ParseError, "empty digit word at position 7");
      return DigitStream::finite(detail::parse_digits(rule, kStream.size()));
    }
    if (rule.back() != ')')
      throw Error(ErrorKind::ParseError,
                  "')' expected at position " + std::to_string(kStream.size() + rule.size()));
    const auto pre = detail::parse_digits(rule.substr(0, open), kStream.size());
    const auto per = detail::parse_digits(rule.substr(open + 1, rule.size() - open - 2), kStream.size() + open + 1);
    return DigitStream::periodic(pre, per);
  }
  json j;
  try {
    j = json::parse(spec);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "at position " + std::to_string(e.byte) + ": " + e.what());
  }
  return surd_from_json(j);
}

}  // namespace h4
