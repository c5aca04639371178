#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "dsc/errors.hpp"

namespace dsc {

// A coefficient algebra: commutative semiring with an involution (star).
// Instances are stateless; Value is a regular value type. try_subtract(b, a)
// returns the unique c with a + c = b when the semiring is cancellative (and
// such a c exists); non-cancellative instances throw UnsupportedInstance.
template <class S>
concept Semiring = requires(const typename S::Value& a, const typename S::Value& b,
                            const std::string& text) {
  typename S::Value;
  { S::zero() } -> std::same_as<typename S::Value>;
  { S::one() } -> std::same_as<typename S::Value>;
  { S::add(a, b) } -> std::same_as<typename S::Value>;
  { S::mul(a, b) } -> std::same_as<typename S::Value>;
  { S::star(a) } -> std::same_as<typename S::Value>;
  { S::try_subtract(a, b) } -> std::same_as<std::optional<typename S::Value>>;
  { S::is_idempotent(a) } -> std::same_as<bool>;
  { S::cancellative } -> std::convertible_to<bool>;
  { S::name() } -> std::convertible_to<std::string_view>;
  { S::to_text(a) } -> std::same_as<std::string>;
  { S::from_text(text) } -> std::same_as<typename S::Value>;
  { a == b } -> std::convertible_to<bool>;
};

// Natural numbers at arbitrary precision. Star is the identity; addition is
// cancellative; the only multiplicative idempotents are 0 and 1.
struct Naturals {
  using Value = boost::multiprecision::cpp_int;  // kept non-negative throughout

  static constexpr bool cancellative = true;

  static Value zero() { return Value(0); }
  static Value one() { return Value(1); }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value star(const Value& a) { return a; }

  static std::optional<Value> try_subtract(const Value& b, const Value& a) {
    if (a > b) return std::nullopt;
    return Value(b - a);
  }

  static bool is_idempotent(const Value& a) { return a * a == a; }

  static std::string_view name() { return "naturals"; }

  static std::string to_text(const Value& a) { return a.str(); }

  static Value from_text(const std::string& text) {
    if (text.empty()) throw DscError("BadNumber", "empty numeral");
    for (char c : text)
      if (c < '0' || c > '9')
        throw DscError("BadNumber", "not a decimal natural: '" + text + "'");
    return Value(text);
  }
};

// Two-element semiring under or/and. Star is the identity; addition is not
// cancellative (1 + 1 = 1 + 0); every element is idempotent.
struct Booleans {
  using Value = bool;

  static constexpr bool cancellative = false;

  static Value zero() { return false; }
  static Value one() { return true; }
  static Value add(const Value& a, const Value& b) { return a || b; }
  static Value mul(const Value& a, const Value& b) { return a && b; }
  static Value star(const Value& a) { return a; }

  static std::optional<Value> try_subtract(const Value&, const Value&) {
    throw UnsupportedInstance("the boolean semiring has no additive cancellation");
  }

  static bool is_idempotent(const Value&) { return true; }

  static std::string_view name() { return "boolean"; }

  static std::string to_text(const Value& a) { return a ? "true" : "false"; }

  static Value from_text(const std::string& text) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw DscError("BadNumber", "not a boolean: '" + text + "'");
  }
};

// Projector-eligibility for a single coordinate: fixed by star and squaring
// to itself.
template <Semiring S>
bool is_self_conjugate_idempotent(const typename S::Value& a) {
  return S::star(a) == a && S::is_idempotent(a);
}

}  // namespace dsc
