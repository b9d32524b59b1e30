#pragma once

#include <cstdint>
#include <stdexcept>

namespace modex {

/// Four truth values ordered by precision (information content): Unknown is
/// the bottom of the diamond, Inconsistent the top, True and False sit
/// incomparably in between. The two-bit encoding makes join/meet plain
/// bitwise or/and.
enum class TruthValue : std::uint8_t {
  Unknown = 0b00,
  True = 0b01,
  False = 0b10,
  Inconsistent = 0b11,
};

constexpr TruthValue lub(TruthValue a, TruthValue b) {
  return static_cast<TruthValue>(static_cast<std::uint8_t>(a) |
                                 static_cast<std::uint8_t>(b));
}

constexpr TruthValue glb(TruthValue a, TruthValue b) {
  return static_cast<TruthValue>(static_cast<std::uint8_t>(a) &
                                 static_cast<std::uint8_t>(b));
}

/// a <=p b in the precision order.
constexpr bool leq_p(TruthValue a, TruthValue b) { return lub(a, b) == b; }

/// Swaps True and False; fixes Unknown and Inconsistent.
constexpr TruthValue negated(TruthValue v) {
  auto bits = static_cast<std::uint8_t>(v);
  return static_cast<TruthValue>(((bits & 1u) << 1) | ((bits >> 1) & 1u));
}

constexpr bool is_decided(TruthValue v) {
  return v == TruthValue::True || v == TruthValue::False;
}

constexpr char to_char(TruthValue v) {
  switch (v) {
    case TruthValue::Unknown: return 'u';
    case TruthValue::True: return 't';
    case TruthValue::False: return 'f';
    case TruthValue::Inconsistent: return 'i';
  }
  return '?';
}

inline TruthValue truth_value_from_char(char c) {
  switch (c) {
    case 'u': return TruthValue::Unknown;
    case 't': return TruthValue::True;
    case 'f': return TruthValue::False;
    case 'i': return TruthValue::Inconsistent;
    default: throw std::invalid_argument("not a truth value character");
  }
}

}  // namespace modex
