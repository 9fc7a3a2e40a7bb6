#pragma once

#include <string_view>

namespace cgent {

// Global (sum/difference) variables x± = x1 ± x2 and p± = p1 ± p2.
enum class Variable { XPlus, XMinus, PPlus, PMinus };

enum class Sign { Plus, Minus };

// Which kind of scan a joint-counts array came from.
enum class VariablePair { Position, Momentum };

// PlusMinus pairs (R+, S-); MinusPlus pairs (R-, S+).
enum class Pairing { PlusMinus, MinusPlus };

constexpr bool is_position(Variable v) {
  return v == Variable::XPlus || v == Variable::XMinus;
}

constexpr Sign sign_of(Variable v) {
  return (v == Variable::XPlus || v == Variable::PPlus) ? Sign::Plus
                                                        : Sign::Minus;
}

constexpr Sign position_sign(Pairing p) {
  return p == Pairing::PlusMinus ? Sign::Plus : Sign::Minus;
}

constexpr Sign momentum_sign(Pairing p) {
  return p == Pairing::PlusMinus ? Sign::Minus : Sign::Plus;
}

constexpr Variable variable_for(VariablePair pair, Sign s) {
  if (pair == VariablePair::Position)
    return s == Sign::Plus ? Variable::XPlus : Variable::XMinus;
  return s == Sign::Plus ? Variable::PPlus : Variable::PMinus;
}

std::string_view to_string(Variable v);
std::string_view to_string(Pairing p);
std::string_view to_string(VariablePair p);

}  // namespace cgent
