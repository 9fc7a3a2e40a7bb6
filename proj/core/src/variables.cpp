#include "cgent/variables.hpp"

namespace cgent {

std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::XPlus: return "x+";
    case Variable::XMinus: return "x-";
    case Variable::PPlus: return "p+";
    case Variable::PMinus: return "p-";
  }
  return "?";
}

std::string_view to_string(Pairing p) {
  return p == Pairing::PlusMinus ? "pm" : "mp";
}

std::string_view to_string(VariablePair p) {
  return p == VariablePair::Position ? "position" : "momentum";
}

}  // namespace cgent
