#pragma once

#include <string>

#include "stochata/io.hpp"

inline std::string example_path(const std::string& name) {
  return std::string(STOCHATA_EXAMPLES_DIR) + "/" + name + ".json";
}
inline stochata::StochasticAutomaton example_transducer(const std::string& name) {
  return stochata::load_transducer(example_path(name));
}
inline stochata::StochasticAcceptor example_acceptor(const std::string& name) {
  return stochata::load_acceptor(example_path(name));
}
inline stochata::Rational R(const char* text) { return stochata::Rational::parse(text); }
