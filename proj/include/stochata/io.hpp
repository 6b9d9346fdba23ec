#pragma once

// Canonical JSON files for transducers and acceptors. Rationals are written
// as strings ("3/8", "1", "0"); serialization is stable so a canonically
// formatted file round-trips byte for byte.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "stochata/acceptor.hpp"
#include "stochata/automaton.hpp"

namespace stochata {

/// Malformed input; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Model = std::variant<StochasticAutomaton, StochasticAcceptor>;

/// Structural parse only. Kernels (or matrices) absent from the file are
/// zero. Probability laws are not checked.
Model parse_model(std::string_view text);
StochasticAutomaton parse_transducer(std::string_view text);
StochasticAcceptor parse_acceptor(std::string_view text);

/// Reads and parses a file, then checks the probability laws; violations
/// become ParseError naming the offending (input, state).
Model load_model(const std::filesystem::path& path);
StochasticAutomaton load_transducer(const std::filesystem::path& path);
StochasticAcceptor load_acceptor(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

std::string serialize(const StochasticAutomaton& a);
std::string serialize(const StochasticAcceptor& a);

/// AVC description: {"input": [...], "output": [...], "emission": {a: grid},
/// "drift": grid}. Emission grids are |S| x |output|.
StochasticAutomaton parse_avc_spec(std::string_view text);

}  // namespace stochata
