#include "stochata/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stochata {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

Rational rational_at(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(where + ": malformed rational '" + j.get<std::string>() + "'");
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(where + ": expected a rational string, got " + j.dump());
}

std::vector<std::string> names_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of names");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(where + ": names must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

RatVector vector_at(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    throw ParseError(where + ": expected a list of " + std::to_string(n) + " rationals");
  }
  RatVector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rational_at(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

RatMatrix grid_at(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  }
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = vector_at(j[r], cols, where + "[" + std::to_string(r) + "]");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

std::size_t symbol_at(const std::vector<std::string>& alphabet, const std::string& key,
                      const std::string& where) {
  auto it = std::find(alphabet.begin(), alphabet.end(), key);
  if (it == alphabet.end()) throw ParseError(where + ": unknown symbol '" + key + "'");
  return static_cast<std::size_t>(it - alphabet.begin());
}

Json grid_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

template <typename Build>
auto guarded(Build&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

StochasticAutomaton transducer_from(const Json& j) {
  const auto states = names_at(field(j, "states", "transducer"), "states");
  const auto inputs = names_at(field(j, "input", "transducer"), "input");
  const auto outputs = names_at(field(j, "output", "transducer"), "output");
  const std::size_t n = states.size();
  std::vector<RatMatrix> kernels(inputs.size() * outputs.size(), RatMatrix(n, n));
  const Json& ks = field(j, "kernels", "transducer");
  if (!ks.is_object()) throw ParseError("kernels: expected a map from input symbols");
  for (const auto& [a, by_output] : ks.items()) {
    const std::size_t ai = symbol_at(inputs, a, "kernels");
    if (!by_output.is_object()) throw ParseError("kernels." + a + ": expected a map from output symbols");
    for (const auto& [b, grid] : by_output.items()) {
      const std::size_t bi = symbol_at(outputs, b, "kernels." + a);
      kernels[ai * outputs.size() + bi] = grid_at(grid, n, n, "kernels." + a + "." + b);
    }
  }
  return guarded([&] { return StochasticAutomaton(states, inputs, outputs, std::move(kernels)); });
}

StochasticAcceptor acceptor_from(const Json& j) {
  const auto states = names_at(field(j, "states", "acceptor"), "states");
  const auto inputs = names_at(field(j, "input", "acceptor"), "input");
  const std::size_t n = states.size();
  std::vector<RatMatrix> matrices(inputs.size(), RatMatrix(n, n));
  const Json& ms = field(j, "matrices", "acceptor");
  if (!ms.is_object()) throw ParseError("matrices: expected a map from input symbols");
  for (const auto& [a, grid] : ms.items()) {
    matrices[symbol_at(inputs, a, "matrices")] = grid_at(grid, n, n, "matrices." + a);
  }
  RatVector initial = vector_at(field(j, "initial", "acceptor"), n, "initial");
  RatVector final = vector_at(field(j, "final", "acceptor"), n, "final");
  return guarded([&] {
    return StochasticAcceptor(states, inputs, std::move(matrices), std::move(initial),
                              std::move(final));
  });
}

}  // namespace

Model parse_model(std::string_view text) {
  const Json j = parse_json(text);
  const std::string kind = field(j, "kind", "file").is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "transducer") return transducer_from(j);
  if (kind == "acceptor") return acceptor_from(j);
  throw ParseError("kind: expected \"transducer\" or \"acceptor\"");
}

StochasticAutomaton parse_transducer(std::string_view text) {
  auto m = parse_model(text);
  if (auto* a = std::get_if<StochasticAutomaton>(&m)) return std::move(*a);
  throw ParseError("kind: expected a transducer file");
}

StochasticAcceptor parse_acceptor(std::string_view text) {
  auto m = parse_model(text);
  if (auto* a = std::get_if<StochasticAcceptor>(&m)) return std::move(*a);
  throw ParseError("kind: expected an acceptor file");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::filesystem::path& path) {
  Model m = parse_model(read_text(path));
  std::visit(
      [&](const auto& value) {
        try {
          require_valid(value);
        } catch (const std::invalid_argument& e) {
          throw ParseError(path.string() + ": " + e.what());
        }
      },
      m);
  return m;
}

StochasticAutomaton load_transducer(const std::filesystem::path& path) {
  auto m = load_model(path);
  if (auto* a = std::get_if<StochasticAutomaton>(&m)) return std::move(*a);
  throw ParseError(path.string() + ": expected a transducer file");
}

StochasticAcceptor load_acceptor(const std::filesystem::path& path) {
  auto m = load_model(path);
  if (auto* a = std::get_if<StochasticAcceptor>(&m)) return std::move(*a);
  throw ParseError(path.string() + ": expected an acceptor file");
}

std::string serialize(const StochasticAutomaton& a) {
  Json j;
  j["kind"] = "transducer";
  j["states"] = a.states();
  j["input"] = a.inputs();
  j["output"] = a.outputs();
  Json ks = Json::object();
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    Json by_output = Json::object();
    for (Symbol out = 0; out < a.num_outputs(); ++out)
      by_output[a.outputs()[out]] = grid_json(a.kernel(in, out));
    ks[a.inputs()[in]] = std::move(by_output);
  }
  j["kernels"] = std::move(ks);
  return j.dump(2) + "\n";
}

std::string serialize(const StochasticAcceptor& a) {
  Json j;
  j["kind"] = "acceptor";
  j["states"] = a.states();
  j["input"] = a.inputs();
  Json ms = Json::object();
  for (Symbol s = 0; s < a.num_inputs(); ++s) ms[a.inputs()[s]] = grid_json(a.matrix(s));
  j["matrices"] = std::move(ms);
  j["initial"] = vector_json(a.initial());
  j["final"] = vector_json(a.final());
  return j.dump(2) + "\n";
}

StochasticAutomaton parse_avc_spec(std::string_view text) {
  const Json j = parse_json(text);
  const auto inputs = names_at(field(j, "input", "avc"), "input");
  const auto outputs = names_at(field(j, "output", "avc"), "output");
  const Json& drift_json = field(j, "drift", "avc");
  if (!drift_json.is_array() || drift_json.empty()) throw ParseError("drift: expected a square grid");
  const std::size_t n = drift_json.size();
  const RatMatrix drift = grid_at(drift_json, n, n, "drift");
  const Json& em = field(j, "emission", "avc");
  std::vector<RatMatrix> emission;
  for (const auto& a : inputs) {
    emission.push_back(grid_at(field(em, a, "emission"), n, outputs.size(), "emission." + a));
  }
  return guarded([&] { return avc(inputs, outputs, emission, drift); });
}

}  // namespace stochata
