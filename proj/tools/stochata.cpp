// stochata: command-line front end.
//
// Exit status: 0 success or property holds, 1 property fails, 2 usage,
// parse or budget error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stochata/acceptor.hpp"
#include "stochata/automaton.hpp"
#include "stochata/budget.hpp"
#include "stochata/hmatrix.hpp"
#include "stochata/io.hpp"
#include "stochata/montecarlo.hpp"
#include "stochata/transform.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace stochata;

struct Globals {
  bool json = false;
  int decimals = -1;
  std::size_t budget = 0;
};
Globals g;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(const Rational& r) { return g.decimals >= 0 ? r.decimal(g.decimals) : r.str(); }

Json vec_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(num(x));
  return out;
}

Json grid_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r)));
  return out;
}

std::string vec_text(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

void print_grid(std::ostream& os, const RatMatrix& m, const std::vector<std::string>& row_names,
                const std::vector<std::string>& col_names) {
  std::size_t width = 1;
  std::size_t label = 0;
  for (const auto& c : col_names) width = std::max(width, c.size());
  for (const auto& r : row_names) label = std::max(label, r.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) width = std::max(width, num(m(r, c)).size());
  if (!col_names.empty()) {
    os << std::string(label, ' ');
    for (const auto& c : col_names) os << "  " << std::setw(static_cast<int>(width)) << c;
    os << '\n';
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << std::left << std::setw(static_cast<int>(label)) << (r < row_names.size() ? row_names[r] : "")
       << std::right;
    for (std::size_t c = 0; c < m.cols(); ++c)
      os << "  " << std::setw(static_cast<int>(width)) << num(m(r, c));
    os << '\n';
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

StochasticAutomaton transducer(const std::string& path) { return load_transducer(path); }
StochasticAcceptor acceptor(const std::string& path) { return load_acceptor(path); }

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(what + ": malformed rational '" + text + "'");
  }
}

std::size_t state_arg(const std::vector<std::string>& states, const std::string& text) {
  auto it = std::find(states.begin(), states.end(), text);
  if (it != states.end()) return static_cast<std::size_t>(it - states.begin());
  throw UsageError("unknown state '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Json automaton_json(const StochasticAutomaton& a) { return Json::parse(serialize(a)); }
Json acceptor_json(const StochasticAcceptor& a) { return Json::parse(serialize(a)); }

Json partition_json(const StochasticAutomaton& a, const Partition& p) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    Json members = Json::array();
    for (auto s : p.blocks[i]) members.push_back(a.states()[s]);
    blocks.push_back({{"members", members}, {"representative", a.states()[p.representatives[i]]}});
  }
  return blocks;
}

Json h_json(const StochasticAutomaton& a, const HMatrix& h) {
  Json labels = Json::array();
  for (const auto& l : h.labels) labels.push_back(format_pair(a, l));
  return {{"states", a.states()}, {"labels", labels}, {"dimension", h.dimension()},
          {"matrix", grid_json(h.matrix)}};
}

std::vector<std::string> h_labels(const StochasticAutomaton& a, const HMatrix& h) {
  std::vector<std::string> out;
  for (const auto& l : h.labels) out.push_back(format_pair(a, l));
  return out;
}

std::string word_text(const std::vector<std::string>& alphabet, const Word& w) {
  return format_word(alphabet, w);
}

// ---- verbs ---------------------------------------------------------------

int cmd_validate(const std::string& path) {
  const Model m = parse_model(read_text(path));
  std::vector<std::string> problems;
  std::string kind;
  if (const auto* a = std::get_if<StochasticAutomaton>(&m)) {
    kind = "transducer";
    for (const auto& v : validate(*a).violations) problems.push_back(v.message);
  } else {
    kind = "acceptor";
    problems = validate_acceptor(std::get<StochasticAcceptor>(m)).violations;
  }
  if (g.json) {
    emit({{"kind", kind}, {"valid", problems.empty()}, {"violations", problems}});
  } else {
    std::cout << kind << ": " << (problems.empty() ? "valid" : "invalid") << '\n';
    for (const auto& p : problems) std::cout << "  " << p << '\n';
  }
  return problems.empty() ? 0 : 1;
}

int cmd_eta(const std::string& path, const std::string& x_text, const std::string& y_text) {
  const auto a = transducer(path);
  const Word x = parse_word(a.inputs(), x_text);
  const Word y = parse_word(a.outputs(), y_text);
  if (x.size() != y.size()) {
    std::cerr << "warning: |x| != |y|, the result vector is zero\n";
  }
  const auto r = result_vector(a, x, y);
  if (g.json) {
    emit({{"label", format_pair(a, r.label)}, {"states", a.states()}, {"values", vec_json(r.values)}});
  } else {
    std::cout << "eta(" << format_pair(a, r.label) << ") = " << vec_text(r.values) << '\n';
  }
  return 0;
}

int cmd_hmatrix(const std::string& path) {
  const auto a = transducer(path);
  const HMatrix h = build_h(a);
  if (g.json) {
    emit(h_json(a, h));
  } else {
    std::cout << "dimension: " << h.dimension() << '\n';
    print_grid(std::cout, h.matrix, a.states(), h_labels(a, h));
  }
  return 0;
}

int cmd_equiv(const std::vector<std::string>& files, const std::string& states_text,
              std::optional<std::size_t> k) {
  if (files.size() == 1) {
    const auto a = transducer(files[0]);
    const auto names = split(states_text, ',');
    if (names.size() != 2) throw UsageError("equiv with one file needs --states s,t");
    const auto i = state_arg(a.states(), names[0]);
    const auto j = state_arg(a.states(), names[1]);
    bool result;
    Json out{{"states", names}};
    if (k) {
      result = k_equiv(a, StateDistribution::unit(a.num_states(), i), a,
                       StateDistribution::unit(a.num_states(), j), *k, g.budget);
      out["k"] = *k;
      out["k_equivalent"] = result;
    } else {
      result = states_equiv(a, i, j);
      out["equivalent"] = result;
    }
    if (g.json) {
      emit(out);
    } else {
      std::cout << names[0] << (result ? " ~ " : " !~ ") << names[1];
      if (k) std::cout << " (words up to length " << *k << ")";
      std::cout << '\n';
    }
    return result ? 0 : 1;
  }
  if (files.size() != 2) throw UsageError("equiv takes one or two files");
  if (!states_text.empty() || k) throw UsageError("--states/--k apply to a single file");
  const auto a = transducer(files[0]);
  const auto b = transducer(files[1]);
  const bool s_eq = s_equivalent(a, b);
  const bool eq = automata_equivalent(a, b);
  if (g.json) {
    emit({{"s_equivalent", s_eq}, {"equivalent", eq}});
  } else {
    std::cout << "S-equivalent: " << (s_eq ? "true" : "false") << '\n';
    std::cout << "equivalent: " << (eq ? "true" : "false") << '\n';
  }
  return s_eq ? 0 : 1;
}

int cmd_covers(const std::string& pa, const std::string& pb) {
  const auto a = transducer(pa);
  const auto b = transducer(pb);
  const auto cert = covers(a, b);
  if (g.json) {
    Json out{{"covers", cert.has_value()}};
    if (cert) out["q"] = grid_json(cert->q);
    emit(out);
  } else {
    std::cout << "covers: " << (cert ? "true" : "false") << '\n';
    if (cert) {
      std::cout << "Q:\n";
      print_grid(std::cout, cert->q, b.states(), a.states());
    }
  }
  return cert ? 0 : 1;
}

void emit_transducer(const StochasticAutomaton& a, Json extra) {
  if (g.json) {
    extra["automaton"] = automaton_json(a);
    emit(extra);
  } else {
    std::cout << serialize(a);
  }
}

int cmd_reduce(const std::string& path, const std::string& reps) {
  const auto a = transducer(path);
  std::vector<std::size_t> preferred;
  for (const auto& name : split(reps, ',')) preferred.push_back(state_arg(a.states(), name));
  const auto [b, part] = reduce(a, preferred);
  if (!g.json) {
    for (std::size_t i = 0; i < part.blocks.size(); ++i) {
      std::cerr << "class " << i + 1 << ":";
      for (auto s : part.blocks[i]) std::cerr << ' ' << a.states()[s];
      std::cerr << " -> " << a.states()[part.representatives[i]] << '\n';
    }
  }
  emit_transducer(b, {{"partition", partition_json(a, part)}});
  return 0;
}

int cmd_minimize(const std::string& path) {
  const auto a = transducer(path);
  const auto b = minimize(a);
  if (!g.json) std::cerr << a.num_states() << " -> " << b.num_states() << " states\n";
  emit_transducer(b, {{"states_before", a.num_states()}, {"states_after", b.num_states()}});
  return 0;
}

int cmd_classify(const std::string& path) {
  const auto a = transducer(path);
  const auto r = classify(a);
  const std::vector<std::pair<std::string, bool>> flags{
      {"reduced", r.reduced},
      {"minimal", r.minimal},
      {"strongly_reduced", r.strongly_reduced},
      {"observable", r.observable},
      {"state_determined", r.state_determined},
      {"output_determined", r.output_determined},
      {"determined", r.determined},
      {"mealy", r.mealy},
      {"moore", r.moore}};
  if (g.json) {
    Json out;
    for (const auto& [k, v] : flags) out[k] = v;
    out["simplex_dimension"] = r.simplex_dimension;
    if (r.delta) {
      Json d = Json::object();
      for (Symbol in = 0; in < a.num_inputs(); ++in) {
        Json row = Json::object();
        for (std::size_t s = 0; s < a.num_states(); ++s) row[a.states()[s]] = a.states()[(*r.delta)[in][s]];
        d[a.inputs()[in]] = row;
      }
      out["delta"] = d;
    }
    if (r.lambda) {
      Json l = Json::object();
      for (Symbol in = 0; in < a.num_inputs(); ++in) {
        Json row = Json::object();
        for (std::size_t s = 0; s < a.num_states(); ++s) row[a.states()[s]] = a.outputs()[(*r.lambda)[in][s]];
        l[a.inputs()[in]] = row;
      }
      out["lambda"] = l;
    }
    if (r.mealy_factors) {
      Json m = Json::object();
      for (Symbol in = 0; in < a.num_inputs(); ++in) {
        Json row = Json::object();
        for (std::size_t s = 0; s < a.num_states(); ++s)
          row[a.states()[s]] = {{"output", vec_json(r.mealy_factors->output[in][s])},
                                {"transition", vec_json(r.mealy_factors->transition[in][s])}};
        m[a.inputs()[in]] = row;
      }
      out["mealy_factors"] = m;
    }
    if (r.moore_factors) {
      Json mu = Json::object();
      for (std::size_t s = 0; s < a.num_states(); ++s) mu[a.states()[s]] = vec_json(r.moore_factors->emission[s]);
      out["moore_emission"] = mu;
    }
    emit(out);
  } else {
    for (const auto& [k, v] : flags) std::cout << k << ": " << (v ? "true" : "false") << '\n';
    std::cout << "simplex_dimension: " << r.simplex_dimension << '\n';
  }
  return 0;
}

int cmd_to_moore(const std::string& path) {
  const auto a = transducer(path);
  const auto [m, phi] = to_moore(a);
  Json map = Json::object();
  for (std::size_t i = 0; i < phi.size(); ++i) map[m.states()[i]] = a.states()[phi[i]];
  emit_transducer(m, {{"phi", map}});
  return 0;
}

int cmd_check_hom(const std::string& pa, const std::string& pb, const std::string& map_text) {
  const auto a = transducer(pa);
  const auto b = transducer(pb);
  StateMapping phi(a.num_states(), b.num_states());
  for (const auto& item : split(map_text, ',')) {
    const auto gt = item.find('>');
    if (gt == std::string::npos) throw UsageError("--map entries look like s1>t1");
    const auto s = state_arg(a.states(), item.substr(0, gt));
    phi[s] = state_arg(b.states(), item.substr(gt + 1));
  }
  for (std::size_t s = 0; s < phi.size(); ++s)
    if (phi[s] == b.num_states()) throw UsageError("--map leaves state '" + a.states()[s] + "' unmapped");
  const bool ok = check_s_homomorphism(a, b, phi);
  if (g.json) {
    emit({{"homomorphism", ok}});
  } else {
    std::cout << "S-homomorphism: " << (ok ? "true" : "false") << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_isomorphic(const std::string& pa, const std::string& pb) {
  const auto a = transducer(pa);
  const auto b = transducer(pb);
  const auto phi = is_isomorphic(a, b);
  if (g.json) {
    Json out{{"isomorphic", phi.has_value()}};
    if (phi) {
      Json map = Json::object();
      for (std::size_t i = 0; i < phi->size(); ++i) map[a.states()[i]] = b.states()[(*phi)[i]];
      out["mapping"] = map;
    }
    emit(out);
  } else {
    std::cout << "isomorphic: " << (phi ? "true" : "false") << '\n';
    if (phi)
      for (std::size_t i = 0; i < phi->size(); ++i)
        std::cout << "  " << a.states()[i] << " -> " << b.states()[(*phi)[i]] << '\n';
  }
  return phi ? 0 : 1;
}

int cmd_accept(const std::string& path, const std::string& word, const std::string& cut) {
  const auto a = acceptor(path);
  const Word x = parse_word(a.inputs(), word);
  const Rational p = accept_prob(a, x);
  Json out{{"word", word_text(a.inputs(), x)}, {"probability", num(p)}};
  if (!cut.empty()) out["member"] = p > CutPoint(rational_arg(cut, "--cutpoint")).value();
  if (g.json) {
    emit(out);
  } else {
    std::cout << "P(" << word_text(a.inputs(), x) << ") = " << num(p) << '\n';
    if (out.contains("member")) std::cout << "member: " << (out["member"].get<bool>() ? "true" : "false") << '\n';
  }
  return 0;
}

int cmd_lang(const std::string& path, const std::string& cut, std::size_t maxlen) {
  const auto a = acceptor(path);
  const auto sample = enumerate_language(a, CutPoint(rational_arg(cut, "--cutpoint")), maxlen, g.budget);
  if (g.json) {
    Json words = Json::array();
    for (std::size_t i = 0; i < sample.accepted.size(); ++i)
      words.push_back({{"word", word_text(a.inputs(), sample.accepted[i])},
                       {"probability", num(sample.probabilities[i])}});
    emit({{"cutpoint", cut}, {"max_len", maxlen}, {"accepted", words}});
  } else {
    std::cout << sample.accepted.size() << " words accepted (length <= " << maxlen << ")\n";
    for (std::size_t i = 0; i < sample.accepted.size(); ++i)
      std::cout << "  " << word_text(a.inputs(), sample.accepted[i]) << "  " << num(sample.probabilities[i]) << '\n';
  }
  return 0;
}

void emit_acceptor(const StochasticAcceptor& a, Json extra) {
  if (g.json) {
    extra["acceptor"] = acceptor_json(a);
    emit(extra);
  } else {
    std::cout << serialize(a);
  }
}

int cmd_determinize(const std::string& path, bool full) {
  const auto a = acceptor(path);
  emit_acceptor(determinize_zero(a, full), Json::object());
  return 0;
}

int cmd_rescale(const std::string& path, const std::string& from, const std::string& to) {
  const auto a = acceptor(path);
  const CutPoint lambda(rational_arg(from, "--from"));
  const Rational mu = rational_arg(to, "--to");
  emit_acceptor(rescale_cutpoint(a, lambda, mu), {{"from", from}, {"to", to}});
  return 0;
}

int cmd_normalize(const std::string& path, const std::string& cut) {
  const auto a = acceptor(path);
  emit_acceptor(normalize_initial(a, CutPoint(rational_arg(cut, "--cutpoint"))), {{"cutpoint", cut}});
  return 0;
}

int cmd_padic(unsigned base) {
  emit_acceptor(padic(base), {{"base", base}});
  return 0;
}

int cmd_isolation(const std::string& path, const std::string& cut, std::size_t maxlen) {
  const auto a = acceptor(path);
  const auto gap = isolation_gap(a, CutPoint(rational_arg(cut, "--cutpoint")), maxlen, g.budget);
  if (g.json) {
    emit({{"cutpoint", num(gap.lambda)}, {"max_len", gap.max_len}, {"gap", num(gap.gap)},
          {"witness", word_text(a.inputs(), gap.witness)}});
  } else {
    std::cout << "scanned gap (length <= " << maxlen << "): " << num(gap.gap) << '\n';
    std::cout << "witness: " << word_text(a.inputs(), gap.witness) << '\n';
    std::cout << "note: an upper bound on the isolation radius, not a proof of isolation\n";
  }
  return 0;
}

int cmd_nerode(const std::string& path, const std::string& cut, std::size_t prefix, std::size_t suffix) {
  const auto a = acceptor(path);
  const auto n = distinguishability_classes(a, CutPoint(rational_arg(cut, "--cutpoint")), prefix, suffix, g.budget);
  if (g.json) {
    emit({{"cutpoint", cut}, {"prefix_len", prefix}, {"suffix_len", suffix}, {"classes", n}});
  } else {
    std::cout << "distinguishable classes: " << n << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& path, const std::string& word, const std::optional<std::string>& output,
                 const std::string& from, std::size_t samples, std::uint64_t seed) {
  const Model m = load_model(path);
  SimConfig config{samples, seed, 1};
  Estimate est;
  Rational exact;
  if (const auto* a = std::get_if<StochasticAutomaton>(&m)) {
    if (!output) throw UsageError("simulate on a transducer needs --output");
    const Word x = parse_word(a->inputs(), word);
    const Word y = parse_word(a->outputs(), *output);
    const StateDistribution pi = StateDistribution::unit(
        a->num_states(), from.empty() ? 0 : state_arg(a->states(), from));
    est = estimate_prob(*a, pi, x, y, config);
    exact = dist_prob(*a, pi, x, y);
  } else {
    const auto& acc = std::get<StochasticAcceptor>(m);
    const Word x = parse_word(acc.inputs(), word);
    est = estimate_accept(acc, x, config);
    exact = accept_prob(acc, x);
  }
  const double p = exact.to_double();
  const double band = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  const Rational freq = est.frequency();
  if (g.json) {
    emit({{"samples", samples}, {"seed", seed}, {"hits", est.hits}, {"empirical", num(freq)},
          {"exact", num(exact)}, {"band", band}});
  } else {
    std::cout << "empirical: " << num(freq) << " (" << std::setprecision(6) << freq.to_double() << ")\n";
    std::cout << "exact:     " << num(exact) << " (" << std::setprecision(6) << p << ")\n";
    std::cout << "4-sigma band: " << band << '\n';
  }
  return 0;
}

int cmd_channel_bsc(const std::string& p) {
  emit_transducer(bsc(rational_arg(p, "--p")), Json::object());
  return 0;
}

int cmd_channel_avc(const std::string& spec) {
  emit_transducer(parse_avc_spec(read_text(spec)), Json::object());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of stochastic automata and acceptors"};
  app.require_subcommand(1);
  g.budget = default_budget();
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--budget", g.budget, "Word enumeration budget (default from STOCHATA_BUDGET)");
  app.add_option("--decimal", g.decimals, "Display rationals rounded to k digits")->check(CLI::NonNegativeNumber);

  int status = 0;
  auto run = [&status](auto&& fn) { return [&status, fn] { status = fn(); }; };

  std::string f1, f2, word, output_word, cut, from, to, map_text, states_text, reps, avc_spec, p_text;
  std::vector<std::string> files;
  std::size_t maxlen = 0, prefix = 0, suffix = 0, samples = 100000;
  std::optional<std::size_t> k;
  std::optional<std::string> sim_output;
  std::uint64_t seed = 0;
  unsigned base = 2;
  bool full = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check probability laws");
  validate_cmd->add_option("file", f1)->required();
  validate_cmd->callback(run([&] { return cmd_validate(f1); }));

  auto* eta_cmd = app.add_subcommand("eta", "Result vector eta(y|x)");
  eta_cmd->add_option("file", f1)->required();
  eta_cmd->add_option("--word", word, "Input word x");
  eta_cmd->add_option("--output", output_word, "Output word y");
  eta_cmd->callback(run([&] { return cmd_eta(f1, word, output_word); }));

  auto* h_cmd = app.add_subcommand("hmatrix", "Basis of result vectors");
  h_cmd->add_option("file", f1)->required();
  h_cmd->callback(run([&] { return cmd_hmatrix(f1); }));

  auto* eq_cmd = app.add_subcommand("equiv", "S-equivalence of two automata, or of two states");
  eq_cmd->add_option("files", files)->required()->expected(1, 2);
  eq_cmd->add_option("--states", states_text, "Two states of a single automaton, s,t");
  eq_cmd->add_option("--k", k, "Compare words up to this length only");
  eq_cmd->callback(run([&] { return cmd_equiv(files, states_text, k); }));

  auto* cov_cmd = app.add_subcommand("covers", "Does A cover B");
  cov_cmd->add_option("a", f1)->required();
  cov_cmd->add_option("b", f2)->required();
  cov_cmd->callback(run([&] { return cmd_covers(f1, f2); }));

  auto* red_cmd = app.add_subcommand("reduce", "Quotient by state equivalence");
  red_cmd->add_option("file", f1)->required();
  red_cmd->add_option("--representatives", reps, "Preferred class representatives, comma separated");
  red_cmd->callback(run([&] { return cmd_reduce(f1, reps); }));

  auto* min_cmd = app.add_subcommand("minimize", "Remove states with convex-combination behaviour");
  min_cmd->add_option("file", f1)->required();
  min_cmd->callback(run([&] { return cmd_minimize(f1); }));

  auto* cls_cmd = app.add_subcommand("classify", "Structural properties");
  cls_cmd->add_option("file", f1)->required();
  cls_cmd->callback(run([&] { return cmd_classify(f1); }));

  auto* moore_cmd = app.add_subcommand("to-moore", "Equivalent Moore automaton over pairs (b,s)");
  moore_cmd->add_option("file", f1)->required();
  moore_cmd->callback(run([&] { return cmd_to_moore(f1); }));

  auto* hom_cmd = app.add_subcommand("check-hom", "Verify an S-homomorphism");
  hom_cmd->add_option("a", f1)->required();
  hom_cmd->add_option("b", f2)->required();
  hom_cmd->add_option("--map", map_text, "State map s1>t1,s2>t2,...")->required();
  hom_cmd->callback(run([&] { return cmd_check_hom(f1, f2, map_text); }));

  auto* iso_cmd = app.add_subcommand("isomorphic", "Search for a kernel-preserving bijection");
  iso_cmd->add_option("a", f1)->required();
  iso_cmd->add_option("b", f2)->required();
  iso_cmd->callback(run([&] { return cmd_isomorphic(f1, f2); }));

  auto* acc_cmd = app.add_subcommand("accept", "Acceptance probability of a word");
  acc_cmd->add_option("file", f1)->required();
  acc_cmd->add_option("--word", word, "Input word");
  acc_cmd->add_option("--cutpoint", cut, "Also report membership at this cut point");
  acc_cmd->callback(run([&] { return cmd_accept(f1, word, cut); }));

  auto* lang_cmd = app.add_subcommand("lang", "Enumerate the cut-point language");
  lang_cmd->add_option("file", f1)->required();
  lang_cmd->add_option("--cutpoint", cut)->required();
  lang_cmd->add_option("--maxlen", maxlen)->required();
  lang_cmd->callback(run([&] { return cmd_lang(f1, cut, maxlen); }));

  auto* det_cmd = app.add_subcommand("determinize0", "Deterministic acceptor for cut point 0");
  det_cmd->add_option("file", f1)->required();
  det_cmd->add_flag("--full-powerset", full, "Build all 2^n subsets");
  det_cmd->callback(run([&] { return cmd_determinize(f1, full); }));

  auto* res_cmd = app.add_subcommand("rescale", "Move the cut point");
  res_cmd->add_option("file", f1)->required();
  res_cmd->add_option("--from", from)->required();
  res_cmd->add_option("--to", to)->required();
  res_cmd->callback(run([&] { return cmd_rescale(f1, from, to); }));

  auto* norm_cmd = app.add_subcommand("normalize-init", "Single initial state");
  norm_cmd->add_option("file", f1)->required();
  norm_cmd->add_option("--cutpoint", cut)->required();
  norm_cmd->callback(run([&] { return cmd_normalize(f1, cut); }));

  auto* padic_cmd = app.add_subcommand("padic", "Emit the p-adic acceptor");
  padic_cmd->add_option("--base", base)->required()->check(CLI::Range(2u, 1000u));
  padic_cmd->callback(run([&] { return cmd_padic(base); }));

  auto* iso_gap = app.add_subcommand("isolation", "Scanned distance of acceptance values to the cut point");
  iso_gap->add_option("file", f1)->required();
  iso_gap->add_option("--cutpoint", cut)->required();
  iso_gap->add_option("--maxlen", maxlen)->required();
  iso_gap->callback(run([&] { return cmd_isolation(f1, cut, maxlen); }));

  auto* ner_cmd = app.add_subcommand("nerode", "Count prefixes separated by bounded suffixes");
  ner_cmd->add_option("file", f1)->required();
  ner_cmd->add_option("--cutpoint", cut)->required();
  ner_cmd->add_option("--prefix", prefix)->required();
  ner_cmd->add_option("--suffix", suffix)->required();
  ner_cmd->callback(run([&] { return cmd_nerode(f1, cut, prefix, suffix); }));

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate next to the exact value");
  sim_cmd->add_option("file", f1)->required();
  sim_cmd->add_option("--word", word);
  sim_cmd->add_option("--output", sim_output, "Output word (transducers)");
  sim_cmd->add_option("--from", from, "Start state (transducers; default first state)");
  sim_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed);
  sim_cmd->callback(run([&] { return cmd_simulate(f1, word, sim_output, from, samples, seed); }));

  auto* ch_cmd = app.add_subcommand("channel", "Emit channel transducers");
  ch_cmd->require_subcommand(1);
  auto* bsc_cmd = ch_cmd->add_subcommand("bsc", "Binary symmetric channel");
  bsc_cmd->add_option("--p", p_text)->required();
  bsc_cmd->callback(run([&] { return cmd_channel_bsc(p_text); }));
  auto* avc_cmd = ch_cmd->add_subcommand("avc", "Arbitrarily varying channel");
  avc_cmd->add_option("--spec", avc_spec)->required();
  avc_cmd->callback(run([&] { return cmd_channel_avc(avc_spec); }));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
