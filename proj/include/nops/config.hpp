#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nops/report.hpp"

namespace nops {

/// Malformed input (ring file, config, command-line payload).
class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Ring description:
///   ring: Q[x,y] / (x^2)
///   radical: (x)
///   minimal-primes: [(x)]
/// Blank lines and lines starting with '#' are ignored. The radical may be
/// omitted only when the defining ideal is zero.
inline RingSpec parse_ring_text(std::string_view text) {
  std::optional<std::string> ring_line, radical_line, primes_line;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw InputError("ring: expected 'key: value', got '" + t + "'");
    std::string key = trim(t.substr(0, colon)), value = trim(t.substr(colon + 1));
    if (key == "ring") ring_line = value;
    else if (key == "radical") radical_line = value;
    else if (key == "minimal-primes") primes_line = value;
    else throw InputError("ring: unknown key '" + key + "'");
  }
  if (!ring_line) throw InputError("ring: missing 'ring:' line");

  const std::string& r = *ring_line;
  auto open = r.find('['), close = r.find(']');
  if (trim(r.substr(0, open == std::string::npos ? 0 : open)) != "Q" || open == std::string::npos ||
      close == std::string::npos || close < open)
    throw InputError("ring: expected Q[v1,...,vk]");
  RingSpec ring;
  for (const auto& v : split_top_level(r.substr(open + 1, close - open - 1), ',')) {
    std::string name = trim(v);
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
      throw InputError("ring: bad variable name '" + name + "'");
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw InputError("ring: bad variable name '" + name + "'");
    if (std::find(ring.vars.begin(), ring.vars.end(), name) != ring.vars.end())
      throw InputError("ring: duplicate variable '" + name + "'");
    ring.vars.push_back(name);
  }
  if (ring.vars.empty() || ring.vars.size() > kMaxVars) throw InputError("ring: need 1 to 12 variables");
  std::string rest = trim(r.substr(close + 1));
  std::vector<Polynomial> defining;
  if (!rest.empty()) {
    if (rest[0] != '/') throw InputError("ring: expected '/' after the variable list");
    defining = parse_polynomial_list(rest.substr(1), ring.vars);
  }
  ring.defining = IdealHandle(ring.nvars(), defining);
  if (radical_line) {
    ring.radical = parse_ideal(*radical_line, ring.vars);
  } else {
    if (!ring.defining.generators().empty()) throw InputError("ring: 'radical:' is required when the ring is not a polynomial ring");
    ring.radical = IdealHandle::zero(ring.nvars());
  }
  if (primes_line) {
    std::string body = trim(*primes_line);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw InputError("ring: minimal-primes must be [(...); ...]");
    for (const auto& part : split_top_level(body.substr(1, body.size() - 2), ';'))
      if (!trim(part).empty()) ring.minimal_primes.push_back(parse_ideal(part, ring.vars));
  }
  ring.validate();
  return ring;
}

inline std::string ring_summary(const RingSpec& ring) {
  std::string vars;
  for (std::size_t i = 0; i < ring.vars.size(); ++i) vars += (i ? "," : "") + ring.vars[i];
  std::string out = "Q[" + vars + "] / " + to_string(ring.defining, ring.vars);
  return out;
}

inline std::vector<std::size_t> parse_var_names(const std::vector<std::string>& names, const VarList& vars) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto it = std::find(vars.begin(), vars.end(), trim(n));
    if (it == vars.end()) throw InputError("unknown variable '" + n + "'");
    out.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ComponentSpec {
  std::string primary, prime;
  std::vector<std::string> independent;
};

enum class Mode { artin_rees, briancon_skoda, symbolic };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::artin_rees: return "artin_rees";
    case Mode::briancon_skoda: return "briancon_skoda";
    case Mode::symbolic: return "symbolic";
  }
  return "?";
}

struct ExperimentConfig {
  std::string ring_text;
  RingSpec ring;
  std::vector<std::pair<std::string, std::string>> ideals;
  std::vector<ComponentSpec> components;  // used when explicit_ops is empty
  std::optional<std::string> explicit_ops;
  Mode mode = Mode::artin_rees;
  unsigned n_max = 3, c_max = 3, degree = 12, verify_degree = 8;
  std::uint64_t seed = 1;
  unsigned dimension = 1;
  std::vector<std::string> witnesses;
  std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>> filtration;
  std::optional<std::string> out_path;
  std::string format = "csv";
};

namespace detail {

inline unsigned positive(const Json& j, const char* key, unsigned fallback, bool allow_zero = false) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < (allow_zero ? 0 : 1))
    throw InputError(std::string("config: '") + key + "' must be a " + (allow_zero ? "non-negative" : "positive") +
                     " integer");
  return v.get<unsigned>();
}

inline std::string text_of(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out;
    for (const auto& line : j) {
      if (!line.is_string()) throw InputError("config: " + what + " lines must be strings");
      out += line.get<std::string>() + "\n";
    }
    return out;
  }
  throw InputError("config: " + what + " must be a string or a list of strings");
}

inline std::vector<std::string> string_list(const Json& j, const std::string& what) {
  std::vector<std::string> out;
  if (!j.is_array()) throw InputError("config: " + what + " must be a list");
  for (const auto& s : j) {
    if (!s.is_string()) throw InputError("config: " + what + " entries must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw InputError("config: top level must be an object");
  static const std::vector<std::string> known = {"ring", "ideals", "operators", "mode", "parameters",
                                                 "symbolic", "filtration", "output"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("config: unknown key '" + k + "'");
  ExperimentConfig cfg;
  if (!j.contains("ring")) throw InputError("config: missing 'ring'");
  cfg.ring_text = detail::text_of(j.at("ring"), "ring");
  cfg.ring = parse_ring_text(cfg.ring_text);

  if (j.contains("ideals")) {
    const Json& fam = j.at("ideals");
    if (fam.is_object()) {
      for (const auto& [id, text] : fam.items()) {
        if (!text.is_string()) throw InputError("config: ideal '" + id + "' must be a string");
        cfg.ideals.emplace_back(id, text.get<std::string>());
      }
    } else if (fam.is_array()) {
      for (const auto& e : fam) {
        if (!e.is_object() || !e.contains("id") || !e.contains("ideal"))
          throw InputError("config: ideal entries need 'id' and 'ideal'");
        cfg.ideals.emplace_back(e.at("id").get<std::string>(), e.at("ideal").get<std::string>());
      }
    } else {
      throw InputError("config: 'ideals' must be an object or a list");
    }
    for (std::size_t a = 0; a < cfg.ideals.size(); ++a)
      for (std::size_t b = a + 1; b < cfg.ideals.size(); ++b)
        if (cfg.ideals[a].first == cfg.ideals[b].first) throw InputError("config: duplicate ideal id " + cfg.ideals[a].first);
  }

  if (!j.contains("operators")) throw InputError("config: missing 'operators'");
  const Json& ops = j.at("operators");
  if (ops.is_string()) {
    cfg.explicit_ops = ops.get<std::string>();
  } else if (ops.is_object() && ops.contains("explicit")) {
    cfg.explicit_ops = ops.at("explicit").get<std::string>();
  } else if (ops.is_object() && ops.contains("compute")) {
    for (const auto& c : ops.at("compute")) {
      if (!c.contains("primary") || !c.contains("prime")) throw InputError("config: components need 'primary' and 'prime'");
      ComponentSpec spec{c.at("primary").get<std::string>(), c.at("prime").get<std::string>(), {}};
      if (c.contains("independent")) spec.independent = detail::string_list(c.at("independent"), "independent");
      cfg.components.push_back(std::move(spec));
    }
    if (cfg.components.empty()) throw InputError("config: 'compute' needs at least one component");
  } else {
    throw InputError("config: 'operators' must be a string, {\"explicit\": ...} or {\"compute\": [...]}");
  }

  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "artin_rees") cfg.mode = Mode::artin_rees;
    else if (m == "briancon_skoda") cfg.mode = Mode::briancon_skoda;
    else if (m == "symbolic") cfg.mode = Mode::symbolic;
    else throw InputError("config: unknown mode '" + m + "'");
  }

  if (j.contains("parameters")) {
    const Json& p = j.at("parameters");
    if (!p.is_object()) throw InputError("config: 'parameters' must be an object");
    cfg.n_max = detail::positive(p, "n_max", cfg.n_max);
    cfg.c_max = detail::positive(p, "c_max", cfg.c_max, true);
    cfg.degree = detail::positive(p, "degree", cfg.degree);
    cfg.verify_degree = detail::positive(p, "verify_degree", cfg.verify_degree);
    if (p.contains("seed")) {
      if (!p.at("seed").is_number_unsigned()) throw InputError("config: 'seed' must be a non-negative integer");
      cfg.seed = p.at("seed").get<std::uint64_t>();
    }
  }

  if (j.contains("symbolic")) {
    const Json& s = j.at("symbolic");
    cfg.dimension = detail::positive(s, "dimension", cfg.dimension);
    if (s.contains("witnesses")) cfg.witnesses = detail::string_list(s.at("witnesses"), "witnesses");
  }
  if (cfg.witnesses.empty()) cfg.witnesses = {"1"};

  if (j.contains("filtration")) {
    const Json& f = j.at("filtration");
    cfg.filtration = std::make_pair(detail::string_list(f.at("chain"), "chain"), detail::string_list(f.at("primes"), "primes"));
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    if (o.contains("path")) cfg.out_path = o.at("path").get<std::string>();
    if (o.contains("format")) cfg.format = o.at("format").get<std::string>();
    if (cfg.format != "csv" && cfg.format != "json") throw InputError("config: output format must be csv or json");
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

/// Operators from explicit text (modulus rad) or computed per component and
/// combined so their common kernel is N.
inline OperatorSet resolve_operators(const ExperimentConfig& cfg) {
  const RingSpec& ring = cfg.ring;
  if (cfg.explicit_ops) return make_operator_set(parse_operator_list(*cfg.explicit_ops, ring.vars), ring.radical);
  std::vector<std::pair<PrimaryComponent, OperatorSet>> comps;
  for (const auto& c : cfg.components) {
    PrimaryComponent pc{parse_ideal(c.primary, ring.vars), parse_ideal(c.prime, ring.vars),
                        parse_var_names(c.independent, ring.vars)};
    comps.emplace_back(pc, noetherian_ops_primary(pc));
  }
  return combine_components(comps, ring, ring.defining);
}

struct ExperimentResult {
  Json bundle;
  ConstantReport report;
  int exit_code = 0;
};

/// Verifies the operators, runs the constant search for the configured
/// corollary (or the theorem itself), the reverse containment, and the
/// optional filtration checks. Output order follows the config.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, Mode mode, unsigned jobs) {
  const RingSpec& ring = cfg.ring;
  const VarList& vars = ring.vars;
  ExperimentResult out;
  OperatorSet ops = resolve_operators(cfg);
  auto cert = verify_noetherian_ops(ring.defining, ops, cfg.verify_degree);

  std::vector<std::pair<std::string, IdealHandle>> family;
  for (const auto& [id, text] : cfg.ideals) family.emplace_back(id, parse_ideal(text, vars));

  if (mode == Mode::artin_rees) {
    out.report = constant_grid(family, ops, ring, cfg.n_max, cfg.c_max, cfg.degree, jobs,
                               [&](const IdealHandle& img) { return power_schedule(img, ring); });
  } else if (mode == Mode::briancon_skoda) {
    out.report = bs_harness(family, ops, ring, cfg.n_max, cfg.c_max, cfg.degree, jobs);
  } else {
    std::vector<Polynomial> wit;
    for (const auto& w : cfg.witnesses) wit.push_back(parse_polynomial(w, vars));
    out.report = symb_harness(family, ops, ring, cfg.dimension, wit, cfg.n_max, cfg.c_max, cfg.degree, jobs);
  }

  Json b;
  b["mode"] = to_string(mode);
  b["ring"] = {{"presentation", ring_summary(ring)}, {"radical", to_string(ring.radical, vars)}};
  Json primes = Json::array();
  for (const auto& p : ring.minimal_primes) primes.push_back(to_string(p, vars));
  b["ring"]["minimal_primes"] = primes;
  b["seed"] = cfg.seed;
  b["parameters"] = {{"n_max", cfg.n_max}, {"c_max", cfg.c_max}, {"degree", cfg.degree},
                     {"verify_degree", cfg.verify_degree}};
  if (mode == Mode::symbolic) b["parameters"]["dimension"] = cfg.dimension;
  b["operators"] = {{"source", cfg.explicit_ops ? "explicit" : "compute"}, {"max_order", ops.max_order()}};
  b["certificate"] = to_json(cert, vars);

  Json rep = to_json(out.report, vars);
  b["rows"] = rep["rows"];
  b["aggregate_c"] = rep["aggregate_c"];

  std::vector<ReverseCheck> reverse(family.size() * cfg.n_max);
  parallel_for(reverse.size(), jobs, [&](std::size_t cell) {
    std::size_t k = cell / cfg.n_max;
    unsigned n = static_cast<unsigned>(cell % cfg.n_max) + 1;
    reverse[cell] = check_reverse(family[k].second, ops, ring, n, cfg.degree);
  });
  Json rev = Json::array();
  bool reverse_ok = true;
  for (std::size_t cell = 0; cell < reverse.size(); ++cell) {
    Json r = to_json(reverse[cell], vars);
    r["J_id"] = family[cell / cfg.n_max].first;
    r["n"] = cell % cfg.n_max + 1;
    rev.push_back(r);
    reverse_ok = reverse_ok && reverse[cell].passed;
  }
  b["reverse_checks"] = rev;

  bool filtration_ok = true;
  if (cfg.filtration) {
    std::vector<IdealHandle> chain, fprimes;
    for (const auto& t : cfg.filtration->first) chain.push_back(parse_ideal(t, vars));
    for (const auto& t : cfg.filtration->second) fprimes.push_back(parse_ideal(t, vars));
    auto f = verify_filtration(chain, fprimes, ring);
    Json fj = to_json(f);
    fj["k_times_e"] = f.length * ops.max_order();
    b["filtration"] = fj;
    filtration_ok = f.passed;
  }
  b["verdict"] = out.report.verdict;
  out.bundle = b;

  if (cert.status == CertificateStatus::refuted || !reverse_ok || !filtration_ok) out.exit_code = 2;
  else if (out.report.exhausted()) out.exit_code = 3;
  return out;
}

}  // namespace nops
