#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nops/config.hpp"

namespace {

using namespace nops;

constexpr int kOk = 0, kInputError = 1, kRefuted = 2, kExhausted = 3;

struct Common {
  std::optional<unsigned> degree, n_max, c_max, jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format, out;
};

class Output {
 public:
  explicit Output(const Common& c) : path_(c.out) {}
  void write(const std::string& text) const {
    if (!path_) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(*path_, std::ios::binary);
    if (!f) throw InputError("cannot write " + *path_);
    f << text;
  }

 private:
  std::optional<std::string> path_;
};

bool want_json(const Common& c, const std::string& fallback) {
  std::string f = c.format.value_or(fallback);
  if (f != "csv" && f != "json" && f != "text") throw InputError("--format must be csv or json");
  return f == "json";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// "[(x); (y)]" or "(x); (y)" into ideals.
std::vector<IdealHandle> parse_ideal_list(const std::string& text, const VarList& vars) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw InputError("unbalanced '[' in ideal list");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<IdealHandle> out;
  for (const auto& part : split_top_level(body, ';'))
    if (!trim(part).empty()) out.push_back(parse_ideal(part, vars));
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& part : split_top_level(text, ','))
    if (!trim(part).empty()) out.push_back(trim(part));
  return out;
}

// "primary | prime | u1,u2"
PrimaryComponent parse_component(const std::string& text, const VarList& vars) {
  auto parts = split_top_level(text, '|');
  if (parts.size() < 2 || parts.size() > 3) throw InputError("--component expects 'primary | prime | independent'");
  PrimaryComponent c{parse_ideal(parts[0], vars), parse_ideal(parts[1], vars), {}};
  if (parts.size() == 3) c.independent = parse_var_names(split_names(parts[2]), vars);
  return c;
}

std::string certificate_text(const NoetherianCertificate& cert, const VarList& vars) {
  std::string out = to_string(cert.ops.ops, vars) + "\n";
  out += "status: " + to_string(cert.status) + "\n";
  out += "degree_bound: " + std::to_string(cert.degree_bound) + "\n";
  if (cert.witness) {
    out += "witness: " + to_string(*cert.witness, vars) + "\n";
    out += std::string("witness_side: ") +
           (cert.side == WitnessSide::in_ideal_not_killed ? "in_ideal_not_killed" : "killed_not_in_ideal") + "\n";
  }
  if (!cert.note.empty()) out += "note: " + cert.note + "\n";
  return out;
}

void apply_overrides(ExperimentConfig& cfg, const Common& c) {
  if (c.degree) cfg.degree = *c.degree;
  if (c.n_max) cfg.n_max = *c.n_max;
  if (c.c_max) cfg.c_max = *c.c_max;
  if (c.seed) cfg.seed = *c.seed;
  if (c.format) cfg.format = *c.format;
  if (c.out) cfg.out_path = *c.out;
  if (cfg.degree < 1 || cfg.n_max < 1) throw InputError("--degree and --n-max must be positive");
}

int run_report(const std::string& config_path, Mode mode, const Common& common) {
  ExperimentConfig cfg = load_config(config_path);
  apply_overrides(cfg, common);
  OperatorSet ops = resolve_operators(cfg);
  std::vector<std::pair<std::string, IdealHandle>> family;
  for (const auto& [id, text] : cfg.ideals) family.emplace_back(id, parse_ideal(text, cfg.ring.vars));
  unsigned jobs = common.jobs.value_or(1);
  ConstantReport rep;
  if (mode == Mode::artin_rees) {
    rep = constant_grid(family, ops, cfg.ring, cfg.n_max, cfg.c_max, cfg.degree, jobs,
                        [&](const IdealHandle& img) { return power_schedule(img, cfg.ring); });
  } else if (mode == Mode::briancon_skoda) {
    rep = bs_harness(family, ops, cfg.ring, cfg.n_max, cfg.c_max, cfg.degree, jobs);
  } else {
    std::vector<Polynomial> wit;
    for (const auto& w : cfg.witnesses) wit.push_back(parse_polynomial(w, cfg.ring.vars));
    rep = symb_harness(family, ops, cfg.ring, cfg.dimension, wit, cfg.n_max, cfg.c_max, cfg.degree, jobs);
  }
  Common sink = common;
  sink.out = cfg.out_path;
  Output out(sink);
  out.write(cfg.format == "json" ? dump(to_json(rep, cfg.ring.vars)) : to_csv(rep, cfg.ring.vars));
  return rep.exhausted() ? kExhausted : kOk;
}

int run_reverse(const std::string& config_path, const Common& common) {
  ExperimentConfig cfg = load_config(config_path);
  apply_overrides(cfg, common);
  OperatorSet ops = resolve_operators(cfg);
  const VarList& vars = cfg.ring.vars;
  std::vector<std::pair<std::string, IdealHandle>> family;
  for (const auto& [id, text] : cfg.ideals) family.emplace_back(id, parse_ideal(text, vars));
  std::vector<ReverseCheck> checks(family.size() * cfg.n_max);
  parallel_for(checks.size(), common.jobs.value_or(1), [&](std::size_t cell) {
    checks[cell] = check_reverse(family[cell / cfg.n_max].second, ops, cfg.ring,
                                 static_cast<unsigned>(cell % cfg.n_max) + 1, cfg.degree);
  });
  bool ok = true;
  Json arr = Json::array();
  std::string csv = "J_id,n,passed,checked,witness\n";
  for (std::size_t cell = 0; cell < checks.size(); ++cell) {
    const auto& r = checks[cell];
    const std::string& id = family[cell / cfg.n_max].first;
    std::size_t n = cell % cfg.n_max + 1;
    Json j = to_json(r, vars);
    j["J_id"] = id;
    j["n"] = n;
    arr.push_back(j);
    csv += csv_field(id) + "," + std::to_string(n) + "," + (r.passed ? "true" : "false") + "," +
           std::to_string(r.checked) + "," + csv_field(r.witness ? to_string(*r.witness, vars) : "") + "\n";
    ok = ok && r.passed;
  }
  Common sink = common;
  sink.out = cfg.out_path;
  Output(sink).write(cfg.format == "json" ? dump(Json{{"max_order", ops.max_order()}, {"checks", arr}}) : csv);
  return ok ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noetherian operators and differential uniformity experiments"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--degree", common.degree, "Truncation degree D");
    sub->add_option("--n-max", common.n_max, "Largest power n");
    sub->add_option("--c-max", common.c_max, "Largest constant c searched");
    sub->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", common.out, "Write output to PATH");
  };

  std::string ring_path, config_path, ideal_text, ops_text, modulus_text, a_text, b_text, prime_text, psi_text,
      chain_text, primes_text;
  std::vector<std::string> component_texts;
  unsigned power = 1, t_max = 3, coeff_deg = 1;
  std::optional<std::string> target_text;

  auto* noeth = app.add_subcommand("noeth-ops", "Noetherian operators of primary components");
  noeth->add_option("ring", ring_path, "Ring file")->required();
  noeth->add_option("--component", component_texts, "'primary | prime | independent vars'")->required();
  noeth->add_option("--ideal", target_text, "Target ideal (defaults to the ring's defining ideal)");
  add_common(noeth);

  auto* verify = app.add_subcommand("verify-ops", "Check that operators describe an ideal");
  verify->add_option("ring", ring_path, "Ring file")->required();
  verify->add_option("--ideal", ideal_text, "Ideal a")->required();
  verify->add_option("--ops", ops_text, "Operators, ';'-separated")->required();
  verify->add_option("--modulus", modulus_text, "Modulus (defaults to the ring's radical)");
  add_common(verify);

  auto* colon = app.add_subcommand("diff-colon", "Differential colon I^m : {ops} on P_{<=D}");
  colon->add_option("ring", ring_path, "Ring file")->required();
  colon->add_option("--ideal", ideal_text, "Ideal I")->required();
  colon->add_option("--power", power, "Power m");
  colon->add_option("--ops", ops_text, "Operators, ';'-separated")->required();
  add_common(colon);

  auto* findc = app.add_subcommand("find-c", "Minimal Artin-Rees constants");
  auto* reverse = app.add_subcommand("check-ar-reverse", "Reverse containment J^{n+e} in I^n : {ops}");
  auto* bs = app.add_subcommand("check-bs", "Integral-closure constants");
  auto* symb = app.add_subcommand("check-symb", "Symbolic-power constants");
  auto* exp = app.add_subcommand("experiment", "Full experiment bundle");
  for (auto* sub : {findc, reverse, bs, symb, exp}) {
    sub->add_option("config", config_path, "Experiment config (JSON)")->required();
    add_common(sub);
  }

  auto* sep = app.add_subcommand("sep-op", "Separating operator for a ⊊ b");
  sep->add_option("ring", ring_path, "Ring file")->required();
  sep->add_option("--a", a_text, "Ideal a")->required();
  sep->add_option("--b", b_text, "Ideal b")->required();
  sep->add_option("--prime", prime_text, "Associated prime p")->required();
  sep->add_option("--psi", psi_text, "Images of b's generators in R/p, ';'-separated")->required();
  sep->add_option("--t-max", t_max, "Largest operator order");
  sep->add_option("--coeff-deg", coeff_deg, "Coefficient degree");
  add_common(sep);

  auto* filt = app.add_subcommand("verify-filtration", "Check a prime filtration of R");
  filt->add_option("ring", ring_path, "Ring file")->required();
  filt->add_option("--chain", chain_text, "Ideals a_0; ...; a_k")->required();
  filt->add_option("--primes", primes_text, "Primes p_1; ...; p_k")->required();
  add_common(filt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    Output out(common);
    if (*noeth) {
      RingSpec ring = parse_ring_text(read_file(ring_path));
      std::vector<std::pair<PrimaryComponent, OperatorSet>> comps;
      for (const auto& t : component_texts) {
        PrimaryComponent c = parse_component(t, ring.vars);
        comps.emplace_back(c, noetherian_ops_primary(c));
      }
      IdealHandle target = target_text ? parse_ideal(*target_text, ring.vars)
                           : ring.defining.generators().empty() && comps.size() == 1 ? comps[0].first.primary
                                                                                    : ring.defining;
      OperatorSet ops = comps.size() == 1 && ideal_equal(target, comps[0].first.primary)
                            ? comps[0].second
                            : combine_components(comps, ring, target);
      auto cert = verify_noetherian_ops(target, ops, common.degree.value_or(8));
      out.write(want_json(common, "text") ? dump(to_json(cert, ring.vars)) : certificate_text(cert, ring.vars));
      return cert.status == CertificateStatus::refuted ? kRefuted : kOk;
    }
    if (*verify) {
      RingSpec ring = parse_ring_text(read_file(ring_path));
      IdealHandle a = parse_ideal(ideal_text, ring.vars);
      IdealHandle modulus = modulus_text.empty() ? ring.radical : parse_ideal(modulus_text, ring.vars);
      OperatorSet ops = make_operator_set(parse_operator_list(ops_text, ring.vars), modulus);
      auto cert = verify_noetherian_ops(a, ops, common.degree.value_or(8));
      out.write(want_json(common, "text") ? dump(to_json(cert, ring.vars)) : certificate_text(cert, ring.vars));
      return cert.status == CertificateStatus::refuted ? kRefuted : kOk;
    }
    if (*colon) {
      RingSpec ring = parse_ring_text(read_file(ring_path));
      IdealHandle image = ring.image_in_reduced(parse_ideal(ideal_text, ring.vars));
      OperatorSet ops = make_operator_set(parse_operator_list(ops_text, ring.vars), ring.radical);
      unsigned d = common.degree.value_or(4);
      TruncatedSubspace s = diff_colon(image, power, ops, ring, d);
      bool full = s == TruncatedSubspace::full(ring.nvars(), d);
      if (want_json(common, "text")) {
        Json basis = Json::array();
        for (const auto& f : s.basis()) basis.push_back(to_string(f, ring.vars));
        out.write(dump(Json{{"degree_bound", d}, {"dimension", s.basis().size()}, {"full_space", full}, {"basis", basis}}));
      } else {
        std::string text = "degree_bound: " + std::to_string(d) + "\ndimension: " + std::to_string(s.basis().size()) + "\n";
        if (full) text += "full space P_{<=" + std::to_string(d) + "}\n";
        for (const auto& f : s.basis()) text += to_string(f, ring.vars) + "\n";
        out.write(text);
      }
      return kOk;
    }
    if (*findc) return run_report(config_path, Mode::artin_rees, common);
    if (*bs) return run_report(config_path, Mode::briancon_skoda, common);
    if (*symb) return run_report(config_path, Mode::symbolic, common);
    if (*reverse) return run_reverse(config_path, common);
    if (*exp) {
      ExperimentConfig cfg = load_config(config_path);
      apply_overrides(cfg, common);
      auto res = run_experiment(cfg, cfg.mode, common.jobs.value_or(1));
      Common sink = common;
      sink.out = cfg.out_path;
      bool json = !common.format || *common.format == "json";
      Output(sink).write(json ? dump(res.bundle) : to_csv(res.report, cfg.ring.vars));
      return res.exit_code;
    }
    if (*sep) {
      RingSpec ring = parse_ring_text(read_file(ring_path));
      auto res = separating_operator(parse_ideal(a_text, ring.vars), parse_ideal(b_text, ring.vars), ring,
                                     parse_ideal(prime_text, ring.vars), parse_polynomial_list("(" + psi_text + ")", ring.vars),
                                     t_max, coeff_deg, common.seed.value_or(1));
      if (want_json(common, "text")) {
        out.write(dump(to_json(res, ring.vars)));
      } else if (!res.found) {
        out.write("not found (t_max = " + std::to_string(t_max) + ", coeff_deg = " + std::to_string(coeff_deg) + ")\n");
      } else {
        std::string text = "operator: " + to_string(res.delta, ring.vars) + "\n";
        text += "order: " + std::to_string(res.order) + "\n";
        text += "d: " + (res.d_value ? to_string(*res.d_value, ring.vars) : std::string("undefined")) + "\n";
        text += std::string("d_consistent: ") + (res.d_consistent ? "true" : "false") + "\n";
        if (res.inconsistent_generator)
          text += "inconsistent_generator: " + to_string(*res.inconsistent_generator, ring.vars) + "\n";
        text += std::string("linearity: ") + (res.linearity_passed ? "passed" : "failed") + " (" +
                std::to_string(res.pairs_tested) + " pairs, seed " + std::to_string(res.seed) + ")\n";
        out.write(text);
      }
      if (!res.found) return kExhausted;
      return res.d_consistent && res.linearity_passed ? kOk : kRefuted;
    }
    if (*filt) {
      RingSpec ring = parse_ring_text(read_file(ring_path));
      auto rep = verify_filtration(parse_ideal_list(chain_text, ring.vars), parse_ideal_list(primes_text, ring.vars), ring);
      if (want_json(common, "text")) {
        out.write(dump(to_json(rep)));
      } else {
        std::string text = std::string("passed: ") + (rep.passed ? "true" : "false") + "\nlength: " +
                           std::to_string(rep.length) + "\n";
        for (const auto& f : rep.failures) text += "failure: " + f + "\n";
        text += "assumption: " + rep.assumption + "\n";
        out.write(text);
      }
      return rep.passed ? kOk : kRefuted;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
