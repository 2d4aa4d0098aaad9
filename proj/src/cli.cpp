// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsprep/bounds.hpp"
#include "qsprep/cascade.hpp"
#include "qsprep/circuit.hpp"
#include "qsprep/concat.hpp"
#include "qsprep/error.hpp"
#include "qsprep/format.hpp"
#include "qsprep/kernels.hpp"
#include "qsprep/lightcone.hpp"
#include "qsprep/prep.hpp"

namespace qsprep::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::uint64_t seed = 1;
  bool no_meta = false;
  int threads = 0;
  std::string out;
};

json vector_json(std::span<const cplx> v) {
  bool real = true;
  for (cplx x : v) real = real && x.imag() == 0.0;
  json a = json::array();
  for (cplx x : v) {
    if (real)
      a.push_back(x.real());
    else
      a.push_back(json::array({x.real(), x.imag()}));
  }
  return a;
}

json depth_json(const DepthReport& d) {
  return {{"leaf_depth", d.leaf_depth}, {"block_depths", d.block_depths}, {"total_depth", d.total_depth}};
}

json fit_json(const FitReport& f) {
  json per = json::array();
  for (const PerN& p : f.per_n)
    per.push_back({{"n", p.n}, {"N", p.entries}, {"c0", p.c0}, {"mean_tstp", p.mean}, {"std_tstp", p.std}});
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"slope_stderr", f.slope_stderr},
          {"slope_bootstrap_se", f.slope_bootstrap_se},
          {"per_n", per},
          {"aborted", f.aborted},
          {"abort_message", f.abort_message}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("cannot write " + path);
}

void emit_json(json doc, const Common& c, const std::string& command, json config, std::ostream& out) {
  json full;
  full["command"] = command;
  config["seed"] = c.seed;
  full["config"] = std::move(config);
  if (!c.no_meta) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    full["meta"] = {{"tool", "qsprep"},
                    {"version", kVersion},
                    {"unix_time", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
  }
  for (auto& [k, v] : doc.items()) full[k] = v;
  const std::string text = full.dump(2) + "\n";
  if (c.out.empty())
    out << text;
  else
    write_text(c.out, text);
}

std::string csv_line(std::initializer_list<double> xs) {
  std::string s;
  bool first = true;
  for (double x : xs) {
    if (!first) s += ',';
    first = false;
    s += format_double(x);
  }
  return s + "\n";
}

std::vector<unsigned> range(unsigned lo, unsigned hi) {
  if (lo > hi) throw ValidationError("nmin exceeds nmax");
  std::vector<unsigned> r;
  for (unsigned n = lo; n <= hi; ++n) r.push_back(n);
  return r;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(parse_double(tok));
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

SamplingCase parse_case(int c) {
  if (c == 1) return SamplingCase::uniform_case1;
  if (c == 2) return SamplingCase::gaussian_case2;
  throw ValidationError("case must be 1 or 2");
}

ResizedVector random_positive_vector(unsigned n, std::uint64_t seed) {
  RngStream s(derive_key(seed, {0x5eedULL}));
  return resize(sample({SamplingCase::uniform_case1, std::size_t{1} << n, seed}, s, true));
}

}  // namespace

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"qsprep: low-depth probabilistic state preparation toolkit", "qsprep"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("QSPREP_THREADS")) common.threads = std::atoi(env);
  app.add_option("--seed", common.seed, "64-bit seed");
  app.add_flag("--no-meta", common.no_meta, "omit run metadata (timestamps) from JSON");
  app.add_option("--threads", common.threads, "thread cap (default QSPREP_THREADS)");
  app.add_option("--out", common.out, "write JSON here instead of stdout");
  app.set_version_flag("--version", kVersion);

  // prepare
  auto* prep = app.add_subcommand("prepare", "prepare a state and report runtime counters");
  std::string mode = "seq", c0 = "const:1", engine = "exact", pplus = "analytic", input;
  unsigned n_q = 0, nu = 1;
  int sample_case = 2;
  bool positive = false;
  std::int64_t cap = 1'000'000'000;
  prep->add_option("--mode", mode)->check(CLI::IsMember({"seq", "para", "gpara", "tradeoff"}));
  prep->add_option("--n", n_q, "log2 N; checked against --input");
  prep->add_option("--c0", c0, "const:<k> | power:<beta_q> | supra");
  prep->add_option("--nu", nu, "leaf size log2 for tradeoff");
  prep->add_option("--engine", engine)->check(CLI::IsMember({"exact", "cascade"}));
  prep->add_option("--pplus", pplus, "cascade engine: half | analytic | fixed:<p>");
  prep->add_option("--input", input, "vector file; without it a random vector is drawn");
  prep->add_option("--case", sample_case, "sampling case of the random vector");
  prep->add_flag("--positive", positive, "random vector uses |a_i|");
  prep->add_option("--retry-cap", cap);

  // runtime
  auto* rt = app.add_subcommand("runtime", "Monte Carlo t_stp scaling fit");
  std::string rt_c0 = "const:1", rt_pplus = "half", rt_mode = "para", csv;
  unsigned nmin = 4, nmax = 10, rt_nu = 1, bootstrap = 200;
  std::int64_t trials = 1000;
  rt->add_option("--c0", rt_c0);
  rt->add_option("--pplus", rt_pplus);
  rt->add_option("--mode", rt_mode)->check(CLI::IsMember({"seq", "para", "gpara", "tradeoff"}));
  rt->add_option("--nu", rt_nu);
  rt->add_option("--nmin", nmin);
  rt->add_option("--nmax", nmax);
  rt->add_option("--trials", trials);
  rt->add_option("--bootstrap", bootstrap);
  rt->add_option("--csv", csv, "per-n CSV (n,N,mean_tstp,std_tstp)");
  rt->add_option("--retry-cap", cap);

  // tradeoff
  auto* to = app.add_subcommand("tradeoff", "exponent beta_t against beta_q");
  std::string betaq = "1.0,1.2,1.4,1.6,1.8", to_pplus = "half";
  bool supra = false;
  unsigned nu_sweep = 0;
  std::int64_t sweep_c0 = 1;
  to->add_option("--betaq", betaq, "comma-separated beta_q values in [1,2)");
  to->add_option("--pplus", to_pplus);
  to->add_option("--nmin", nmin);
  to->add_option("--nmax", nmax);
  to->add_option("--trials", trials);
  to->add_option("--bootstrap", bootstrap);
  to->add_flag("--supra", supra, "also compare a n^2 + b with C N^beta for c0 = ceil(N + N^(3/4))");
  to->add_option("--nu-sweep", nu_sweep, "depth and runtime of the unitary-leaf variant at this n");
  to->add_option("--sweep-c0", sweep_c0);
  to->add_option("--csv", csv, "beta_q,beta_t,stderr,bootstrap_se");

  // bounds
  auto* bd = app.add_subcommand("bounds", "empirical checks of the probability bounds");
  int result = 4, bcase = 2;
  unsigned bn = 8, hoeff_nmax = 12, fn_n = 8;
  double delta = 0.1, epsth = 0.05;
  std::int64_t btrials = 1000, passes = 10000;
  bd->add_option("--result", result)->check(CLI::IsMember({4, 5}));
  bd->add_option("--case", bcase)->check(CLI::IsMember({1, 2}));
  bd->add_option("--n", bn, "log2 N");
  bd->add_option("--delta", delta);
  bd->add_option("--epsth", epsth);
  bd->add_option("--trials", btrials);
  bd->add_option("--csv", csv, "per-trial CSV");
  auto* hoeff = bd->add_subcommand("hoeffding", "log-space cascade product bound");
  hoeff->add_option("--nmax", hoeff_nmax);
  auto* fnode = bd->add_subcommand("finalnode", "single g-hat pass statistics, supra policy");
  fnode->add_option("--n", fn_n);
  fnode->add_option("--passes", passes);

  // emit
  auto* em = app.add_subcommand("emit", "write a circuit in the text format");
  std::string what = "concat", em_input;
  unsigned em_n = 2, copies = 2;
  bool decomp = false;
  em->add_option("--what", what)->check(CLI::IsMember({"concat", "complex", "full-seq", "full-para"}));
  em->add_option("--n", em_n);
  em->add_flag("--decompose", decomp);
  em->add_option("--copies", copies, "full-para copies per node");
  em->add_option("--input", em_input, "data vector for full networks");

  // lightcone
  auto* lc = app.add_subcommand("lightcone", "light cone of one qubit under a grouping schedule");
  std::string schedule;
  unsigned qubit = 0;
  lc->add_option("--schedule", schedule)->required();
  lc->add_option("--qubit", qubit)->required();

  // table1
  auto* t1 = app.add_subcommand("table1", "measured rows next to the asymptotic claims");
  t1->add_option("--trials", trials);

  std::vector<std::string> args(argv_in.rbegin(), argv_in.rend() - (argv_in.empty() ? 0 : 1));
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    if (common.threads < 0) throw ValidationError("threads must be >= 0");
    kernels::set_thread_cap(common.threads);

    if (*prep) {
      std::vector<cplx> data;
      if (!input.empty()) {
        data = read_vector_file(input);
        if (n_q != 0 && data.size() != (std::size_t{1} << n_q))
          throw ValidationError("input has " + std::to_string(data.size()) + " entries, expected 2^" + std::to_string(n_q));
      } else {
        if (n_q == 0) throw ValidationError("need --input or --n");
        RngStream s(derive_key(common.seed, {0x5eedULL}));
        data = sample_raw({parse_case(sample_case), std::size_t{1} << n_q, common.seed}, s);
        if (positive)
          for (cplx& x : data) x = std::abs(x);
      }
      const AmplitudeVector u = AmplitudeVector::normalized(data);
      PrepConfig cfg;
      cfg.mode = parse_mode(mode);
      cfg.c0 = C0Policy::parse(c0);
      cfg.n_u = nu;
      cfg.engine = parse_engine(engine);
      cfg.seed = common.seed;
      cfg.pplus = PPlusModel::parse(pplus);
      cfg.retry_cap = cap;
      const AmplitudePrepResult r = prepare_amplitude(u, cfg);

      json doc;
      doc["resized_vector"] = vector_json(r.resized.entries());
      doc["path"] = r.complex_path ? "complex" : "positive";
      if (cfg.engine == Engine::exact_statevector) {
        if (!r.complex_path) {
          doc["decoded_vector"] = vector_json(r.parts.at(0).decoded->entries());
        } else {
          ComplexDecomposition d{*r.parts[0].decoded, *r.parts[1].decoded, *r.parts[2].decoded, *r.parts[3].decoded};
          doc["decoded_vector"] = vector_json(d.reconstruct().entries());
        }
        doc["fidelity"] = r.fidelity;
      }
      std::int64_t peak = 0, touches = 0;
      unsigned peak_block = 0;
      for (const PrepResult& p : r.parts) {
        peak += p.peak_parallel_copies;
        touches += p.total_qubit_touches;
        peak_block = std::max(peak_block, p.peak_block_qubits);
      }
      doc["final_prob"] = r.final_prob;
      doc["final_attempts"] = r.final_attempts;
      doc["t_stp"] = r.t_stp;
      doc["restarts"] = r.restarts;
      doc["peak_copies"] = peak;
      doc["total_qubit_touches"] = touches;
      doc["peak_block_qubits"] = peak_block;
      doc["depth_report"] = depth_json(r.parts.at(0).depth);
      emit_json(std::move(doc), common, "prepare",
                {{"mode", mode}, {"n", u.num_qubits()}, {"c0", cfg.c0.to_string()}, {"nu", nu},
                 {"engine", engine}, {"pplus", cfg.pplus.to_string()}, {"input", input},
                 {"retry_cap", cap}},
                out);
      return kExitOk;
    }

    if (*rt) {
      ScalingExperiment exp;
      exp.n_range = range(nmin, nmax);
      exp.trials = trials;
      exp.c0 = C0Policy::parse(rt_c0);
      exp.pplus = PPlusModel::parse(rt_pplus);
      exp.mode = parse_mode(rt_mode);
      exp.n_u = rt_nu;
      exp.seed = common.seed;
      exp.retry_cap = cap;
      exp.bootstrap = bootstrap;
      const FitReport f = run_scaling(exp);
      if (!csv.empty()) {
        std::string text = "n,N,mean_tstp,std_tstp\n";
        for (const PerN& p : f.per_n)
          text += csv_line({double(p.n), double(p.entries), p.mean, p.std});
        write_text(csv, text);
      }
      emit_json({{"fit", fit_json(f)}}, common, "runtime",
                {{"c0", exp.c0.to_string()}, {"pplus", exp.pplus.to_string()}, {"mode", rt_mode},
                 {"nu", rt_nu}, {"nmin", nmin}, {"nmax", nmax}, {"trials", trials},
                 {"bootstrap", bootstrap}, {"retry_cap", cap}},
                out);
      if (f.aborted) {
        err << "error: " << f.abort_message << "\n";
        return kExitAbort;
      }
      return kExitOk;
    }

    if (*to) {
      ScalingExperiment tmpl;
      tmpl.n_range = range(nmin, nmax);
      tmpl.trials = trials;
      tmpl.pplus = PPlusModel::parse(to_pplus);
      tmpl.seed = common.seed;
      tmpl.bootstrap = bootstrap;
      const std::vector<double> bq = parse_list(betaq);
      const auto curve = tradeoff_curve(bq, tmpl);
      json doc, pts = json::array();
      std::string text = "beta_q,beta_t,stderr,bootstrap_se\n";
      for (const auto& p : curve) {
        pts.push_back({{"beta_q", p.beta_q}, {"beta_t", p.fit.slope}, {"fit", fit_json(p.fit)}});
        text += csv_line({p.beta_q, p.fit.slope, p.fit.slope_stderr, p.fit.slope_bootstrap_se});
      }
      doc["curve"] = pts;
      if (supra) {
        ScalingExperiment s = tmpl;
        const SupraComparison c = supra_comparison(s);
        doc["supra"] = {{"fit", fit_json(c.means)},
                        {"quadratic", {{"a", c.quadratic.slope}, {"b", c.quadratic.intercept},
                                       {"r_squared", c.quadratic.r_squared}, {"sse", c.quadratic.sse}}},
                        {"power_law", {{"C", c.power_law.c}, {"beta", c.power_law.beta}, {"sse", c.power_law.sse}}},
                        {"quadratic_wins", c.quadratic_wins()}};
      }
      if (nu_sweep > 0) {
        json sw = json::array();
        for (const auto& d : tradeoff_depth_sweep(nu_sweep, sweep_c0, trials, common.seed))
          sw.push_back({{"n_u", d.n_u}, {"depth", d.depth}, {"qubits_per_copy", d.qubits_per_copy},
                        {"mean_tstp", d.mean_t_stp}});
        doc["nu_sweep"] = sw;
      }
      if (!csv.empty()) write_text(csv, text);
      emit_json(std::move(doc), common, "tradeoff",
                {{"betaq", bq}, {"pplus", tmpl.pplus.to_string()}, {"nmin", nmin}, {"nmax", nmax},
                 {"trials", trials}, {"bootstrap", bootstrap}, {"supra", supra}, {"nu_sweep", nu_sweep},
                 {"sweep_c0", sweep_c0}},
                out);
      return kExitOk;
    }

    if (*bd) {
      if (*hoeff) {
        json rows = json::array();
        for (unsigned n = 2; n <= hoeff_nmax; ++n) {
          const HoeffdingBound h = hoeffding_bound(n);
          rows.push_back({{"n", n}, {"per_level_f", h.per_level_f}, {"log_product", h.log_product},
                          {"product_lower_bound", h.product_lower_bound}});
        }
        emit_json({{"hoeffding", rows}}, common, "bounds hoeffding", {{"nmax", hoeff_nmax}}, out);
        return kExitOk;
      }
      if (*fnode) {
        const FinalNodeStats s = final_node_stats(fn_n, passes, common.seed);
        emit_json({{"final_node",
                    {{"n", s.n}, {"c0", s.c0}, {"passes", s.passes}, {"nonzero", s.nonzero},
                     {"above_bound", s.above_bound}, {"frequency", s.frequency}, {"sigma", s.sigma},
                     {"pass", s.frequency >= 0.006 - 3.0 * s.sigma}, {"level_p", s.level_p},
                     {"level_chain", s.level_chain}}}},
                  common, "bounds finalnode", {{"n", fn_n}, {"passes", passes}}, out);
        return kExitOk;
      }
      const std::size_t entries = std::size_t{1} << bn;
      if (result == 4) {
        const Result4Report r = verify_result4({parse_case(bcase), entries, common.seed}, btrials, delta);
        if (!csv.empty()) {
          std::string text = "trial,p_s,p_s_prime,max_abs_sq\n";
          for (std::size_t k = 0; k < r.per_trial.size(); ++k)
            text += csv_line({double(k), r.per_trial[k].p_s, r.per_trial[k].p_s_prime, r.per_trial[k].max_abs_sq});
          write_text(csv, text);
        }
        emit_json({{"result4",
                    {{"bound_ps", r.bound_ps}, {"bound_ps_prime", r.bound_ps_prime},
                     {"violation_ps", r.violation_ps}, {"violation_ps_prime", r.violation_ps_prime},
                     {"sigma_delta", r.sigma_delta}, {"tail_threshold", r.tail_threshold},
                     {"tail_frequency", r.tail_frequency}, {"pass_ps", r.pass_ps},
                     {"pass_ps_prime", r.pass_ps_prime}, {"pass_tail", r.pass_tail},
                     {"note", bcase == 1 ? "case-1 p_s' bound reuses the p_s constant with the 1/64 factor" : ""}}}},
                  common, "bounds",
                  {{"result", 4}, {"case", bcase}, {"n", bn}, {"delta", delta}, {"trials", btrials}}, out);
      } else {
        const Result5Report r = verify_result5(epsth, delta, entries, btrials, common.seed);
        if (!csv.empty()) {
          std::string text = "trial,p_s,fidelity\n";
          for (std::size_t k = 0; k < r.per_trial.size(); ++k)
            text += csv_line({double(k), r.per_trial[k].p_s, r.per_trial[k].fidelity});
          write_text(csv, text);
        }
        emit_json({{"result5",
                    {{"u_cut", r.u_cut}, {"cp", r.cp}, {"cp_chain", r.cp_chain}, {"cp_omega", r.cp_omega},
                     {"markov_term", r.markov_term}, {"fidelity_pass", r.fidelity_pass},
                     {"ps_pass", r.ps_pass}, {"joint_pass", r.joint_pass},
                     {"pass_fidelity", r.pass_fidelity}, {"pass_ps", r.pass_ps}, {"pass_joint", r.pass_joint}}}},
                  common, "bounds",
                  {{"result", 5}, {"n", bn}, {"delta", delta}, {"epsth", epsth}, {"trials", btrials}}, out);
      }
      return kExitOk;
    }

    if (*em) {
      if (em_n < 1) throw ValidationError("n must be >= 1");
      Circuit c;
      if (what == "concat") {
        c = build_concat_circuit(em_n);
      } else if (what == "complex") {
        c = build_complex_circuit(em_n);
      } else {
        const ResizedVector v = em_input.empty() ? random_positive_vector(em_n, common.seed)
                                                 : resize(AmplitudeVector::normalized(read_vector_file(em_input)));
        c = build_full_network(v, what == "full-para" ? copies : 1, false).circuit;
      }
      if (decomp) c = decompose(c);
      const std::string text = emit(c);
      if (common.out.empty())
        out << text;
      else
        write_text(common.out, text);
      return kExitOk;
    }

    if (*lc) {
      const GroupingSchedule s = GroupingSchedule::read(schedule);
      const std::vector<unsigned> cone = light_cone(s, qubit);
      const unsigned k = s.max_group();
      json doc{{"qubit", qubit}, {"light_cone", cone}, {"size", cone.size()}, {"layers", s.depth()}, {"k", k}};
      doc["k_pow_L"] = std::pow(static_cast<double>(k), static_cast<double>(s.depth()));
      if (k >= 2) doc["depth_lower_bound_for_cone"] = depth_lower_bound(cone.size(), k);
      emit_json(std::move(doc), common, "lightcone", {{"schedule", schedule}, {"qubit", qubit}}, out);
      return kExitOk;
    }

    if (*t1) {
      Table1Config cfg;
      cfg.trials = trials;
      cfg.seed = common.seed;
      const Table1Report rep = table1_report(cfg);
      json rows = json::array();
      for (const Table1Row& r : rep.rows)
        rows.push_back({{"method", r.method}, {"claimed_depth", r.claimed_depth},
                        {"claimed_runtime", r.claimed_runtime}, {"claimed_qubits", r.claimed_qubits},
                        {"depth", r.depth}, {"runtime_fit", r.runtime_fit},
                        {"runtime_value", r.runtime_exponent}, {"qubits", r.qubits},
                        {"qubit_measure", r.qubit_measure}});
      emit_json({{"rows", rows},
                 {"depth_range", cfg.depth_range},
                 {"seq_range", cfg.seq_range},
                 {"para_range", cfg.para_range},
                 {"exact_seq_range", rep.exact_seq_range},
                 {"exact_seq_peak_qubits", rep.exact_seq_peak}},
                common, "table1", {{"trials", trials}}, out);
      return kExitOk;
    }
  } catch (const RetryCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qsprep::cli
