// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/prep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "qsprep/circuit.hpp"
#include "qsprep/concat.hpp"
#include "qsprep/error.hpp"
#include "qsprep/format.hpp"
#include "qsprep/rng.hpp"

namespace qsprep {

std::string to_string(PrepMode m) {
  switch (m) {
    case PrepMode::sequential: return "seq";
    case PrepMode::parallel: return "para";
    case PrepMode::g_para: return "gpara";
    case PrepMode::tradeoff: return "tradeoff";
  }
  return "?";
}

std::string to_string(Engine e) {
  return e == Engine::exact_statevector ? "exact" : "cascade";
}

PrepMode parse_mode(std::string_view s) {
  if (s == "seq") return PrepMode::sequential;
  if (s == "para") return PrepMode::parallel;
  if (s == "gpara") return PrepMode::g_para;
  if (s == "tradeoff") return PrepMode::tradeoff;
  throw ValidationError("unknown mode '" + std::string(s) + "'");
}

Engine parse_engine(std::string_view s) {
  if (s == "exact") return Engine::exact_statevector;
  if (s == "cascade") return Engine::classical_cascade;
  throw ValidationError("unknown engine '" + std::string(s) + "'");
}

C0Policy C0Policy::constant(std::int64_t k) {
  if (k < 1) throw ValidationError("c0 must be >= 1");
  return {Kind::constant, static_cast<double>(k)};
}

C0Policy C0Policy::power(double beta_q) {
  if (!(beta_q >= 1.0 && beta_q < 2.0)) throw ValidationError("beta_q must lie in [1, 2)");
  return {Kind::power, beta_q};
}

C0Policy C0Policy::supra() { return {Kind::supra, 0.0}; }

C0Policy C0Policy::parse(std::string_view s) {
  if (s == "supra") return supra();
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ValidationError("bad c0 policy '" + std::string(s) + "'");
  const std::string_view head = s.substr(0, colon), arg = s.substr(colon + 1);
  if (head == "const") {
    std::int64_t k = 0;
    auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || end != arg.data() + arg.size()) throw ValidationError("bad c0 constant");
    return constant(k);
  }
  if (head == "power") return power(parse_double(arg));
  throw ValidationError("bad c0 policy '" + std::string(s) + "'");
}

std::int64_t C0Policy::copies(std::size_t n_entries) const {
  const double n = static_cast<double>(n_entries);
  switch (kind) {
    case Kind::constant: return static_cast<std::int64_t>(value);
    case Kind::power: return static_cast<std::int64_t>(std::ceil(std::pow(n, value - 1.0) - 1e-9));
    case Kind::supra: return static_cast<std::int64_t>(std::ceil(n + std::pow(n, 0.75) - 1e-9));
  }
  return 1;
}

std::string C0Policy::to_string() const {
  switch (kind) {
    case Kind::constant: return "const:" + std::to_string(static_cast<std::int64_t>(value));
    case Kind::power: return "power:" + format_double(value);
    case Kind::supra: return "supra";
  }
  return "?";
}

PPlusModel PPlusModel::fixed(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("fixed p_plus must lie in (0, 1]");
  return {Kind::fixed, p};
}

PPlusModel PPlusModel::parse(std::string_view s) {
  if (s == "half") return half();
  if (s == "analytic") return analytic();
  if (s.starts_with("fixed:")) return fixed(parse_double(s.substr(6)));
  throw ValidationError("bad p_plus model '" + std::string(s) + "'");
}

std::string PPlusModel::to_string() const {
  switch (kind) {
    case Kind::worst_case_half: return "half";
    case Kind::analytic_from_vector: return "analytic";
    case Kind::fixed: return "fixed:" + format_double(p);
  }
  return "?";
}

std::int64_t unitary_runtime(unsigned m) { return (std::int64_t{1} << m) - 2; }

std::int64_t unitary_depth(unsigned m) {
  return static_cast<std::int64_t>(base_case_depth()) + (std::int64_t{1} << m) - 2;
}

namespace {

std::int64_t charge(unsigned m) { return static_cast<std::int64_t>(m) - 1; }

std::size_t cached_block_depth(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::size_t> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, concat_block_depth(n, true)).first;
  return it->second;
}

struct Tally {
  std::int64_t restarts = 0;
  std::int64_t attempts = 0;
  std::int64_t work = 0;
  std::int64_t touches = 0;
  unsigned peak_block = 0;
  unsigned peak_live = 0;
  double min_purity = 1.0;
};

class CascadeModel {
 public:
  CascadeModel(const CascadeSpec& spec) : spec_(spec) {
    const unsigned levels = spec.n - spec.n_leaf;
    const std::size_t leaves = std::size_t{1} << levels;
    p_.assign(2 * leaves, 0.0);
    if (spec.pplus.kind == PPlusModel::Kind::analytic_from_vector) {
      if (spec.leaf_norms.size() != leaves) throw ValidationError("leaf norms do not match the tree");
      std::vector<double> a(2 * leaves, 0.0);
      for (std::size_t i = 0; i < leaves; ++i) a[leaves + i] = spec.leaf_norms[i];
      for (std::size_t h = leaves - 1; h >= 1; --h) {
        a[h] = a[2 * h] + a[2 * h + 1];
        unsigned depth = 0;
        while ((std::size_t{2} << depth) <= h) ++depth;
        const unsigned m = spec.n - depth;
        p_[h] = compute_p_plus(a[2 * h], a[2 * h + 1], std::size_t{1} << (m - 1));
      }
    } else {
      const double p = spec.pplus.kind == PPlusModel::Kind::fixed ? spec.pplus.p : 0.5;
      std::fill(p_.begin(), p_.end(), p);
    }
  }

  void leaf(std::size_t) {}
  double p(std::size_t h) const { return p_[h]; }
  bool attempt_seq(std::size_t h, unsigned, RngStream& s, Tally&) {
    return sample_successes(s, 1, p_[h]) == 1;
  }
  std::int64_t attempt_batch(std::size_t h, unsigned, std::int64_t cmin, RngStream& s, Tally&) {
    return sample_successes(s, cmin, p_[h]);
  }

 private:
  const CascadeSpec& spec_;
  std::vector<double> p_;
};

class ExactModel {
 public:
  ExactModel(const ResizedVector& v, unsigned n_leaf)
      : v_(v), n_leaf_(n_leaf), leaves_(v.size() >> n_leaf), memo_(2 * leaves_),
        p_(2 * leaves_, std::numeric_limits<double>::quiet_NaN()) {}

  void leaf(std::size_t h) {
    if (memo_[h]) return;
    const std::size_t width = std::size_t{1} << n_leaf_;
    const ResizedVector part = v_.slice((h - leaves_) * width, width);
    memo_[h] = n_leaf_ == 1 ? build_base(part) : encode(part);
  }

  double p(std::size_t h) const { return p_[h]; }

  bool attempt_seq(std::size_t h, unsigned, RngStream& s, Tally& t) {
    ConcatResult r = concatenate(*memo_[2 * h], *memo_[2 * h + 1], s);
    record(r.attempted, t);
    p_[h] = r.attempted.simulated_prob;
    if (r.sampled_success) memo_[h] = std::move(r.attempted.post_state_on_success);
    return r.sampled_success;
  }

  std::int64_t attempt_batch(std::size_t h, unsigned, std::int64_t cmin, RngStream& s, Tally& t) {
    if (std::isnan(p_[h])) {
      ConcatOutcome out = concatenate_outcome(*memo_[2 * h], *memo_[2 * h + 1]);
      record(out, t);
      p_[h] = out.simulated_prob;
      memo_[h] = std::move(out.post_state_on_success);
    }
    return sample_successes(s, cmin, p_[h]);
  }

  const std::optional<LabelState>& root() const { return memo_[1]; }

 private:
  static void record(const ConcatOutcome& out, Tally& t) {
    t.min_purity = std::min(t.min_purity, out.factor_purity);
    t.peak_block = std::max(t.peak_block, out.block_qubits);
  }

  const ResizedVector& v_;
  unsigned n_leaf_;
  std::size_t leaves_;
  std::vector<std::optional<LabelState>> memo_;
  std::vector<double> p_;
};

// Node h (heap order, root 1) at level m holds 2^m entries.
template <class Model>
class Runner {
 public:
  Runner(Model& model, PrepMode mode, unsigned n, unsigned n_leaf, std::int64_t c0,
         std::int64_t cap, std::uint64_t key, const std::function<void(const NodeEvent&)>* observer)
      : model_(model), mode_(mode), n_(n), n_leaf_(n_leaf), c0_(c0), cap_(cap), observer_(observer) {
    if (n_leaf < 1 || n_leaf > n) throw ValidationError("leaf size exceeds the vector");
    if (c0 < 1) throw ValidationError("c0 must be >= 1");
    const std::size_t nodes = std::size_t{2} << (n - n_leaf);
    streams_.reserve(nodes);
    streams_.emplace_back(0);
    for (std::size_t h = 1; h < nodes; ++h) {
      unsigned depth = 0;
      while ((std::size_t{2} << depth) <= h) ++depth;
      const std::uint64_t index = h - (std::size_t{1} << depth);
      streams_.emplace_back(derive_key(key, {n - depth, index}));
    }
    leaf_charge_ = unitary_runtime(n_leaf);
  }

  std::int64_t single_pass() { return n_ == n_leaf_ ? c0_ : pass(1, n_); }

  PrepResult run() {
    PrepResult r;
    switch (mode_) {
      case PrepMode::sequential:
        r.t_stp = seq(1, n_, 0);
        r.final_copies = 1;
        r.peak_parallel_copies = 1;
        break;
      case PrepMode::parallel:
      case PrepMode::tradeoff: {
        auto [c, t] = para(1, n_);
        r.final_copies = c;
        r.t_stp = t;
        break;
      }
      case PrepMode::g_para: {
        std::int64_t pass_time = leaf_charge_;
        for (unsigned m = n_leaf_ + 1; m <= n_; ++m) pass_time += charge(m);
        for (;;) {
          const std::int64_t c = pass(1, n_);
          r.t_stp += pass_time;
          tally_.work += pass_time;
          if (c > 0) {
            r.final_copies = c;
            break;
          }
          ++tally_.restarts;
          check_cap();
        }
        break;
      }
    }
    if (mode_ != PrepMode::sequential) {
      const std::int64_t leaves = std::int64_t{1} << (n_ - n_leaf_);
      r.peak_parallel_copies = c0_ * leaves;
      tally_.peak_live = std::max<unsigned>(
          tally_.peak_live, static_cast<unsigned>(std::min<std::int64_t>(
                                r.peak_parallel_copies * (n_leaf_ + 1), std::numeric_limits<unsigned>::max())));
    }
    r.restarts = tally_.restarts;
    r.concat_attempts = tally_.attempts;
    r.charged_work = tally_.work;
    r.total_qubit_touches = tally_.touches;
    r.peak_block_qubits = std::max(tally_.peak_block, n_leaf_ + 1);
    r.peak_live_qubits = std::max(tally_.peak_live, r.peak_block_qubits);
    r.min_factor_purity = tally_.min_purity;
    return r;
  }

 private:
  static unsigned level_block(unsigned m) { return 2 * m + 1; }

  void check_cap() {
    if (tally_.work > cap_)
      throw RetryCapExceeded("retry cap of " + std::to_string(cap_) + " charged steps exceeded");
  }

  void note(unsigned m, std::size_t h, std::int64_t cmin, std::int64_t c) {
    if (observer_ && *observer_) {
      const unsigned depth = n_ - m;
      (*observer_)(NodeEvent{m, h - (std::size_t{1} << depth), cmin, c, model_.p(h)});
    }
  }

  std::int64_t seq(std::size_t h, unsigned m, unsigned held) {
    if (m == n_leaf_) {
      model_.leaf(h);
      tally_.touches += n_leaf_ + 1;
      tally_.peak_live = std::max(tally_.peak_live, held + n_leaf_ + 1);
      return leaf_charge_;
    }
    std::int64_t t = 0;
    for (;;) {
      const std::int64_t ta = seq(2 * h, m - 1, held);
      const std::int64_t tb = seq(2 * h + 1, m - 1, held + m);
      t += ta + tb + charge(m);
      tally_.work += charge(m);
      ++tally_.attempts;
      tally_.touches += level_block(m);
      tally_.peak_block = std::max(tally_.peak_block, level_block(m));
      tally_.peak_live = std::max(tally_.peak_live, held + level_block(m));
      const bool ok = model_.attempt_seq(h, m, streams_[h], tally_);
      note(m, h, 1, ok ? 1 : 0);
      if (ok) return t;
      ++tally_.restarts;
      check_cap();
    }
  }

  std::pair<std::int64_t, std::int64_t> para(std::size_t h, unsigned m) {
    if (m == n_leaf_) {
      model_.leaf(h);
      tally_.touches += c0_ * (n_leaf_ + 1);
      return {c0_, leaf_charge_};
    }
    std::int64_t t = 0;
    for (;;) {
      const auto [ca, ta] = para(2 * h, m - 1);
      const auto [cb, tb] = para(2 * h + 1, m - 1);
      const std::int64_t cmin = std::min(ca, cb);
      t += std::max(ta, tb) + charge(m);
      tally_.work += charge(m);
      ++tally_.attempts;
      tally_.touches += cmin * level_block(m);
      tally_.peak_block = std::max(tally_.peak_block, level_block(m));
      const std::int64_t c = model_.attempt_batch(h, m, cmin, streams_[h], tally_);
      note(m, h, cmin, c);
      if (c > 0) return {c, t};
      ++tally_.restarts;
      check_cap();
    }
  }

  std::int64_t pass(std::size_t h, unsigned m) {
    if (m == n_leaf_) {
      model_.leaf(h);
      tally_.touches += c0_ * (n_leaf_ + 1);
      return c0_;
    }
    const std::int64_t ca = pass(2 * h, m - 1);
    const std::int64_t cb = pass(2 * h + 1, m - 1);
    const std::int64_t cmin = std::min(ca, cb);
    ++tally_.attempts;
    tally_.touches += cmin * level_block(m);
    tally_.peak_block = std::max(tally_.peak_block, level_block(m));
    const std::int64_t c = cmin > 0 ? model_.attempt_batch(h, m, cmin, streams_[h], tally_) : 0;
    note(m, h, cmin, c);
    return c;
  }

  Model& model_;
  PrepMode mode_;
  unsigned n_, n_leaf_;
  std::int64_t c0_, cap_;
  const std::function<void(const NodeEvent&)>* observer_;
  std::vector<RngStream> streams_;
  std::int64_t leaf_charge_ = 0;
  Tally tally_;
};

unsigned leaf_level(PrepMode mode, unsigned n_u) { return mode == PrepMode::tradeoff ? n_u : 1; }

std::vector<double> leaf_norms(const ResizedVector& v, unsigned n_leaf) {
  const std::size_t width = std::size_t{1} << n_leaf;
  std::vector<double> a(v.size() / width);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = v.slice(i * width, width).label_norm_sq();
  return a;
}

PrepResult drive(const ResizedVector& v, PrepMode mode, std::int64_t c0, unsigned n_leaf,
                 const PrepConfig& cfg, const std::function<void(const NodeEvent&)>* observer) {
  if (!v.positive_only()) throw ValidationError("label preparation expects a positive vector");
  const unsigned n = v.num_qubits();
  if (n_leaf < 1 || n_leaf > n) throw ValidationError("n_u exceeds log2 N");
  if (mode == PrepMode::sequential) c0 = 1;
  PrepResult r;
  if (cfg.engine == Engine::classical_cascade) {
    CascadeSpec spec;
    spec.mode = mode;
    spec.n = n;
    spec.n_leaf = n_leaf;
    spec.c0 = c0;
    spec.pplus = cfg.pplus;
    if (spec.pplus.kind == PPlusModel::Kind::analytic_from_vector) spec.leaf_norms = leaf_norms(v, n_leaf);
    spec.retry_cap = cfg.retry_cap;
    if (observer) spec.observer = *observer;
    r = run_cascade(spec, cfg.seed);
  } else {
    ExactModel model(v, n_leaf);
    Runner<ExactModel> runner(model, mode, n, n_leaf, c0, cfg.retry_cap, cfg.seed, observer);
    r = runner.run();
    r.state = model.root();
    r.decoded = decode(*r.state);
  }
  r.depth = depth_report(n, n_leaf);
  return r;
}

}  // namespace

PrepResult run_cascade(const CascadeSpec& spec, std::uint64_t key) {
  CascadeModel model(spec);
  const std::function<void(const NodeEvent&)>* obs = spec.observer ? &spec.observer : nullptr;
  Runner<CascadeModel> runner(model, spec.mode, spec.n, spec.n_leaf, spec.c0, spec.retry_cap, key, obs);
  return runner.run();
}

std::int64_t run_gpara_pass(const CascadeSpec& spec, std::uint64_t key) {
  CascadeModel model(spec);
  const std::function<void(const NodeEvent&)>* obs = spec.observer ? &spec.observer : nullptr;
  Runner<CascadeModel> runner(model, PrepMode::g_para, spec.n, spec.n_leaf, spec.c0, spec.retry_cap, key, obs);
  return runner.single_pass();
}

DepthReport depth_report(unsigned n, unsigned n_leaf) {
  DepthReport d;
  d.leaf_depth = unitary_depth(n_leaf);
  d.total_depth = d.leaf_depth;
  for (unsigned m = n_leaf + 1; m <= n; ++m) {
    d.block_depths.push_back(static_cast<std::int64_t>(cached_block_depth(m - 1)));
    d.total_depth += d.block_depths.back();
  }
  return d;
}

PrepResult f_seq(const ResizedVector& v, const PrepConfig& cfg) {
  return drive(v, PrepMode::sequential, 1, 1, cfg, nullptr);
}

PrepResult f_para(const ResizedVector& v, std::int64_t c0, const PrepConfig& cfg) {
  return drive(v, PrepMode::parallel, c0, 1, cfg, nullptr);
}

PrepResult g_para(const ResizedVector& v, std::int64_t c0, const PrepConfig& cfg) {
  return drive(v, PrepMode::g_para, c0, 1, cfg, nullptr);
}

PrepResult f_tradeoff(const ResizedVector& v, std::int64_t c0, unsigned n_u, const PrepConfig& cfg) {
  return drive(v, PrepMode::tradeoff, c0, n_u, cfg, nullptr);
}

PrepResult prepare_label(const ResizedVector& v, const PrepConfig& cfg) {
  return drive(v, cfg.mode, cfg.c0.copies(v.size()), leaf_level(cfg.mode, cfg.n_u), cfg, nullptr);
}

PrepResult prepare_label_observed(const ResizedVector& v, const PrepConfig& cfg,
                                  const std::function<void(const NodeEvent&)>& observer) {
  return drive(v, cfg.mode, cfg.c0.copies(v.size()), leaf_level(cfg.mode, cfg.n_u), cfg, &observer);
}

AmplitudePrepResult prepare_amplitude(const AmplitudeVector& u, const PrepConfig& cfg) {
  const ResizedVector v = resize(u);
  AmplitudePrepResult out{std::nullopt, v, !v.positive_only(), 0.0, 0, 0, 0, 0.0, {}};
  const unsigned n = v.num_qubits();
  std::int64_t work = 0;
  std::vector<PrepResult> first;
  // Later attempts run on the cascade; their states equal the first ones.
  auto carry_states = [&](std::vector<PrepResult>& rs) {
    for (std::size_t k = 0; k < rs.size() && k < first.size(); ++k) {
      if (!rs[k].state) {
        rs[k].state = std::move(first[k].state);
        rs[k].decoded = std::move(first[k].decoded);
        rs[k].min_factor_purity = first[k].min_factor_purity;
        rs[k].peak_block_qubits = first[k].peak_block_qubits;
      }
    }
  };

  if (!out.complex_path) {
    for (std::int64_t a = 0;; ++a) {
      PrepConfig ca = cfg;
      ca.seed = derive_key(cfg.seed, {static_cast<std::uint64_t>(a)});
      // States are deterministic in v; later attempts only resample runtime.
      if (a > 0) {
        ca.engine = Engine::classical_cascade;
        ca.pplus = PPlusModel::analytic();
      }
      PrepResult r = prepare_label(v, ca);
      out.t_stp += r.t_stp;
      out.restarts += r.restarts;
      work += r.charged_work;
      if (a == 0 && cfg.engine == Engine::exact_statevector) {
        ValueProjection vp = project_value_qubit(*r.state);
        out.final_prob = vp.p_s;
        out.state = std::move(vp.state);
        first.push_back(r);
      } else if (a == 0) {
        out.final_prob = value_success_prob(v);
      }
      ++out.final_attempts;
      RngStream s(derive_key(cfg.seed, {static_cast<std::uint64_t>(a), 0xf1a1ULL}));
      if (sample_successes(s, 1, out.final_prob) == 1) {
        out.parts.push_back(std::move(r));
        carry_states(out.parts);
        break;
      }
      if (work > cfg.retry_cap)
        throw RetryCapExceeded("retry cap of " + std::to_string(cfg.retry_cap) + " charged steps exceeded");
    }
  } else {
    const ComplexDecomposition d = decompose_complex(v);
    const std::array<const ResizedVector*, 4> parts{&d.va, &d.vb, &d.vc, &d.vd};
    for (std::int64_t a = 0;; ++a) {
      std::vector<PrepResult> rs;
      std::int64_t t = 0;
      for (std::uint64_t k = 0; k < 4; ++k) {
        PrepConfig ca = cfg;
        ca.seed = derive_key(cfg.seed, {static_cast<std::uint64_t>(a), k});
        if (a > 0) {
          ca.engine = Engine::classical_cascade;
          ca.pplus = PPlusModel::analytic();
        }
        rs.push_back(prepare_label(*parts[k], ca));
        t = std::max(t, rs.back().t_stp);
        out.restarts += rs.back().restarts;
        work += rs.back().charged_work;
      }
      out.t_stp += t + static_cast<std::int64_t>(n);
      if (a == 0 && cfg.engine == Engine::exact_statevector) {
        const std::array<LabelState, 4> states{*rs[0].state, *rs[1].state, *rs[2].state, *rs[3].state};
        ComplexAssembly asmb = assemble_complex_outcome(d, states);
        out.final_prob = asmb.simulated_prob;
        out.state = std::move(asmb.state);
        first = rs;
      } else if (a == 0) {
        out.final_prob = complex_success_prob(d);
      }
      ++out.final_attempts;
      RngStream s(derive_key(cfg.seed, {static_cast<std::uint64_t>(a), 0xf1a1ULL}));
      if (sample_successes(s, 1, out.final_prob) == 1) {
        out.parts = std::move(rs);
        carry_states(out.parts);
        break;
      }
      if (work > cfg.retry_cap)
        throw RetryCapExceeded("retry cap of " + std::to_string(cfg.retry_cap) + " charged steps exceeded");
    }
  }

  if (out.state) out.fidelity = fidelity(*out.state, target_state(u).canonical());
  return out;
}

}  // namespace qsprep
