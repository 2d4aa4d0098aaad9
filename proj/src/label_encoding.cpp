// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/label_encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsprep/error.hpp"
#include "qsprep/format.hpp"

namespace qsprep {

namespace {

void check_length(std::size_t n) {
  if (n < 2 || !std::has_single_bit(n))
    throw ValidationError("vector length must be a power of two >= 2, got " + std::to_string(n));
}

double sum_norm(std::span<const cplx> xs) {
  double s = 0.0;
  for (const cplx& x : xs) s += std::norm(x);
  return s;
}

double snap(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

}  // namespace

AmplitudeVector::AmplitudeVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
  check_length(entries_.size());
  if (std::abs(sum_norm(entries_) - 1.0) > 1e-12)
    throw ValidationError("amplitude vector is not unit norm");
}

AmplitudeVector AmplitudeVector::normalized(std::vector<cplx> entries) {
  check_length(entries.size());
  const double nrm = sum_norm(entries);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ValidationError("all-zero amplitude vector");
  const double inv = 1.0 / std::sqrt(nrm);
  for (cplx& e : entries) e *= inv;
  return AmplitudeVector(std::move(entries));
}

unsigned AmplitudeVector::num_qubits() const {
  return static_cast<unsigned>(std::countr_zero(entries_.size()));
}

ResizedVector::ResizedVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
  check_length(entries_.size());
  positive_only_ = true;
  for (const cplx& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()) || std::abs(e) > 1.0 + 1e-12)
      throw ValidationError("resized entries must satisfy |v_i| <= 1");
    if (e.imag() != 0.0 || e.real() < 0.0) positive_only_ = false;
  }
}

ResizedVector ResizedVector::real(const std::vector<double>& entries) {
  return ResizedVector(std::vector<cplx>(entries.begin(), entries.end()));
}

unsigned ResizedVector::num_qubits() const {
  return static_cast<unsigned>(std::countr_zero(entries_.size()));
}

double ResizedVector::label_norm_sq() const {
  double s = 0.0;
  for (const cplx& v : entries_) s += std::norm(v) + std::norm(1.0 - v);
  return s;
}

double ResizedVector::sum_sq() const { return sum_norm(entries_); }

std::pair<ResizedVector, ResizedVector> ResizedVector::halves() const {
  if (entries_.size() < 4) throw ValidationError("cannot halve a 2-entry vector");
  const std::size_t h = entries_.size() / 2;
  return {slice(0, h), slice(h, h)};
}

ResizedVector ResizedVector::slice(std::size_t offset, std::size_t count) const {
  return ResizedVector(std::vector<cplx>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                         entries_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

ResizedVector concat(const ResizedVector& a, const ResizedVector& b) {
  std::vector<cplx> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return ResizedVector(std::move(e));
}

double max_abs_diff(const ResizedVector& a, const ResizedVector& b) {
  if (a.size() != b.size()) throw ValidationError("comparing vectors of different length");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

ResizedVector resize(const AmplitudeVector& u) {
  double peak = 0.0;
  for (const cplx& x : u.entries()) peak = std::max(peak, std::abs(x));
  if (!(peak > 0.0)) throw ValidationError("all-zero amplitude vector");
  std::vector<cplx> v(u.entries().begin(), u.entries().end());
  for (cplx& x : v) x = std::abs(x) == peak ? x / std::abs(x) : x / peak;
  return ResizedVector(std::move(v));
}

LabelState encode(const ResizedVector& v) {
  std::vector<cplx> amps(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    amps[2 * i] = v[i];
    amps[2 * i + 1] = 1.0 - v[i];
  }
  PureState st = PureState::from_amplitudes(std::move(amps));
  const double nsq = st.norm_sq();
  return LabelState{v.num_qubits(), std::move(st), nsq};
}

LabelState build_base(const ResizedVector& v) {
  if (v.size() != 2) throw ValidationError("base case needs a 2-entry vector");
  LabelState ls = encode(v);
  ls.norm_sq = v.label_norm_sq();
  ls.state.set_norm_sq(ls.norm_sq);
  return ls;
}

ResizedVector decode(const LabelState& ls) {
  const PureState& st = ls.state;
  if (st.num_qubits() != ls.n + 1) throw ValidationError("not a label state");
  const std::size_t n = ls.dim();
  const cplx c = st.amplitude(0) + st.amplitude(1);
  if (std::abs(c) < 1e-300) throw ValidationError("not a label state");
  for (std::size_t i = 1; i < n; ++i) {
    const cplx ci = st.amplitude(2 * i) + st.amplitude(2 * i + 1);
    if (std::abs(ci - c) > 1e-8 * std::abs(c)) throw ValidationError("not a label state");
  }
  if (ls.norm_sq > 0.0 && std::abs(std::norm(c) * ls.norm_sq - 1.0) > 1e-8)
    throw ValidationError("not a label state");
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx x = st.amplitude(2 * i) / c;
    v[i] = {snap(x.real()), snap(x.imag())};
  }
  return ResizedVector(std::move(v));
}

PureState target_state(const AmplitudeVector& u) {
  return PureState::from_amplitudes(std::vector<cplx>(u.entries().begin(), u.entries().end()));
}

PureState amplitude_state(std::span<const cplx> entries) {
  return PureState::from_amplitudes(std::vector<cplx>(entries.begin(), entries.end()));
}

TwoQubitFactorization factorize_two_qubit(const PureState& psi) {
  if (psi.num_qubits() != 2) throw ValidationError("factorization needs a two-qubit state");
  const cplx c00 = psi.amplitude(0), c01 = psi.amplitude(1);
  const cplx c10 = psi.amplitude(2), c11 = psi.amplitude(3);
  const double r0 = std::sqrt(std::norm(c00) + std::norm(c01));
  const double r1 = std::sqrt(std::norm(c10) + std::norm(c11));
  auto column = [](cplx a, cplx b, double r) -> Mat2 {
    if (r < 1e-15) return gates::identity();
    a /= r;
    b /= r;
    return {a, -std::conj(b), b, std::conj(a)};
  };
  return {{r0, -r1, r1, r0}, column(c00, c01, r0), column(c10, c11, r1)};
}

PureState apply_factorization(const TwoQubitFactorization& f) {
  const cplx r0 = f.first[0], r1 = f.first[2];
  return PureState::from_amplitudes({r0 * f.if_zero[0], r0 * f.if_zero[2], r1 * f.if_one[0],
                                     r1 * f.if_one[2]});
}

std::vector<cplx> parse_vector_text(std::string_view text) {
  std::vector<cplx> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() > 2)
      throw ValidationError("line " + std::to_string(line_no) + ": expected 're im'");
    const double re = parse_double(tokens[0]);
    const double im = tokens.size() == 2 ? parse_double(tokens[1]) : 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<cplx> read_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return parse_vector_text(buf.str());
}

std::string format_vector_text(std::span<const cplx> entries) {
  std::string out;
  for (const cplx& e : entries) out += format_double(e.real()) + ' ' + format_double(e.imag()) + '\n';
  return out;
}

std::vector<cplx> zero_pad(std::vector<cplx> entries, std::size_t dim) {
  if (entries.size() > dim) throw ValidationError("vector longer than the requested dimension");
  entries.resize(dim, cplx{});
  return entries;
}

}  // namespace qsprep
