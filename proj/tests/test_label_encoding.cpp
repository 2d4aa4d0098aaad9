// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qsprep/error.hpp"
#include "qsprep/label_encoding.hpp"
#include "support.hpp"

namespace qsprep {
namespace {

TEST(Resize, DividesByLargestModulus) {
  const AmplitudeVector u = AmplitudeVector::normalized({1.0, cplx(0, -2.0), 0.5, 0.0});
  const ResizedVector v = resize(u);
  EXPECT_NEAR(std::abs(v[1]), 1.0, 1e-15);
  EXPECT_NEAR(v[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(v[2].real(), 0.25, 1e-15);
  EXPECT_FALSE(v.positive_only());
}

TEST(Resize, PositiveFlag) {
  const ResizedVector v = resize(AmplitudeVector::normalized({0.3, 0.0, 0.9, 0.1}));
  EXPECT_TRUE(v.positive_only());
  EXPECT_EQ(v.num_qubits(), 2u);
}

TEST(AmplitudeVector, Validation) {
  EXPECT_THROW(AmplitudeVector({1.0, 1.0}), ValidationError);
  EXPECT_THROW(AmplitudeVector::normalized({1.0, 1.0, 1.0}), ValidationError);
  EXPECT_THROW(AmplitudeVector::normalized({0.0, 0.0}), ValidationError);
  EXPECT_NO_THROW(AmplitudeVector({M_SQRT1_2, M_SQRT1_2}));
}

TEST(ResizedVector, Validation) {
  EXPECT_THROW(ResizedVector::real({1.5, 0.0}), ValidationError);
  EXPECT_THROW(ResizedVector::real({0.1, 0.2, 0.3}), ValidationError);
}

TEST(ResizedVector, LabelNorm) {
  const ResizedVector v = ResizedVector::real({0.2, 1.0, 0.0, 0.5});
  // sum v^2 + (1-v)^2
  EXPECT_NEAR(v.label_norm_sq(), 0.04 + 0.64 + 1 + 0 + 0 + 1 + 0.25 + 0.25, 1e-15);
}

TEST(Encode, AmplitudesMatchLabelKet) {
  std::mt19937_64 g(1);
  for (unsigned n = 1; n <= 4; ++n) {
    const auto x = test::random_positive(g, std::size_t{1} << n);
    const LabelState ls = encode(ResizedVector::real(x));
    const auto want = test::label_ket(test::to_cplx(x));
    EXPECT_NEAR(ls.norm_sq, test::norm_sq(want), 1e-12);
    const double s = std::sqrt(test::norm_sq(want));
    for (std::size_t k = 0; k < want.size(); ++k)
      EXPECT_NEAR(std::abs(ls.state.amplitude(k) - want[k] / s), 0.0, 1e-12);
  }
}

TEST(Decode, RoundTrip) {
  std::mt19937_64 g(2);
  for (int rep = 0; rep < 50; ++rep) {
    const unsigned n = 1 + rep % 5;
    std::vector<cplx> x(std::size_t{1} << n);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (auto& e : x) e = cplx(u(g), u(g));
    const ResizedVector v(x);
    EXPECT_LT(max_abs_diff(decode(encode(v)), v), 1e-10);
  }
}

TEST(Decode, RejectsNonLabelState) {
  // amp0 + amp1 differs between the two basis labels
  LabelState ls{1, PureState::from_amplitudes({1.0, 0.0, 0.0, 0.5}), 1.25};
  EXPECT_THROW(decode(ls), ValidationError);
}

TEST(BuildBase, MatchesEncode) {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto x = test::random_positive(g, 2);
    const ResizedVector v = ResizedVector::real(x);
    const LabelState b = build_base(v);
    const LabelState e = encode(v);
    EXPECT_NEAR(fidelity(b.state, e.state), 1.0, 1e-12);
    EXPECT_NEAR(b.norm_sq, e.norm_sq, 1e-12);
    EXPECT_LT(max_abs_diff(decode(b), v), 1e-10);
  }
  EXPECT_THROW(build_base(ResizedVector::real({0.1, 0.2, 0.3, 0.4})), ValidationError);
}

TEST(BuildBase, ExtremeEntries) {
  for (auto x : {std::vector<double>{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.5, 0.5}}) {
    const ResizedVector v = ResizedVector::real(x);
    EXPECT_LT(max_abs_diff(decode(build_base(v)), v), 1e-10);
  }
}

TEST(TwoQubitFactorization, Reproduces) {
  std::mt19937_64 g(4);
  for (int rep = 0; rep < 30; ++rep) {
    const PureState s = test::random_state(g, 2);
    const PureState r = apply_factorization(factorize_two_qubit(s));
    EXPECT_NEAR(fidelity(r, s), 1.0, 1e-12);
  }
}

TEST(TargetState, IsAmplitudeEncoding) {
  const AmplitudeVector u = AmplitudeVector::normalized({1.0, cplx(0, 1), -1.0, 0.5});
  const PureState t = target_state(u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(t.amplitude(i) - u[i]), 0.0, 1e-15);
}

TEST(VectorText, ParseFormats) {
  const auto v = parse_vector_text("# comment\n0.5\n\n1e-1 -2\n  -3  0.25 \n");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], cplx(0.5, 0));
  EXPECT_EQ(v[1], cplx(0.1, -2));
  EXPECT_EQ(v[2], cplx(-3, 0.25));
  EXPECT_THROW(parse_vector_text("1 2 3\n"), ValidationError);
  EXPECT_THROW(parse_vector_text("abc\n"), ValidationError);
}

TEST(VectorText, FormatRoundTrip) {
  std::mt19937_64 g(5);
  const auto v = test::random_vector(g, 8);
  EXPECT_EQ(parse_vector_text(format_vector_text(v)), v);
}

TEST(VectorText, FileErrors) {
  EXPECT_THROW(read_vector_file("/nonexistent/dir/v.txt"), IoError);
  const auto p = std::filesystem::temp_directory_path() / "qsprep_vec_test.txt";
  { std::ofstream(p) << "1\n0\n"; }
  EXPECT_EQ(read_vector_file(p).size(), 2u);
  std::filesystem::remove(p);
}

TEST(ZeroPad, Extends) {
  const auto v = zero_pad({1.0, 2.0, 3.0}, 4);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3], cplx(0));
  EXPECT_THROW(zero_pad({1.0, 2.0, 3.0}, 2), ValidationError);
}

}  // namespace
}  // namespace qsprep
