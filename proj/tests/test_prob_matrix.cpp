#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "degseq/errors.hpp"
#include "degseq/prob_matrix.hpp"
#include "degseq/random.hpp"

namespace degseq {
namespace {

void expect_all(const SymmetricProbMatrix& m, double value, double tol = 1e-15) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m(i, i), 0.0);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j) EXPECT_NEAR(m(i, j), value, tol) << i << "," << j;
    }
  }
}

TEST(PMatrix, Examples) {
  expect_all(p_matrix({2, 2, 2}), 0.4);
  EXPECT_DOUBLE_EQ(p_matrix({1, 1})(0, 1), 1.0 / 3.0);
  const auto m = p_matrix({3, 3, 1, 1});
  EXPECT_DOUBLE_EQ(m(0, 1), 9.0 / 17.0);
  EXPECT_DOUBLE_EQ(m(2, 3), 1.0 / 9.0);
}

TEST(QMatrix, Examples) {
  expect_all(q_matrix({2, 2, 2}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(q_matrix({1, 1})(0, 1), 1.0);
  const auto q = q_matrix({2, 1, 1});
  EXPECT_DOUBLE_EQ(q(0, 1), 0.4);
  EXPECT_DOUBLE_EQ(q(0, 2), 0.4);
  EXPECT_DOUBLE_EQ(q(1, 2), 0.2);
  EXPECT_EQ(weighted_pair_total({2, 1, 1}), 5u);
}

TEST(QMatrix, DegenerateThrows) {
  EXPECT_THROW(q_matrix({3, 0, 0}), DegenerateSequenceError);
  EXPECT_THROW(q_matrix({0, 0}), DegenerateSequenceError);
}

TEST(QMatrix, SumsToOne) {
  RandomSource rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(60);
    std::vector<std::uint32_t> d(n);
    for (auto& x : d) x = static_cast<std::uint32_t>(rng.uniform_below(n));
    d[0] = 1 + static_cast<std::uint32_t>(rng.uniform_below(n));
    d[1] = 1 + static_cast<std::uint32_t>(rng.uniform_below(n));
    EXPECT_NEAR(q_matrix(DegreeSequence(d)).pair_sum(), 1.0, 1e-12);
  }
}

TEST(PQMatrix, MonotoneInProduct) {
  // Raising d_0 with the sum held fixed by lowering d_3 increases P(0,1) and Q(0,1).
  const DegreeSequence a{2, 3, 2, 3};
  const DegreeSequence b{3, 3, 2, 2};
  EXPECT_LT(p_matrix(a)(0, 1), p_matrix(b)(0, 1));
  EXPECT_LT(q_matrix(a)(0, 1), q_matrix(b)(0, 1));
  // P(0,1) with ||d||_1 = 10 fixed, product 6 -> 9.
  EXPECT_DOUBLE_EQ(p_matrix(a)(0, 1), 6.0 / 16.0);
  EXPECT_DOUBLE_EQ(p_matrix(b)(0, 1), 9.0 / 19.0);
}

TEST(ChungLu, ExamplesAndClamp) {
  const std::vector<double> w1{2, 2, 2};
  expect_all(chung_lu_matrix(w1), 4.0 / 6.0);
  const std::vector<double> w2{10, 10};
  EXPECT_EQ(chung_lu_matrix(w2)(0, 1), 1.0);
  const std::vector<double> w3{1, 1, 1, 1};
  expect_all(chung_lu_matrix(w3), 0.25);
  const std::vector<double> zero{0, 0, 0};
  EXPECT_THROW(chung_lu_matrix(zero), std::invalid_argument);
}

TEST(FcTransform, Examples) {
  const SymmetricProbMatrix zero(5, 0.0);
  expect_all(f_c_transform(zero, 3.7), 0.0);
  const SymmetricProbMatrix m(4, 0.54 / 3.0);
  expect_all(f_c_transform(m, 2.4), 0.35079062331485256, 1e-12);
  expect_all(f_c_transform(m, 0.0), 0.0);
  EXPECT_THROW(f_c_transform(m, -1.0), std::invalid_argument);
}

TEST(FcTransform, RangeAndMonotoneInScale) {
  RandomSource rng(11, 0);
  const auto m = SymmetricProbMatrix::from_function(8, [&](std::size_t, std::size_t) { return rng.uniform(); });
  auto prev = f_c_transform(m, 0.0);
  for (double scale : {0.1, 0.5, 1.0, 4.0, 20.0}) {
    const auto cur = f_c_transform(m, scale);
    for (std::size_t k = 0; k < cur.packed().size(); ++k) {
      EXPECT_GE(cur.packed()[k], 0.0);
      EXPECT_LT(cur.packed()[k], 1.0);
      EXPECT_GE(cur.packed()[k], prev.packed()[k]);
    }
    prev = cur;
  }
}

TEST(Hadamard, Examples) {
  const auto a = p_matrix({2, 2, 2});
  const auto ones = SymmetricProbMatrix(3, 1.0);
  EXPECT_EQ(hadamard(a, ones).packed()[0], a.packed()[0]);
  expect_all(hadamard(a, SymmetricProbMatrix(3, 0.0)), 0.0);
  expect_all(hadamard(a, q_matrix({2, 2, 2})), 2.0 / 15.0);
  EXPECT_THROW(hadamard(a, SymmetricProbMatrix(4, 0.0)), std::invalid_argument);
}

TEST(SymmetricProbMatrix, RejectsOutOfRange) {
  EXPECT_THROW(SymmetricProbMatrix(3, 1.5), std::domain_error);
  EXPECT_THROW(SymmetricProbMatrix::from_function(3, [](std::size_t, std::size_t) { return NAN; }),
               std::domain_error);
}

TEST(RemainingDegrees, Examples) {
  SimpleGraph h(4);
  h.add_edge(0, 1);
  auto r = remaining_degrees({1, 1, 1, 1}, h);
  EXPECT_EQ(r.t, (DegreeSequence{0, 0, 1, 1}));
  EXPECT_DOUBLE_EQ(r.p_m, 0.5);

  r = remaining_degrees({2, 1, 1}, SimpleGraph(3));
  EXPECT_EQ(r.t, (DegreeSequence{2, 1, 1}));
  EXPECT_DOUBLE_EQ(r.p_m, 1.0);

  SimpleGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  r = remaining_degrees({2, 2, 2}, tri);
  EXPECT_EQ(r.t, (DegreeSequence{0, 0, 0}));
  EXPECT_DOUBLE_EQ(r.p_m, 0.0);
}

TEST(RemainingDegrees, Errors) {
  SimpleGraph h(3);
  h.add_edge(0, 1);
  h.add_edge(0, 2);
  EXPECT_THROW(remaining_degrees({1, 1, 1}, h), std::invalid_argument);
  EXPECT_THROW(remaining_degrees({2, 1, 1, 0}, h), std::invalid_argument);
}

TEST(RemainingDegrees, PlusHDegreesIsD) {
  RandomSource rng(3, 0);
  const DegreeSequence d{5, 4, 4, 3, 3, 3, 2};
  for (int trial = 0; trial < 100; ++trial) {
    SimpleGraph h(d.size());
    std::vector<std::uint32_t> deg(d.size(), 0);
    for (int k = 0; k < 30; ++k) {
      const auto a = static_cast<Vertex>(rng.uniform_below(d.size()));
      const auto b = static_cast<Vertex>(rng.uniform_below(d.size()));
      if (a == b || h.has_edge(a, b) || deg[a] == d[a] || deg[b] == d[b]) continue;
      h.add_edge(a, b);
      ++deg[a];
      ++deg[b];
    }
    const auto r = remaining_degrees(d, h);
    for (std::size_t v = 0; v < d.size(); ++v) EXPECT_EQ(r.t[v] + h.degree(static_cast<Vertex>(v)), d[v]);
    EXPECT_DOUBLE_EQ(r.p_m, (24.0 - 2.0 * static_cast<double>(h.num_edges())) / 24.0);
  }
}

}  // namespace
}  // namespace degseq
