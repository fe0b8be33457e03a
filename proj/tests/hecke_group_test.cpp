#include <gtest/gtest.h>

#include <random>

#include "h4/group.hpp"
#include "oracle.hpp"

using namespace h4;

namespace {

const Mat2 kMinusI{ZRt2(-1), ZRt2(0), ZRt2(0), ZRt2(-1)};

Mat2 random_word(std::mt19937_64& g, int len) {
  Mat2 m;
  for (int i = 0; i < len; ++i) m *= digit_matrix(1 + static_cast<int>(g() % 3));
  return m;
}

}  // namespace

TEST(Generators, DeterminantsAndRelations) {
  for (const Mat2* m : {&gen::T, &gen::S, &gen::R, &gen::A1, &gen::A2, &gen::A3})
    EXPECT_EQ(m->det(), ZRt2(1));
  EXPECT_EQ(gen::A2.det(), ZRt2(1));
  EXPECT_EQ(gen::S * gen::S, kMinusI);
  const Mat2 r2 = gen::R * gen::R;
  EXPECT_EQ(r2 * r2, kMinusI);
  EXPECT_EQ(gen::H.det(), ZRt2(-1));
}

TEST(Generators, InverseIsConjugateByH) {
  for (int d = 1; d <= 3; ++d) {
    const Mat2& A = digit_matrix(d);
    EXPECT_EQ(gen::H * A * gen::H, A.adjugate());
    EXPECT_EQ(A * A.adjugate(), Mat2::identity());
  }
}

TEST(Generators, ReversalOfDigitMatrices) {
  for (int d = 1; d <= 3; ++d) {
    const Mat2& A = digit_matrix(d);
    EXPECT_EQ(A.reversal(), A);
  }
  EXPECT_THROW(digit_matrix(4), Error);
  EXPECT_THROW(digit_matrix(0), Error);
}

TEST(Generators, RandomWordsStayInGroup) {
  std::mt19937_64 g(21);
  for (int i = 0; i < 2000; ++i) {
    const Mat2 m = random_word(g, 1 + static_cast<int>(g() % 12));
    ASSERT_EQ(m.det(), ZRt2(1));
    ASSERT_TRUE(is_member(m));
  }
}

TEST(Membership, Examples) {
  EXPECT_TRUE(is_member(gen::T));
  EXPECT_TRUE(is_member(gen::S));
  EXPECT_TRUE(is_member(gen::A2));
  EXPECT_TRUE(is_member(gen::T * gen::S));
  EXPECT_FALSE(is_member(gen::H));
  EXPECT_FALSE(is_member(gen::J));
  // det 1 but wrong parity pattern
  EXPECT_FALSE(is_member(Mat2{ZRt2(2), ZRt2(1), ZRt2(1), ZRt2(1)}));
  EXPECT_FALSE(is_member(Mat2{ZRt2(1), ZRt2(1), ZRt2(0), ZRt2(1)}));
}

TEST(H4Fraction, Canonicalize) {
  // 1/√2 = √2·1/2
  const H4Fraction a = H4Fraction::canonicalize(1, 2);
  EXPECT_EQ(a.p, ZRt2(1));
  EXPECT_EQ(a.q, ZRt2::sqrt2());
  EXPECT_EQ(a.family, Family::OddOverSqrt2);

  const H4Fraction b = H4Fraction::canonicalize(2, 1);
  EXPECT_EQ(b.p, ZRt2(0, 2));
  EXPECT_EQ(b.q, ZRt2(1));
  EXPECT_EQ(b.family, Family::Sqrt2OverOdd);

  const H4Fraction z = H4Fraction::canonicalize(0, 5);
  EXPECT_EQ(z.p, ZRt2(0));
  EXPECT_EQ(z.q, ZRt2(1));

  const H4Fraction n = H4Fraction::canonicalize(-3, -6);
  EXPECT_EQ(n, a);
  EXPECT_THROW(H4Fraction::canonicalize(1, 0), Error);
}

TEST(H4Fraction, FromPairAndValue) {
  EXPECT_FALSE(H4Fraction::from_pair(ZRt2(1), ZRt2(0)).has_value());
  try {
    H4Fraction::from_pair(ZRt2(0, 14), ZRt2(0, 4));  // 7/2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInQH4);
  }
  const auto g = H4Fraction::from_pair(ZRt2(7), ZRt2(0, 2));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->str(), "7/(2√2)");
  EXPECT_EQ(g->value(), QRt2(ZRt2(0, 7), Int(4)));
}

TEST(H4Fraction, CanonicalFormIsUnique) {
  std::mt19937_64 g(8);
  for (int i = 0; i < 3000; ++i) {
    const long m = static_cast<long>(g() % 401) - 200;
    const long n = 1 + static_cast<long>(g() % 200);
    const long k = 1 + static_cast<long>(g() % 9);
    const H4Fraction x = H4Fraction::canonicalize(m, n);
    ASSERT_EQ(x, H4Fraction::canonicalize(m * k, n * k));
    ASSERT_GT(x.q, ZRt2(0));
    if (x.family == Family::Sqrt2OverOdd) {
      ASSERT_TRUE(x.q.is_rational() && is_odd(x.q.a()) && sgn(x.p.a()) == 0);
    } else {
      ASSERT_TRUE(sgn(x.q.a()) == 0 && x.p.is_rational() && is_odd(x.p.a()));
    }
    // Value survives, checked in floating point against m√2/n.
    const double want = static_cast<double>(m) * 1.4142135623730951 / static_cast<double>(n);
    ASSERT_NEAR(oracle::eval(x).to_double(), want, 1e-12);
  }
}

TEST(H4Fraction, CanonicalPairsAreColumnsOfGroupElements) {
  std::mt19937_64 g(4);
  for (int i = 0; i < 500; ++i) {
    const Mat2 m = random_word(g, 1 + static_cast<int>(g() % 10));
    if (m.u.is_zero()) continue;  // all 3s: t/u = ∞
    const auto a = H4Fraction::from_pair(m.t, m.u);
    const auto b = H4Fraction::from_pair(m.v, m.w);
    ASSERT_TRUE(a && b);
    // The columns are already primitive: canonical form only fixes signs.
    ASSERT_EQ(abs(a->q), abs(m.u));
    ASSERT_EQ(abs(b->q), abs(m.w));
    ASSERT_TRUE(ford_tangent(*a, *b));
  }
}

TEST(Ford, Tangency) {
  const H4Fraction a = H4Fraction::canonicalize(2, 1);   // 2√2/1
  const H4Fraction b = H4Fraction::canonicalize(7, 4);   // 7/(2√2)
  const H4Fraction c = H4Fraction::canonicalize(16, 9);  // 16√2/9
  EXPECT_TRUE(ford_tangent(a, b));
  EXPECT_TRUE(ford_tangent(b, c));
  EXPECT_FALSE(ford_tangent(a, c));
  EXPECT_TRUE(ford_tangent(H4Fraction::canonicalize(0, 1), H4Fraction::canonicalize(1, 2)));
}

TEST(Ladder, Denominators) {
  const auto l = denominator_ladder(Int(5));
  std::vector<std::string> got;
  for (const auto& r : l) got.push_back(r.q.str());
  EXPECT_EQ(got, (std::vector<std::string>{"1", "√2", "2√2", "3", "3√2", "5"}));
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_LT(l[i - 1].q, l[i].q);
}
