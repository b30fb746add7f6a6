#include <gtest/gtest.h>

#include "hypfree/counting.hpp"
#include "hypfree/io.hpp"
#include "hypfree/lattice.hpp"

using namespace hypfree;

namespace {

std::vector<Arrangement> subsets_of_all(const FieldPtr& f, std::size_t ell) {
  const auto all = all_hyperplanes(f, ell);
  std::vector<Arrangement> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << all.size()); ++m) {
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (m >> i & 1) hs.push_back(all[i]);
    }
    out.emplace_back(f, ell, std::move(hs));
  }
  return out;
}

}  // namespace

TEST(Counting, ComplementExamples) {
  const auto f2 = make_field(2, 1);
  EXPECT_EQ(count_complement(all_hyperplanes(f2, 3)), 0u);
  EXPECT_EQ(count_complement(make_arrangement(f2, 3, {{1, 0, 0}})), 4u);
  EXPECT_EQ(count_complement(ziegler_example(make_field(3, 1))), 2u);
}

TEST(Counting, ExtensionExamples) {
  const auto f2 = make_field(2, 1);
  EXPECT_EQ(count_complement_extension(all_hyperplanes(f2, 3), 2), 0u);
  EXPECT_EQ(count_complement_extension(make_arrangement(f2, 3, {{1, 0, 0}}), 2), 48u);
  EXPECT_EQ(count_complement_extension(ziegler_example(make_field(3, 1)), 2), 200u);
}

TEST(Counting, TupleExamples) {
  const auto f2 = make_field(2, 1);
  const auto x = make_arrangement(f2, 3, {{1, 0, 0}});
  EXPECT_EQ(crapo_rota_count(x, 1), count_complement(x));
  EXPECT_EQ(crapo_rota_count(x, 2), 48u);
  for (std::uint32_t p : {2u, 3u}) {
    const auto f = make_field(p, 1);
    const std::uint64_t q3 = std::uint64_t{p} * p * p;
    EXPECT_EQ(crapo_rota_count(Arrangement(f, 3), 2), q3 * q3);
  }
}

TEST(Counting, BijectionExamples) {
  const auto f2 = make_field(2, 1);
  EXPECT_TRUE(bijection_check(make_arrangement(f2, 3, {{1, 0, 0}}), 2));
  EXPECT_TRUE(bijection_check(all_hyperplanes(f2, 3), 2));
  EXPECT_TRUE(bijection_check(ziegler_example(make_field(3, 1)), 2));
  EXPECT_TRUE(bijection_check(all_hyperplanes(f2, 3), 3));
  const auto f4 = make_field(2, 2);
  EXPECT_TRUE(bijection_check(boolean_arrangement(f4, 3), 2));
}

TEST(Counting, Monotonicity) {
  const auto f2 = make_field(2, 1);
  const auto all = all_hyperplanes(f2, 3);
  EXPECT_TRUE(monotonicity_check(Arrangement(f2, 3), all, 1));
  const auto x = make_arrangement(f2, 3, {{1, 0, 0}});
  const auto xy = make_arrangement(f2, 3, {{1, 0, 0}, {0, 1, 0}});
  EXPECT_TRUE(monotonicity_check(x, xy, 1));
  EXPECT_EQ(count_complement(xy), 2u);
  const auto f3 = make_field(3, 1);
  EXPECT_TRUE(monotonicity_check(ziegler_example(f3), all_hyperplanes(f3, 3), 1));
  try {
    monotonicity_check(xy, x, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSubarrangement);
  }
}

TEST(Counting, Ceilings) {
  const auto f3 = make_field(3, 1);
  try {
    count_complement(Arrangement(f3, 3), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EnumerationOverflow);
  }
  try {
    crapo_rota_count(Arrangement(f3, 3), 2, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EnumerationOverflow);
  }
  try {
    count_complement_extension(Arrangement(f3, 3), 3, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EnumerationOverflow);
  }
}

TEST(Counting, OracleEquivalenceBinaryCensusUpToCubes) {
  const auto f2 = make_field(2, 1);
  for (const auto& a : subsets_of_all(f2, 3)) {
    const auto chi = char_poly(a);
    ASSERT_EQ(crapo_rota_count(a, 1), count_complement(a));
    for (unsigned k = 1; k <= 3; ++k) {
      const std::int64_t t = std::int64_t{1} << k;
      const std::int64_t value = chi.eval(t);
      ASSERT_GE(value, 0) << arrangement_id(a);
      ASSERT_EQ(count_complement_extension(a, k), static_cast<std::uint64_t>(value)) << arrangement_id(a);
      ASSERT_EQ(crapo_rota_count(a, k), static_cast<std::uint64_t>(value)) << arrangement_id(a);
    }
  }
}

TEST(Counting, OracleEquivalenceOverNonPrimeField) {
  // A_all(F_4^3) and a few of its subarrangements, against the polynomial.
  const auto f4 = make_field(2, 2);
  const auto all = all_hyperplanes(f4, 3);
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < all.size(); i += 2) {
    hs.push_back(all[i]);
    const Arrangement a(f4, 3, hs);
    const auto chi = char_poly(a);
    ASSERT_EQ(count_complement(a), static_cast<std::uint64_t>(chi.eval(4)));
    ASSERT_EQ(count_complement_extension(a, 2), static_cast<std::uint64_t>(chi.eval(16)));
    ASSERT_EQ(crapo_rota_count(a, 2), static_cast<std::uint64_t>(chi.eval(16)));
  }
  EXPECT_EQ(count_complement_extension(all, 2), 0u);
}
