#include <gtest/gtest.h>

#include <set>

#include "hypfree/arrangement.hpp"

using namespace hypfree;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Parse;
}

Hyperplane hp(const FieldPtr& f, Covector c) { return Hyperplane::from_covector(*f, std::move(c)); }

}  // namespace

TEST(Arrangement, MakeArrangementExamples) {
  const auto f2 = make_field(2, 1);
  const auto f3 = make_field(3, 1);
  EXPECT_EQ(make_arrangement(f2, 3, {{1, 0, 0}}).size(), 1u);
  const auto collapsed = make_arrangement(f3, 3, {{1, 0, 0}, {2, 0, 0}});
  EXPECT_EQ(collapsed.size(), 1u);
  EXPECT_EQ(collapsed[0].covector(), (Covector{1, 0, 0}));
  std::vector<Covector> nonzero;
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b)
      for (Elem c = 0; c < 2; ++c)
        if (a || b || c) nonzero.push_back({a, b, c});
  const auto all = make_arrangement(f2, 3, nonzero);
  EXPECT_EQ(all.size(), 7u);
  EXPECT_EQ(all, all_hyperplanes(f2, 3));
}

TEST(Arrangement, MakeArrangementErrors) {
  const auto f3 = make_field(3, 1);
  EXPECT_EQ(code_of([&] { make_arrangement(f3, 3, {{0, 0, 0}}); }), Errc::ZeroCovector);
  EXPECT_EQ(code_of([&] { make_arrangement(f3, 3, {{1, 0}}); }), Errc::DimensionMismatch);
}

TEST(Arrangement, CanonicalFormAndIdempotence) {
  const auto f5 = make_field(5, 1);
  const auto a = make_arrangement(f5, 3, {{0, 3, 4}, {2, 2, 2}, {0, 1, 3}, {4, 0, 1}});
  for (const auto& h : a.hyperplanes()) {
    const auto& c = h.covector();
    EXPECT_EQ(*std::find_if(c.begin(), c.end(), [](Elem x) { return x != 0; }), 1u);
  }
  EXPECT_EQ(a.size(), 3u);  // (0,3,4) ~ (0,1,3)
  EXPECT_EQ(make_arrangement(f5, 3, a.covectors()), a);
  EXPECT_TRUE(std::is_sorted(a.hyperplanes().begin(), a.hyperplanes().end()));
}

TEST(Arrangement, AllHyperplanesCounts) {
  EXPECT_EQ(all_hyperplanes(make_field(2, 1), 3).size(), 7u);
  EXPECT_EQ(all_hyperplanes(make_field(3, 1), 3).size(), 13u);
  EXPECT_EQ(all_hyperplanes(make_field(2, 1), 2).size(), 3u);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto [p, e] = split_prime_power(q);
    const auto f = make_field(p, e);
    for (std::size_t ell = 1; ell <= 4; ++ell) {
      const auto all = all_hyperplanes(f, ell);
      ASSERT_EQ(all.size(), hyperplane_count(q, ell));
      // Pairwise non-proportional: any two distinct covectors span a plane.
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
          ASSERT_EQ(rank(*f, Mat{all[i].covector(), all[j].covector()}, ell), 2u);
        }
      }
    }
  }
  EXPECT_EQ(code_of([] { all_hyperplanes(make_field(2, 1), 30); }), Errc::EnumerationOverflow);
}

TEST(Arrangement, Deletion) {
  const auto f2 = make_field(2, 1);
  const auto all = all_hyperplanes(f2, 3);
  for (const auto& h : all.hyperplanes()) {
    const auto d = deletion(all, h);
    EXPECT_EQ(d.size(), 6u);
    EXPECT_FALSE(d.contains(h));
    EXPECT_EQ(addition(d, h), all);
  }
  const auto one = make_arrangement(f2, 3, {{1, 0, 0}});
  EXPECT_TRUE(deletion(one, one[0]).empty());
  EXPECT_EQ(code_of([&] { deletion(one, hp(f2, {0, 1, 0})); }), Errc::HyperplaneNotPresent);
}

TEST(Arrangement, RestrictionExamples) {
  const auto f2 = make_field(2, 1);
  const auto x = hp(f2, {1, 0, 0});
  const auto boolean = boolean_arrangement(f2, 3);
  const auto r1 = restriction(boolean, x);
  EXPECT_EQ(r1.restricted.size(), 2u);
  EXPECT_EQ(r1.restricted.ell(), 2u);
  EXPECT_EQ(restriction(make_arrangement(f2, 3, {{1, 0, 0}, {0, 1, 0}}), x).restricted.size(), 1u);
  EXPECT_TRUE(restriction(make_arrangement(f2, 3, {{1, 0, 0}}), x).restricted.empty());
  EXPECT_EQ(code_of([&] { restriction(make_arrangement(f2, 3, {{0, 1, 0}}), x); }), Errc::HyperplaneNotPresent);

  // Basis columns are independent and lie in H.
  const auto f3 = make_field(3, 1);
  const auto all3 = all_hyperplanes(f3, 3);
  for (const auto& h : all3.hyperplanes()) {
    const Mat b = hyperplane_basis(*f3, h);
    Mat cols(2, Vec(3));
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t i = 0; i < 3; ++i) cols[j][i] = b[i][j];
      EXPECT_EQ(h.evaluate(*f3, cols[j]), 0u);
    }
    EXPECT_EQ(rank(*f3, cols, 3), 2u);
  }
}

TEST(Arrangement, RestrictionSizeBound) {
  const auto f3 = make_field(3, 1);
  const auto all = all_hyperplanes(f3, 3);
  const auto zig = ziegler_example(f3);
  for (const auto* a : {&all, &zig}) {
    for (const auto& h : a->hyperplanes()) {
      EXPECT_EQ(deletion(*a, h).size(), a->size() - 1);
      EXPECT_LE(restriction(*a, h).restricted.size(), a->size() - 1);
    }
  }
  // A_all restricts onto every hyperplane as all lines of the plane.
  for (const auto& h : all.hyperplanes()) EXPECT_EQ(restriction(all, h).restricted.size(), 4u);
}

TEST(Arrangement, RestrictionIsBasisIndependent) {
  const auto f3 = make_field(3, 1);
  const FieldCtx& f = *f3;
  const auto zig = ziegler_example(f3);
  const auto all = all_hyperplanes(f3, 3);
  for (const auto* a : {&zig, &all}) {
    for (const auto& h : a->hyperplanes()) {
      const Mat b = hyperplane_basis(f, h);
      // Another basis of H: (b0 + b1, 2 b1).
      Mat other(3, Vec(2));
      for (std::size_t i = 0; i < 3; ++i) {
        other[i][0] = f.add(b[i][0], b[i][1]);
        other[i][1] = f.mul(2, b[i][1]);
      }
      const auto r1 = restriction_with_basis(*a, h, b);
      const auto r2 = restriction_with_basis(*a, h, other);
      EXPECT_EQ(r1.restricted.size(), r2.restricted.size());
      EXPECT_EQ(restricted_flats(f, r1), restricted_flats(f, r2));
    }
  }
}

TEST(Arrangement, Rank) {
  const auto f2 = make_field(2, 1);
  EXPECT_EQ(rank(Arrangement(f2, 3)), 0u);
  EXPECT_EQ(rank(all_hyperplanes(f2, 3)), 3u);
  EXPECT_TRUE(is_essential(all_hyperplanes(f2, 3)));
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto f = make_field(p, 1);
    const auto a = make_arrangement(f, 3, {{1, 0, 0}, {0, 1, 0}});
    EXPECT_EQ(rank(a), 2u);
    EXPECT_FALSE(is_essential(a));
  }
}

TEST(Arrangement, ZieglerFixture) {
  const auto f3 = make_field(3, 1);
  const auto zig = ziegler_example(f3);
  EXPECT_EQ(zig.size(), 9u);
  for (const auto& h : zig.hyperplanes()) EXPECT_NE(h.covector()[2], 0u);
  const auto all = all_hyperplanes(f3, 3);
  std::size_t rest = 0;
  for (const auto& h : all.hyperplanes()) rest += !zig.contains(h);
  EXPECT_EQ(rest, 4u);
  EXPECT_TRUE(is_subarrangement(zig, all));
  EXPECT_EQ(code_of([] { ziegler_example(make_field(2, 1)); }), Errc::WrongField);
  EXPECT_EQ(code_of([] { ziegler_example(make_field(3, 2)); }), Errc::WrongField);
}
