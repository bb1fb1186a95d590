#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "schublc/young.hpp"

using namespace schublc;

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<GrassContext> small_contexts(int max_n) {
  std::vector<GrassContext> out;
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 1; k < n; ++k) out.emplace_back(k, n);
  }
  return out;
}

}  // namespace

TEST(GrassContext, Dimension) {
  GrassContext ctx(4, 9);
  EXPECT_EQ(ctx.dim(), 20);
  EXPECT_EQ(ctx.width(), 5);
  EXPECT_THROW(GrassContext(0, 3), Error);
  EXPECT_THROW(GrassContext(3, 3), Error);
}

TEST(ParsePartition, Examples) {
  auto a = parse_partition("5,4,2,2");
  EXPECT_EQ(a.parts(), (std::vector<int>{5, 4, 2, 2}));
  EXPECT_EQ(a.size(), 13);
  EXPECT_TRUE(parse_partition("0").empty());
  EXPECT_TRUE(parse_partition("").empty());
  EXPECT_EQ(parse_partition(" 3 1 0 ").parts(), (std::vector<int>{3, 1}));
  EXPECT_EQ(parse_partition("5, 4,4").parts(), (std::vector<int>{5, 4, 4}));
}

TEST(ParsePartition, Errors) {
  try {
    parse_partition("2,3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotWeaklyDecreasing);
  }
  for (const char* bad : {"a", "1,,1", "-1", "2;1", "1,", "99999999999999"}) {
    try {
      parse_partition(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError) << bad;
    }
  }
}

TEST(Subpartitions, Examples) {
  auto subs = subpartitions(Partition{2, 1});
  std::set<Partition> got(subs.begin(), subs.end());
  std::set<Partition> want{Partition{}, Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}};
  EXPECT_EQ(subs.size(), 5u);
  EXPECT_EQ(got, want);
  EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));

  EXPECT_EQ(subpartitions(Partition{}), std::vector<Partition>{Partition{}});
  auto two = subpartitions(Partition{2, 1}, 2);
  EXPECT_EQ(std::set<Partition>(two.begin(), two.end()), (std::set<Partition>{Partition{2}, Partition{1, 1}}));
}

TEST(Subpartitions, RectangleCountIsBinomial) {
  for (const auto& ctx : small_contexts(10)) {
    auto subs = subpartitions(Partition::rectangle(ctx.k(), ctx.width()));
    EXPECT_EQ(subs.size(), binomial(ctx.n(), ctx.k())) << ctx.k() << "," << ctx.n();
    std::set<Partition> uniq(subs.begin(), subs.end());
    EXPECT_EQ(uniq.size(), subs.size());
  }
}

TEST(Complement, Examples) {
  GrassContext ctx(4, 9);
  EXPECT_TRUE(complement(Partition::rectangle(4, 5), ctx).empty());
  EXPECT_EQ(complement(Partition{5, 4, 2, 2}, ctx), (Partition{3, 3, 1}));
  EXPECT_THROW(complement(Partition{6}, ctx), Error);
}

TEST(Complement, Involution) {
  for (const auto& ctx : small_contexts(8)) {
    for (const auto& a : subpartitions(Partition::rectangle(ctx.k(), ctx.width()))) {
      auto c = complement(a, ctx);
      EXPECT_EQ(c.size(), ctx.dim() - a.size());
      EXPECT_EQ(complement(c, ctx), a);
    }
  }
}

TEST(Conjugate, Examples) {
  EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
  EXPECT_TRUE(conjugate(Partition{}).empty());
  for (const auto& a : subpartitions(Partition::rectangle(5, 5))) EXPECT_EQ(conjugate(conjugate(a)), a);
}

TEST(Corners, Examples) {
  EXPECT_EQ(corners(Partition{5, 4, 2, 2}), (std::vector<Box>{{1, 5}, {2, 4}, {4, 2}}));
  EXPECT_EQ(corners(Partition::rectangle(3, 4)), (std::vector<Box>{{3, 4}}));
  EXPECT_TRUE(corners(Partition{}).empty());
}

TEST(RemoveBoxes, Examples) {
  Partition a{2, 1};
  EXPECT_EQ(remove_boxes(a, {Box{1, 2}, Box{2, 1}}), Partition{1});
  EXPECT_FALSE(remove_boxes(a, {Box{1, 1}}).has_value());
  EXPECT_EQ(remove_boxes(a, std::span<const Box>{}), a);
  EXPECT_THROW(remove_boxes(a, {Box{2, 2}}), Error);
}

// Any set of corners can be removed together.
TEST(RemoveBoxes, CornerSubsets) {
  std::mt19937 rng(7);
  for (const auto& a : subpartitions(Partition::rectangle(4, 5))) {
    auto cs = corners(a);
    for (unsigned mask = 0; mask < (1u << cs.size()); ++mask) {
      std::vector<Box> pick;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (mask & (1u << i)) pick.push_back(cs[i]);
      }
      auto r = remove_boxes(a, pick);
      ASSERT_TRUE(r.has_value()) << to_string(a);
      EXPECT_EQ(r->size(), a.size() - static_cast<int>(pick.size()));
    }
  }
}

TEST(Render, Examples) {
  EXPECT_EQ(render(Partition{1}, true), ".\n");
  Overlay bullet{{Box{2, 1}}, "*"};
  std::string out = render(Partition{2, 1}, std::span<const Overlay>(&bullet, 1), true);
  EXPECT_EQ(out, ". .\n*\n");
  EXPECT_EQ(out, render(Partition{2, 1}, std::span<const Overlay>(&bullet, 1), true));
  EXPECT_EQ(render(Partition{}, true), "0\n");
}
