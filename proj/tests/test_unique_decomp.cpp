#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "okplus/unique_decomp.hpp"

using namespace okp;

namespace {

CFEngine engine(long D) { return CFEngine(make_context(D)); }

// All totally positive elements with trace <= tmax.
std::vector<QuadInt> tp_up_to_trace(const FieldContext& ctx, long tmax) {
  std::vector<QuadInt> out;
  for (long t = 1; t <= tmax; ++t)
    for (long b = -t; b <= t; ++b) {
      long num = t - b * ctx.trace_omega;
      if (num % 2 != 0) continue;
      QuadInt x{num / 2, b};
      if (is_totally_positive(ctx, x)) out.push_back(x);
    }
  return out;
}

}  // namespace

TEST_CASE("unique decomposability pinned") {
  CFEngine c2 = engine(2);
  CHECK(is_uniquely_decomposable(c2, {3, 1}));
  CHECK_FALSE(is_uniquely_decomposable(c2, {4, 0}));
  for (long j = -5; j <= 5; ++j) CHECK(is_uniquely_decomposable(c2, beta(c2, j)));
}

TEST_CASE("classification pinned") {
  CFEngine c2 = engine(2);
  auto dbl = classify_ud(c2, Int(2) * beta(c2, 2));
  CHECK(dbl.tag == UDTag::ConvergentMultiple);
  CHECK(dbl.i == 1);
  CHECK(dbl.e == 2);
  CHECK(classify_ud(c2, {4, 0}).tag == UDTag::NotUD);
  CHECK(classify_ud(c2, {3, 1}).tag != UDTag::NotUD);
  CHECK(classify_ud(c2, beta(c2, 1)).tag == UDTag::Indecomposable);
  CHECK(classify_ud(c2, beta(c2, -1)).tag == UDTag::Indecomposable);
  CHECK(classify_ud(c2, beta(c2, -1)).conjugated);
}

TEST_CASE("decomposition search pinned") {
  CFEngine c2 = engine(2);
  auto two = enumerate_decompositions(c2, {4, 0}, 3);
  REQUIRE(two.size() == 2);
  std::set<std::vector<std::pair<Int, Int>>> got;
  for (const auto& dec : two) {
    std::vector<std::pair<Int, Int>> key;
    for (const auto& p : dec) key.emplace_back(p.a, p.b);
    got.insert(key);
  }
  std::set<std::vector<std::pair<Int, Int>>> want = {
      {{Int(1), Int(0)}, {Int(1), Int(0)}, {Int(1), Int(0)}, {Int(1), Int(0)}},
      {{Int(2), Int(-1)}, {Int(2), Int(1)}}};
  CHECK(got == want);

  for (long j = -4; j <= 4; ++j) {
    auto one = enumerate_decompositions(c2, beta(c2, j), 0);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::vector<QuadInt>{beta(c2, j)});
  }
  CHECK(enumerate_decompositions(c2, {3, 1}, 2).size() == 1);
}

TEST_CASE("classifier agrees with search") {
  for (long D : {2L, 3L, 5L, 13L, 21L}) {
    CFEngine cf(make_context(D));
    for (const auto& x : tp_up_to_trace(cf.ctx(), 24)) {
      const bool ud = is_uniquely_decomposable(cf, x);
      CHECK(ud == (enumerate_decompositions(cf, x, 2).size() == 1));
      CHECK(ud == (classify_ud(cf, x).tag != UDTag::NotUD));
    }
  }
}

TEST_CASE("orbit representatives pinned counts") {
  CHECK(ud_representatives(engine(2)).size() == 8);
  CHECK(ud_representatives(engine(3)).size() == 11);
  CHECK(ud_representatives(engine(5)).size() == 5);
}

TEST_CASE("closed-form count pinned") {
  CHECK(count_ud_mod_units(engine(2)) == 8);
  CHECK(count_ud_mod_units(engine(3)) == 11);
  CHECK(count_ud_mod_units(engine(5)) == 5);
}

TEST_CASE("representatives are valid and orbit-unique") {
  for (long D : {2L, 3L, 5L, 13L, 41L, 46L}) {
    CFEngine cf(make_context(D));
    auto reps = ud_representatives(cf);
    CHECK(Int(static_cast<long>(reps.size())) == count_ud_mod_units(cf));
    std::set<std::pair<Int, Int>> seen;
    for (const auto& x : reps) {
      CHECK(is_totally_positive(cf.ctx(), x));
      CHECK(is_uniquely_decomposable(cf, x));
      CHECK(seen.insert({x.a, x.b}).second);
    }
    // no two representatives in the same unit orbit
    const QuadInt eps = cf.totally_positive_unit();
    for (const auto& x : reps) {
      QuadInt y = mul(cf.ctx(), eps, x);
      CHECK_FALSE(seen.count({y.a, y.b}));
    }
  }
}

TEST_CASE("both period parities are exercised") {
  CHECK(engine(41).expansion().s % 2 == 1);
  CHECK(engine(46).expansion().s % 2 == 0);
}
