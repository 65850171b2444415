#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "okplus/norms.hpp"
#include "okplus/unique_decomp.hpp"

using namespace okp;

namespace {
CFEngine engine(long D) { return CFEngine(make_context(D)); }
}

TEST_CASE("tail recurrences") {
  for (long D : {2L, 3L, 5L, 13L, 41L, 46L, 94L}) {
    auto rc = norm_recurrence_check(engine(D), 60);
    CHECK(rc.ok);
  }
}

TEST_CASE("factored norm pinned") {
  CFEngine c2 = engine(2);
  CHECK(norm_combination(c2, -1, Int(1), Int(1)) == 2);  // N(2 + sqrt(2))
  CFEngine c3 = engine(3);
  CHECK(norm_combination(c3, 1, Int(2), Int(1)) ==
        norm(c3.ctx(), Int(2) * c3.convergent(1).alpha + c3.convergent(2).alpha));
  // single odd-index convergent: positive norm N_i
  for (long i : {1L, 3L, 5L}) {
    CHECK(norm_combination(c3, i, Int(1), Int(0)) == c3.convergent(i).N);
  }
}

TEST_CASE("factored norm random agreement") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> md(-25, 25), id(0, 10);
  const long ds[] = {2, 3, 5, 13, 21, 41, 46, 94, 193, 407};
  for (long D : ds) {
    CFEngine cf(make_context(D));
    for (int t = 0; t < 1000; ++t) {
      long i = 2 * id(rng) - 1;
      // norm_combination throws if the factored form ever disagrees
      CHECK_NOTHROW(norm_combination(cf, i, Int(md(rng)), Int(md(rng))));
    }
  }
}

TEST_CASE("bound report pinned") {
  CFEngine c2 = engine(2);
  auto br = bounds_check(c2, -1, 0, Int(1), Int(1));
  CHECK(br.element == QuadInt(3, 1));
  CHECK(br.norm_value == 7);
  CHECK(br.upper1_holds);  // 49 < 36 * 8
  CHECK(br.upper2_holds);
  CHECK(br.lower_case == LowerCase::CaseA);
  CHECK(br.a_applies);
  CHECK(br.a_holds);

  auto mc = bounds_check(c2, 1, 0, Int(3), Int(0));
  CHECK(mc.lower_case == LowerCase::MultipleOfConvergent);
  CHECK_FALSE(mc.a_applies);
  CHECK_FALSE(mc.b_applies);
  CHECK_FALSE(mc.c_applies);
  CHECK_FALSE(mc.d_applies);
  CHECK(mc.lower_holds);
}

TEST_CASE("bound grid") {
  const mpq_class cs[] = {mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)};
  for (long D : {3L, 13L, 41L, 94L}) {
    CFEngine cf(make_context(D));
    for (long i = -1; i <= 9; i += 2) {
      long u = cf.u_at(i + 2);
      for (long r = 0; r < u; ++r)
        for (long e = 1; e <= 5; ++e)
          for (long f = 0; e + f <= 5; ++f)
            for (const auto& c : cs) {
              auto rep = bounds_check(cf, i, r, Int(e), Int(f), c);
              CHECK(rep.upper1_holds);
              CHECK(rep.upper2_holds);
              CHECK(rep.lower_holds);
            }
    }
  }
}

TEST_CASE("argument validation") {
  CFEngine c3 = engine(3);
  CHECK_THROWS_AS(bounds_check(c3, 0, 0, Int(1), Int(0)), std::invalid_argument);
  CHECK_THROWS_AS(bounds_check(c3, 1, -1, Int(1), Int(0)), std::invalid_argument);
  CHECK_THROWS_AS(bounds_check(c3, 1, 0, Int(0), Int(0)), std::invalid_argument);
  CHECK_THROWS_AS(bounds_check(c3, 1, 0, Int(1), Int(0), mpq_class(1)), std::invalid_argument);
}

TEST_CASE("norm cap audit") {
  for (long D : {2L, 3L, 5L, 13L, 41L, 46L, 94L}) {
    CFEngine cf(make_context(D));
    CHECK(audit_ud_norms(cf));
    const Int cap = ud_norm_bound_floor(cf);
    for (const auto& x : ud_representatives(cf)) CHECK(norm(cf.ctx(), x) <= cap);
  }
}

TEST_CASE("indecomposable norm bound") {
  // 4 N(beta_j) N_{i+1} <= delta along the chain
  for (long D : {2L, 3L, 5L, 13L, 41L, 94L}) {
    CFEngine cf(make_context(D));
    for (long j = -30; j <= 30; ++j) {
      auto bc = beta_coords(cf, j);
      Int N = norm(cf.ctx(), beta(cf, j));
      CHECK(4 * N * cf.convergent(bc.i + 1).N <= cf.ctx().delta);
    }
  }
}
